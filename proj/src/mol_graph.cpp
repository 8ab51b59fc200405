// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/mol_graph.h"

#include <algorithm>
#include <numeric>

namespace graphbpe {

char bond_symbol(BondOrder order) {
  switch (order) {
    case BondOrder::kSingle:
      return '-';
    case BondOrder::kDouble:
      return '=';
    case BondOrder::kTriple:
      return '#';
    case BondOrder::kAromatic:
      return ':';
  }
  return '?';
}

int MolGraph::add_atom(const Atom& atom) {
  atoms_.push_back(atom);
  adjacency_.emplace_back();
  return num_atoms() - 1;
}

int MolGraph::add_bond(int a, int b, BondOrder order) {
  if (a == b) throw GraphError("bond from atom " + std::to_string(a) + " to itself");
  if (a < 0 || b < 0 || a >= num_atoms() || b >= num_atoms()) {
    throw GraphError("bond references a missing atom");
  }
  if (find_bond(a, b) >= 0) {
    throw GraphError("duplicate bond between atoms " + std::to_string(a) +
                     " and " + std::to_string(b));
  }
  const int id = num_bonds();
  bonds_.push_back({a, b, order});
  adjacency_[a].push_back({b, id});
  adjacency_[b].push_back({a, id});
  return id;
}

void MolGraph::remove_atom(int atom) {
  std::vector<Bond> kept;
  kept.reserve(bonds_.size());
  for (const Bond& b : bonds_) {
    if (b.begin == atom || b.end == atom) continue;
    Bond nb = b;
    if (nb.begin > atom) --nb.begin;
    if (nb.end > atom) --nb.end;
    kept.push_back(nb);
  }
  atoms_.erase(atoms_.begin() + atom);
  bonds_ = std::move(kept);
  rebuild_adjacency();
}

void MolGraph::rebuild_adjacency() {
  adjacency_.assign(atoms_.size(), {});
  for (int i = 0; i < num_bonds(); ++i) {
    adjacency_[bonds_[i].begin].push_back({bonds_[i].end, i});
    adjacency_[bonds_[i].end].push_back({bonds_[i].begin, i});
  }
}

int MolGraph::find_bond(int a, int b) const {
  for (const Neighbor& n : adjacency_[a]) {
    if (n.atom == b) return n.bond;
  }
  return -1;
}

int MolGraph::bond_valence_sum(int atom) const {
  int sum = 0;
  for (const Neighbor& n : adjacency_[atom]) sum += base_valence(bonds_[n.bond].order);
  return sum;
}

int MolGraph::num_aromatic_bonds(int atom) const {
  int count = 0;
  for (const Neighbor& n : adjacency_[atom]) {
    if (bonds_[n.bond].order == BondOrder::kAromatic) ++count;
  }
  return count;
}

int MolGraph::num_connection_sites() const {
  int count = 0;
  for (const Atom& a : atoms_) count += a.is_connection_site() ? 1 : 0;
  return count;
}

int MolGraph::num_heavy_atoms() const { return num_atoms() - num_connection_sites(); }

int MolGraph::num_components() const {
  std::vector<int> parent(atoms_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = num_atoms();
  for (const Bond& b : bonds_) {
    const int ra = find(b.begin);
    const int rb = find(b.end);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components;
}

MolGraph MolGraph::induced_subgraph(std::span<const int> atoms) const {
  MolGraph sub;
  std::vector<int> index(atoms_.size(), -1);
  for (int a : atoms) index[a] = sub.add_atom(atoms_[a]);
  for (int a : atoms) {
    for (const Neighbor& n : adjacency_[a]) {
      if (index[n.atom] >= 0 && a < n.atom) {
        sub.add_bond(index[a], index[n.atom], bonds_[n.bond].order);
      }
    }
  }
  return sub;
}

MolGraph MolGraph::permuted(std::span<const int> new_index) const {
  MolGraph out;
  std::vector<int> order(atoms_.size());
  for (int i = 0; i < num_atoms(); ++i) order[new_index[i]] = i;
  for (int old : order) out.add_atom(atoms_[old]);
  std::vector<Bond> bonds;
  bonds.reserve(bonds_.size());
  for (const Bond& b : bonds_) {
    int u = new_index[b.begin];
    int v = new_index[b.end];
    if (u > v) std::swap(u, v);
    bonds.push_back({u, v, b.order});
  }
  std::sort(bonds.begin(), bonds.end(), [](const Bond& x, const Bond& y) {
    return std::pair(x.begin, x.end) < std::pair(y.begin, y.end);
  });
  for (const Bond& b : bonds) out.add_bond(b.begin, b.end, b.order);
  return out;
}

}  // namespace graphbpe
