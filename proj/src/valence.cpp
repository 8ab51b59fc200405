// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/valence.h"

#include <algorithm>
#include <functional>
#include <numeric>

#include "graphbpe/rings.h"

namespace graphbpe {

namespace {

bool contains(std::span<const int> values, int v) {
  return std::find(values.begin(), values.end(), v) != values.end();
}

std::string describe(const MolGraph& mol, int atom) {
  return std::string(element_symbol(mol.atom(atom).element)) + " atom " +
         std::to_string(atom);
}

int pi_electrons(const MolGraph& mol, int atom, bool needs_pi) {
  if (needs_pi) return 1;
  const Atom& a = mol.atom(atom);
  for (const Neighbor& nb : mol.neighbors(atom)) {
    const BondOrder order = mol.bond(nb.bond).order;
    if (order == BondOrder::kDouble || order == BondOrder::kTriple) return 0;
  }
  switch (a.element) {
    case Element::kN:
    case Element::kO:
    case Element::kP:
    case Element::kS:
      return a.formal_charge > 0 ? 0 : 2;
    default:
      return a.formal_charge < 0 ? 2 : 0;
  }
}

// Perfect matching by backtracking, always extending the unmatched vertex
// with the fewest free partners. Systems are ring-sized, so this is cheap.
bool has_perfect_matching(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n % 2 != 0) return false;
  std::vector<char> matched(n, 0);
  std::function<bool(int)> solve = [&](int remaining) -> bool {
    if (remaining == 0) return true;
    int pick = -1;
    int best = n + 1;
    for (int v = 0; v < n; ++v) {
      if (matched[v]) continue;
      int free = 0;
      for (int u : adj[v]) free += matched[u] ? 0 : 1;
      if (free < best) {
        best = free;
        pick = v;
      }
    }
    if (best == 0) return false;
    matched[pick] = 1;
    for (int u : adj[pick]) {
      if (matched[u]) continue;
      matched[u] = 1;
      if (solve(remaining - 2)) return true;
      matched[u] = 0;
    }
    matched[pick] = 0;
    return false;
  };
  return solve(n);
}

}  // namespace

AtomValence atom_valence(const MolGraph& mol, int atom) {
  const Atom& a = mol.atom(atom);
  const std::span<const int> allowed = allowed_valences(a.element, a.formal_charge);
  if (allowed.empty()) return {};
  const int sum = mol.bond_valence_sum(atom) + a.total_h();
  if (contains(allowed, sum)) return {true, false};
  if (a.aromatic && contains(allowed, sum + 1)) return {true, true};
  return {};
}

int default_implicit_h(const MolGraph& mol, int atom) {
  const Atom& a = mol.atom(atom);
  const std::span<const int> allowed = allowed_valences(a.element, a.formal_charge);
  const int sum = mol.bond_valence_sum(atom);
  for (int v : allowed) {
    if (v >= sum) return std::max(0, v - sum - (a.aromatic ? 1 : 0));
  }
  return 0;
}

void assign_implicit_hydrogens(MolGraph& mol) {
  for (int i = 0; i < mol.num_atoms(); ++i) {
    Atom& a = mol.mutable_atom(i);
    if (a.bracket || a.is_connection_site()) {
      a.implicit_h = 0;
      continue;
    }
    a.implicit_h = static_cast<std::uint8_t>(default_implicit_h(mol, i));
  }
}

void normalize_hydrogens(MolGraph& mol) {
  for (int i = 0; i < mol.num_atoms(); ++i) {
    Atom& a = mol.mutable_atom(i);
    if (a.is_connection_site()) continue;
    const int total = a.total_h();
    const bool plain = is_organic_subset(a.element) && a.formal_charge == 0 &&
                       total == default_implicit_h(mol, i);
    a.bracket = !plain;
    a.explicit_h = static_cast<std::uint8_t>(plain ? 0 : total);
    a.implicit_h = static_cast<std::uint8_t>(plain ? total : 0);
  }
}

std::vector<AromaticSystem> aromatic_systems(const MolGraph& mol) {
  const int n = mol.num_atoms();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Bond& b : mol.bonds()) {
    if (b.order != BondOrder::kAromatic) continue;
    if (mol.atom(b.begin).is_connection_site() || mol.atom(b.end).is_connection_site()) {
      continue;
    }
    parent[find(b.begin)] = find(b.end);
  }
  std::vector<int> system_of(n, -1);
  std::vector<AromaticSystem> systems;
  for (int i = 0; i < n; ++i) {
    if (!mol.atom(i).aromatic || mol.atom(i).is_connection_site()) continue;
    const int root = find(i);
    if (system_of[root] < 0) {
      system_of[root] = static_cast<int>(systems.size());
      systems.emplace_back();
    }
    systems[system_of[root]].atoms.push_back(i);
  }
  for (int b = 0; b < mol.num_bonds(); ++b) {
    const Bond& bond = mol.bond(b);
    if (bond.order != BondOrder::kAromatic) continue;
    const bool star_begin = mol.atom(bond.begin).is_connection_site();
    const bool star_end = mol.atom(bond.end).is_connection_site();
    if (star_begin && star_end) continue;
    const int member = star_begin ? bond.end : bond.begin;
    if (!mol.atom(member).aromatic) continue;
    AromaticSystem& sys = systems[system_of[find(member)]];
    if (star_begin || star_end) {
      sys.open = true;
    } else {
      sys.bonds.push_back(b);
    }
  }
  return systems;
}

bool aromatic_system_ok(const MolGraph& mol, const AromaticSystem& system) {
  if (system.open) return true;
  if (system.bonds.empty()) return false;

  std::vector<int> local(mol.num_atoms(), -1);
  for (int i = 0; i < static_cast<int>(system.atoms.size()); ++i) local[system.atoms[i]] = i;
  std::vector<std::pair<int, int>> edges;
  for (int b : system.bonds) {
    edges.emplace_back(local[mol.bond(b).begin], local[mol.bond(b).end]);
  }
  if (!find_bridges(static_cast<int>(system.atoms.size()), edges).empty()) return false;

  int electrons = 0;
  std::vector<int> pi_index(system.atoms.size(), -1);
  int num_pi = 0;
  for (int i = 0; i < static_cast<int>(system.atoms.size()); ++i) {
    const AtomValence v = atom_valence(mol, system.atoms[i]);
    if (!v.ok) return false;
    electrons += pi_electrons(mol, system.atoms[i], v.needs_pi);
    if (v.needs_pi) pi_index[i] = num_pi++;
  }
  if (electrons % 4 != 2) return false;

  std::vector<std::vector<int>> adj(num_pi);
  for (const auto& [a, b] : edges) {
    if (pi_index[a] >= 0 && pi_index[b] >= 0) {
      adj[pi_index[a]].push_back(pi_index[b]);
      adj[pi_index[b]].push_back(pi_index[a]);
    }
  }
  return has_perfect_matching(adj);
}

std::string valence_problem(const MolGraph& mol) {
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom& a = mol.atom(i);
    if (a.is_connection_site()) {
      if (mol.degree(i) != 1) return "connection site " + std::to_string(i) + " must have exactly one bond";
      if (a.formal_charge != 0 || a.aromatic || a.total_h() != 0) {
        return "connection site " + std::to_string(i) + " carries charge, hydrogens or aromaticity";
      }
      continue;
    }
    if (a.aromatic && !can_be_aromatic(a.element)) {
      return describe(mol, i) + " cannot be aromatic";
    }
    if (!atom_valence(mol, i).ok) return "valence violation at " + describe(mol, i);
  }
  for (const Bond& b : mol.bonds()) {
    if (b.order != BondOrder::kAromatic) continue;
    const Atom& x = mol.atom(b.begin);
    const Atom& y = mol.atom(b.end);
    const bool ok = (x.aromatic || x.is_connection_site()) &&
                    (y.aromatic || y.is_connection_site()) &&
                    !(x.is_connection_site() && y.is_connection_site());
    if (!ok) {
      return "aromatic bond between atoms " + std::to_string(b.begin) + " and " +
             std::to_string(b.end) + " requires aromatic atoms";
    }
  }
  for (const AromaticSystem& sys : aromatic_systems(mol)) {
    if (!aromatic_system_ok(mol, sys)) {
      return "invalid aromatic system containing " + describe(mol, sys.atoms.front());
    }
  }
  return {};
}

bool valence_check(const MolGraph& mol) { return valence_problem(mol).empty(); }

}  // namespace graphbpe
