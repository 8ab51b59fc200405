// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/canon.h"

#include <algorithm>
#include <numeric>
#include <optional>

namespace graphbpe {

namespace {

using Coloring = std::vector<int>;

// Colours are cell start positions, so a discrete colouring is a ranking.
Coloring initial_coloring(const LabeledGraph& g) {
  const int n = g.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.labels[a] < g.labels[b]; });
  Coloring color(n);
  for (int i = 0; i < n; ++i) {
    const bool same = i > 0 && g.labels[order[i]] == g.labels[order[i - 1]];
    color[order[i]] = same ? color[order[i - 1]] : i;
  }
  return color;
}

int count_cells(const Coloring& color) {
  std::vector<char> seen(color.size(), 0);
  int cells = 0;
  for (int c : color) {
    if (!seen[c]) {
      seen[c] = 1;
      ++cells;
    }
  }
  return cells;
}

// Refines to the coarsest equitable colouring finer than `color`. A vertex's
// signature is its colour followed by the sorted (neighbour colour, edge
// label) multiset; cells are split in signature order.
void refine(const LabeledGraph& g, Coloring& color) {
  const int n = g.size();
  std::vector<std::vector<std::uint64_t>> sig(n);
  std::vector<int> order(n);
  int cells = count_cells(color);
  while (true) {
    for (int v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.clear();
      s.push_back(static_cast<std::uint64_t>(color[v]));
      for (const auto& [u, label] : g.adjacency[v]) {
        s.push_back((static_cast<std::uint64_t>(color[u]) << 32) | label);
      }
      std::sort(s.begin() + 1, s.end());
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return sig[a] < sig[b];
    });
    Coloring next(n);
    int next_cells = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[order[i]] == sig[order[i - 1]]) {
        next[order[i]] = next[order[i - 1]];
      } else {
        next[order[i]] = i;
        ++next_cells;
      }
    }
    color = std::move(next);
    if (next_cells == cells) return;
    cells = next_cells;
  }
}

std::vector<std::uint64_t> make_certificate(const LabeledGraph& g,
                                            const std::vector<int>& rank) {
  const int n = g.size();
  std::vector<int> by_rank(n);
  for (int v = 0; v < n; ++v) by_rank[rank[v]] = v;
  std::vector<std::uint64_t> cert;
  cert.reserve(2 * n + 1);
  cert.push_back(static_cast<std::uint64_t>(n));
  for (int r = 0; r < n; ++r) cert.push_back(g.labels[by_rank[r]]);
  std::vector<std::uint64_t> row;
  for (int r = 0; r < n; ++r) {
    const int v = by_rank[r];
    row.clear();
    for (const auto& [u, label] : g.adjacency[v]) {
      row.push_back((static_cast<std::uint64_t>(rank[u]) << 32) | label);
    }
    std::sort(row.begin(), row.end());
    cert.push_back(row.size());
    cert.insert(cert.end(), row.begin(), row.end());
  }
  return cert;
}

class Search {
 public:
  explicit Search(const LabeledGraph& g) : g_(g) {}

  CanonicalForm run() {
    Coloring color = initial_coloring(g_);
    std::vector<int> path;
    descend(std::move(color), path);
    return {best_rank_, best_cert_};
  }

 private:
  const LabeledGraph& g_;
  bool have_best_ = false;
  std::vector<int> best_rank_;
  std::vector<int> best_by_rank_;
  std::vector<std::uint64_t> best_cert_;
  std::vector<std::vector<int>> automorphisms_;

  void descend(Coloring color, std::vector<int>& path) {
    refine(g_, color);
    const int n = g_.size();

    // Target cell: the non-singleton cell with the smallest colour.
    std::vector<int> cell_size(n, 0);
    for (int c : color) ++cell_size[c];
    int target = -1;
    for (int c = 0; c < n; ++c) {
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) {
      visit_leaf(color);
      return;
    }

    std::vector<int> members;
    for (int v = 0; v < n; ++v) {
      if (color[v] == target) members.push_back(v);
    }
    std::vector<int> explored;
    for (int w : members) {
      if (in_explored_orbit(w, explored, path)) continue;
      explored.push_back(w);
      Coloring next = color;
      for (int m : members) next[m] = target + 1;
      next[w] = target;
      path.push_back(w);
      descend(std::move(next), path);
      path.pop_back();
    }
  }

  void visit_leaf(const Coloring& rank) {
    std::vector<std::uint64_t> cert = make_certificate(g_, rank);
    if (!have_best_ || cert < best_cert_) {
      have_best_ = true;
      best_cert_ = std::move(cert);
      best_rank_ = rank;
      best_by_rank_.assign(rank.size(), 0);
      for (int v = 0; v < static_cast<int>(rank.size()); ++v) best_by_rank_[rank[v]] = v;
      return;
    }
    if (cert == best_cert_) {
      // Two leaves with one certificate differ by an automorphism.
      std::vector<int> perm(rank.size());
      bool identity = true;
      for (int v = 0; v < static_cast<int>(rank.size()); ++v) {
        perm[v] = best_by_rank_[rank[v]];
        identity = identity && perm[v] == v;
      }
      if (!identity) automorphisms_.push_back(std::move(perm));
    }
  }

  // True if w shares an orbit with an explored vertex under the subgroup of
  // known automorphisms fixing the current path pointwise.
  bool in_explored_orbit(int w, const std::vector<int>& explored,
                         const std::vector<int>& path) const {
    if (explored.empty() || automorphisms_.empty()) return false;
    const int n = g_.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool any = false;
    for (const auto& perm : automorphisms_) {
      const bool fixes_path = std::all_of(path.begin(), path.end(),
                                          [&](int p) { return perm[p] == p; });
      if (!fixes_path) continue;
      any = true;
      for (int v = 0; v < n; ++v) {
        const int a = find(v);
        const int b = find(perm[v]);
        if (a != b) parent[a] = b;
      }
    }
    if (!any) return false;
    const int root = find(w);
    return std::any_of(explored.begin(), explored.end(),
                       [&](int x) { return find(x) == root; });
  }
};

}  // namespace

CanonicalForm canonicalize(const LabeledGraph& graph) {
  if (graph.size() == 0) return {{}, {0}};
  return Search(graph).run();
}

std::uint64_t atom_invariant(const MolGraph& mol, int atom) {
  const Atom& a = mol.atom(atom);
  // Degree first so that canonical strings start at a terminal atom.
  return static_cast<std::uint64_t>(mol.degree(atom)) << 40 |
         static_cast<std::uint64_t>(a.element) << 32 |
         static_cast<std::uint64_t>(a.aromatic) << 24 |
         static_cast<std::uint64_t>(a.formal_charge + 8) << 16 |
         static_cast<std::uint64_t>(a.total_h());
}

std::uint64_t pattern_invariant(const MolGraph& mol, int atom) {
  const Atom& a = mol.atom(atom);
  return static_cast<std::uint64_t>(mol.degree(atom)) << 40 |
         static_cast<std::uint64_t>(a.element) << 32 |
         static_cast<std::uint64_t>(a.aromatic) << 24 |
         static_cast<std::uint64_t>(a.formal_charge + 8) << 16;
}

LabeledGraph labeled_graph(const MolGraph& mol, bool pattern_labels) {
  LabeledGraph g;
  const int n = mol.num_atoms();
  g.labels.resize(n);
  g.adjacency.resize(n);
  for (int i = 0; i < n; ++i) {
    g.labels[i] = pattern_labels ? pattern_invariant(mol, i) : atom_invariant(mol, i);
    for (const Neighbor& nb : mol.neighbors(i)) {
      g.adjacency[i].emplace_back(nb.atom,
                                  static_cast<std::uint32_t>(mol.bond(nb.bond).order));
    }
  }
  return g;
}

CanonicalRanking canonical_rank(const MolGraph& mol) {
  return {canonicalize(labeled_graph(mol)).rank};
}

std::vector<RankedAtom> ranked_adjacency(const MolGraph& mol,
                                         const std::vector<int>& rank) {
  std::vector<RankedAtom> out(mol.num_atoms());
  for (int i = 0; i < mol.num_atoms(); ++i) {
    RankedAtom& ra = out[rank[i]];
    ra.invariant = atom_invariant(mol, i);
    for (const Neighbor& nb : mol.neighbors(i)) {
      ra.neighbors.emplace_back(rank[nb.atom], static_cast<int>(mol.bond(nb.bond).order));
    }
    std::sort(ra.neighbors.begin(), ra.neighbors.end());
  }
  return out;
}

}  // namespace graphbpe
