// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/rings.h"

#include <algorithm>

namespace graphbpe {

std::vector<int> find_bridges(int num_vertices,
                              std::span<const std::pair<int, int>> edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(num_vertices);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, e);
    adj[edges[e].second].emplace_back(edges[e].first, e);
  }
  std::vector<int> disc(num_vertices, -1);
  std::vector<int> low(num_vertices, 0);
  std::vector<int> bridges;
  int timer = 0;

  // Iterative lowlink DFS: (vertex, parent edge, next adjacency index).
  struct Frame {
    int v;
    int parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int root = 0; root < num_vertices; ++root) {
    if (disc[root] >= 0) continue;
    disc[root] = low[root] = timer++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        const auto [u, e] = adj[f.v][f.next++];
        if (e == f.parent_edge) continue;
        if (disc[u] >= 0) {
          low[f.v] = std::min(low[f.v], disc[u]);
        } else {
          disc[u] = low[u] = timer++;
          stack.push_back({u, e, 0});
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame& parent = stack.back();
        low[parent.v] = std::min(low[parent.v], low[done.v]);
        if (low[done.v] > disc[parent.v]) bridges.push_back(done.parent_edge);
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

std::vector<int> ring_bonds(const MolGraph& mol) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(mol.num_bonds());
  for (const Bond& b : mol.bonds()) edges.emplace_back(b.begin, b.end);
  const std::vector<int> bridges = find_bridges(mol.num_atoms(), edges);
  std::vector<int> out;
  for (int b = 0; b < mol.num_bonds(); ++b) {
    if (!std::binary_search(bridges.begin(), bridges.end(), b)) out.push_back(b);
  }
  return out;
}

}  // namespace graphbpe
