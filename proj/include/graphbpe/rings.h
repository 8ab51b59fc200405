// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_RINGS_H_
#define GRAPHBPE_RINGS_H_

#include <span>
#include <utility>
#include <vector>

#include "graphbpe/mol_graph.h"

namespace graphbpe {

// Edge indices that are bridges of the undirected graph with `num_vertices`
// vertices and the given edge list.
std::vector<int> find_bridges(int num_vertices,
                              std::span<const std::pair<int, int>> edges);

// Bonds lying on at least one cycle, ascending.
std::vector<int> ring_bonds(const MolGraph& mol);

}  // namespace graphbpe

#endif  // GRAPHBPE_RINGS_H_
