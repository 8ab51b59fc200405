// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_CANON_H_
#define GRAPHBPE_CANON_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "graphbpe/mol_graph.h"

namespace graphbpe {

// Vertex- and edge-labelled undirected graph, the input of the canonicalizer.
struct LabeledGraph {
  std::vector<std::uint64_t> labels;
  std::vector<std::vector<std::pair<int, std::uint32_t>>> adjacency;

  int size() const { return static_cast<int>(labels.size()); }
};

struct CanonicalForm {
  // rank[v] is the canonical position of vertex v; a permutation of 0..n-1.
  std::vector<int> rank;
  // Labels and ranked adjacency. Two graphs are isomorphic iff their
  // certificates are equal.
  std::vector<std::uint64_t> certificate;
};

// Canonical labelling by colour refinement and individualization with an
// exhaustive search over target-cell choices, pruned with the automorphisms
// discovered along the way. The initial partition orders vertices by label.
CanonicalForm canonicalize(const LabeledGraph& graph);

// Atom label used for whole molecules: element, charge, aromatic flag,
// degree and total hydrogen count.
std::uint64_t atom_invariant(const MolGraph& mol, int atom);
// Atom label used for pattern keys: no hydrogen or connection information.
std::uint64_t pattern_invariant(const MolGraph& mol, int atom);

LabeledGraph labeled_graph(const MolGraph& mol, bool pattern_labels = false);

struct CanonicalRanking {
  std::vector<int> rank;
};

// Deterministic canonical atom ranking: isomorphic molecules given in any
// atom order yield identical ranked adjacency structures.
CanonicalRanking canonical_rank(const MolGraph& mol);

struct RankedAtom {
  std::uint64_t invariant;
  std::vector<std::pair<int, int>> neighbors;  // (rank, bond order), sorted

  friend bool operator==(const RankedAtom&, const RankedAtom&) = default;
};

// The molecule viewed through a ranking, indexed by rank. Equal for
// isomorphic inputs ranked by canonical_rank.
std::vector<RankedAtom> ranked_adjacency(const MolGraph& mol,
                                         const std::vector<int>& rank);

}  // namespace graphbpe

#endif  // GRAPHBPE_CANON_H_
