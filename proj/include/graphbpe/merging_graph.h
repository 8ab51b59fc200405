// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_MERGING_GRAPH_H_
#define GRAPHBPE_MERGING_GRAPH_H_

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphbpe/mol_graph.h"

namespace graphbpe {

// Canonical pattern key of a fragment: the hydrogen-free canonical string of
// its induced subgraph. Bonds leaving the fragment are not encoded.
std::string pattern_key(const MolGraph& mol, std::span<const int> atoms);

struct Fragment {
  int id = -1;
  std::vector<int> atoms;  // ascending parent atom indices
};

struct FragmentEdge {
  int a;  // fragment ids, a < b
  int b;

  friend bool operator==(const FragmentEdge&, const FragmentEdge&) = default;
  friend auto operator<=>(const FragmentEdge&, const FragmentEdge&) = default;
};

struct FragmentEdgeHash {
  std::size_t operator()(const FragmentEdge& e) const {
    return std::hash<long long>()((static_cast<long long>(e.a) << 32) ^ e.b);
  }
};

class MergeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Partition of a molecule's atoms into connected fragments together with
// their adjacency. Starts with one fragment per atom. Merged fragments get a
// fresh id, so a fragment id always denotes the same atom set.
class MergingGraph {
 public:
  MergingGraph(std::shared_ptr<const MolGraph> mol, std::shared_ptr<const std::vector<int>> rank);
  // Ranks the molecule with canonical_rank.
  explicit MergingGraph(std::shared_ptr<const MolGraph> mol);

  const MolGraph& molecule() const { return *mol_; }
  const std::vector<int>& atom_rank() const { return *rank_; }

  int num_fragments() const { return live_; }
  int fragment_of(int atom) const { return fragment_of_[atom]; }
  const std::vector<int>& atoms_of(int fragment) const { return members_[fragment]; }
  bool alive(int fragment) const { return !members_[fragment].empty(); }

  // Live fragments ordered by their smallest atom rank.
  std::vector<Fragment> fragments() const;

  // Adjacent fragment pairs in scan order: ascending (smaller, larger) of the
  // two fragments' minimum canonical atom ranks.
  std::vector<FragmentEdge> edges() const;
  bool adjacent(int a, int b) const;

  // F_a (+) F_b: the union of both atom sets. The induced subgraph contains
  // every molecule bond between them. Throws MergeError if not adjacent.
  Fragment merged(int a, int b) const;
  // Replaces fragments a and b by their union; returns the new id.
  int merge(int a, int b);

  std::string edge_key(const FragmentEdge& e) const;

 private:
  std::shared_ptr<const MolGraph> mol_;
  std::shared_ptr<const std::vector<int>> rank_;
  std::vector<int> fragment_of_;
  std::vector<std::vector<int>> members_;    // by fragment id; empty once merged
  std::vector<std::vector<int>> neighbors_;  // adjacent fragment ids
  std::vector<int> min_rank_;
  int live_ = 0;
};

// Standalone form of the (+) operator over a molecule.
Fragment merge_fragments(const MergingGraph& graph, int a, int b);

// One pass of a merge operation: every edge present at the start of the pass
// whose merged pattern equals `pattern` is merged, in scan order, skipping
// edges with an endpoint already merged during this pass. Keys are read from
// `key_of`, which must cover all current edges. Returns the new fragment ids.
template <typename KeyLookup>
std::vector<int> apply_merge_pass(MergingGraph& graph, const std::string& pattern,
                                  KeyLookup&& key_of) {
  std::vector<int> created;
  std::vector<int> consumed;
  auto is_consumed = [&](int f) {
    for (int c : consumed) {
      if (c == f) return true;
    }
    return false;
  };
  for (const FragmentEdge& e : graph.edges()) {
    if (is_consumed(e.a) || is_consumed(e.b)) continue;
    if (key_of(e) != pattern) continue;
    consumed.push_back(e.a);
    consumed.push_back(e.b);
    created.push_back(graph.merge(e.a, e.b));
  }
  return created;
}

}  // namespace graphbpe

#endif  // GRAPHBPE_MERGING_GRAPH_H_
