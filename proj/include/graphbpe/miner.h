// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_MINER_H_
#define GRAPHBPE_MINER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphbpe/merging_graph.h"
#include "graphbpe/motif.h"
#include "graphbpe/mol_graph.h"
#include "graphbpe/ops.h"
#include "graphbpe/tokenizer.h"

namespace graphbpe {

// Pattern of F_i (+) F_j counted once per merging-graph edge. Recomputes
// every key; the learner keeps its own incremental counts.
std::map<std::string, std::int64_t> count_pair_patterns(std::span<const MergingGraph> states);

// Greedy merge-operation learner. Keeps per-edge pattern keys and global
// counts up to date across iterations instead of recounting the corpus.
class MergeLearner {
 public:
  MergeLearner(std::span<const MolGraph> corpus, int threads = 1);

  // Picks the most frequent pattern (ties: smallest key), applies one merge
  // pass for it to every molecule containing it and returns the operation.
  // Returns nullopt once no edges remain.
  std::optional<MergeOperation> step();

  const OpsList& ops() const { return ops_; }
  const std::vector<MergingGraph>& states() const { return states_; }
  // Current counts, zero entries dropped.
  std::map<std::string, std::int64_t> counts() const;

 private:
  using KeyCache = std::unordered_map<FragmentEdge, int, FragmentEdgeHash>;

  int threads_;
  std::vector<MergingGraph> states_;
  std::vector<KeyCache> edge_keys_;  // per molecule: edge -> interned key id
  std::vector<std::string> key_names_;
  std::unordered_map<std::string, int> key_ids_;
  std::vector<std::int64_t> counts_;
  std::vector<std::vector<int>> postings_;  // key id -> molecules that may contain it
  OpsList ops_;

  int intern(const std::string& key);
};

OpsList learn_merging_operations(std::span<const MolGraph> corpus, int k, int threads = 1);

struct VocabularyBuild {
  MotifVocabulary vocabulary;
  std::vector<Fragmentation> fragmentations;  // per corpus molecule
  double mean_fragments = 0.0;
};

// Fragmentizes every molecule with `ops`, counts motif occurrences and the
// site-type pairs of every broken bond.
VocabularyBuild build_motif_vocabulary(std::span<const MolGraph> corpus, const OpsList& ops,
                                       int threads = 1);

}  // namespace graphbpe

#endif  // GRAPHBPE_MINER_H_
