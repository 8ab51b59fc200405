// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/miner.h"

#include <algorithm>

#include "graphbpe/parallel.h"

namespace graphbpe {

std::map<std::string, std::int64_t> count_pair_patterns(std::span<const MergingGraph> states) {
  std::map<std::string, std::int64_t> counts;
  for (const MergingGraph& g : states) {
    for (const FragmentEdge& e : g.edges()) ++counts[g.edge_key(e)];
  }
  return counts;
}

MergeLearner::MergeLearner(std::span<const MolGraph> corpus, int threads)
    : threads_(std::max(threads, 1)) {
  const std::size_t n = corpus.size();
  states_.reserve(n);
  for (const MolGraph& mol : corpus) {
    states_.emplace_back(std::make_shared<const MolGraph>(mol));
  }
  // Keys are computed in parallel, interned serially in molecule order.
  std::vector<std::vector<std::pair<FragmentEdge, std::string>>> initial(n);
  parallel_for(n, threads_, [&](std::size_t i) {
    for (const FragmentEdge& e : states_[i].edges()) {
      initial[i].emplace_back(e, states_[i].edge_key(e));
    }
  });
  edge_keys_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [e, key] : initial[i]) {
      const int id = intern(key);
      edge_keys_[i][e] = id;
      if (counts_[id]++ == 0 || postings_[id].back() != static_cast<int>(i)) {
        postings_[id].push_back(static_cast<int>(i));
      }
    }
  }
}

int MergeLearner::intern(const std::string& key) {
  auto [it, inserted] = key_ids_.emplace(key, static_cast<int>(key_names_.size()));
  if (inserted) {
    key_names_.push_back(key);
    counts_.push_back(0);
    postings_.emplace_back();
  }
  return it->second;
}

std::map<std::string, std::int64_t> MergeLearner::counts() const {
  std::map<std::string, std::int64_t> out;
  for (std::size_t id = 0; id < counts_.size(); ++id) {
    if (counts_[id] > 0) out[key_names_[id]] = counts_[id];
  }
  return out;
}

std::optional<MergeOperation> MergeLearner::step() {
  int best = -1;
  for (int id = 0; id < static_cast<int>(counts_.size()); ++id) {
    if (counts_[id] <= 0) continue;
    if (best < 0 || counts_[id] > counts_[best] ||
        (counts_[id] == counts_[best] && key_names_[id] < key_names_[best])) {
      best = id;
    }
  }
  if (best < 0) return std::nullopt;
  MergeOperation op{static_cast<int>(ops_.size()), key_names_[best], counts_[best]};

  std::vector<int> molecules = std::move(postings_[best]);
  postings_[best].clear();
  std::sort(molecules.begin(), molecules.end());
  molecules.erase(std::unique(molecules.begin(), molecules.end()), molecules.end());

  // Per molecule: apply the pass, then report removed key ids and new edges.
  struct Delta {
    std::vector<int> removed;
    std::vector<std::pair<FragmentEdge, std::string>> added;
  };
  std::vector<Delta> deltas(molecules.size());
  const std::string& pattern = key_names_[best];
  parallel_for(molecules.size(), threads_, [&](std::size_t t) {
    const int i = molecules[t];
    MergingGraph& g = states_[i];
    KeyCache& cache = edge_keys_[i];
    const std::vector<int> created =
        apply_merge_pass(g, pattern, [&](const FragmentEdge& e) -> const std::string& {
          return key_names_[cache.at(e)];
        });
    if (created.empty()) return;
    Delta& d = deltas[t];
    for (auto it = cache.begin(); it != cache.end();) {
      if (!g.alive(it->first.a) || !g.alive(it->first.b)) {
        d.removed.push_back(it->second);
        it = cache.erase(it);
      } else {
        ++it;
      }
    }
    for (const FragmentEdge& e : g.edges()) {
      if (!cache.contains(e)) d.added.emplace_back(e, g.edge_key(e));
    }
  });

  for (std::size_t t = 0; t < molecules.size(); ++t) {
    const int i = molecules[t];
    for (int id : deltas[t].removed) --counts_[id];
    for (const auto& [e, key] : deltas[t].added) {
      const int id = intern(key);
      edge_keys_[i][e] = id;
      ++counts_[id];
      if (postings_[id].empty() || postings_[id].back() != i) postings_[id].push_back(i);
    }
  }
  // A molecule skipped by the guard keeps edges with this pattern.
  for (int i : molecules) {
    for (const auto& [e, id] : edge_keys_[i]) {
      if (id == best) {
        postings_[best].push_back(i);
        break;
      }
    }
  }
  ops_.push_back(op);
  return op;
}

OpsList learn_merging_operations(std::span<const MolGraph> corpus, int k, int threads) {
  MergeLearner learner(corpus, threads);
  for (int i = 0; i < k; ++i) {
    if (!learner.step()) break;
  }
  return learner.ops();
}

VocabularyBuild build_motif_vocabulary(std::span<const MolGraph> corpus, const OpsList& ops,
                                       int threads) {
  VocabularyBuild out;
  out.fragmentations.resize(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    out.fragmentations[i] = fragmentize(corpus[i], ops);
  });

  // One representative instance per motif string, in first-seen order.
  std::map<std::string, std::int64_t> frequency;
  std::map<std::string, const MotifInstance*> representative;
  std::size_t total_fragments = 0;
  for (const Fragmentation& f : out.fragmentations) {
    total_fragments += f.motifs.size();
    for (const MotifInstance& m : f.motifs) {
      ++frequency[m.smiles];
      representative.emplace(m.smiles, &m);
    }
  }
  std::vector<const MotifInstance*> reps;
  for (const auto& [smiles, m] : representative) reps.push_back(m);
  std::vector<Motif> motifs(reps.size());
  parallel_for(reps.size(), threads, [&](std::size_t i) {
    motifs[i] = make_motif(reps[i]->instance);
    motifs[i].frequency = frequency.at(motifs[i].smiles);
  });
  std::unordered_map<std::string, const Motif*> by_smiles;
  for (const Motif& m : motifs) by_smiles[m.smiles] = &m;

  AttachmentCounts attachments;
  for (const Fragmentation& f : out.fragmentations) {
    for (const BrokenBond& b : f.broken_bonds) {
      const Motif& ma = *by_smiles.at(f.motifs[b.motif_a].smiles);
      const Motif& mb = *by_smiles.at(f.motifs[b.motif_b].smiles);
      std::string ka = site_type_key(ma, *ma.site_at(b.star_a));
      std::string kb = site_type_key(mb, *mb.site_at(b.star_b));
      if (kb < ka) std::swap(ka, kb);
      ++attachments[{ka, kb}];
    }
  }
  out.mean_fragments =
      corpus.empty() ? 0.0 : static_cast<double>(total_fragments) / static_cast<double>(corpus.size());
  out.vocabulary = MotifVocabulary(std::move(motifs), attachments);
  return out;
}

}  // namespace graphbpe
