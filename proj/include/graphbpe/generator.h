// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_GENERATOR_H_
#define GRAPHBPE_GENERATOR_H_

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "graphbpe/generation_state.h"
#include "graphbpe/motif.h"
#include "graphbpe/mol_graph.h"
#include "graphbpe/tokenizer.h"

namespace graphbpe {

// A connection site that can resolve the focus: a "*" of a vocabulary motif
// or an open site of the partial molecule (by queue position).
struct Candidate {
  enum class Kind { kVocab, kPartial };
  Kind kind = Kind::kVocab;
  int motif = -1;
  int star = -1;
  int queue_pos = -1;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Scoring contract of the generator. Scores are unnormalized logits; the
// generator applies temperature, top-k and softmax or argmax. `seed` is the
// per-molecule context and stands in for a latent vector.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::vector<double> score_start(std::uint64_t seed) const = 0;
  virtual std::vector<double> score_connections(const GenerationState& state, int focus,
                                                std::span<const Candidate> candidates) const = 0;
};

// Frequency baseline over a vocabulary:
//   start:   log f(motif)
//   attach:  log(1 + A(focus type, site type)) + log f(motif)
//   cyclize: log(1 + w * A(focus type, partner type))
// where A is the attachment table and w the cyclize weight.
class FrequencyPolicy : public Policy {
 public:
  explicit FrequencyPolicy(const MotifVocabulary& vocab, double cyclize_weight = 1.0);
  std::vector<double> score_start(std::uint64_t seed) const override;
  std::vector<double> score_connections(const GenerationState& state, int focus,
                                        std::span<const Candidate> candidates) const override;

 private:
  const MotifVocabulary& vocab_;
  double cyclize_weight_;
  std::vector<double> log_frequency_;
};

enum class GenerationMode { kGreedy, kDistributional };

struct SamplingOptions {
  GenerationMode mode = GenerationMode::kDistributional;
  int top_k = 0;  // 0 keeps every candidate
  double temperature = 1.0;
};

using Rng = std::mt19937_64;

// Index of the chosen score. Greedy takes the first maximum; distributional
// mode samples from softmax(score / temperature) over the top-k scores.
int select_index(std::span<const double> scores, const SamplingOptions& options, Rng& rng);

// Sites that may resolve the focus: vocabulary sites of the same bond order
// in vocabulary order, then queued partial sites that can close a ring.
std::vector<Candidate> connection_candidates(const GenerationState& state,
                                             const MotifVocabulary& vocab);

GenerationState start_generation(const MotifVocabulary& vocab, const Policy& policy,
                                 std::uint64_t seed, const SamplingOptions& options, Rng& rng);

// Pops the queue head and resolves it. Throws GenerationError kNoCandidate
// when nothing can be joined to the focus.
void generation_step(GenerationState& state, const MotifVocabulary& vocab, const Policy& policy,
                     const SamplingOptions& options, Rng& rng);

// Clears aromaticity on every aromatic system that fails the aromatic rule
// (bonds become single), recomputes hydrogens and checks valences.
MolGraph finalize(const GenerationState& state);
MolGraph repair_aromaticity(MolGraph mol);

struct GenerationConfig {
  int num = 0;
  SamplingOptions sampling;
  std::uint64_t seed = 0;
  int max_steps = 100;
  int threads = 1;
};

struct GenerationReport {
  std::vector<MolGraph> molecules;  // emitted, in index order
  int emitted = 0;
  int aborted = 0;  // hit the step guard
  int failed = 0;   // other generation errors
  std::map<std::string, int> errors;
};

std::uint64_t molecule_seed(std::uint64_t master, std::uint64_t index);

GenerationReport generate(const MotifVocabulary& vocab, const Policy& policy,
                          const GenerationConfig& config);

// Runs the recorded decisions through the same state machine.
MolGraph replay_trajectory(const Trajectory& trajectory, const MotifVocabulary& vocab);

}  // namespace graphbpe

#endif  // GRAPHBPE_GENERATOR_H_
