// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/generator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "graphbpe/parallel.h"
#include "graphbpe/valence.h"

namespace graphbpe {

FrequencyPolicy::FrequencyPolicy(const MotifVocabulary& vocab, double cyclize_weight)
    : vocab_(vocab), cyclize_weight_(cyclize_weight) {
  log_frequency_.reserve(vocab.size());
  for (const Motif& m : vocab.motifs()) {
    // A zero-frequency motif only appears in hand-built vocabularies.
    log_frequency_.push_back(std::log(static_cast<double>(std::max<std::int64_t>(m.frequency, 1))));
  }
}

std::vector<double> FrequencyPolicy::score_start(std::uint64_t) const { return log_frequency_; }

std::vector<double> FrequencyPolicy::score_connections(
    const GenerationState& state, int focus, std::span<const Candidate> candidates) const {
  const SiteOrigin& fo = state.origin(focus);
  const int focus_type = vocab_.site_type_id(fo.motif, fo.star);
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const Candidate& c : candidates) {
    if (c.kind == Candidate::Kind::kVocab) {
      const auto count = static_cast<double>(
          vocab_.attachment_count(focus_type, vocab_.site_type_id(c.motif, c.star)));
      scores.push_back(std::log1p(count) + log_frequency_[c.motif]);
    } else {
      const SiteOrigin& po = state.origin(state.queue()[c.queue_pos]);
      const auto count = static_cast<double>(
          vocab_.attachment_count(focus_type, vocab_.site_type_id(po.motif, po.star)));
      scores.push_back(std::log1p(cyclize_weight_ * count));
    }
  }
  return scores;
}

namespace {

double uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

int select_index(std::span<const double> scores, const SamplingOptions& options, Rng& rng) {
  const int n = static_cast<int>(scores.size());
  if (n == 0) return -1;
  if (options.mode == GenerationMode::kGreedy) {
    return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (options.top_k > 0 && options.top_k < n) {
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });
    order.resize(options.top_k);
    std::sort(order.begin(), order.end());
  }
  double top = -std::numeric_limits<double>::infinity();
  for (int i : order) top = std::max(top, scores[i] / options.temperature);
  std::vector<double> weight(order.size());
  double total = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    weight[j] = std::exp(scores[order[j]] / options.temperature - top);
    total += weight[j];
  }
  double u = uniform(rng) * total;
  for (std::size_t j = 0; j < order.size(); ++j) {
    u -= weight[j];
    if (u < 0.0) return order[j];
  }
  return order.back();
}

std::vector<Candidate> connection_candidates(const GenerationState& state,
                                             const MotifVocabulary& vocab) {
  std::vector<Candidate> out;
  const BondOrder order = state.site_order(state.focus());
  for (const VocabSite& s : vocab.sites_with_order(order)) {
    out.push_back({Candidate::Kind::kVocab, s.motif, s.star, -1});
  }
  for (int pos = 0; pos < static_cast<int>(state.queue().size()); ++pos) {
    if (state.can_cyclize(pos)) out.push_back({Candidate::Kind::kPartial, -1, -1, pos});
  }
  return out;
}

GenerationState start_generation(const MotifVocabulary& vocab, const Policy& policy,
                                 std::uint64_t seed, const SamplingOptions& options, Rng& rng) {
  if (vocab.empty()) {
    throw GenerationError(GenerationError::Kind::kEmptyVocabulary, "vocabulary is empty");
  }
  const std::vector<double> scores = policy.score_start(seed);
  const int pick = select_index(scores, options, rng);
  return GenerationState(vocab.motif(pick), pick, seed);
}

void generation_step(GenerationState& state, const MotifVocabulary& vocab, const Policy& policy,
                     const SamplingOptions& options, Rng& rng) {
  const int focus = state.pop_focus();
  const std::vector<Candidate> candidates = connection_candidates(state, vocab);
  if (candidates.empty()) {
    throw GenerationError(GenerationError::Kind::kNoCandidate,
                          std::string("no site with bond '") +
                              bond_symbol(state.site_order(focus)) + "' for the focus");
  }
  const std::vector<double> scores = policy.score_connections(state, focus, candidates);
  const Candidate& c = candidates[select_index(scores, options, rng)];
  if (c.kind == Candidate::Kind::kVocab) {
    state.attach(vocab.motif(c.motif), c.motif, c.star);
  } else {
    state.cyclize(c.queue_pos);
  }
}

MolGraph repair_aromaticity(MolGraph mol) {
  for (const AromaticSystem& system : aromatic_systems(mol)) {
    if (aromatic_system_ok(mol, system)) continue;
    for (int b : system.bonds) mol.set_bond_order(b, BondOrder::kSingle);
    for (int a : system.atoms) mol.mutable_atom(a).aromatic = false;
    for (int a : system.atoms) {
      Atom& atom = mol.mutable_atom(a);
      if (!atom.bracket) atom.implicit_h = static_cast<std::uint8_t>(default_implicit_h(mol, a));
    }
  }
  normalize_hydrogens(mol);
  return mol;
}

MolGraph finalize(const GenerationState& state) {
  if (!state.terminal()) {
    throw GenerationError(GenerationError::Kind::kBadTrajectory, "generation is not finished");
  }
  MolGraph mol = repair_aromaticity(state.partial());
  const std::string problem = valence_problem(mol);
  if (!problem.empty()) {
    throw GenerationError(GenerationError::Kind::kIrreparableValence, problem);
  }
  return mol;
}

std::uint64_t molecule_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

const char* error_name(GenerationError::Kind kind) {
  switch (kind) {
    case GenerationError::Kind::kEmptyVocabulary:
      return "empty-vocabulary";
    case GenerationError::Kind::kNoCandidate:
      return "no-compatible-candidate";
    case GenerationError::Kind::kIncompatibleBond:
      return "incompatible-bond";
    case GenerationError::Kind::kUnknownMotif:
      return "unknown-motif";
    case GenerationError::Kind::kBadTrajectory:
      return "bad-trajectory";
    case GenerationError::Kind::kIrreparableValence:
      return "irreparable-valence";
    case GenerationError::Kind::kStepLimit:
      return "step-limit";
  }
  return "unknown";
}

}  // namespace

GenerationReport generate(const MotifVocabulary& vocab, const Policy& policy,
                          const GenerationConfig& config) {
  if (vocab.empty() && config.num > 0) {
    throw GenerationError(GenerationError::Kind::kEmptyVocabulary, "vocabulary is empty");
  }
  const std::size_t n = static_cast<std::size_t>(std::max(config.num, 0));
  std::vector<std::optional<MolGraph>> results(n);
  std::vector<int> status(n, -1);  // -1 emitted, otherwise the error kind
  parallel_for(n, config.threads, [&](std::size_t i) {
    const std::uint64_t seed = molecule_seed(config.seed, i);
    Rng rng(seed);
    try {
      GenerationState state = start_generation(vocab, policy, seed, config.sampling, rng);
      while (!state.terminal()) {
        if (state.step() >= config.max_steps) {
          throw GenerationError(GenerationError::Kind::kStepLimit, "step limit reached");
        }
        generation_step(state, vocab, policy, config.sampling, rng);
      }
      results[i] = finalize(state);
    } catch (const GenerationError& e) {
      status[i] = static_cast<int>(e.kind());
    }
  });
  GenerationReport report;
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i]) {
      report.molecules.push_back(std::move(*results[i]));
      ++report.emitted;
      continue;
    }
    const auto kind = static_cast<GenerationError::Kind>(status[i]);
    if (kind == GenerationError::Kind::kStepLimit) {
      ++report.aborted;
    } else {
      ++report.failed;
    }
    ++report.errors[error_name(kind)];
  }
  return report;
}

MolGraph replay_trajectory(const Trajectory& trajectory, const MotifVocabulary& vocab) {
  auto lookup = [&](const std::string& smiles) {
    const int m = vocab.find(smiles);
    if (m < 0) {
      throw GenerationError(GenerationError::Kind::kUnknownMotif,
                            "motif " + smiles + " is not in the vocabulary");
    }
    return m;
  };
  const int start = lookup(trajectory.start);
  GenerationState state(vocab.motif(start), start);
  for (const TrajectoryStep& step : trajectory.steps) {
    if (state.terminal()) {
      throw GenerationError(GenerationError::Kind::kBadTrajectory, "steps after the queue emptied");
    }
    const int focus = state.pop_focus();
    if (step.focus >= 0 && step.focus != focus) {
      throw GenerationError(GenerationError::Kind::kBadTrajectory,
                            "expected focus " + std::to_string(step.focus) + ", queue head is " +
                                std::to_string(focus));
    }
    if (step.kind == TrajectoryStep::Kind::kAttach) {
      const int m = lookup(step.motif);
      // A class id names its smallest star, so either identifies a site.
      state.attach(vocab.motif(m), m, step.star >= 0 ? step.star : step.site_class);
    } else {
      state.cyclize(step.target);
    }
  }
  return finalize(state);
}

}  // namespace graphbpe
