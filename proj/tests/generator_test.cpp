// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include "graphbpe/generator.h"
#include "graphbpe/io.h"
#include "graphbpe/miner.h"
#include "graphbpe/smiles.h"
#include "graphbpe/valence.h"
#include "test_paths.h"

namespace graphbpe {
namespace {

// Site type key of the i-th site of a motif given by any SMILES spelling.
std::string key(const char* smiles, int site = 0) {
  const Motif m = motif_from_smiles(smiles);
  return site_type_key(m, m.sites.at(site));
}

Motif with_frequency(const char* smiles, std::int64_t frequency) {
  Motif m = motif_from_smiles(smiles);
  m.frequency = frequency;
  return m;
}

std::string canon(const char* smiles) { return write_smiles(parse_smiles(smiles)); }

int count_stars(const MolGraph& m) { return m.num_connection_sites(); }

class ShiftedPolicy : public Policy {
 public:
  ShiftedPolicy(const Policy& inner, double shift) : inner_(inner), shift_(shift) {}
  std::vector<double> score_start(std::uint64_t seed) const override {
    std::vector<double> s = inner_.score_start(seed);
    for (double& x : s) x += shift_;
    return s;
  }
  std::vector<double> score_connections(const GenerationState& state, int focus,
                                        std::span<const Candidate> candidates) const override {
    std::vector<double> s = inner_.score_connections(state, focus, candidates);
    for (double& x : s) x += shift_;
    return s;
  }

 private:
  const Policy& inner_;
  double shift_;
};

const MotifVocabulary& fixture_vocabulary() {
  static const MotifVocabulary vocab = [] {
    const std::vector<MolGraph> corpus = parse_corpus(read_corpus_file(test_paths::kFixture1k));
    return build_motif_vocabulary(corpus, learn_merging_operations(corpus, 500, 4), 4).vocabulary;
  }();
  return vocab;
}

std::vector<std::string> smiles_of(const GenerationReport& r) {
  std::vector<std::string> out;
  for (const MolGraph& m : r.molecules) out.push_back(write_smiles(m));
  return out;
}

TEST(SelectIndex, GreedyTakesTheFirstMaximum) {
  Rng rng(1);
  const SamplingOptions greedy{GenerationMode::kGreedy};
  EXPECT_EQ(select_index(std::vector<double>{0.5, 2.0, 2.0, -1.0}, greedy, rng), 1);
  SamplingOptions top1{GenerationMode::kDistributional, 1};
  EXPECT_EQ(select_index(std::vector<double>{0.5, 2.0, 2.0, -1.0}, top1, rng), 1);
}

TEST(SelectIndex, SamplesTheSoftmax) {
  Rng rng(2);
  const std::vector<double> scores = {0.0, std::log(2.0), std::log(3.0)};
  int hits[3] = {0, 0, 0};
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++hits[select_index(scores, {}, rng)];
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(hits[i] / double(n), (i + 1) / 6.0, 0.01);

  // Top-2 with temperature 0.5 renormalizes over {2^2, 3^2}.
  SamplingOptions options{GenerationMode::kDistributional, 2, 0.5};
  int second = 0;
  for (int i = 0; i < n; ++i) {
    const int pick = select_index(scores, options, rng);
    ASSERT_NE(pick, 0);
    second += pick == 1;
  }
  EXPECT_NEAR(second / double(n), 4.0 / 13.0, 0.01);
}

TEST(Generation, ZeroSiteMotifIsTerminal) {
  const MotifVocabulary vocab({with_frequency("CCO", 3)}, {});
  const FrequencyPolicy policy(vocab);
  Rng rng(3);
  const GenerationState s = start_generation(vocab, policy, 7, {GenerationMode::kGreedy}, rng);
  EXPECT_TRUE(s.terminal());
  EXPECT_EQ(write_smiles(finalize(s)), "CCO");
}

TEST(Generation, GreedyStartIsTheMostFrequentMotif) {
  const MotifVocabulary vocab({with_frequency("CCO", 3), with_frequency("CCN", 9),
                               with_frequency("c1ccccc1", 5)},
                              {});
  const FrequencyPolicy policy(vocab);
  Rng rng(4);
  const GenerationState s = start_generation(vocab, policy, 0, {GenerationMode::kGreedy}, rng);
  EXPECT_EQ(write_smiles(finalize(s)), "CCN");
}

TEST(Generation, BromobenzeneFromTwoMotifs) {
  const MotifVocabulary vocab({with_frequency("*Br", 1), with_frequency("*c1ccccc1", 1)},
                              {{{key("*Br"), key("*c1ccccc1")}, 1}});
  const FrequencyPolicy policy(vocab);
  GenerationConfig config;
  config.num = 1;
  config.sampling.mode = GenerationMode::kGreedy;
  const GenerationReport r = generate(vocab, policy, config);
  ASSERT_EQ(r.emitted, 1);
  EXPECT_EQ(write_smiles(r.molecules[0]), canon("Brc1ccccc1"));
}

TEST(Generation, CyclizeClosesARingThatIsNotInTheVocabulary) {
  const MotifVocabulary vocab({with_frequency("*CCCCC*", 1)},
                              {{{key("*CCCCC*"), key("*CCCCC*")}, 1}});
  const FrequencyPolicy policy(vocab, 10.0);
  Rng rng(5);
  const SamplingOptions greedy{GenerationMode::kGreedy};
  GenerationState s = start_generation(vocab, policy, 0, greedy, rng);
  generation_step(s, vocab, policy, greedy, rng);
  ASSERT_TRUE(s.terminal());
  EXPECT_EQ(write_smiles(finalize(s)), "C1CCCC1");
  EXPECT_EQ(vocab.find("C1CCCC1"), -1);

  // Sampling reaches the same ring with positive probability.
  GenerationConfig config;
  config.num = 200;
  config.max_steps = 1000;
  const std::vector<std::string> out = smiles_of(generate(vocab, FrequencyPolicy(vocab), config));
  EXPECT_TRUE(std::set<std::string>(out.begin(), out.end()).count("C1CCCC1"));
}

TEST(Generation, NoCompatibleCandidate) {
  const Motif start = motif_from_smiles("*=CC");
  const MotifVocabulary vocab({with_frequency("*C", 1)}, {});
  const FrequencyPolicy policy(vocab);
  GenerationState s(start, -1);
  Rng rng(6);
  try {
    generation_step(s, vocab, policy, {}, rng);
    FAIL() << "expected an error";
  } catch (const GenerationError& e) {
    EXPECT_EQ(e.kind(), GenerationError::Kind::kNoCandidate);
  }
}

GenerationState ring_from_halves(const char* half_smiles) {
  const Motif half = motif_from_smiles(half_smiles);
  GenerationState s(half, 0);
  s.pop_focus();
  s.attach(half, 0, half.sites[0].star);
  s.pop_focus();
  EXPECT_TRUE(s.can_cyclize(0));
  s.cyclize(0);
  return s;
}

TEST(Finalize, EightMemberedAromaticRingIsKekulizedAway) {
  const GenerationState s = ring_from_halves("*:c:c:c:c:*");
  EXPECT_EQ(write_smiles(finalize(s)), canon("C1CCCCCCC1"));
}

TEST(Finalize, BenzeneKeepsItsAromaticity) {
  const GenerationState s = ring_from_halves("*:c:c:c:*");
  EXPECT_EQ(write_smiles(finalize(s)), "c1ccccc1");
}

TEST(Finalize, UnfinishedStateIsRejected) {
  const GenerationState s(motif_from_smiles("*CC"), 0);
  EXPECT_THROW(finalize(s), GenerationError);
}

TEST(Generate, ZeroMoleculesAndEmptyVocabulary) {
  const MotifVocabulary empty;
  const FrequencyPolicy policy(empty);
  EXPECT_TRUE(generate(empty, policy, {}).molecules.empty());
  GenerationConfig config;
  config.num = 1;
  try {
    generate(empty, policy, config);
    FAIL();
  } catch (const GenerationError& e) {
    EXPECT_EQ(e.kind(), GenerationError::Kind::kEmptyVocabulary);
  }
}

TEST(Generate, SeedAndThreadsFixTheOutput) {
  const MotifVocabulary& vocab = fixture_vocabulary();
  const FrequencyPolicy policy(vocab);
  GenerationConfig config;
  config.num = 300;
  config.seed = 99;
  const std::vector<std::string> one = smiles_of(generate(vocab, policy, config));
  EXPECT_EQ(smiles_of(generate(vocab, policy, config)), one);
  config.threads = 4;
  EXPECT_EQ(smiles_of(generate(vocab, policy, config)), one);
  config.seed = 100;
  EXPECT_NE(smiles_of(generate(vocab, policy, config)), one);
}

TEST(Generate, EmittedMoleculesPassTheValenceCheck) {
  const MotifVocabulary& vocab = fixture_vocabulary();
  const FrequencyPolicy policy(vocab);
  for (GenerationMode mode : {GenerationMode::kGreedy, GenerationMode::kDistributional}) {
    GenerationConfig config;
    config.num = 500;
    config.sampling.mode = mode;
    config.seed = 5;
    config.threads = 4;
    const GenerationReport r = generate(vocab, policy, config);
    EXPECT_EQ(r.emitted + r.aborted + r.failed, config.num);
    EXPECT_EQ(static_cast<int>(r.molecules.size()), r.emitted);
    EXPECT_GT(r.emitted, 0);
    for (const MolGraph& m : r.molecules) {
      ASSERT_TRUE(valence_check(m)) << write_smiles(m);
      ASSERT_EQ(m.num_connection_sites(), 0);
    }
  }
}

TEST(Generate, QueueHoldsEveryOpenSite) {
  const MotifVocabulary& vocab = fixture_vocabulary();
  const FrequencyPolicy policy(vocab);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    GenerationState s = start_generation(vocab, policy, seed, {}, rng);
    ASSERT_EQ(count_stars(s.partial()), static_cast<int>(s.queue().size()));
    for (int step = 0; step < 100 && !s.terminal(); ++step) {
      generation_step(s, vocab, policy, {}, rng);
      ASSERT_LT(s.focus(), 0);
      ASSERT_EQ(count_stars(s.partial()), static_cast<int>(s.queue().size()));
      ASSERT_EQ(s.partial().num_components(), 1);
    }
  }
}

TEST(Generate, GreedyIgnoresAConstantShift) {
  const MotifVocabulary& vocab = fixture_vocabulary();
  const FrequencyPolicy policy(vocab);
  const ShiftedPolicy shifted(policy, 7.25);
  GenerationConfig config;
  config.num = 20;
  config.sampling.mode = GenerationMode::kGreedy;
  const GenerationReport a = generate(vocab, policy, config);
  const GenerationReport b = generate(vocab, shifted, config);
  EXPECT_EQ(smiles_of(a), smiles_of(b));
  EXPECT_EQ(a.aborted, b.aborted);
}

TEST(Generate, ChainsOfAtMostTwoSitesTerminate) {
  const MotifVocabulary vocab(
      {with_frequency("*C", 4), with_frequency("*CC*", 3), with_frequency("*O", 1)},
      {{{key("*C"), key("*CC*")}, 2}, {{key("*CC*"), key("*CC*")}, 1}, {{key("*CC*"), key("*O")}, 1}});
  const FrequencyPolicy policy(vocab);
  GenerationConfig config;
  config.num = 300;
  config.max_steps = 1000000;
  const GenerationReport r = generate(vocab, policy, config);
  EXPECT_EQ(r.emitted, config.num);
}

TEST(Replay, ReportsUnknownMotifsAndBondMismatches) {
  const MotifVocabulary vocab({with_frequency("*C", 1), with_frequency("*=O", 1)}, {});
  Trajectory unknown;
  unknown.start = "*Cl";
  try {
    replay_trajectory(unknown, vocab);
    FAIL();
  } catch (const GenerationError& e) {
    EXPECT_EQ(e.kind(), GenerationError::Kind::kUnknownMotif);
  }

  const Motif start = motif_from_smiles("*C");
  const Motif oxo = motif_from_smiles("*=O");
  Trajectory mismatch;
  mismatch.start = start.smiles;
  mismatch.steps.push_back({TrajectoryStep::Kind::kAttach, start.sites[0].star, oxo.smiles,
                            oxo.sites[0].star, -1, -1});
  try {
    replay_trajectory(mismatch, vocab);
    FAIL();
  } catch (const GenerationError& e) {
    EXPECT_EQ(e.kind(), GenerationError::Kind::kIncompatibleBond);
  }
}

TEST(MoleculeSeed, DistinctPerIndex) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(molecule_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
}

}  // namespace
}  // namespace graphbpe
