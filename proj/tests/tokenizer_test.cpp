// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "graphbpe/generator.h"
#include "graphbpe/io.h"
#include "graphbpe/miner.h"
#include "graphbpe/smiles.h"
#include "graphbpe/tokenizer.h"
#include "oracles.h"
#include "test_paths.h"

namespace graphbpe {
namespace {

OpsList ops_of(std::initializer_list<const char*> patterns) {
  OpsList ops;
  for (const char* p : patterns) ops.push_back({static_cast<int>(ops.size()), p, 0});
  return ops;
}

std::vector<std::string> sorted_patterns(const MergingGraph& g) {
  std::vector<std::string> out = fragment_patterns(g);
  std::sort(out.begin(), out.end());
  return out;
}

std::string canon(const char* motif) { return motif_from_smiles(motif).smiles; }

TEST(ApplyOperations, SequentialOrderMatters) {
  const MolGraph m = parse_smiles("CCN");
  EXPECT_EQ(sorted_patterns(apply_operations(m, ops_of({"CN", "CC"}))),
            (std::vector<std::string>{"C", "CN"}));
  EXPECT_EQ(sorted_patterns(apply_operations(m, ops_of({"CC", "CN"}))),
            (std::vector<std::string>{"CC", "N"}));
}

TEST(ApplyOperations, NoOperationsKeepsAtoms) {
  const MolGraph m = parse_smiles("Cc1cccc(O)c1");
  EXPECT_EQ(apply_operations(m, OpsList{}).num_fragments(), m.num_atoms());
}

TEST(Fragmentize, WorkedExample) {
  const Fragmentation f = fragmentize(parse_smiles("CCN"), ops_of({"CN", "CC"}));
  std::vector<std::string> motifs;
  for (const MotifInstance& m : f.motifs) motifs.push_back(m.smiles);
  std::sort(motifs.begin(), motifs.end());
  std::vector<std::string> expected = {canon("*C"), canon("*CN")};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(motifs, expected);
  ASSERT_EQ(f.broken_bonds.size(), 1u);
  EXPECT_EQ(f.broken_bonds[0].order, BondOrder::kSingle);
}

TEST(Fragmentize, SingleFragment) {
  const Fragmentation f = fragmentize(parse_smiles("CCO"), ops_of({"CC", "CCO"}));
  ASSERT_EQ(f.motifs.size(), 1u);
  EXPECT_EQ(f.motifs[0].smiles, "CCO");
  EXPECT_TRUE(f.broken_bonds.empty());
}

TEST(Fragmentize, Bromobenzene) {
  const OpsList ops = ops_of({"c:c", "c:c:c:c", "c1:c:c:c:c:c:1"});
  const Fragmentation f = fragmentize(parse_smiles("Brc1ccccc1"), ops);
  ASSERT_EQ(f.motifs.size(), 2u);
  ASSERT_EQ(f.broken_bonds.size(), 1u);
  EXPECT_EQ(f.broken_bonds[0].order, BondOrder::kSingle);
  std::vector<std::string> motifs = {f.motifs[0].smiles, f.motifs[1].smiles};
  std::sort(motifs.begin(), motifs.end());
  EXPECT_EQ(motifs, (std::vector<std::string>{canon("*Br"), canon("*c1ccccc1")}));
}

TEST(Fragmentize, ReassemblingBrokenBondsGivesTheMolecule) {
  const std::vector<MolGraph> corpus = parse_corpus(read_corpus_file(test_paths::kFixture1k));
  const OpsList ops = learn_merging_operations(corpus, 50);
  for (std::size_t i = 0; i < 200; ++i) {
    const Fragmentation f = fragmentize(corpus[i], ops);
    // Glue instance graphs back along the broken bonds.
    MolGraph glued;
    std::vector<std::vector<int>> index(f.motifs.size());
    for (std::size_t m = 0; m < f.motifs.size(); ++m) {
      const MotifInstance& inst = f.motifs[m];
      for (std::size_t a = 0; a < inst.atoms.size(); ++a) {
        index[m].push_back(glued.add_atom(inst.instance.atom(static_cast<int>(a))));
      }
      for (const Bond& b : inst.instance.bonds()) {
        if (b.end < static_cast<int>(inst.atoms.size())) {
          glued.add_bond(index[m][b.begin], index[m][b.end], b.order);
        }
      }
    }
    for (const BrokenBond& b : f.broken_bonds) {
      const Bond& bond = corpus[i].bond(b.bond);
      auto local = [&](int m, int atom) {
        const auto& atoms = f.motifs[m].atoms;
        return index[m][std::find(atoms.begin(), atoms.end(), atom) - atoms.begin()];
      };
      const bool forward = std::binary_search(f.motifs[b.motif_a].atoms.begin(),
                                              f.motifs[b.motif_a].atoms.end(), bond.begin);
      glued.add_bond(local(b.motif_a, forward ? bond.begin : bond.end),
                     local(b.motif_b, forward ? bond.end : bond.begin), b.order);
    }
    ASSERT_TRUE(oracle::isomorphic(glued, corpus[i], true)) << write_smiles(corpus[i]);
  }
}

TEST(Fragmentize, MatchesVocabularyConstruction) {
  const std::vector<MolGraph> corpus = parse_corpus(read_corpus_file(test_paths::kFixture1k));
  const OpsList ops = learn_merging_operations(corpus, 100, 4);
  const VocabularyBuild build = build_motif_vocabulary(corpus, ops, 4);
  std::map<std::string, std::int64_t> counts;
  for (const MolGraph& m : corpus) {
    for (const MotifInstance& inst : fragmentize(m, ops).motifs) ++counts[inst.smiles];
  }
  ASSERT_EQ(static_cast<int>(counts.size()), build.vocabulary.size());
  for (const Motif& m : build.vocabulary.motifs()) EXPECT_EQ(counts[m.smiles], m.frequency);
}

TEST(ExtractTrajectory, SingleMotif) {
  const Trajectory t = extract_trajectory(parse_smiles("CCO"), ops_of({"CC", "CCO"}));
  EXPECT_EQ(t.start, "CCO");
  EXPECT_TRUE(t.steps.empty());
}

TEST(ExtractTrajectory, WorkedExample) {
  const Trajectory t = extract_trajectory(parse_smiles("CCN"), ops_of({"CN", "CC"}));
  EXPECT_EQ(t.start, canon("*CN"));
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.steps[0].kind, TrajectoryStep::Kind::kAttach);
  EXPECT_EQ(t.steps[0].motif, canon("*C"));
}

TEST(ExtractTrajectory, DoublyJoinedPairIsAttachThenCyclize) {
  // Under [CC] the scan merges {0,1} and {2,3}; the two halves share two bonds.
  const MolGraph m = parse_smiles("C1CCC1");
  const Fragmentation f = fragmentize(m, ops_of({"CC"}));
  ASSERT_EQ(f.motifs.size(), 2u);
  ASSERT_EQ(f.broken_bonds.size(), 2u);
  const Trajectory t = extract_trajectory(f);
  ASSERT_EQ(t.steps.size(), 2u);
  EXPECT_EQ(t.steps[0].kind, TrajectoryStep::Kind::kAttach);
  EXPECT_EQ(t.steps[1].kind, TrajectoryStep::Kind::kCyclize);

  const MolGraph bicyclic = parse_smiles("C1CC2CCC1C2");
  const Trajectory tb = extract_trajectory(bicyclic, ops_of({"CC"}));
  const Fragmentation fb = fragmentize(bicyclic, ops_of({"CC"}));
  int attaches = 0;
  for (const TrajectoryStep& s : tb.steps) attaches += s.kind == TrajectoryStep::Kind::kAttach;
  EXPECT_EQ(attaches, static_cast<int>(fb.motifs.size()) - 1);
  EXPECT_EQ(tb.steps.size(), fb.broken_bonds.size());
}

TEST(ExtractTrajectory, StartIsTheLargestMotif) {
  const std::vector<MolGraph> corpus = parse_corpus(read_corpus_file(test_paths::kFixture1k));
  const OpsList ops = learn_merging_operations(corpus, 50);
  for (std::size_t i = 0; i < 100; ++i) {
    const Fragmentation f = fragmentize(corpus[i], ops);
    const Trajectory t = extract_trajectory(f);
    std::size_t largest = 0;
    for (const MotifInstance& m : f.motifs) largest = std::max(largest, m.atoms.size());
    EXPECT_EQ(static_cast<std::size_t>(motif_from_smiles(t.start).num_heavy_atoms()), largest);
  }
}

TEST(ExtractTrajectory, ReplayReproducesTheCorpus) {
  const std::vector<MolGraph> corpus = parse_corpus(read_corpus_file(test_paths::kFixture1k));
  for (int k : {0, 50, 200}) {
    const OpsList ops = learn_merging_operations(corpus, k, 4);
    const MotifVocabulary vocab = build_motif_vocabulary(corpus, ops, 4).vocabulary;
    for (const MolGraph& m : corpus) {
      const Trajectory t = extract_trajectory(m, ops);
      ASSERT_EQ(write_smiles(replay_trajectory(t, vocab)), t.smiles) << "K=" << k;
    }
  }
}

TEST(Trajectory, JsonRoundTrip) {
  const Trajectory t = extract_trajectory(parse_smiles("C1CCC1"), ops_of({"CC"}));
  const std::string line = trajectory_to_json(t);
  EXPECT_EQ(trajectory_from_json(line), t);
  std::stringstream s;
  write_trajectories(s, {t, t});
  EXPECT_EQ(read_trajectories(s).size(), 2u);
  EXPECT_THROW(trajectory_from_json("{\"steps\": []}"), std::invalid_argument);
}

TEST(ApplyOperations, TimeGrowsLinearlyWithBonds) {
  const std::vector<MolGraph> corpus = parse_corpus(read_corpus_file(test_paths::kFixture2k));
  const OpsList ops = learn_merging_operations(corpus, 200, 4);
  // Long chains of a repeated fixture molecule: n and 4n bonds.
  auto chain = [&](int copies) {
    std::string s;
    for (int i = 0; i < copies; ++i) s += "CC(=O)Nc1ccc(O)cc1";
    return parse_smiles(s);
  };
  auto seconds = [&](const MolGraph& m) {
    double best = 1e300;
    for (int r = 0; r < 3; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      apply_operations(m, ops);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
  };
  const double small = seconds(chain(10));
  const double large = seconds(chain(40));
  // Linear would be 4x; allow slack for the sort in each pass.
  EXPECT_LT(large / small, 10.0) << small << " s vs " << large << " s";
}

}  // namespace
}  // namespace graphbpe
