// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

#include "graphbpe/canon.h"
#include "graphbpe/io.h"
#include "graphbpe/rings.h"
#include "graphbpe/smiles.h"
#include "graphbpe/valence.h"
#include "oracles.h"
#include "test_paths.h"

namespace graphbpe {
namespace {

int count_aromatic_bonds(const MolGraph& m) {
  return static_cast<int>(std::count_if(m.bonds().begin(), m.bonds().end(), [](const Bond& b) {
    return b.order == BondOrder::kAromatic;
  }));
}

TEST(ParseSmiles, Ethane) {
  const MolGraph m = parse_smiles("CC");
  ASSERT_EQ(m.num_atoms(), 2);
  ASSERT_EQ(m.num_bonds(), 1);
  EXPECT_EQ(m.bond(0).order, BondOrder::kSingle);
  EXPECT_EQ(m.atom(0).implicit_h, 3);
  EXPECT_EQ(m.atom(1).implicit_h, 3);
}

TEST(ParseSmiles, Bromobenzene) {
  const MolGraph m = parse_smiles("Brc1ccccc1");
  ASSERT_EQ(m.num_atoms(), 7);
  EXPECT_EQ(m.atom(0).element, Element::kBr);
  EXPECT_EQ(count_aromatic_bonds(m), 6);
  EXPECT_EQ(m.bond(m.find_bond(0, 1)).order, BondOrder::kSingle);
  EXPECT_EQ(ring_bonds(m).size(), 6u);
}

TEST(ParseSmiles, RingClosureBetweenAromaticAtomsIsAromatic) {
  const MolGraph m = parse_smiles("c1ccccc1");
  EXPECT_EQ(m.bond(m.find_bond(0, 5)).order, BondOrder::kAromatic);
}

TEST(ParseSmiles, EightMemberedAromaticRingIsAValenceError) {
  try {
    parse_smiles("c1ccccccc1");
    FAIL() << "expected a valence error";
  } catch (const SmilesError& e) {
    EXPECT_EQ(e.kind(), SmilesError::Kind::kValence);
  }
  const MolGraph raw = parse_smiles("c1ccccccc1", {.validate = false});
  EXPECT_EQ(raw.num_atoms(), 8);
  EXPECT_FALSE(valence_check(raw));
}

TEST(ParseSmiles, ErrorsCarryKindAndPosition) {
  struct Case {
    const char* text;
    SmilesError::Kind kind;
  };
  const Case cases[] = {
      {"CC(", SmilesError::Kind::kSyntax},
      {"C1CC", SmilesError::Kind::kRingClosure},
      {"C[Xe]", SmilesError::Kind::kUnsupportedElement},
      {"C[13C]", SmilesError::Kind::kUnsupportedFeature},
      {"C[C@H](N)O", SmilesError::Kind::kUnsupportedFeature},
      {"C/C=C/C", SmilesError::Kind::kUnsupportedFeature},
      {"C.C", SmilesError::Kind::kUnsupportedFeature},
      {"C(C)(C)(C)(C)C", SmilesError::Kind::kValence},
  };
  for (const Case& c : cases) {
    try {
      parse_smiles(c.text);
      ADD_FAILURE() << c.text << " parsed";
    } catch (const SmilesError& e) {
      EXPECT_EQ(e.kind(), c.kind) << c.text << ": " << e.what();
    }
  }
  try {
    parse_smiles("CC)C");
  } catch (const SmilesError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(ParseSmiles, BracketAtoms) {
  const MolGraph m = parse_smiles("C[NH3+]");
  EXPECT_EQ(m.atom(1).formal_charge, 1);
  EXPECT_EQ(m.atom(1).total_h(), 3);
  const MolGraph pyrrole = parse_smiles("c1cc[nH]c1");
  EXPECT_EQ(pyrrole.atom(3).total_h(), 1);
  EXPECT_TRUE(valence_check(pyrrole));
}

TEST(ValenceCheck, Table) {
  EXPECT_TRUE(valence_check(parse_smiles("C")));
  EXPECT_FALSE(valence_check(parse_smiles("N(C)(C)(C)C", {.validate = false})));
  EXPECT_TRUE(valence_check(parse_smiles("[N+](C)(C)(C)C")));
  // Bond-order sum 6 is an allowed sulfur valence.
  EXPECT_TRUE(valence_check(parse_smiles("*#S#*")));
}

TEST(WriteSmiles, BenzeneRotationsAgree) {
  const std::string expected = write_smiles(parse_smiles("c1ccccc1"));
  for (const char* s : {"c1ccccc1", "c(c1)cccc1", "c1cc(ccc1)", "c1c(cccc1)", "c(cccc1)c1"}) {
    EXPECT_EQ(write_smiles(parse_smiles(s)), expected) << s;
  }
}

TEST(WriteSmiles, StarMotifRoundTrips) {
  const std::string s = write_smiles(parse_smiles("*Br"));
  EXPECT_EQ(write_smiles(parse_smiles(s)), s);
  EXPECT_EQ(parse_smiles(s).num_atoms(), 2);
}

TEST(WriteSmiles, FixturePairsReachAFixedPoint) {
  for (const CorpusEntry& e : read_corpus_file(test_paths::kFixture1k)) {
    const MolGraph m = parse_smiles(e.smiles);
    const std::string once = write_smiles(m);
    const MolGraph back = parse_smiles(once);
    ASSERT_EQ(write_smiles(back), once) << e.smiles;
    ASSERT_TRUE(oracle::isomorphic(m, back, true)) << e.smiles;
  }
}

TEST(CanonicalRank, SingleAtom) { EXPECT_EQ(canonical_rank(parse_smiles("C")).rank, std::vector<int>{0}); }

TEST(CanonicalRank, EthanolUnderAllOrders) {
  const MolGraph m = parse_smiles("CCO");
  const auto expected = ranked_adjacency(m, canonical_rank(m).rank);
  std::vector<int> p = {0, 1, 2};
  do {
    const MolGraph q = m.permuted(p);
    EXPECT_EQ(ranked_adjacency(q, canonical_rank(q).rank), expected);
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(CanonicalRank, BenzeneRanksAreDistinct) {
  std::vector<int> rank = canonical_rank(parse_smiles("c1ccccc1")).rank;
  std::sort(rank.begin(), rank.end());
  EXPECT_EQ(rank, (std::vector<int>{0, 1, 2, 3, 4, 5}));
}

TEST(CanonicalRank, PermutationInvarianceOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const MolGraph m = oracle::random_molecule(rng, 12);
    const auto expected = ranked_adjacency(m, canonical_rank(m).rank);
    for (int k = 0; k < 4; ++k) {
      const MolGraph q = m.permuted(oracle::random_permutation(rng, m.num_atoms()));
      ASSERT_EQ(ranked_adjacency(q, canonical_rank(q).rank), expected) << write_smiles(m);
      ASSERT_EQ(write_smiles(q), write_smiles(m));
    }
  }
}

TEST(CanonicalRank, NonIsomorphicGraphsGetDifferentStrings) {
  std::mt19937_64 rng(12);
  std::vector<MolGraph> mols;
  for (int i = 0; i < 150; ++i) mols.push_back(oracle::random_molecule(rng, 7));
  for (std::size_t i = 0; i < mols.size(); ++i) {
    for (std::size_t j = i + 1; j < mols.size(); ++j) {
      const bool same = write_smiles(mols[i]) == write_smiles(mols[j]);
      ASSERT_EQ(same, oracle::isomorphic(mols[i], mols[j], true))
          << write_smiles(mols[i]) << " vs " << write_smiles(mols[j]);
    }
  }
}

TEST(RingBonds, Examples) {
  EXPECT_TRUE(ring_bonds(parse_smiles("CCCCO")).empty());
  EXPECT_EQ(ring_bonds(parse_smiles("c1ccccc1")).size(), 6u);
  // Decalin-like fused pair: every bond, shared edge included.
  EXPECT_EQ(ring_bonds(parse_smiles("C1CC2CCCC2C1")).size(), 9u);
  EXPECT_EQ(ring_bonds(parse_smiles("C1CC1CC1CC1")).size(), 6u);
}

TEST(RingBonds, AgreesWithCycleEnumeration) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const MolGraph m = oracle::random_molecule(rng, 8, false);
    std::vector<int> got = ring_bonds(m);
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, oracle::cycle_bonds(m)) << write_smiles(m);
  }
}

TEST(ValenceCheck, EveryParsedFixtureMoleculePasses) {
  for (const CorpusEntry& e : read_corpus_file(test_paths::kFixture2k)) {
    ASSERT_TRUE(valence_check(parse_smiles(e.smiles))) << e.smiles;
  }
}

TEST(Corpus, SkipsCommentsAndKeepsIds) {
  std::istringstream in("# header\nCC\tethane\n\nCN\n");
  const std::vector<CorpusEntry> entries = read_corpus(in);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].id, "ethane");
  EXPECT_EQ(entries[0].line, 2u);
  EXPECT_EQ(entries[1].id, "CN");
}

TEST(Corpus, ParseErrorsReportTheLine) {
  std::istringstream in("CC\nC1CC\n");
  try {
    parse_corpus(read_corpus(in));
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace graphbpe
