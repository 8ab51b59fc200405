// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_VALENCE_H_
#define GRAPHBPE_VALENCE_H_

#include <string>
#include <vector>

#include "graphbpe/mol_graph.h"

namespace graphbpe {

// Valence model
// -------------
// Every bond contributes its integer order, aromatic bonds count as one.
// A non-aromatic atom is valid when bonds plus hydrogens hit an allowed
// valence. An aromatic atom may fall short by exactly one: the missing unit
// is its share of a delocalised double bond ("needs pi").
//
// Aromatic atoms joined by aromatic bonds form an aromatic system. A system
// touching a connection site through an aromatic bond is open (a motif cut
// through a ring) and is only checked atom by atom. A closed system must
// additionally
//   - have every aromatic bond on a ring of aromatic bonds,
//   - admit a Kekule assignment: a perfect matching of its needs-pi atoms,
//   - hold 4n+2 pi electrons.
// "c1ccccccc1" passes every per-atom test and fails the last one.

struct AtomValence {
  bool ok = false;
  bool needs_pi = false;
};

AtomValence atom_valence(const MolGraph& mol, int atom);

// Hydrogens implied for an organic-subset atom from its bonds: the gap to
// the smallest allowed valence at or above the bond sum, less one for an
// aromatic atom's pi bond, floored at zero.
int default_implicit_h(const MolGraph& mol, int atom);

// Recomputes implicit_h for every non-bracket, non-"*" atom.
void assign_implicit_hydrogens(MolGraph& mol);

// Rewrites hydrogen bookkeeping the way a SMILES round trip would: atoms
// whose hydrogens match the organic-subset rule become non-bracket with
// implicit hydrogens, all others become bracket atoms with explicit ones.
void normalize_hydrogens(MolGraph& mol);

struct AromaticSystem {
  std::vector<int> atoms;
  std::vector<int> bonds;  // aromatic bonds between member atoms
  bool open = false;
};

std::vector<AromaticSystem> aromatic_systems(const MolGraph& mol);

// Ring, Kekule and 4n+2 tests for a closed system. Open systems pass.
bool aromatic_system_ok(const MolGraph& mol, const AromaticSystem& system);

// Empty if the molecule is valid, otherwise a description of the first
// violation found.
std::string valence_problem(const MolGraph& mol);

bool valence_check(const MolGraph& mol);

}  // namespace graphbpe

#endif  // GRAPHBPE_VALENCE_H_
