// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_SMILES_H_
#define GRAPHBPE_SMILES_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "graphbpe/mol_graph.h"

namespace graphbpe {

// Supported SMILES subset
// -----------------------
//   atoms     organic subset B C N O P S F Cl Br I, aromatic b c n o p s,
//             "*" connection sites, bracket atoms [symbol Hn charge]
//             (charge written +, -, +2, -2, ++ or --, range -2..+2)
//   bonds     - = # :  (default: aromatic between two aromatic atoms,
//             single otherwise)
//   rings     digits 1-9 and %nn, with an optional bond symbol on either end
//   branches  ( )
// Rejected with an error: isotopes, chirality (@), cis/trans (/ \), atom
// classes, dot-separated components and any element outside the list.
class SmilesError : public std::runtime_error {
 public:
  enum class Kind {
    kSyntax,
    kValence,
    kRingClosure,
    kUnsupportedElement,
    kUnsupportedFeature,
  };

  SmilesError(Kind kind, std::size_t position, const std::string& message);

  Kind kind() const { return kind_; }
  // Character offset in the input; npos for whole-molecule problems.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

struct ParseOptions {
  // Run valence_check and throw kValence on failure.
  bool validate = true;
};

MolGraph parse_smiles(std::string_view text, const ParseOptions& options = {});

enum class SmilesStyle {
  // Full molecule: hydrogens via the organic subset or brackets.
  kMolecule,
  // Pattern keys: no hydrogens, every aromatic bond written as ":".
  kPattern,
};

// Writes the molecule with a depth-first traversal that starts at rank 0 and
// visits neighbours in rank order.
std::string write_smiles_ranked(const MolGraph& mol, std::span<const int> rank,
                                SmilesStyle style);

// Canonical SMILES: isomorphic molecules give byte-identical strings.
std::string write_smiles(const MolGraph& mol);

// Canonical hydrogen-free string of a fragment graph, e.g. "c:c" or "CN".
std::string pattern_smiles(const MolGraph& fragment);

}  // namespace graphbpe

#endif  // GRAPHBPE_SMILES_H_
