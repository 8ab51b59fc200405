// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_MOL_GRAPH_H_
#define GRAPHBPE_MOL_GRAPH_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphbpe/element.h"

namespace graphbpe {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Integer contribution to an atom's valence. Aromatic bonds count as one;
// the shared pi bond is accounted for separately (see valence.h).
inline int base_valence(BondOrder order) {
  return order == BondOrder::kAromatic ? 1 : static_cast<int>(order);
}

// SMILES bond symbol: "-", "=", "#" or ":".
char bond_symbol(BondOrder order);

struct Atom {
  Element element = Element::kC;
  std::int8_t formal_charge = 0;
  bool aromatic = false;
  // Hydrogens written inside brackets. Only meaningful when `bracket` is set.
  std::uint8_t explicit_h = 0;
  // Hydrogens implied by the organic-subset rule.
  std::uint8_t implicit_h = 0;
  bool bracket = false;

  bool is_connection_site() const { return element == Element::kStar; }
  int total_h() const { return explicit_h + implicit_h; }

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;

  int other(int atom) const { return atom == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simple undirected attributed graph of atoms and bonds. Connection sites
// ("*") are ordinary atoms with element kStar.
class MolGraph {
 public:
  MolGraph() = default;

  int add_atom(const Atom& atom);
  // Throws GraphError on self loops and duplicate bonds.
  int add_bond(int a, int b, BondOrder order);
  // Removes an atom and its bonds. Atoms and bonds with larger indices shift
  // down by one per removed entry, preserving relative order.
  void remove_atom(int atom);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }

  const Atom& atom(int i) const { return atoms_[i]; }
  Atom& mutable_atom(int i) { return atoms_[i]; }
  const Bond& bond(int i) const { return bonds_[i]; }
  void set_bond_order(int bond, BondOrder order) { bonds_[bond].order = order; }

  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }
  std::span<const Neighbor> neighbors(int atom) const { return adjacency_[atom]; }
  int degree(int atom) const { return static_cast<int>(adjacency_[atom].size()); }

  // Bond index joining a and b, or -1.
  int find_bond(int a, int b) const;

  // Sum of base bond valences over the atom's bonds.
  int bond_valence_sum(int atom) const;
  int num_aromatic_bonds(int atom) const;
  int num_connection_sites() const;
  int num_heavy_atoms() const;  // excludes connection sites

  // Number of connected components (0 for the empty graph).
  int num_components() const;

  // Subgraph induced by `atoms`, renumbered in the given order.
  MolGraph induced_subgraph(std::span<const int> atoms) const;
  // Copy with atoms renumbered so that old atom i becomes new_index[i].
  MolGraph permuted(std::span<const int> new_index) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;

  void rebuild_adjacency();
};

}  // namespace graphbpe

#endif  // GRAPHBPE_MOL_GRAPH_H_
