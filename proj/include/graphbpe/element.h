// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_ELEMENT_H_
#define GRAPHBPE_ELEMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace graphbpe {

// Supported elements. kStar is the dummy atom that marks a connection site.
enum class Element : std::uint8_t {
  kStar = 0,
  kB,
  kC,
  kN,
  kO,
  kF,
  kP,
  kS,
  kCl,
  kBr,
  kI,
};

inline constexpr int kNumElements = 11;

std::string_view element_symbol(Element e);

// Parses an element symbol as written inside or outside brackets ("Cl", "c",
// "*"). Aromatic lowercase forms are accepted for B, C, N, O, P, S and
// reported through `aromatic`.
std::optional<Element> parse_element_symbol(std::string_view symbol,
                                            bool* aromatic);

// Organic-subset atoms may be written without brackets.
bool is_organic_subset(Element e);
bool can_be_aromatic(Element e);
bool is_halogen(Element e);

// Standard atomic weight in daltons; hydrogen is exposed separately.
double atomic_weight(Element e);
inline constexpr double kHydrogenWeight = 1.008;

// Allowed total valences (sum of bond orders plus hydrogens) for an element
// at a given formal charge, ascending. Empty when the combination is not
// supported.
std::span<const int> allowed_valences(Element e, int formal_charge);

}  // namespace graphbpe

#endif  // GRAPHBPE_ELEMENT_H_
