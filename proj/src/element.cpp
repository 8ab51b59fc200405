// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/element.h"

#include <array>

namespace graphbpe {

namespace {

struct ElementInfo {
  std::string_view symbol;
  std::string_view aromatic_symbol;  // empty if the element is never aromatic
  bool organic;
  double weight;
};

constexpr std::array<ElementInfo, kNumElements> kElements = {{
    {"*", "", false, 0.0},
    {"B", "b", true, 10.81},
    {"C", "c", true, 12.011},
    {"N", "n", true, 14.007},
    {"O", "o", true, 15.999},
    {"F", "", true, 18.998},
    {"P", "p", true, 30.974},
    {"S", "s", true, 32.06},
    {"Cl", "", true, 35.45},
    {"Br", "", true, 79.904},
    {"I", "", true, 126.904},
}};

const ElementInfo& info(Element e) { return kElements[static_cast<int>(e)]; }

// Charged states follow the isoelectronic neighbour of the neutral element.
constexpr std::array<int, 1> kV0 = {0};
constexpr std::array<int, 1> kV1 = {1};
constexpr std::array<int, 1> kV2 = {2};
constexpr std::array<int, 1> kV3 = {3};
constexpr std::array<int, 1> kV4 = {4};
constexpr std::array<int, 2> kV35 = {3, 5};
constexpr std::array<int, 3> kV135 = {1, 3, 5};
constexpr std::array<int, 3> kV246 = {2, 4, 6};

}  // namespace

std::string_view element_symbol(Element e) { return info(e).symbol; }

std::optional<Element> parse_element_symbol(std::string_view symbol,
                                            bool* aromatic) {
  for (int i = 0; i < kNumElements; ++i) {
    const ElementInfo& el = kElements[i];
    if (symbol == el.symbol) {
      if (aromatic != nullptr) *aromatic = false;
      return static_cast<Element>(i);
    }
    if (!el.aromatic_symbol.empty() && symbol == el.aromatic_symbol) {
      if (aromatic != nullptr) *aromatic = true;
      return static_cast<Element>(i);
    }
  }
  return std::nullopt;
}

bool is_organic_subset(Element e) { return info(e).organic; }

bool can_be_aromatic(Element e) { return !info(e).aromatic_symbol.empty(); }

bool is_halogen(Element e) {
  return e == Element::kF || e == Element::kCl || e == Element::kBr ||
         e == Element::kI;
}

double atomic_weight(Element e) { return info(e).weight; }

std::span<const int> allowed_valences(Element e, int formal_charge) {
  switch (e) {
    case Element::kStar:
      return formal_charge == 0 ? std::span<const int>(kV1)
                                : std::span<const int>();
    case Element::kB:
      if (formal_charge == 0) return kV3;
      if (formal_charge == -1) return kV4;
      break;
    case Element::kC:
      if (formal_charge == 0) return kV4;
      if (formal_charge == 1 || formal_charge == -1) return kV3;
      break;
    case Element::kN:
      if (formal_charge == 0) return kV3;
      if (formal_charge == 1) return kV4;
      if (formal_charge == -1) return kV2;
      break;
    case Element::kO:
      if (formal_charge == 0) return kV2;
      if (formal_charge == 1) return kV3;
      if (formal_charge == -1) return kV1;
      break;
    case Element::kF:
    case Element::kCl:
    case Element::kBr:
    case Element::kI:
      if (formal_charge == 0) return kV1;
      if (formal_charge == -1) return kV0;
      break;
    case Element::kP:
      if (formal_charge == 0) return kV35;
      if (formal_charge == 1) return kV4;
      break;
    case Element::kS:
      if (formal_charge == 0) return kV246;
      if (formal_charge == 1) return kV35;
      if (formal_charge == -1) return kV135;
      break;
  }
  return {};
}

}  // namespace graphbpe
