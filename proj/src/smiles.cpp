// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/smiles.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <vector>

#include "graphbpe/canon.h"
#include "graphbpe/valence.h"

namespace graphbpe {

SmilesError::SmilesError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error(position == std::string::npos
                             ? message
                             : message + " at position " + std::to_string(position)),
      kind_(kind),
      position_(position) {}

namespace {

using Kind = SmilesError::Kind;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MolGraph parse() {
    if (text_.empty()) throw SmilesError(Kind::kSyntax, 0, "empty SMILES");
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      switch (c) {
        case '(':
          if (prev_ < 0) fail(Kind::kSyntax, "branch before any atom");
          if (pending_) fail(Kind::kSyntax, "bond symbol before branch");
          branches_.push_back(prev_);
          ++pos_;
          break;
        case ')':
          if (branches_.empty()) fail(Kind::kSyntax, "unbalanced ')'");
          if (pending_) fail(Kind::kSyntax, "bond symbol without a following atom");
          prev_ = branches_.back();
          branches_.pop_back();
          ++pos_;
          break;
        case '-':
        case '=':
        case '#':
        case ':':
          if (pending_) fail(Kind::kSyntax, "two consecutive bond symbols");
          if (prev_ < 0) fail(Kind::kSyntax, "bond symbol before any atom");
          pending_ = symbol_order(c);
          pending_pos_ = pos_++;
          break;
        case '/':
        case '\\':
          fail(Kind::kUnsupportedFeature, "cis/trans bond markers are not supported");
        case '.':
          fail(Kind::kUnsupportedFeature, "multi-component SMILES are not supported");
        case '%':
        case '0':
        case '1':
        case '2':
        case '3':
        case '4':
        case '5':
        case '6':
        case '7':
        case '8':
        case '9':
          ring_closure();
          break;
        case '[':
          add_atom(bracket_atom());
          break;
        default:
          add_atom(organic_atom());
          break;
      }
    }
    if (!branches_.empty()) throw SmilesError(Kind::kSyntax, text_.size(), "unclosed branch");
    if (pending_) throw SmilesError(Kind::kSyntax, pending_pos_, "dangling bond symbol");
    if (!rings_.empty()) {
      throw SmilesError(Kind::kRingClosure, rings_.begin()->second.position,
                        "unmatched ring closure " + std::to_string(rings_.begin()->first));
    }
    assign_implicit_hydrogens(mol_);
    return std::move(mol_);
  }

 private:
  struct OpenRing {
    int atom;
    std::optional<BondOrder> order;
    std::size_t position;
  };

  std::string_view text_;
  std::size_t pos_ = 0;
  MolGraph mol_;
  int prev_ = -1;
  std::optional<BondOrder> pending_;
  std::size_t pending_pos_ = 0;
  std::vector<int> branches_;
  std::map<int, OpenRing> rings_;

  [[noreturn]] void fail(Kind kind, const std::string& message) const {
    throw SmilesError(kind, pos_, message);
  }

  static BondOrder symbol_order(char c) {
    switch (c) {
      case '=':
        return BondOrder::kDouble;
      case '#':
        return BondOrder::kTriple;
      case ':':
        return BondOrder::kAromatic;
      default:
        return BondOrder::kSingle;
    }
  }

  BondOrder default_order(int a, int b) const {
    return mol_.atom(a).aromatic && mol_.atom(b).aromatic ? BondOrder::kAromatic
                                                          : BondOrder::kSingle;
  }

  void add_atom(const Atom& atom) {
    const int id = mol_.add_atom(atom);
    if (prev_ >= 0) {
      mol_.add_bond(prev_, id, pending_.value_or(default_order(prev_, id)));
    } else if (pending_) {
      fail(Kind::kSyntax, "bond symbol before any atom");
    }
    pending_.reset();
    prev_ = id;
  }

  void ring_closure() {
    const std::size_t start = pos_;
    if (prev_ < 0) fail(Kind::kSyntax, "ring closure before any atom");
    int number;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
        fail(Kind::kSyntax, "'%' must be followed by two digits");
      }
      number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = text_[pos_] - '0';
      ++pos_;
    }
    auto it = rings_.find(number);
    if (it == rings_.end()) {
      rings_[number] = {prev_, pending_, start};
      pending_.reset();
      return;
    }
    const OpenRing open = it->second;
    rings_.erase(it);
    if (open.atom == prev_) {
      throw SmilesError(Kind::kRingClosure, start, "ring closure bonds an atom to itself");
    }
    if (open.order && pending_ && *open.order != *pending_) {
      throw SmilesError(Kind::kRingClosure, start, "conflicting ring closure bond symbols");
    }
    const BondOrder order = pending_ ? *pending_ : open.order.value_or(default_order(open.atom, prev_));
    if (mol_.find_bond(open.atom, prev_) >= 0) {
      throw SmilesError(Kind::kRingClosure, start, "ring closure duplicates an existing bond");
    }
    mol_.add_bond(open.atom, prev_, order);
    pending_.reset();
  }

  Atom organic_atom() {
    const char c = text_[pos_];
    if (c == '*') {
      ++pos_;
      return Atom{Element::kStar};
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      fail(Kind::kSyntax, std::string("unexpected character '") + c + "'");
    }
    if (pos_ + 1 < text_.size()) {
      const std::string_view two = text_.substr(pos_, 2);
      if (two == "Cl" || two == "Br") {
        pos_ += 2;
        return Atom{two == "Cl" ? Element::kCl : Element::kBr};
      }
    }
    bool aromatic = false;
    const std::optional<Element> e = parse_element_symbol(text_.substr(pos_, 1), &aromatic);
    if (!e || *e == Element::kStar) {
      fail(Kind::kUnsupportedElement, std::string("unsupported element '") + c + "'");
    }
    ++pos_;
    Atom atom{*e};
    atom.aromatic = aromatic;
    return atom;
  }

  Atom bracket_atom() {
    ++pos_;  // '['
    auto at_end = [&] { return pos_ >= text_.size(); };
    if (at_end()) fail(Kind::kSyntax, "unterminated bracket atom");
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(Kind::kUnsupportedFeature, "isotopes are not supported");
    }
    Atom atom;
    atom.bracket = true;
    if (text_[pos_] == '*') {
      atom.element = Element::kStar;
      ++pos_;
    } else {
      std::size_t len = 1;
      if (pos_ + 1 < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_ + 1])) &&
          std::isupper(static_cast<unsigned char>(text_[pos_]))) {
        len = 2;
      }
      bool aromatic = false;
      std::optional<Element> e = parse_element_symbol(text_.substr(pos_, len), &aromatic);
      if (!e && len == 2) {
        // "[Cn]" style ambiguity does not arise in the subset; report the
        // two-letter symbol.
        fail(Kind::kUnsupportedElement,
             "unsupported element '" + std::string(text_.substr(pos_, len)) + "'");
      }
      if (!e || *e == Element::kStar) {
        fail(Kind::kUnsupportedElement,
             "unsupported element '" + std::string(text_.substr(pos_, len)) + "'");
      }
      atom.element = *e;
      atom.aromatic = aromatic;
      pos_ += len;
    }
    if (!at_end() && text_[pos_] == '@') fail(Kind::kUnsupportedFeature, "chirality is not supported");
    if (!at_end() && text_[pos_] == 'H') {
      ++pos_;
      int h = 1;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        h = text_[pos_++] - '0';
      }
      atom.explicit_h = static_cast<std::uint8_t>(h);
    }
    if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char sign = text_[pos_++];
      int magnitude = 1;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        magnitude = text_[pos_++] - '0';
      } else {
        while (!at_end() && text_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      if (magnitude > 2) fail(Kind::kUnsupportedFeature, "formal charge outside -2..+2");
      atom.formal_charge = static_cast<std::int8_t>(sign == '+' ? magnitude : -magnitude);
    }
    if (!at_end() && text_[pos_] == ':') fail(Kind::kUnsupportedFeature, "atom classes are not supported");
    if (at_end() || text_[pos_] != ']') fail(Kind::kSyntax, "expected ']'");
    ++pos_;
    return atom;
  }
};

std::string atom_token(const MolGraph& mol, int i, SmilesStyle style) {
  const Atom& a = mol.atom(i);
  if (a.is_connection_site()) return "*";
  std::string symbol(element_symbol(a.element));
  if (a.aromatic) symbol[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(symbol[0])));
  const bool plain = is_organic_subset(a.element) && a.formal_charge == 0 &&
                     (style == SmilesStyle::kPattern || a.total_h() == default_implicit_h(mol, i));
  if (plain) return symbol;
  std::string out = "[" + symbol;
  if (style == SmilesStyle::kMolecule && a.total_h() > 0) {
    out += 'H';
    if (a.total_h() > 1) out += std::to_string(a.total_h());
  }
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? '+' : '-';
    if (std::abs(a.formal_charge) > 1) out += std::to_string(std::abs(a.formal_charge));
  }
  out += ']';
  return out;
}

std::string bond_token(const MolGraph& mol, const Bond& b, SmilesStyle style) {
  const bool both_aromatic = mol.atom(b.begin).aromatic && mol.atom(b.end).aromatic;
  switch (b.order) {
    case BondOrder::kSingle:
      return both_aromatic ? "-" : "";
    case BondOrder::kDouble:
      return "=";
    case BondOrder::kTriple:
      return "#";
    case BondOrder::kAromatic:
      return style == SmilesStyle::kPattern || !both_aromatic ? ":" : "";
  }
  return "";
}

class Writer {
 public:
  Writer(const MolGraph& mol, std::span<const int> rank, SmilesStyle style)
      : mol_(mol), rank_(rank), style_(style) {}

  std::string write() {
    const int n = mol_.num_atoms();
    preorder_.assign(n, -1);
    children_.assign(n, {});
    rings_.assign(n, {});
    bond_seen_.assign(mol_.num_bonds(), 0);
    std::vector<int> by_rank(n);
    for (int i = 0; i < n; ++i) by_rank[rank_[i]] = i;
    std::string out;
    for (int start : by_rank) {
      if (preorder_[start] >= 0) continue;
      explore(start, -1);
      if (!out.empty()) out += '.';
      emit(start, out);
    }
    return out;
  }

 private:
  const MolGraph& mol_;
  std::span<const int> rank_;
  SmilesStyle style_;
  std::vector<int> preorder_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<Neighbor>> rings_;
  std::vector<char> bond_seen_;
  std::vector<int> digit_of_bond_;
  std::vector<char> digit_used_;
  int counter_ = 0;

  std::vector<Neighbor> sorted_neighbors(int atom) const {
    std::vector<Neighbor> nbs(mol_.neighbors(atom).begin(), mol_.neighbors(atom).end());
    std::sort(nbs.begin(), nbs.end(),
              [&](const Neighbor& x, const Neighbor& y) { return rank_[x.atom] < rank_[y.atom]; });
    return nbs;
  }

  void explore(int atom, int parent_bond) {
    preorder_[atom] = counter_++;
    if (parent_bond >= 0) bond_seen_[parent_bond] = 1;
    for (const Neighbor& nb : sorted_neighbors(atom)) {
      if (bond_seen_[nb.bond]) continue;
      if (preorder_[nb.atom] < 0) {
        children_[atom].push_back(nb);
        explore(nb.atom, nb.bond);
      } else {
        bond_seen_[nb.bond] = 1;
        rings_[atom].push_back(nb);
        rings_[nb.atom].push_back({atom, nb.bond});
      }
    }
  }

  int allocate_digit() {
    for (int d = 1;; ++d) {
      if (d >= static_cast<int>(digit_used_.size())) digit_used_.resize(d + 1, 0);
      if (!digit_used_[d]) {
        digit_used_[d] = 1;
        return d;
      }
    }
  }

  static std::string digit_text(int d) {
    return d < 10 ? std::to_string(d) : "%" + std::to_string(d);
  }

  void emit(int atom, std::string& out) {
    out += atom_token(mol_, atom, style_);
    if (digit_of_bond_.empty()) digit_of_bond_.assign(mol_.num_bonds(), 0);
    auto& rings = rings_[atom];
    std::sort(rings.begin(), rings.end(), [&](const Neighbor& x, const Neighbor& y) {
      return preorder_[x.atom] < preorder_[y.atom];
    });
    for (const Neighbor& nb : rings) {
      if (preorder_[nb.atom] < preorder_[atom]) {
        const int d = digit_of_bond_[nb.bond];
        out += bond_token(mol_, mol_.bond(nb.bond), style_);
        out += digit_text(d);
        digit_used_[d] = 0;
      } else {
        const int d = allocate_digit();
        digit_of_bond_[nb.bond] = d;
        out += digit_text(d);
      }
    }
    const auto& kids = children_[atom];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const bool branch = i + 1 < kids.size();
      if (branch) out += '(';
      out += bond_token(mol_, mol_.bond(kids[i].bond), style_);
      emit(kids[i].atom, out);
      if (branch) out += ')';
    }
  }
};

}  // namespace

MolGraph parse_smiles(std::string_view text, const ParseOptions& options) {
  MolGraph mol = Parser(text).parse();
  if (options.validate) {
    const std::string problem = valence_problem(mol);
    if (!problem.empty()) throw SmilesError(Kind::kValence, std::string::npos, problem);
  }
  return mol;
}

std::string write_smiles_ranked(const MolGraph& mol, std::span<const int> rank,
                                SmilesStyle style) {
  return Writer(mol, rank, style).write();
}

std::string write_smiles(const MolGraph& mol) {
  const CanonicalRanking ranking = canonical_rank(mol);
  return write_smiles_ranked(mol, ranking.rank, SmilesStyle::kMolecule);
}

std::string pattern_smiles(const MolGraph& fragment) {
  const CanonicalForm form = canonicalize(labeled_graph(fragment, true));
  return write_smiles_ranked(fragment, form.rank, SmilesStyle::kPattern);
}

}  // namespace graphbpe
