// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/motif.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "graphbpe/canon.h"
#include "graphbpe/io.h"
#include "graphbpe/smiles.h"
#include "graphbpe/valence.h"

namespace graphbpe {

namespace {

int order_slot(BondOrder order) { return static_cast<int>(order) - 1; }

std::string site_list(const Motif& m) {
  if (m.sites.empty()) return ".";
  std::string out;
  for (const ConnectionSite& s : m.sites) {
    if (!out.empty()) out += ',';
    out += std::to_string(s.site_class);
    out += bond_symbol(s.order);
  }
  return out;
}

}  // namespace

const ConnectionSite* Motif::site_at(int star) const {
  for (const ConnectionSite& s : sites) {
    if (s.star == star) return &s;
  }
  return nullptr;
}

CanonicalMotif canonicalize_motif(const MolGraph& instance) {
  CanonicalMotif out;
  out.rank = canonical_rank(instance).rank;
  out.smiles = write_smiles_ranked(instance, out.rank, SmilesStyle::kMolecule);
  return out;
}

Motif make_motif(const MolGraph& instance) {
  CanonicalMotif cm = canonicalize_motif(instance);
  Motif motif;
  motif.smiles = std::move(cm.smiles);
  motif.graph = instance.permuted(cm.rank);
  normalize_hydrogens(motif.graph);

  // Sites are grouped by the certificate of the motif with that star marked.
  const LabeledGraph base = labeled_graph(motif.graph);
  std::vector<std::pair<std::vector<std::uint64_t>, int>> marked;
  for (int i = 0; i < motif.graph.num_atoms(); ++i) {
    if (!motif.graph.atom(i).is_connection_site()) continue;
    LabeledGraph g = base;
    g.labels[i] |= std::uint64_t{1} << 60;
    marked.emplace_back(canonicalize(g).certificate, i);
  }
  for (const auto& [cert, star] : marked) {
    int cls = star;
    for (const auto& [other_cert, other] : marked) {
      if (other < cls && other_cert == cert) cls = other;
    }
    const Neighbor nb = motif.graph.neighbors(star).front();
    motif.sites.push_back({star, motif.graph.bond(nb.bond).order, cls});
  }
  return motif;
}

Motif motif_from_smiles(const std::string& smiles) {
  return make_motif(parse_smiles(smiles));
}

std::string site_type_key(const Motif& motif, const ConnectionSite& site) {
  return motif.smiles + "@" + std::to_string(site.site_class) + bond_symbol(site.order);
}

MotifVocabulary::MotifVocabulary(std::vector<Motif> motifs, const AttachmentCounts& attachments) {
  std::sort(motifs.begin(), motifs.end(),
            [](const Motif& a, const Motif& b) { return a.smiles < b.smiles; });
  for (Motif& m : motifs) {
    if (!motifs_.empty() && motifs_.back().smiles == m.smiles) {
      motifs_.back().frequency += m.frequency;
      continue;
    }
    motifs_.push_back(std::move(m));
  }
  sites_by_order_.assign(4, {});
  star_type_.resize(motifs_.size());
  for (int m = 0; m < size(); ++m) {
    const Motif& motif = motifs_[m];
    index_[motif.smiles] = m;
    star_type_[m].assign(motif.graph.num_atoms(), -1);
    for (const ConnectionSite& s : motif.sites) {
      const std::string key = graphbpe::site_type_key(motif, s);
      auto [it, inserted] = type_index_.emplace(key, num_site_types());
      if (inserted) site_types_.push_back({m, s.site_class, s.order});
      star_type_[m][s.star] = it->second;
      sites_by_order_[order_slot(s.order)].push_back({m, s.star});
    }
  }
  partners_.assign(site_types_.size(), {});
  for (const auto& [pair, count] : attachments) {
    auto a = type_index_.find(pair.first);
    auto b = type_index_.find(pair.second);
    if (a == type_index_.end() || b == type_index_.end()) {
      throw std::invalid_argument("attachment names an unknown site type: " +
                                  (a == type_index_.end() ? pair.first : pair.second));
    }
    const int ta = std::min(a->second, b->second);
    const int tb = std::max(a->second, b->second);
    attachment_[{ta, tb}] += count;
  }
  for (const auto& [pair, count] : attachment_) {
    partners_[pair.first].emplace_back(pair.second, count);
    if (pair.first != pair.second) partners_[pair.second].emplace_back(pair.first, count);
  }
}

int MotifVocabulary::find(const std::string& smiles) const {
  auto it = index_.find(smiles);
  return it == index_.end() ? -1 : it->second;
}

int MotifVocabulary::site_type_id(int motif, int star) const { return star_type_[motif][star]; }

std::string MotifVocabulary::site_type_key(int id) const {
  const SiteType& t = site_types_[id];
  const Motif& m = motifs_[t.motif];
  return graphbpe::site_type_key(m, *m.site_at(t.site_class));
}

const std::vector<VocabSite>& MotifVocabulary::sites_with_order(BondOrder order) const {
  static const std::vector<VocabSite> kNone;
  return sites_by_order_.empty() ? kNone : sites_by_order_[order_slot(order)];
}

int MotifVocabulary::total_sites() const {
  int total = 0;
  for (const auto& v : sites_by_order_) total += static_cast<int>(v.size());
  return total;
}

std::int64_t MotifVocabulary::attachment_count(int type_a, int type_b) const {
  auto it = attachment_.find({std::min(type_a, type_b), std::max(type_a, type_b)});
  return it == attachment_.end() ? 0 : it->second;
}

const std::vector<std::pair<int, std::int64_t>>& MotifVocabulary::attachment_partners(
    int type) const {
  return partners_[type];
}

AttachmentCounts MotifVocabulary::attachments() const {
  AttachmentCounts out;
  for (const auto& [pair, count] : attachment_) {
    std::string a = site_type_key(pair.first);
    std::string b = site_type_key(pair.second);
    if (b < a) std::swap(a, b);
    out[{a, b}] += count;
  }
  return out;
}

void write_vocabulary(std::ostream& out, const MotifVocabulary& vocab) {
  out << "graphbpe-vocab v1\n";
  for (const Motif& m : vocab.motifs()) {
    out << m.smiles << '\t' << m.frequency << '\t' << site_list(m) << '\n';
  }
}

void write_attachments(std::ostream& out, const MotifVocabulary& vocab) {
  out << "graphbpe-attach v1\n";
  for (const auto& [pair, count] : vocab.attachments()) {
    out << pair.first << '\t' << pair.second << '\t' << count << '\n';
  }
}

MotifVocabulary read_vocabulary(std::istream& vocab_in, std::istream* attachments_in) {
  using Kind = FormatError::Kind;
  std::string line;
  if (!std::getline(vocab_in, line) || line != "graphbpe-vocab v1") {
    throw FormatError(Kind::kVersion, 1, "expected header 'graphbpe-vocab v1'");
  }
  std::vector<Motif> motifs;
  std::size_t number = 1;
  while (std::getline(vocab_in, line)) {
    ++number;
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw FormatError(Kind::kParse, number, "expected '<smiles>\\t<frequency>\\t<sites>'");
    }
    const std::string smiles = line.substr(0, t1);
    Motif motif;
    try {
      motif = motif_from_smiles(smiles);
    } catch (const SmilesError& e) {
      throw FormatError(Kind::kParse, number, "bad motif SMILES '" + smiles + "': " + e.what());
    }
    if (motif.smiles != smiles) {
      throw FormatError(Kind::kParse, number, "motif '" + smiles + "' is not in canonical form");
    }
    const std::string_view freq = std::string_view(line).substr(t1 + 1, t2 - t1 - 1);
    const auto [ptr, ec] = std::from_chars(freq.data(), freq.data() + freq.size(), motif.frequency);
    if (ec != std::errc() || ptr != freq.data() + freq.size() || motif.frequency < 0) {
      throw FormatError(Kind::kParse, number, "malformed frequency");
    }
    if (line.substr(t2 + 1) != site_list(motif)) {
      throw FormatError(Kind::kParse, number, "site list does not match motif '" + smiles + "'");
    }
    motifs.push_back(std::move(motif));
  }

  AttachmentCounts attachments;
  if (attachments_in != nullptr) {
    if (!std::getline(*attachments_in, line) || line != "graphbpe-attach v1") {
      throw FormatError(Kind::kVersion, 1, "expected header 'graphbpe-attach v1'");
    }
    number = 1;
    while (std::getline(*attachments_in, line)) {
      ++number;
      if (line.empty()) continue;
      const std::size_t t1 = line.find('\t');
      const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
      std::int64_t count = 0;
      bool ok = t2 != std::string::npos;
      if (ok) {
        const std::string_view c = std::string_view(line).substr(t2 + 1);
        const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), count);
        ok = ec == std::errc() && ptr == c.data() + c.size() && count >= 0;
      }
      if (!ok) throw FormatError(Kind::kParse, number, "expected '<siteA>\\t<siteB>\\t<count>'");
      std::string a = line.substr(0, t1);
      std::string b = line.substr(t1 + 1, t2 - t1 - 1);
      if (b < a) std::swap(a, b);
      attachments[{a, b}] += count;
    }
  }
  try {
    return MotifVocabulary(std::move(motifs), attachments);
  } catch (const std::invalid_argument& e) {
    throw FormatError(Kind::kParse, number, e.what());
  }
}

void write_vocabulary_files(const std::string& vocab_path, const std::string& attach_path,
                            const MotifVocabulary& vocab) {
  std::ofstream v(vocab_path);
  if (!v) throw std::runtime_error("cannot write " + vocab_path);
  write_vocabulary(v, vocab);
  std::ofstream a(attach_path);
  if (!a) throw std::runtime_error("cannot write " + attach_path);
  write_attachments(a, vocab);
}

MotifVocabulary read_vocabulary_files(const std::string& vocab_path,
                                      const std::string& attach_path) {
  std::ifstream v(vocab_path);
  if (!v) throw std::runtime_error("cannot open " + vocab_path);
  if (attach_path.empty()) return read_vocabulary(v, nullptr);
  std::ifstream a(attach_path);
  if (!a) throw std::runtime_error("cannot open " + attach_path);
  return read_vocabulary(v, &a);
}

}  // namespace graphbpe
