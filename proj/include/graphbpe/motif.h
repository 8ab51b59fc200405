// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_MOTIF_H_
#define GRAPHBPE_MOTIF_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphbpe/mol_graph.h"

namespace graphbpe {

// A "*" atom of a motif and the order of its single bond. Sites related by a
// symmetry of the motif share a class: the smallest star index in the orbit.
struct ConnectionSite {
  int star = -1;
  BondOrder order = BondOrder::kSingle;
  int site_class = -1;
};

// Connection-aware motif. `graph` is stored in canonical atom order, so atom
// index equals canonical rank and `sites` are listed in canonical order.
struct Motif {
  std::string smiles;
  MolGraph graph;
  std::vector<ConnectionSite> sites;
  std::int64_t frequency = 0;

  int num_heavy_atoms() const { return graph.num_heavy_atoms(); }
  // Site whose star atom is `star`, or nullptr.
  const ConnectionSite* site_at(int star) const;
};

struct CanonicalMotif {
  std::string smiles;
  std::vector<int> rank;  // instance atom -> canonical atom index
};

CanonicalMotif canonicalize_motif(const MolGraph& instance);

// Canonical graph, sites and symmetry classes of a motif instance.
Motif make_motif(const MolGraph& instance);
// Throws SmilesError if the string does not parse.
Motif motif_from_smiles(const std::string& smiles);

// "<motif smiles>@<class><bond symbol>", e.g. "*CN@0-".
std::string site_type_key(const Motif& motif, const ConnectionSite& site);

struct SiteType {
  int motif = -1;
  int site_class = -1;
  BondOrder order = BondOrder::kSingle;
};

struct VocabSite {
  int motif = -1;
  int star = -1;
};

using AttachmentCounts = std::map<std::pair<std::string, std::string>, std::int64_t>;

// Connection-aware motif vocabulary with frequencies and the attachment
// table: co-occurrence counts of site-type pairs across broken bonds, keyed
// symmetrically (the pair is stored with the smaller key first).
class MotifVocabulary {
 public:
  MotifVocabulary() = default;
  // Motifs are sorted by SMILES; duplicate SMILES are merged by adding their
  // frequencies. Attachment keys must name sites of listed motifs.
  MotifVocabulary(std::vector<Motif> motifs, const AttachmentCounts& attachments);

  int size() const { return static_cast<int>(motifs_.size()); }
  bool empty() const { return motifs_.empty(); }
  const Motif& motif(int i) const { return motifs_[i]; }
  const std::vector<Motif>& motifs() const { return motifs_; }
  // Index of the motif with this canonical SMILES, or -1.
  int find(const std::string& smiles) const;

  int num_site_types() const { return static_cast<int>(site_types_.size()); }
  const SiteType& site_type(int id) const { return site_types_[id]; }
  int site_type_id(int motif, int star) const;
  std::string site_type_key(int id) const;

  // C_Vocab restricted to one bond order, in (motif, star) order.
  const std::vector<VocabSite>& sites_with_order(BondOrder order) const;
  int total_sites() const;

  std::int64_t attachment_count(int type_a, int type_b) const;
  // (partner site type, count) pairs observed with a site type.
  const std::vector<std::pair<int, std::int64_t>>& attachment_partners(int type) const;
  AttachmentCounts attachments() const;

 private:
  std::vector<Motif> motifs_;
  std::unordered_map<std::string, int> index_;
  std::vector<SiteType> site_types_;
  std::vector<std::vector<int>> star_type_;  // per motif, per atom; -1 for real atoms
  std::unordered_map<std::string, int> type_index_;
  std::vector<std::vector<VocabSite>> sites_by_order_;
  std::map<std::pair<int, int>, std::int64_t> attachment_;
  std::vector<std::vector<std::pair<int, std::int64_t>>> partners_;
};

// "graphbpe-vocab v1", then "<smiles>\t<frequency>\t<sites>" per motif where
// <sites> lists "<class><bond symbol>" per star in canonical order joined by
// ',' ("." for a motif without sites).
void write_vocabulary(std::ostream& out, const MotifVocabulary& vocab);
// "graphbpe-attach v1", then "<siteA>\t<siteB>\t<count>" with siteA <= siteB.
void write_attachments(std::ostream& out, const MotifVocabulary& vocab);

// Throws FormatError. The attachment stream may be null.
MotifVocabulary read_vocabulary(std::istream& vocab_in, std::istream* attachments_in);

void write_vocabulary_files(const std::string& vocab_path, const std::string& attach_path,
                            const MotifVocabulary& vocab);
MotifVocabulary read_vocabulary_files(const std::string& vocab_path,
                                      const std::string& attach_path);

}  // namespace graphbpe

#endif  // GRAPHBPE_MOTIF_H_
