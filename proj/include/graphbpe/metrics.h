// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_METRICS_H_
#define GRAPHBPE_METRICS_H_

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphbpe/mol_graph.h"

namespace graphbpe {

// Self-contained descriptors. These are not the descriptor set of the
// published distribution-learning benchmark, so scores are not comparable
// with published KL numbers.
struct DescriptorVector {
  double mol_weight = 0.0;  // with implicit and explicit hydrogens
  int heavy_atom_count = 0;
  int cycle_rank = 0;  // |E| - |V| + components
  double aromatic_atom_fraction = 0.0;
  double heteroatom_fraction = 0.0;  // non-carbon heavy atoms
  int halogen_count = 0;
  // single, double, triple, aromatic; bonds to hydrogen count as single
  std::array<double, 4> bond_order_fractions{};
};

DescriptorVector compute_descriptors(const MolGraph& mol);

struct DescriptorSpec {
  const char* name;
  bool integer;  // one histogram bin per value
};

// Flattened descriptor list used for the KL score, in report order.
const std::vector<DescriptorSpec>& descriptor_specs();
std::vector<double> descriptor_values(const DescriptorVector& d);

// KL(p || q) over shared bins, both histograms smoothed by eps and
// renormalized. `integer` descriptors get one bin per value in the union of
// both ranges; continuous ones get `bins` equal-width bins over the
// reference range (generated values outside it are clamped to the end bins).
double histogram_kl(std::span<const double> reference, std::span<const double> generated,
                    bool integer, int bins = 100, double eps = 1e-10);

struct DescriptorKl {
  std::string name;
  double kl = 0.0;
  double score = 0.0;  // exp(-kl)
};

struct EvalReport {
  std::size_t generated = 0;
  std::size_t valid = 0;
  std::size_t unique = 0;
  std::size_t novel = 0;
  double validity = 0.0;    // valid / generated
  double uniqueness = 0.0;  // unique valid / valid
  double novelty = 0.0;     // novel / unique valid
  double kl_div_score = 0.0;
  std::vector<DescriptorKl> descriptors;
};

class EvalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// `generated` entries are nullopt for strings that failed to parse; they
// count as invalid. Throws EvalError if either set is empty.
EvalReport evaluate(std::span<const std::optional<MolGraph>> generated,
                    std::span<const MolGraph> training);
EvalReport evaluate(std::span<const MolGraph> generated, std::span<const MolGraph> training);

// key=value lines, then a tab-separated per-descriptor table.
void write_eval_report(std::ostream& out, const EvalReport& report);

}  // namespace graphbpe

#endif  // GRAPHBPE_METRICS_H_
