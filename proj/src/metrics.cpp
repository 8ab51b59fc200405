// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/metrics.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <unordered_set>

#include "graphbpe/element.h"
#include "graphbpe/smiles.h"
#include "graphbpe/valence.h"

namespace graphbpe {

DescriptorVector compute_descriptors(const MolGraph& mol) {
  DescriptorVector d;
  int heavy = 0;
  int aromatic = 0;
  int hetero = 0;
  int hydrogens = 0;
  for (const Atom& a : mol.atoms()) {
    if (a.is_connection_site()) continue;
    ++heavy;
    d.mol_weight += atomic_weight(a.element) + kHydrogenWeight * a.total_h();
    hydrogens += a.total_h();
    if (a.aromatic) ++aromatic;
    if (a.element != Element::kC) ++hetero;
    if (is_halogen(a.element)) ++d.halogen_count;
  }
  d.heavy_atom_count = heavy;
  d.cycle_rank = mol.num_bonds() - mol.num_atoms() + mol.num_components();
  if (heavy > 0) {
    d.aromatic_atom_fraction = static_cast<double>(aromatic) / heavy;
    d.heteroatom_fraction = static_cast<double>(hetero) / heavy;
  }
  std::array<int, 4> counts{};
  counts[0] = hydrogens;
  for (const Bond& b : mol.bonds()) ++counts[static_cast<int>(b.order) - 1];
  const int total = counts[0] + counts[1] + counts[2] + counts[3];
  if (total > 0) {
    for (int i = 0; i < 4; ++i) d.bond_order_fractions[i] = static_cast<double>(counts[i]) / total;
  }
  return d;
}

const std::vector<DescriptorSpec>& descriptor_specs() {
  static const std::vector<DescriptorSpec> kSpecs = {
      {"mol_weight", false},
      {"heavy_atom_count", true},
      {"cycle_rank", true},
      {"aromatic_atom_fraction", false},
      {"heteroatom_fraction", false},
      {"halogen_count", true},
      {"single_bond_fraction", false},
      {"double_bond_fraction", false},
      {"triple_bond_fraction", false},
      {"aromatic_bond_fraction", false},
  };
  return kSpecs;
}

std::vector<double> descriptor_values(const DescriptorVector& d) {
  return {d.mol_weight,
          static_cast<double>(d.heavy_atom_count),
          static_cast<double>(d.cycle_rank),
          d.aromatic_atom_fraction,
          d.heteroatom_fraction,
          static_cast<double>(d.halogen_count),
          d.bond_order_fractions[0],
          d.bond_order_fractions[1],
          d.bond_order_fractions[2],
          d.bond_order_fractions[3]};
}

double histogram_kl(std::span<const double> reference, std::span<const double> generated,
                    bool integer, int bins, double eps) {
  if (reference.empty() || generated.empty()) return 0.0;
  auto [rmin, rmax] = std::minmax_element(reference.begin(), reference.end());
  double lo = *rmin;
  double hi = *rmax;
  int n = bins;
  if (integer) {
    auto [gmin, gmax] = std::minmax_element(generated.begin(), generated.end());
    lo = std::min(lo, *gmin);
    hi = std::max(hi, *gmax);
    n = static_cast<int>(std::llround(hi - lo)) + 1;
  }
  const double width = hi > lo ? (hi - lo) / n : 1.0;
  auto bin = [&](double v) {
    if (integer) return static_cast<int>(std::llround(v - lo));
    const int b = static_cast<int>(std::floor((v - lo) / width));
    return std::clamp(b, 0, n - 1);
  };
  std::vector<double> p(n, 0.0);
  std::vector<double> q(n, 0.0);
  for (double v : reference) p[bin(v)] += 1.0;
  for (double v : generated) q[bin(v)] += 1.0;
  auto normalize = [&](std::vector<double>& h, double count) {
    double total = 0.0;
    for (double& x : h) {
      x = x / count + eps;
      total += x;
    }
    for (double& x : h) x /= total;
  };
  normalize(p, static_cast<double>(reference.size()));
  normalize(q, static_cast<double>(generated.size()));
  double kl = 0.0;
  for (int i = 0; i < n; ++i) kl += p[i] * std::log(p[i] / q[i]);
  return std::max(kl, 0.0);
}

EvalReport evaluate(std::span<const std::optional<MolGraph>> generated,
                    std::span<const MolGraph> training) {
  if (generated.empty()) throw EvalError("generated set is empty");
  if (training.empty()) throw EvalError("training set is empty");
  EvalReport r;
  r.generated = generated.size();
  std::unordered_set<std::string> train_smiles;
  for (const MolGraph& m : training) train_smiles.insert(write_smiles(m));

  std::unordered_set<std::string> seen;
  std::vector<const MolGraph*> unique;
  for (const std::optional<MolGraph>& m : generated) {
    if (!m || !valence_check(*m)) continue;
    ++r.valid;
    std::string s = write_smiles(*m);
    if (!seen.insert(s).second) continue;
    unique.push_back(&*m);
    if (!train_smiles.contains(s)) ++r.novel;
  }
  r.unique = unique.size();
  r.validity = static_cast<double>(r.valid) / static_cast<double>(r.generated);
  r.uniqueness = r.valid ? static_cast<double>(r.unique) / static_cast<double>(r.valid) : 0.0;
  r.novelty = r.unique ? static_cast<double>(r.novel) / static_cast<double>(r.unique) : 0.0;

  const std::vector<DescriptorSpec>& specs = descriptor_specs();
  std::vector<std::vector<double>> ref(specs.size());
  std::vector<std::vector<double>> gen(specs.size());
  for (const MolGraph& m : training) {
    const std::vector<double> v = descriptor_values(compute_descriptors(m));
    for (std::size_t i = 0; i < specs.size(); ++i) ref[i].push_back(v[i]);
  }
  for (const MolGraph* m : unique) {
    const std::vector<double> v = descriptor_values(compute_descriptors(*m));
    for (std::size_t i = 0; i < specs.size(); ++i) gen[i].push_back(v[i]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    DescriptorKl d{specs[i].name, 0.0, 0.0};
    if (gen[i].empty()) {
      d.kl = std::numeric_limits<double>::infinity();
    } else {
      d.kl = histogram_kl(ref[i], gen[i], specs[i].integer);
    }
    d.score = std::exp(-d.kl);
    sum += d.score;
    r.descriptors.push_back(d);
  }
  r.kl_div_score = sum / static_cast<double>(specs.size());
  return r;
}

EvalReport evaluate(std::span<const MolGraph> generated, std::span<const MolGraph> training) {
  std::vector<std::optional<MolGraph>> wrapped(generated.begin(), generated.end());
  return evaluate(std::span<const std::optional<MolGraph>>(wrapped), training);
}

void write_eval_report(std::ostream& out, const EvalReport& r) {
  out << "# novelty = novel / unique valid generated; uniqueness = unique valid / valid\n";
  out << "# kl_div_score = mean over descriptors of exp(-KL(train || generated))\n";
  out << std::setprecision(6) << std::fixed;
  out << "generated=" << r.generated << '\n';
  out << "valid=" << r.valid << '\n';
  out << "unique=" << r.unique << '\n';
  out << "novel=" << r.novel << '\n';
  out << "validity=" << r.validity << '\n';
  out << "uniqueness=" << r.uniqueness << '\n';
  out << "novelty=" << r.novelty << '\n';
  out << "kl_div_score=" << r.kl_div_score << '\n';
  out << "\ndescriptor\tkl\tscore\n";
  for (const DescriptorKl& d : r.descriptors) {
    out << d.name << '\t' << d.kl << '\t' << d.score << '\n';
  }
}

}  // namespace graphbpe
