// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_TOKENIZER_H_
#define GRAPHBPE_TOKENIZER_H_

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "graphbpe/merging_graph.h"
#include "graphbpe/mol_graph.h"
#include "graphbpe/ops.h"

namespace graphbpe {

// Applies M(0), M(1), ... in order. Passes whose pattern matches no current
// edge are skipped without scanning, so the work is bounded by the number of
// passes that merge something.
MergingGraph apply_operations(std::shared_ptr<const MolGraph> mol, const OpsList& ops);
MergingGraph apply_operations(const MolGraph& mol, const OpsList& ops);

// One fragment of a fragmentized molecule. `instance` holds the fragment
// atoms in `atoms` order followed by one "*" per broken bond; `rank` maps
// instance atoms to canonical motif atoms.
struct MotifInstance {
  std::string smiles;
  std::vector<int> atoms;      // parent atom ids, ascending
  MolGraph instance;
  std::vector<int> star_bond;  // parent bond id of each "*", in instance order
  std::vector<int> rank;
  int min_rank = 0;            // smallest canonical rank of the fragment's atoms in the parent

  // Canonical motif atom index of the "*" standing for a parent bond, or -1.
  int star_for_bond(int bond) const;
};

// A bond between two fragments. Stars are canonical motif atom indices.
struct BrokenBond {
  int bond = -1;
  int motif_a = -1;
  int star_a = -1;
  int motif_b = -1;
  int star_b = -1;
  BondOrder order = BondOrder::kSingle;
};

struct Fragmentation {
  std::vector<MotifInstance> motifs;  // ordered by min_rank
  std::vector<BrokenBond> broken_bonds;
};

Fragmentation fragmentize(const MergingGraph& graph);
Fragmentation fragmentize(const MolGraph& mol, const OpsList& ops);

// Hydrogen-free strings of the bare fragments (no "*"), in fragment order,
// e.g. {"C", "CN"} for CCN under [CN, CC].
std::vector<std::string> fragment_patterns(const MergingGraph& graph);

struct TrajectoryStep {
  enum class Kind { kAttach, kCyclize };
  Kind kind = Kind::kAttach;
  int focus = -1;          // atom index of the focused "*" in the partial molecule
  std::string motif;       // attach: canonical motif SMILES
  int star = -1;           // attach: "*" atom of the motif that is consumed
  int site_class = -1;     // attach: symmetry class of that "*"
  int target = -1;         // cyclize: queue position of the partner site
  friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

struct Trajectory {
  std::string smiles;  // canonical SMILES of the source molecule, if known
  std::string start;
  std::vector<TrajectoryStep> steps;
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Orders the fragments the way the generator would build them: the largest
// motif first (ties: smaller SMILES, then smaller canonical position), then
// breadth-first through the queue. A bond to a fragment already placed
// becomes a cyclize step.
Trajectory extract_trajectory(const Fragmentation& fragmentation);
Trajectory extract_trajectory(const MolGraph& mol, const OpsList& ops);

// One JSON object per line.
std::string trajectory_to_json(const Trajectory& trajectory);
Trajectory trajectory_from_json(std::string_view line);  // throws std::invalid_argument
void write_trajectories(std::ostream& out, const std::vector<Trajectory>& trajectories);
std::vector<Trajectory> read_trajectories(std::istream& in);

}  // namespace graphbpe

#endif  // GRAPHBPE_TOKENIZER_H_
