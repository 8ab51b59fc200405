// SPDX-License-Identifier: Apache-2.0

#ifndef GRAPHBPE_GENERATION_STATE_H_
#define GRAPHBPE_GENERATION_STATE_H_

#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphbpe/motif.h"
#include "graphbpe/mol_graph.h"

namespace graphbpe {

class GenerationError : public std::runtime_error {
 public:
  enum class Kind {
    kEmptyVocabulary,
    kNoCandidate,
    kIncompatibleBond,
    kUnknownMotif,
    kBadTrajectory,
    kIrreparableValence,
    kStepLimit,
  };

  GenerationError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Where an atom of the partial molecule came from: motif index in the
// caller's motif table and, for "*" atoms, the star index in that motif.
struct SiteOrigin {
  int motif = -1;
  int star = -1;
};

// Partial molecule plus the FIFO of its open connection sites. A focused
// site has been popped from the queue but not yet resolved; every other open
// "*" atom is in the queue. Callers may attach an integer tag to each atom;
// tags follow atoms through renumbering.
class GenerationState {
 public:
  GenerationState(const Motif& start, int motif_index, std::uint64_t seed = 0,
                  std::span<const std::int64_t> tags = {});

  const MolGraph& partial() const { return partial_; }
  const std::deque<int>& queue() const { return queue_; }
  int focus() const { return focus_; }
  int step() const { return step_; }
  std::uint64_t seed() const { return seed_; }
  bool terminal() const { return queue_.empty() && focus_ < 0; }

  const SiteOrigin& origin(int atom) const { return origin_[atom]; }
  std::int64_t tag(int atom) const { return tags_[atom]; }
  // Order of the single bond of a "*" atom, and the atom it is bonded to.
  BondOrder site_order(int star) const;
  int anchor(int star) const;

  // Pops the queue head as the focus.
  int pop_focus();

  // Joins motif_star of `motif` to the focus: both "*" atoms disappear and
  // their anchors are bonded with the shared order. The motif's remaining
  // sites are queued in the motif's (canonical) atom order.
  void attach(const Motif& motif, int motif_index, int motif_star,
              std::span<const std::int64_t> tags = {});

  // Whether the focus may close a ring with the site at queue position `pos`:
  // equal bond orders, distinct anchors that are not already bonded.
  bool can_cyclize(int pos) const;
  // Closes a ring between the focus and the site at queue position `pos`.
  void cyclize(int pos);

 private:
  MolGraph partial_;
  std::deque<int> queue_;
  int focus_ = -1;
  int step_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<SiteOrigin> origin_;
  std::vector<std::int64_t> tags_;

  void remove_atom(int atom);
  void require_focus() const;
};

}  // namespace graphbpe

#endif  // GRAPHBPE_GENERATION_STATE_H_
