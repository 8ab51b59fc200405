// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/generation_state.h"

#include <algorithm>

namespace graphbpe {

GenerationState::GenerationState(const Motif& start, int motif_index, std::uint64_t seed,
                                 std::span<const std::int64_t> tags)
    : partial_(start.graph), seed_(seed) {
  const int n = partial_.num_atoms();
  origin_.resize(n);
  tags_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const bool star = partial_.atom(i).is_connection_site();
    origin_[i] = {motif_index, star ? i : -1};
    if (!tags.empty()) tags_[i] = tags[i];
    if (star) queue_.push_back(i);
  }
}

BondOrder GenerationState::site_order(int star) const {
  return partial_.bond(partial_.neighbors(star).front().bond).order;
}

int GenerationState::anchor(int star) const { return partial_.neighbors(star).front().atom; }

void GenerationState::require_focus() const {
  if (focus_ < 0) throw GenerationError(GenerationError::Kind::kBadTrajectory, "no focused site");
}

int GenerationState::pop_focus() {
  if (focus_ >= 0) {
    throw GenerationError(GenerationError::Kind::kBadTrajectory, "focus already popped");
  }
  if (queue_.empty()) {
    throw GenerationError(GenerationError::Kind::kBadTrajectory, "queue is empty");
  }
  focus_ = queue_.front();
  queue_.pop_front();
  return focus_;
}

void GenerationState::attach(const Motif& motif, int motif_index, int motif_star,
                             std::span<const std::int64_t> tags) {
  require_focus();
  const MolGraph& g = motif.graph;
  if (motif_star < 0 || motif_star >= g.num_atoms() || !g.atom(motif_star).is_connection_site()) {
    throw GenerationError(GenerationError::Kind::kBadTrajectory,
                          "atom " + std::to_string(motif_star) + " of " + motif.smiles +
                              " is not a connection site");
  }
  const Neighbor motif_anchor = g.neighbors(motif_star).front();
  const BondOrder order = g.bond(motif_anchor.bond).order;
  if (order != site_order(focus_)) {
    throw GenerationError(GenerationError::Kind::kIncompatibleBond,
                          "bond orders of the focus and " + motif.smiles + " differ");
  }
  const int partial_anchor = anchor(focus_);
  std::vector<int> index(g.num_atoms(), -1);
  for (int j = 0; j < g.num_atoms(); ++j) {
    if (j == motif_star) continue;
    index[j] = partial_.add_atom(g.atom(j));
    const bool star = g.atom(j).is_connection_site();
    origin_.push_back({motif_index, star ? j : -1});
    tags_.push_back(tags.empty() ? 0 : tags[j]);
  }
  for (const Bond& b : g.bonds()) {
    if (b.begin == motif_star || b.end == motif_star) continue;
    partial_.add_bond(index[b.begin], index[b.end], b.order);
  }
  partial_.add_bond(partial_anchor, index[motif_anchor.atom], order);
  for (int j = 0; j < g.num_atoms(); ++j) {
    if (j != motif_star && g.atom(j).is_connection_site()) queue_.push_back(index[j]);
  }
  const int focus = focus_;
  focus_ = -1;
  remove_atom(focus);
  ++step_;
}

bool GenerationState::can_cyclize(int pos) const {
  if (focus_ < 0 || pos < 0 || pos >= static_cast<int>(queue_.size())) return false;
  const int partner = queue_[pos];
  if (site_order(partner) != site_order(focus_)) return false;
  const int a = anchor(focus_);
  const int b = anchor(partner);
  return a != b && partial_.find_bond(a, b) < 0;
}

void GenerationState::cyclize(int pos) {
  require_focus();
  if (!can_cyclize(pos)) {
    throw GenerationError(GenerationError::Kind::kIncompatibleBond,
                          "cannot close a ring with queue position " + std::to_string(pos));
  }
  const int partner = queue_[pos];
  partial_.add_bond(anchor(focus_), anchor(partner), site_order(focus_));
  queue_.erase(queue_.begin() + pos);
  const int focus = focus_;
  focus_ = -1;
  remove_atom(std::max(focus, partner));
  remove_atom(std::min(focus, partner));
  ++step_;
}

void GenerationState::remove_atom(int atom) {
  partial_.remove_atom(atom);
  origin_.erase(origin_.begin() + atom);
  tags_.erase(tags_.begin() + atom);
  for (int& q : queue_) {
    if (q > atom) --q;
  }
  if (focus_ > atom) --focus_;
}

}  // namespace graphbpe
