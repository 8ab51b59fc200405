// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/merging_graph.h"

#include <algorithm>

#include "graphbpe/canon.h"
#include "graphbpe/smiles.h"

namespace graphbpe {

std::string pattern_key(const MolGraph& mol, std::span<const int> atoms) {
  return pattern_smiles(mol.induced_subgraph(atoms));
}

MergingGraph::MergingGraph(std::shared_ptr<const MolGraph> mol,
                           std::shared_ptr<const std::vector<int>> rank)
    : mol_(std::move(mol)), rank_(std::move(rank)) {
  const int n = mol_->num_atoms();
  fragment_of_.resize(n);
  members_.resize(n);
  neighbors_.resize(n);
  min_rank_.resize(n);
  for (int i = 0; i < n; ++i) {
    fragment_of_[i] = i;
    members_[i] = {i};
    min_rank_[i] = (*rank_)[i];
    for (const Neighbor& nb : mol_->neighbors(i)) neighbors_[i].push_back(nb.atom);
  }
  live_ = n;
}

MergingGraph::MergingGraph(std::shared_ptr<const MolGraph> mol)
    : MergingGraph(mol, std::make_shared<const std::vector<int>>(canonical_rank(*mol).rank)) {}

std::vector<Fragment> MergingGraph::fragments() const {
  std::vector<Fragment> out;
  out.reserve(live_);
  for (int f = 0; f < static_cast<int>(members_.size()); ++f) {
    if (!members_[f].empty()) out.push_back({f, members_[f]});
  }
  std::sort(out.begin(), out.end(), [&](const Fragment& x, const Fragment& y) {
    return min_rank_[x.id] < min_rank_[y.id];
  });
  return out;
}

std::vector<FragmentEdge> MergingGraph::edges() const {
  std::vector<FragmentEdge> out;
  for (int f = 0; f < static_cast<int>(members_.size()); ++f) {
    for (int g : neighbors_[f]) {
      if (f < g) out.push_back({f, g});
    }
  }
  auto scan_key = [&](const FragmentEdge& e) {
    const int x = min_rank_[e.a];
    const int y = min_rank_[e.b];
    return std::pair(std::min(x, y), std::max(x, y));
  };
  std::sort(out.begin(), out.end(), [&](const FragmentEdge& p, const FragmentEdge& q) {
    return scan_key(p) < scan_key(q);
  });
  return out;
}

bool MergingGraph::adjacent(int a, int b) const {
  if (a < 0 || b < 0 || a >= static_cast<int>(members_.size()) ||
      b >= static_cast<int>(members_.size()) || !alive(a) || !alive(b)) {
    return false;
  }
  const auto& na = neighbors_[a];
  return std::find(na.begin(), na.end(), b) != na.end();
}

Fragment MergingGraph::merged(int a, int b) const {
  if (!adjacent(a, b)) {
    throw MergeError("fragments " + std::to_string(a) + " and " + std::to_string(b) +
                     " are not adjacent");
  }
  Fragment out;
  out.atoms.reserve(members_[a].size() + members_[b].size());
  std::merge(members_[a].begin(), members_[a].end(), members_[b].begin(), members_[b].end(),
             std::back_inserter(out.atoms));
  return out;
}

int MergingGraph::merge(int a, int b) {
  Fragment f = merged(a, b);
  const int id = static_cast<int>(members_.size());
  for (int atom : f.atoms) fragment_of_[atom] = id;

  std::vector<int> nbrs;
  for (int src : {a, b}) {
    for (int g : neighbors_[src]) {
      if (g == a || g == b) continue;
      if (std::find(nbrs.begin(), nbrs.end(), g) == nbrs.end()) nbrs.push_back(g);
      auto& back = neighbors_[g];
      back.erase(std::remove_if(back.begin(), back.end(), [&](int x) { return x == a || x == b; }),
                 back.end());
      if (std::find(back.begin(), back.end(), id) == back.end()) back.push_back(id);
    }
  }
  min_rank_.push_back(std::min(min_rank_[a], min_rank_[b]));
  members_.push_back(std::move(f.atoms));
  neighbors_.push_back(std::move(nbrs));
  members_[a].clear();
  members_[b].clear();
  neighbors_[a].clear();
  neighbors_[b].clear();
  --live_;
  return id;
}

std::string MergingGraph::edge_key(const FragmentEdge& e) const {
  return pattern_key(*mol_, merged(e.a, e.b).atoms);
}

Fragment merge_fragments(const MergingGraph& graph, int a, int b) {
  Fragment f = graph.merged(a, b);
  return f;
}

}  // namespace graphbpe
