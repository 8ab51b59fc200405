// SPDX-License-Identifier: Apache-2.0

#include "graphbpe/tokenizer.h"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "graphbpe/canon.h"
#include "graphbpe/generation_state.h"
#include "graphbpe/motif.h"
#include "graphbpe/smiles.h"
#include "json.hpp"

namespace graphbpe {

MergingGraph apply_operations(std::shared_ptr<const MolGraph> mol, const OpsList& ops) {
  MergingGraph graph(std::move(mol));
  std::unordered_map<FragmentEdge, std::string, FragmentEdgeHash> keys;
  auto key_of = [&](const FragmentEdge& e) -> const std::string& {
    auto it = keys.find(e);
    if (it == keys.end()) it = keys.emplace(e, graph.edge_key(e)).first;
    return it->second;
  };
  const int total = static_cast<int>(ops.size());
  int k = 0;
  while (k < total) {
    int next = std::numeric_limits<int>::max();
    for (const FragmentEdge& e : graph.edges()) {
      const int r = ops.next_rank(key_of(e), k);
      if (r >= 0) next = std::min(next, r);
    }
    if (next == std::numeric_limits<int>::max()) break;
    apply_merge_pass(graph, ops[next].pattern, key_of);
    k = next + 1;
  }
  return graph;
}

MergingGraph apply_operations(const MolGraph& mol, const OpsList& ops) {
  return apply_operations(std::make_shared<const MolGraph>(mol), ops);
}

int MotifInstance::star_for_bond(int bond) const {
  const int first = static_cast<int>(atoms.size());
  for (std::size_t j = 0; j < star_bond.size(); ++j) {
    if (star_bond[j] == bond) return rank[first + static_cast<int>(j)];
  }
  return -1;
}

Fragmentation fragmentize(const MergingGraph& graph) {
  const MolGraph& mol = graph.molecule();
  const std::vector<int>& atom_rank = graph.atom_rank();
  Fragmentation out;
  std::unordered_map<int, int> index;  // fragment id -> position in out.motifs
  for (const Fragment& f : graph.fragments()) {
    index[f.id] = static_cast<int>(out.motifs.size());
    MotifInstance m;
    m.atoms = f.atoms;
    m.instance = mol.induced_subgraph(f.atoms);
    m.min_rank = atom_rank[f.atoms.front()];
    for (std::size_t i = 0; i < f.atoms.size(); ++i) {
      const int a = f.atoms[i];
      m.min_rank = std::min(m.min_rank, atom_rank[a]);
      for (const Neighbor& nb : mol.neighbors(a)) {
        if (graph.fragment_of(nb.atom) == f.id) continue;
        const int star = m.instance.add_atom(Atom{.element = Element::kStar});
        m.instance.add_bond(static_cast<int>(i), star, mol.bond(nb.bond).order);
        m.star_bond.push_back(nb.bond);
      }
    }
    CanonicalMotif cm = canonicalize_motif(m.instance);
    m.smiles = std::move(cm.smiles);
    m.rank = std::move(cm.rank);
    out.motifs.push_back(std::move(m));
  }
  for (int b = 0; b < mol.num_bonds(); ++b) {
    const Bond& bond = mol.bond(b);
    const int fa = graph.fragment_of(bond.begin);
    const int fb = graph.fragment_of(bond.end);
    if (fa == fb) continue;
    BrokenBond bb;
    bb.bond = b;
    bb.motif_a = index[fa];
    bb.motif_b = index[fb];
    bb.star_a = out.motifs[bb.motif_a].star_for_bond(b);
    bb.star_b = out.motifs[bb.motif_b].star_for_bond(b);
    bb.order = bond.order;
    out.broken_bonds.push_back(bb);
  }
  return out;
}

Fragmentation fragmentize(const MolGraph& mol, const OpsList& ops) {
  return fragmentize(apply_operations(mol, ops));
}

std::vector<std::string> fragment_patterns(const MergingGraph& graph) {
  std::vector<std::string> out;
  for (const Fragment& f : graph.fragments()) {
    out.push_back(pattern_key(graph.molecule(), f.atoms));
  }
  return out;
}

namespace {

// Canonical motif of an instance with per-atom tags: parent atom id for real
// atoms, -(parent bond + 1) for "*" atoms.
struct TaggedMotif {
  Motif motif;
  std::vector<std::int64_t> tags;
};

TaggedMotif tagged_motif(const MotifInstance& m) {
  TaggedMotif out{make_motif(m.instance), {}};
  out.tags.assign(m.rank.size(), 0);
  const int first = static_cast<int>(m.atoms.size());
  for (std::size_t i = 0; i < m.rank.size(); ++i) {
    const int j = static_cast<int>(i);
    out.tags[m.rank[i]] = j < first ? m.atoms[i] : -(m.star_bond[j - first] + 1);
  }
  return out;
}

}  // namespace

Trajectory extract_trajectory(const Fragmentation& frag) {
  Trajectory traj;
  if (frag.motifs.empty()) return traj;
  int start = 0;
  for (int i = 1; i < static_cast<int>(frag.motifs.size()); ++i) {
    const MotifInstance& a = frag.motifs[i];
    const MotifInstance& b = frag.motifs[start];
    const int na = static_cast<int>(a.atoms.size());
    const int nb = static_cast<int>(b.atoms.size());
    if (na != nb ? na > nb : a.smiles != b.smiles ? a.smiles < b.smiles : a.min_rank < b.min_rank) {
      start = i;
    }
  }
  // parent atom -> motif position
  std::unordered_map<std::int64_t, int> owner;
  for (int i = 0; i < static_cast<int>(frag.motifs.size()); ++i) {
    for (int a : frag.motifs[i].atoms) owner[a] = i;
  }
  std::unordered_map<int, const BrokenBond*> broken;
  for (const BrokenBond& b : frag.broken_bonds) broken[b.bond] = &b;

  std::vector<bool> placed(frag.motifs.size(), false);
  TaggedMotif first = tagged_motif(frag.motifs[start]);
  traj.start = first.motif.smiles;
  GenerationState state(first.motif, start, 0, first.tags);
  placed[start] = true;
  while (!state.terminal()) {
    const int focus = state.pop_focus();
    const int bond = static_cast<int>(-state.tag(focus) - 1);
    const BrokenBond& bb = *broken.at(bond);
    const int here = owner.at(state.tag(state.anchor(focus)));
    const int there = bb.motif_a == here ? bb.motif_b : bb.motif_a;
    TrajectoryStep step;
    step.focus = focus;
    if (!placed[there]) {
      TaggedMotif next = tagged_motif(frag.motifs[there]);
      const int star = bb.motif_a == here ? bb.star_b : bb.star_a;
      step.kind = TrajectoryStep::Kind::kAttach;
      step.motif = next.motif.smiles;
      step.star = star;
      step.site_class = next.motif.site_at(star)->site_class;
      state.attach(next.motif, there, star, next.tags);
      placed[there] = true;
    } else {
      const std::deque<int>& queue = state.queue();
      int pos = 0;
      while (pos < static_cast<int>(queue.size()) && state.tag(queue[pos]) != state.tag(focus)) ++pos;
      if (pos == static_cast<int>(queue.size())) {
        throw std::logic_error("partner site of bond " + std::to_string(bond) + " is not queued");
      }
      step.kind = TrajectoryStep::Kind::kCyclize;
      step.target = pos;
      state.cyclize(pos);
    }
    traj.steps.push_back(std::move(step));
  }
  return traj;
}

Trajectory extract_trajectory(const MolGraph& mol, const OpsList& ops) {
  Trajectory traj = extract_trajectory(fragmentize(mol, ops));
  traj.smiles = write_smiles(mol);
  return traj;
}

std::string trajectory_to_json(const Trajectory& t) {
  nlohmann::ordered_json j;
  j["smiles"] = t.smiles;
  j["start"] = t.start;
  j["steps"] = nlohmann::ordered_json::array();
  for (const TrajectoryStep& s : t.steps) {
    nlohmann::ordered_json step;
    step["focus"] = s.focus;
    if (s.kind == TrajectoryStep::Kind::kAttach) {
      step["attach"] = s.motif;
      step["star"] = s.star;
      step["class"] = s.site_class;
    } else {
      step["cyclize"] = s.target;
    }
    j["steps"].push_back(std::move(step));
  }
  return j.dump();
}

Trajectory trajectory_from_json(std::string_view line) {
  Trajectory t;
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    t.smiles = j.value("smiles", "");
    t.start = j.at("start").get<std::string>();
    for (const auto& s : j.at("steps")) {
      TrajectoryStep step;
      step.focus = s.at("focus").get<int>();
      if (s.contains("attach")) {
        step.kind = TrajectoryStep::Kind::kAttach;
        step.motif = s.at("attach").get<std::string>();
        step.star = s.at("star").get<int>();
        step.site_class = s.value("class", -1);
      } else {
        step.kind = TrajectoryStep::Kind::kCyclize;
        step.target = s.at("cyclize").get<int>();
      }
      t.steps.push_back(std::move(step));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad trajectory record: ") + e.what());
  }
  return t;
}

void write_trajectories(std::ostream& out, const std::vector<Trajectory>& trajectories) {
  for (const Trajectory& t : trajectories) out << trajectory_to_json(t) << '\n';
}

std::vector<Trajectory> read_trajectories(std::istream& in) {
  std::vector<Trajectory> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(trajectory_from_json(line));
  }
  return out;
}

}  // namespace graphbpe
