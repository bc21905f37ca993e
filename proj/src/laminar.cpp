#include "noshow/laminar.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "noshow/error.hpp"

namespace noshow {

namespace {

using Support = std::vector<std::size_t>;

Support support_of(const Profile& profile, CandidateId c) {
  const auto s = profile.supporters(c);
  return Support(s.begin(), s.end());  // already sorted by group index
}

bool intersects(const Support& a, const Support& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    *i < *j ? ++i : ++j;
  }
  return false;
}

bool proper_subset(const Support& a, const Support& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// rng() % n keeps the stream identical across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

bool is_laminar(const Profile& profile) {
  const unsigned m = profile.num_candidates();
  std::vector<Support> sup(m);
  for (CandidateId c = 0; c < m; ++c) sup[c] = support_of(profile, c);
  for (CandidateId c = 0; c < m; ++c) {
    for (CandidateId d = c + 1; d < m; ++d) {
      const Support& a = sup[c];
      const Support& b = sup[d];
      const bool nested = std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
                          std::includes(b.begin(), b.end(), a.begin(), a.end());
      if (!nested && intersects(a, b)) return false;
    }
  }
  return true;
}

bool strictly_precedes(const Profile& profile, CandidateId x, CandidateId y) {
  const Support nx = support_of(profile, x);
  const Support ny = support_of(profile, y);
  return !ny.empty() && proper_subset(ny, nx);
}

std::optional<CandidateId> unchosen_predecessor(const Profile& profile, const Sequence& chosen, CandidateId c) {
  for (CandidateId x = 0; x < profile.num_candidates(); ++x) {
    if (x == c || std::find(chosen.begin(), chosen.end(), x) != chosen.end()) continue;
    if (strictly_precedes(profile, x, c)) return x;
  }
  return std::nullopt;
}

std::optional<std::size_t> LaminarForest::node_of(CandidateId c) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::binary_search(nodes[i].members.begin(), nodes[i].members.end(), c)) return i;
  }
  return std::nullopt;
}

std::vector<CandidateId> LaminarForest::up_set(std::size_t node) const {
  std::vector<CandidateId> out;
  for (std::optional<std::size_t> cur = node; cur; cur = nodes.at(*cur).parent) {
    out.insert(out.end(), nodes[*cur].members.begin(), nodes[*cur].members.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BallotGroup> LaminarForest::ballots() const {
  std::vector<BallotGroup> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].weight > 0) out.push_back({up_set(i), nodes[i].weight});
  }
  return out;
}

Profile LaminarForest::to_profile(std::vector<std::string> labels) const {
  return Profile::normalize(num_candidates, ballots(), std::move(labels));
}

std::string LaminarForest::to_dot(const Profile& labels_from) const {
  std::ostringstream os;
  os << "digraph laminar {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    os << "  n" << i << " [label=\"";
    for (std::size_t j = 0; j < nodes[i].members.size(); ++j) {
      os << (j ? "," : "") << labels_from.label(nodes[i].members[j]);
    }
    os << " (" << nodes[i].weight << ")\"];\n";
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t c : nodes[i].children) os << "  n" << i << " -> n" << c << ";\n";
  }
  os << "}\n";
  return os.str();
}

LaminarForest laminar_forest(const Profile& profile) {
  if (!is_laminar(profile)) throw Error(ErrorCode::not_laminar, "supporter sets overlap without nesting");
  LaminarForest f;
  f.num_candidates = profile.num_candidates();
  std::map<Support, std::size_t> class_of;
  for (CandidateId c = 0; c < profile.num_candidates(); ++c) {
    Support s = support_of(profile, c);
    if (s.empty()) continue;
    auto [it, fresh] = class_of.emplace(s, f.nodes.size());
    if (fresh) f.nodes.push_back({{}, std::move(s), std::nullopt, {}, 0});
    f.nodes[it->second].members.push_back(c);
  }
  // Strict supersets of a node's support form a chain; the parent is the smallest.
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < f.nodes.size(); ++j) {
      if (!proper_subset(f.nodes[i].supporters, f.nodes[j].supporters)) continue;
      if (!best || f.nodes[j].supporters.size() < f.nodes[*best].supporters.size()) best = j;
    }
    f.nodes[i].parent = best;
    if (best) {
      f.nodes[*best].children.push_back(i);
    } else {
      f.roots.push_back(i);
    }
  }
  // Each ballot is the up-set of its least-supported approved class.
  for (std::size_t g = 0; g < profile.num_groups(); ++g) {
    const auto& ballot = profile.group(g).ballot;
    std::size_t deepest = *f.node_of(ballot.front());
    for (CandidateId c : ballot) {
      const std::size_t n = *f.node_of(c);
      if (f.nodes[n].supporters.size() < f.nodes[deepest].supporters.size()) deepest = n;
    }
    if (f.up_set(deepest) != ballot) throw Error(ErrorCode::invariant, "ballot is not an up-set");
    f.nodes[deepest].weight += profile.group(g).weight;
  }
  return f;
}

Profile random_laminar(const LaminarParams& params, std::uint64_t seed) {
  if (params.m < 2 || params.depth == 0 || params.branching == 0 || params.min_weight == 0 ||
      params.max_weight < params.min_weight) {
    throw Error(ErrorCode::invariant, "random_laminar parameters must be positive");
  }
  std::mt19937_64 rng(seed);
  struct Node {
    std::vector<CandidateId> members;
    std::optional<std::size_t> parent;
    unsigned level = 1;
    unsigned children = 0;
  };
  std::vector<Node> nodes;
  for (CandidateId c = 0; c < params.m; ++c) {
    if (!nodes.empty() && draw(rng, 100) < params.clone_percent) {
      nodes[draw(rng, nodes.size())].members.push_back(c);
      continue;
    }
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].level < params.depth && nodes[i].children < params.branching) open.push_back(i);
    }
    // slot open.size() means "new root"
    const std::size_t pick = draw(rng, open.size() + 1);
    Node n;
    n.members = {c};
    if (pick < open.size()) {
      n.parent = open[pick];
      n.level = nodes[open[pick]].level + 1;
      ++nodes[open[pick]].children;
    }
    nodes.push_back(std::move(n));
  }
  std::vector<BallotGroup> raw;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    BallotGroup g;
    for (std::optional<std::size_t> cur = i; cur; cur = nodes[*cur].parent) {
      g.ballot.insert(g.ballot.end(), nodes[*cur].members.begin(), nodes[*cur].members.end());
    }
    g.weight = params.min_weight + draw(rng, params.max_weight - params.min_weight + 1);
    raw.push_back(std::move(g));
  }
  return Profile::normalize(params.m, std::move(raw));
}

}  // namespace noshow
