#include "noshow/generators.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "noshow/error.hpp"

namespace noshow {

namespace {

// rng() % n keeps generated instances identical across standard libraries.
template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

std::size_t group_of(const Profile& p, std::vector<CandidateId> ballot) {
  std::sort(ballot.begin(), ballot.end());
  const auto g = p.find_group(ballot);
  if (!g) throw Error(ErrorCode::invariant, "generated ballot missing from profile");
  return *g;
}

Weight cube(Weight t) { return t * t * t; }

}  // namespace

CandidateId ReducedInstance::candidate(const std::string& label) const {
  const auto c = instance.profile.find_label(label);
  if (!c) throw Error(ErrorCode::invariant, "no candidate labelled " + label);
  return *c;
}

ElectionInstance concurrence_profile() {
  return ElectionInstance(Profile::normalize(3, {{{0, 1}, 1}, {{1, 2}, 1}, {{0}, 1}, {{2}, 1}}, {"a", "b", "c"}), 2);
}

// ---------------------------------------------------------------------------

Theorem2Layout theorem2_layout(unsigned k) {
  if (k < 3) throw Error(ErrorCode::bad_k, "the construction needs k >= 3");
  const unsigned r = k - 1;
  Theorem2Layout l;
  for (unsigned i = 0; i < r; ++i) {
    l.a.push_back(i);
    l.b.push_back(r + i);
  }
  if (k == 3) l.d = 2 * r;
  l.via_a1 = l.b;
  l.via_a1.push_back(l.a.front());
  l.via_a1 = make_committee(l.via_a1);
  l.via_br = l.a;
  l.via_br.push_back(l.b.back());
  l.via_br = make_committee(l.via_br);
  return l;
}

namespace {

std::vector<std::string> theorem2_labels(unsigned k) {
  std::vector<std::string> labels;
  for (unsigned i = 1; i < k; ++i) labels.push_back("a" + std::to_string(i));
  for (unsigned i = 1; i < k; ++i) labels.push_back("b" + std::to_string(i));
  if (k == 3) labels.push_back("d");
  return labels;
}

// Pair ballots plus top-ups, with T filled into `layout`.
std::vector<BallotGroup> theorem2_groups(unsigned k, Theorem2Layout& l) {
  const unsigned r = k - 1;
  const auto& a = l.a;
  const auto& b = l.b;
  std::vector<CandidateId> cands(a);
  cands.insert(cands.end(), b.begin(), b.end());
  std::map<std::pair<CandidateId, CandidateId>, Weight> pairs;
  auto add = [&](CandidateId x, CandidateId y, Weight w) { pairs[{std::min(x, y), std::max(x, y)}] += w; };
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = i + 1; j < cands.size(); ++j) add(cands[i], cands[j], 1);
  }
  pairs.erase({a[0], b[0]});
  pairs.erase({a[r - 1], b[r - 1]});
  for (unsigned i = 2; i <= r; ++i) add(a[i - 1], b[0], 2);
  for (unsigned j = 2; j + 1 <= r; ++j) add(b[j - 1], a[r - 1], 2);
  add(b[0], b[r - 1], 1);
  add(a[0], a[r - 1], 1);
  if (l.d) {
    for (CandidateId x : cands) add(*l.d, x, 3);
  }
  const unsigned m = l.d ? 2 * r + 1 : 2 * r;
  std::vector<Weight> score(m, 0);
  Weight total_pairs = 0;
  for (const auto& [pr, w] : pairs) {
    score[pr.first] += w;
    score[pr.second] += w;
    total_pairs += w;
  }
  // n = m·T − P voters in total, so n >= k·T iff T·(m − k) >= P.
  Weight target = *std::max_element(score.begin(), score.end());
  target = std::max<Weight>(target, (total_pairs + (m - k) - 1) / (m - k));
  l.top_up_target = target;
  std::vector<BallotGroup> raw;
  for (const auto& [pr, w] : pairs) raw.push_back({{pr.first, pr.second}, w});
  for (CandidateId c = 0; c < m; ++c) {
    if (score[c] < target) raw.push_back({{c}, target - score[c]});
  }
  return raw;
}

}  // namespace

Profile theorem2_base(unsigned k) {
  Theorem2Layout l = theorem2_layout(k);
  const unsigned m = static_cast<unsigned>(l.a.size() + l.b.size() + (l.d ? 1 : 0));
  return Profile::normalize(m, theorem2_groups(k, l), theorem2_labels(k));
}

ReducedInstance theorem2_family(unsigned k, Weight lambda) {
  if (lambda == 0) throw Error(ErrorCode::invariant, "lambda must be >= 1");
  Theorem2Layout l = theorem2_layout(k);
  const unsigned m = static_cast<unsigned>(l.a.size() + l.b.size() + (l.d ? 1 : 0));
  std::vector<BallotGroup> raw = theorem2_groups(k, l);
  for (auto& g : raw) g.weight *= lambda;
  raw.push_back({l.a, 1});
  raw.push_back({l.b, 1});
  raw.push_back({{l.a.front()}, 1});
  raw.push_back({{l.b.back()}, 1});
  ReducedInstance out;
  out.instance = ElectionInstance(Profile::normalize(m, std::move(raw), theorem2_labels(k)), k);
  out.abstainer = group_of(out.instance.profile, l.a);
  for (unsigned i = 0; i < l.a.size(); ++i) out.roles.push_back({Role::Kind::a_side, i + 1});
  for (unsigned i = 0; i < l.b.size(); ++i) out.roles.push_back({Role::Kind::b_side, i + 1});
  if (l.d) out.roles.push_back({Role::Kind::extra, 0});
  return out;
}

LambdaSearchResult theorem2_lambda_search(const Rule& rule, unsigned k, Weight max_lambda,
                                          const ComputeOptions& options) {
  const Theorem2Layout l = theorem2_layout(k);
  const Outcome both(std::set<Committee>{l.via_a1, l.via_br});
  const Outcome only(std::set<Committee>{l.via_br});
  LambdaSearchResult res;
  for (Weight lambda = 1; lambda <= max_lambda; ++lambda) {
    res.tried = lambda;
    const ReducedInstance ri = theorem2_family(k, lambda);
    res.before = compute_outcome(rule, ri.instance, options);
    if (res.before != both) continue;
    const ElectionInstance reduced(abstain(ri.instance.profile, ri.abstainer, 1), k);
    res.after = compute_outcome(rule, reduced, options);
    if (res.after == only) {
      res.lambda = lambda;
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

ReducedInstance mes_unrep_instance() {
  enum : CandidateId { x1, x2, x3, y1, y2, z, c };
  ReducedInstance out;
  out.instance = ElectionInstance(
      Profile::normalize(7, {{{x1, x2, x3}, 20}, {{y1, y2}, 10}, {{y1, y2, z}, 10}, {{z, c}, 9}, {{c}, 2}},
                         {"x1", "x2", "x3", "y1", "y2", "z", "c"}),
      5);
  out.abstainer = group_of(out.instance.profile, {c});
  out.roles.assign(7, Role{});
  return out;
}

// ---------------------------------------------------------------------------

CubicGraph CubicGraph::make(unsigned vertices, std::vector<std::pair<unsigned, unsigned>> edges) {
  std::vector<unsigned> degree(vertices, 0);
  for (auto& [u, v] : edges) {
    if (u >= vertices || v >= vertices) throw Error(ErrorCode::not_cubic, "edge endpoint out of range");
    if (u == v) throw Error(ErrorCode::not_cubic, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    ++degree[u];
    ++degree[v];
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorCode::not_cubic, "parallel edges");
  }
  for (unsigned v = 0; v < vertices; ++v) {
    if (degree[v] != 3) {
      throw Error(ErrorCode::not_cubic, "vertex " + std::to_string(v) + " has degree " + std::to_string(degree[v]));
    }
  }
  CubicGraph g;
  g.vertices = vertices;
  g.edges = std::move(edges);
  return g;
}

CubicGraph CubicGraph::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<unsigned, unsigned>> edges;
  unsigned top = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    long u = 0, v = 0;
    if (!(ls >> u)) continue;
    std::string rest;
    if (!(ls >> v) || (ls >> rest) || u < 0 || v < 0) {
      throw Error(ErrorCode::parse, "line " + std::to_string(lineno) + ": expected two vertex ids");
    }
    edges.emplace_back(static_cast<unsigned>(u), static_cast<unsigned>(v));
    top = std::max({top, static_cast<unsigned>(u) + 1, static_cast<unsigned>(v) + 1});
  }
  return make(top, std::move(edges));
}

CubicGraph CubicGraph::k4() { return make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

CubicGraph CubicGraph::k33() {
  std::vector<std::pair<unsigned, unsigned>> e;
  for (unsigned u = 0; u < 3; ++u) {
    for (unsigned v = 3; v < 6; ++v) e.emplace_back(u, v);
  }
  return make(6, std::move(e));
}

CubicGraph CubicGraph::q3() {
  std::vector<std::pair<unsigned, unsigned>> e;
  for (unsigned u = 0; u < 8; ++u) {
    for (unsigned bit = 1; bit < 8; bit <<= 1) {
      if (!(u & bit)) e.emplace_back(u, u | bit);
    }
  }
  return make(8, std::move(e));
}

Weight indset_alpha(const ScoringFunction& s) {
  const Rational d1 = s.delta(1);
  const Rational d2 = s.delta(2);
  if (!(d1 > d2) || !(d2.sign() >= 0)) throw Error(ErrorCode::bad_scoring, "needs δ(1) > δ(2) >= 0");
  const Rational q = (d1 - d2) / d1;
  // (α/4)·q ∈ ℤ  iff  α is a multiple of 4·den(q) / gcd(4·den(q), num(q))
  const mpz_class four_den = 4 * q.denominator();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), four_den.get_mpz_t(), q.numerator().get_mpz_t());
  const mpz_class step_z = four_den / g;
  if (!step_z.fits_ulong_p()) throw Error(ErrorCode::bad_scoring, "α does not fit in 64 bits");
  const Weight step = step_z.get_ui();
  Weight alpha = step;
  while (Rational(static_cast<unsigned long>(alpha)) * (d1 - d2) < d1) alpha += step;
  return alpha;
}

Weight indset_gadget_weight(const ScoringFunction& s, unsigned vertices, unsigned t) {
  const Rational q = (s.delta(1) - s.delta(2)) / s.delta(1);
  const Rational n(static_cast<unsigned long>(vertices));
  const Rational alpha(static_cast<unsigned long>(indset_alpha(s)));
  const Rational m = alpha / Rational(2) *
                     (n * n * n * n - (Rational(static_cast<unsigned long>(t)) - Rational(1, 2)) * n * n * n * q);
  if (!m.is_integer() || m.sign() <= 0 || !m.numerator().fits_ulong_p()) {
    throw Error(ErrorCode::bad_scoring, "gadget block size " + m.str() + " is not a positive integer");
  }
  return m.numerator().get_ui();
}

ReducedInstance indset_reduction(const CubicGraph& graph, unsigned t, const ScoringFunction& s) {
  CubicGraph::make(graph.vertices, graph.edges);  // validates
  if (!(s.delta(1) - s.delta(2) > s.delta(2) - s.delta(3))) {
    throw Error(ErrorCode::bad_scoring, "needs δ(1) − δ(2) > δ(2) − δ(3)");
  }
  const unsigned n = graph.vertices;
  if (n < 2 || t == 0 || graph.edges.size() < 3 * static_cast<std::size_t>(t)) {
    throw Error(ErrorCode::invariant, "needs |V| >= 2, t >= 1 and |E| >= 3t");
  }
  const Weight alpha = indset_alpha(s);
  const Weight mg = indset_gadget_weight(s, n, t);
  const Weight n3 = static_cast<Weight>(n) * n * n;
  enum : CandidateId { g1, g2, g3, g4, b };
  auto cv = [](unsigned v) { return static_cast<CandidateId>(5 + v); };

  std::vector<BallotGroup> raw;
  for (unsigned v = 0; v < n; ++v) raw.push_back({{cv(v)}, alpha * n3});
  for (unsigned v = 0; v < n; ++v) {
    for (unsigned w = v + 1; w < n; ++w) raw.push_back({{cv(v), cv(w)}, alpha * n3});
  }
  for (auto [u, v] : graph.edges) raw.push_back({{cv(u), cv(v), g1}, 1});
  raw.push_back({{b}, alpha * n3 * n * n});
  raw.push_back({{b, g2}, 3 * static_cast<Weight>(t)});
  for (auto pair : {std::vector<CandidateId>{g1, g2}, {g1, g3}, {g2, g4}, {g3, g4}}) raw.push_back({pair, mg});
  if (graph.edges.size() > 3 * static_cast<std::size_t>(t)) raw.push_back({{g2}, graph.edges.size() - 3 * t});
  raw.push_back({{g1}, 1});

  std::vector<std::string> labels = {"g1", "g2", "g3", "g4", "b"};
  ReducedInstance out;
  for (unsigned i = 1; i <= 4; ++i) out.roles.push_back({Role::Kind::gadget, i});
  out.roles.push_back({Role::Kind::filler, 0});
  for (unsigned v = 0; v < n; ++v) {
    labels.push_back("v" + std::to_string(v));
    out.roles.push_back({Role::Kind::vertex, v});
  }
  out.instance = ElectionInstance(Profile::normalize(5 + n, std::move(raw), std::move(labels)), n + 4);
  out.abstainer = group_of(out.instance.profile, {g1, g3});
  return out;
}

bool independent_set_oracle(const CubicGraph& graph, unsigned t, unsigned max_vertices) {
  if (graph.vertices > max_vertices || graph.vertices > 64) {
    throw Error(ErrorCode::too_large, std::to_string(graph.vertices) + " vertices exceed the exhaustive limit");
  }
  std::vector<std::uint64_t> closed(graph.vertices);
  for (unsigned v = 0; v < graph.vertices; ++v) closed[v] = std::uint64_t{1} << v;
  for (auto [u, v] : graph.edges) {
    closed[u] |= std::uint64_t{1} << v;
    closed[v] |= std::uint64_t{1} << u;
  }
  // Taking v removes at most deg(v)+1 = 4 vertices; skipping it removes one.
  std::function<bool(std::uint64_t, unsigned)> search = [&](std::uint64_t avail, unsigned need) {
    if (need == 0) return true;
    if (static_cast<unsigned>(std::popcount(avail)) < need) return false;
    const unsigned v = static_cast<unsigned>(std::countr_zero(avail));
    return search(avail & ~closed[v], need - 1) || search(avail & ~(std::uint64_t{1} << v), need);
  };
  const std::uint64_t all = graph.vertices == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << graph.vertices) - 1;
  return search(all, t);
}

// ---------------------------------------------------------------------------

void Rx3cInstance::validate() const {
  if (t == 0 || sets.size() != 3 * static_cast<std::size_t>(t)) {
    throw Error(ErrorCode::not_regular, "expected 3t sets for t = " + std::to_string(t));
  }
  std::vector<unsigned> seen(3 * t, 0);
  for (const auto& s : sets) {
    if (s[0] >= s[1] || s[1] >= s[2] || s[2] >= 3 * t) {
      throw Error(ErrorCode::not_regular, "sets need three distinct sorted elements below 3t");
    }
    for (unsigned x : s) ++seen[x];
  }
  for (unsigned x = 0; x < 3 * t; ++x) {
    if (seen[x] != 3) {
      throw Error(ErrorCode::not_regular,
                  "element " + std::to_string(x) + " lies in " + std::to_string(seen[x]) + " sets");
    }
  }
}

Rx3cInstance Rx3cInstance::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Rx3cInstance inst;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    long x = 0;
    std::vector<long> vals;
    while (ls >> x) vals.push_back(x);
    if (!ls.eof()) throw Error(ErrorCode::parse, "line " + std::to_string(lineno) + ": not an integer");
    if (vals.empty()) continue;
    if (vals.size() != 3 || *std::min_element(vals.begin(), vals.end()) < 0) {
      throw Error(ErrorCode::parse, "line " + std::to_string(lineno) + ": expected three elements");
    }
    std::array<unsigned, 3> s{static_cast<unsigned>(vals[0]), static_cast<unsigned>(vals[1]),
                              static_cast<unsigned>(vals[2])};
    std::sort(s.begin(), s.end());
    inst.sets.push_back(s);
  }
  if (inst.sets.size() % 3 != 0) throw Error(ErrorCode::not_regular, "number of sets is not a multiple of 3");
  inst.t = static_cast<unsigned>(inst.sets.size() / 3);
  inst.validate();
  return inst;
}

std::string Rx3cInstance::format() const {
  std::ostringstream os;
  for (const auto& s : sets) os << s[0] << ' ' << s[1] << ' ' << s[2] << '\n';
  return os.str();
}

Rx3cInstance planted_rx3c(unsigned t, std::uint64_t seed, std::optional<unsigned> mixed_blocks) {
  if (t == 0) throw Error(ErrorCode::invariant, "t must be >= 1");
  if (mixed_blocks && 3 * *mixed_blocks > t) throw Error(ErrorCode::invariant, "more mixed blocks than t/3");
  std::mt19937_64 rng(seed);
  std::vector<unsigned> u(3 * t);
  for (unsigned i = 0; i < u.size(); ++i) u[i] = i;
  auto triples = [](const std::vector<unsigned>& xs, std::vector<std::array<unsigned, 3>>& out) {
    for (std::size_t i = 0; i + 2 < xs.size(); i += 3) {
      std::array<unsigned, 3> s{xs[i], xs[i + 1], xs[i + 2]};
      std::sort(s.begin(), s.end());
      out.push_back(s);
    }
  };
  Rx3cInstance inst;
  inst.t = t;
  if (!mixed_blocks) {
    for (int p = 0; p < 3; ++p) {
      shuffle(u, rng);
      triples(u, inst.sets);
    }
  } else {
    shuffle(u, rng);
    const std::size_t mixed = 9 * static_cast<std::size_t>(*mixed_blocks);
    triples(u, inst.sets);  // first partition
    for (std::size_t start = 0; start < mixed; start += 9) {
      std::vector<unsigned> block(u.begin() + static_cast<std::ptrdiff_t>(start),
                                  u.begin() + static_cast<std::ptrdiff_t>(start + 9));
      for (int p = 0; p < 2; ++p) {
        shuffle(block, rng);
        triples(block, inst.sets);
      }
    }
    std::vector<unsigned> rest(u.begin() + static_cast<std::ptrdiff_t>(mixed), u.end());
    triples(rest, inst.sets);
    triples(rest, inst.sets);
  }
  shuffle(inst.sets, rng);
  inst.validate();
  return inst;
}

bool rx3c_t_bound(unsigned t) {
  const Weight tt = t;
  return cube(tt) >= 90 * tt * tt + 120 * tt + 60;
}

unsigned rx3c_min_t() {
  unsigned t = 1;
  while (!rx3c_t_bound(t)) ++t;
  return t;
}

ReducedInstance rx3c_reduction(const Rx3cInstance& inst) {
  inst.validate();
  const unsigned t = inst.t;
  if (!rx3c_t_bound(t)) {
    throw Error(ErrorCode::t_bound_violated, "t = " + std::to_string(t) + " violates t^3 >= 90t^2 + 120t + 60");
  }
  const Weight T = t;
  const Weight t3 = cube(T);
  auto g = [](unsigned i) { return static_cast<CandidateId>(i - 1); };
  auto cs = [](std::size_t j) { return static_cast<CandidateId>(6 + j); };
  auto a = [t](unsigned i) { return static_cast<CandidateId>(6 + 3 * t + i - 1); };
  const CandidateId b1 = 6 + 4 * t;
  const CandidateId b2 = b1 + 1;

  std::vector<BallotGroup> raw;
  for (unsigned i = 1; i <= t; ++i) {
    raw.push_back({{a(i)}, 10 * t3 + 45 * T});
    raw.push_back({{g(4), a(i)}, 15});
  }
  raw.push_back({{b1}, 7 * t3});
  raw.push_back({{b2}, 7 * t3 - (90 * T * T + 120 * T + 60)});
  for (std::size_t j = 0; j < inst.sets.size(); ++j) raw.push_back({{cs(j)}, 10 * t3});
  for (unsigned x = 0; x < 3 * t; ++x) {
    std::vector<CandidateId> containing;
    for (std::size_t j = 0; j < inst.sets.size(); ++j) {
      if (std::find(inst.sets[j].begin(), inst.sets[j].end(), x) != inst.sets[j].end()) containing.push_back(cs(j));
    }
    raw.push_back({containing, 15 * T});
    containing.push_back(g(1));
    raw.push_back({containing, 5});
  }
  raw.push_back({{g(1), g(2), g(3)}, 1});
  raw.push_back({{g(1), g(4)}, 4 * t3 + 30 * T + 13});
  raw.push_back({{g(1)}, 6 * t3});
  raw.push_back({{g(2)}, 3 * t3 + 11});
  raw.push_back({{g(3)}, 3 * t3 + 11});
  raw.push_back({{g(5)}, 12});
  raw.push_back({{g(6)}, 12});
  raw.push_back({{g(2), g(5)}, 7 * t3 + 30 * T});
  raw.push_back({{g(3), g(6)}, 7 * t3 + 30 * T});
  raw.push_back({{g(4), g(5)}, 3 * t3});
  raw.push_back({{g(4), g(6)}, 3 * t3});

  std::vector<std::string> labels;
  ReducedInstance out;
  for (unsigned i = 1; i <= 6; ++i) {
    labels.push_back("g" + std::to_string(i));
    out.roles.push_back({Role::Kind::gadget, i});
  }
  for (std::size_t j = 0; j < inst.sets.size(); ++j) {
    labels.push_back("S" + std::to_string(j));
    out.roles.push_back({Role::Kind::set, static_cast<unsigned>(j)});
  }
  for (unsigned i = 1; i <= t; ++i) {
    labels.push_back("a" + std::to_string(i));
    out.roles.push_back({Role::Kind::auxiliary, i});
  }
  labels.insert(labels.end(), {"b1", "b2"});
  out.roles.push_back({Role::Kind::filler, 1});
  out.roles.push_back({Role::Kind::filler, 2});
  out.instance = ElectionInstance(Profile::normalize(4 * t + 8, std::move(raw), std::move(labels)), 4 * t + 5);
  out.abstainer = group_of(out.instance.profile, {g(1), g(2), g(3)});
  return out;
}

std::optional<std::vector<std::size_t>> exact_cover_oracle(const Rx3cInstance& inst, std::size_t max_nodes) {
  inst.validate();
  // Dancing links over 3t columns; node 0 is the root header.
  const std::size_t cols = 3 * static_cast<std::size_t>(inst.t);
  const std::size_t total = 1 + cols + 3 * inst.sets.size();
  std::vector<std::size_t> L(total), R(total), U(total), D(total), col(total), row(total), size(cols + 1, 0);
  for (std::size_t c = 0; c <= cols; ++c) {
    L[c] = c == 0 ? cols : c - 1;
    R[c] = c == cols ? 0 : c + 1;
    U[c] = D[c] = col[c] = c;
  }
  std::size_t next = cols + 1;
  for (std::size_t r = 0; r < inst.sets.size(); ++r) {
    const std::size_t first = next;
    for (unsigned x : inst.sets[r]) {
      const std::size_t c = x + 1;
      const std::size_t n = next++;
      col[n] = c;
      row[n] = r;
      U[n] = U[c];
      D[n] = c;
      D[U[c]] = n;
      U[c] = n;
      ++size[c];
      L[n] = n == first ? n : n - 1;
      R[n] = first;
      R[L[n]] = n;
      L[first] = n;
    }
  }
  auto cover = [&](std::size_t c) {
    R[L[c]] = R[c];
    L[R[c]] = L[c];
    for (std::size_t i = D[c]; i != c; i = D[i]) {
      for (std::size_t j = R[i]; j != i; j = R[j]) {
        D[U[j]] = D[j];
        U[D[j]] = U[j];
        --size[col[j]];
      }
    }
  };
  auto uncover = [&](std::size_t c) {
    for (std::size_t i = U[c]; i != c; i = U[i]) {
      for (std::size_t j = L[i]; j != i; j = L[j]) {
        ++size[col[j]];
        D[U[j]] = j;
        U[D[j]] = j;
      }
    }
    R[L[c]] = c;
    L[R[c]] = c;
  };
  std::vector<std::size_t> chosen;
  std::size_t nodes = 0;
  std::function<bool()> search = [&]() -> bool {
    if (R[0] == 0) return true;
    if (++nodes > max_nodes) {
      throw Error(ErrorCode::budget_exceeded, "exact cover search exceeded " + std::to_string(max_nodes) + " nodes");
    }
    std::size_t c = R[0];
    for (std::size_t j = R[0]; j != 0; j = R[j]) {
      if (size[j] < size[c]) c = j;
    }
    cover(c);
    for (std::size_t r = D[c]; r != c; r = D[r]) {
      chosen.push_back(row[r]);
      for (std::size_t j = R[r]; j != r; j = R[j]) cover(col[j]);
      if (search()) return true;
      for (std::size_t j = L[r]; j != r; j = L[j]) uncover(col[j]);
      chosen.pop_back();
    }
    uncover(c);
    return false;
  };
  if (!search()) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// ---------------------------------------------------------------------------

namespace {

using Expected = std::map<std::vector<CandidateId>, std::pair<Weight, std::string>>;

void expect(Expected& e, std::vector<CandidateId> ballot, Weight w, const std::string& formula) {
  if (w == 0) return;
  std::sort(ballot.begin(), ballot.end());
  auto& [total, what] = e[ballot];
  total += w;
  what += what.empty() ? formula : " + " + formula;
}

std::vector<AuditRow> compare(const Profile& p, const Expected& e) {
  std::vector<AuditRow> rows;
  auto describe = [&](const std::vector<CandidateId>& ballot) {
    std::string s = "{";
    for (std::size_t i = 0; i < ballot.size(); ++i) s += (i ? "," : "") + p.label(ballot[i]);
    return s + "}";
  };
  for (const auto& [ballot, ew] : e) {
    const auto g = p.find_group(ballot);
    rows.push_back({describe(ballot) + " = " + ew.second, ew.first, g ? p.group(*g).weight : 0});
  }
  for (const auto& grp : p.groups()) {
    if (!e.count(grp.ballot)) rows.push_back({describe(grp.ballot) + " (unexpected)", 0, grp.weight});
  }
  return rows;
}

}  // namespace

std::vector<AuditRow> rx3c_audit(const Rx3cInstance& inst, const ReducedInstance& reduced) {
  const Profile& p = reduced.instance.profile;
  const Weight t = inst.t;
  const Weight t3 = t * t * t;
  auto c = [&](const std::string& label) { return reduced.candidate(label); };
  Expected e;
  for (Weight i = 1; i <= t; ++i) {
    const auto ai = c("a" + std::to_string(i));
    expect(e, {ai}, 10 * t3 + 45 * t, "10t^3+45t");
    expect(e, {c("g4"), ai}, 15, "15");
  }
  expect(e, {c("b1")}, 7 * t3, "7t^3");
  expect(e, {c("b2")}, 7 * t3 - (90 * t * t + 120 * t + 60), "7t^3-(90t^2+120t+60)");
  for (std::size_t j = 0; j < inst.sets.size(); ++j) expect(e, {c("S" + std::to_string(j))}, 10 * t3, "10t^3");
  for (unsigned x = 0; x < 3 * t; ++x) {
    std::vector<CandidateId> si;
    for (std::size_t j = 0; j < inst.sets.size(); ++j) {
      const auto& s = inst.sets[j];
      if (s[0] == x || s[1] == x || s[2] == x) si.push_back(c("S" + std::to_string(j)));
    }
    expect(e, si, 15 * t, "15t");
    si.push_back(c("g1"));
    expect(e, si, 5, "5");
  }
  expect(e, {c("g1"), c("g2"), c("g3")}, 1, "1");
  expect(e, {c("g1"), c("g4")}, 4 * t3 + 30 * t + 13, "4t^3+30t+13");
  expect(e, {c("g1")}, 6 * t3, "6t^3");
  expect(e, {c("g2")}, 3 * t3 + 11, "3t^3+11");
  expect(e, {c("g3")}, 3 * t3 + 11, "3t^3+11");
  expect(e, {c("g5")}, 12, "12");
  expect(e, {c("g6")}, 12, "12");
  expect(e, {c("g2"), c("g5")}, 7 * t3 + 30 * t, "7t^3+30t");
  expect(e, {c("g3"), c("g6")}, 7 * t3 + 30 * t, "7t^3+30t");
  expect(e, {c("g4"), c("g5")}, 3 * t3, "3t^3");
  expect(e, {c("g4"), c("g6")}, 3 * t3, "3t^3");
  auto rows = compare(p, e);
  rows.push_back({"total voters = 10t^3(4t+5)", 10 * t3 * (4 * t + 5), p.total_weight()});
  rows.push_back({"committee size = 4t+5", 4 * t + 5, reduced.instance.k});
  return rows;
}

std::vector<AuditRow> indset_audit(const CubicGraph& graph, unsigned t, const ScoringFunction& s,
                                   const ReducedInstance& reduced) {
  const Profile& p = reduced.instance.profile;
  const Weight n = graph.vertices;
  const Weight alpha = indset_alpha(s);
  const Weight mg = indset_gadget_weight(s, graph.vertices, t);
  const Weight edges = graph.edges.size();
  auto c = [&](const std::string& label) { return reduced.candidate(label); };
  auto v = [&](unsigned i) { return c("v" + std::to_string(i)); };
  Expected e;
  for (unsigned i = 0; i < n; ++i) {
    expect(e, {v(i)}, alpha * n * n * n, "αn^3");
    for (unsigned j = i + 1; j < n; ++j) expect(e, {v(i), v(j)}, alpha * n * n * n, "αn^3");
  }
  for (auto [x, y] : graph.edges) expect(e, {v(x), v(y), c("g1")}, 1, "1 per edge");
  expect(e, {c("b")}, alpha * n * n * n * n * n, "αn^5");
  expect(e, {c("b"), c("g2")}, 3 * static_cast<Weight>(t), "3t");
  for (auto [x, y] : {std::pair{"g1", "g2"}, {"g1", "g3"}, {"g2", "g4"}, {"g3", "g4"}}) {
    expect(e, {c(x), c(y)}, mg, "m");
  }
  expect(e, {c("g2")}, edges - 3 * static_cast<Weight>(t), "|E|-3t");
  expect(e, {c("g1")}, 1, "1");
  auto rows = compare(p, e);
  rows.push_back({"committee size = |V|+4", n + 4, reduced.instance.k});
  return rows;
}

}  // namespace noshow
