#include "noshow/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "noshow/error.hpp"
#include "noshow/generators.hpp"
#include "noshow/laminar.hpp"
#include "noshow/participation.hpp"
#include "noshow/profile_io.hpp"
#include "noshow/rule.hpp"
#include "noshow/sequential.hpp"

namespace noshow::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string format = "text";
  bool trace = false;
  std::uint64_t seed = 1;
  std::size_t max_branches = 1'000'000;
  std::size_t max_subsets = 1'000'000;
  unsigned threads = 1;

  bool as_json() const { return format == "json"; }
};

// Every rational leaves the CLI as p/q, integers included.
std::string frac(const Rational& q) {
  const std::string s = q.str();
  return s.find('/') == std::string::npos ? s + "/1" : s;
}

std::string seq_text(const Sequence& seq, const Profile& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "," : "") + p.label(seq[i]);
  return s + ")";
}

json committees_json(const Outcome& o) {
  json arr = json::array();
  for (const auto& w : o.committees()) arr.push_back(w);
  return arr;
}

json named_json(const Outcome& o, const Profile& p) {
  json arr = json::array();
  for (const auto& w : o.committees()) {
    json names = json::array();
    for (CandidateId c : w) names.push_back(p.label(c));
    arr.push_back(names);
  }
  return arr;
}

std::string outcome_text(const Outcome& o, const Profile& p) {
  std::string s;
  for (const auto& w : o.committees()) s += (s.empty() ? "" : " ") + format_committee(w, &p);
  return s;
}

// Owns the enumeration options that ComputeOptions points at.
struct Engine {
  EnumerationOptions enumeration;
  ComputeOptions compute;

  Engine(const Common& c, const Profile& p, std::ostream& err) {
    enumeration.max_branches = c.max_branches;
    if (c.trace) {
      enumeration.on_transition = [&p, &err](const Transition& t) {
        err << "step " << seq_text(t.prefix, p) << " + " << p.label(t.candidate) << (t.phase_two ? " phase2" : "")
            << " value " << frac(t.value) << " tie " << t.tie_size << '\n';
      };
      enumeration.on_leaf = [&p, &err](const Sequence& s, std::string_view why) {
        err << "leaf " << seq_text(s, p) << ' ' << why << '\n';
      };
    }
    compute.scoring.max_subsets = c.max_subsets;
    compute.scoring.threads = c.threads;
    compute.enumeration = &enumeration;
  }
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;
};

ElectionInstance load(const std::string& path, std::optional<unsigned> k) {
  ElectionInstance inst = read_instance_file(path);
  return k ? ElectionInstance(inst.profile, *k) : inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(std::ostream& out, const Common& c, const json& doc, const std::string& text) {
  if (c.as_json()) {
    out << doc.dump() << '\n';
  } else {
    out << text;
  }
}

// ---------------------------------------------------------------------------

int do_elect(const Common& c, const std::string& rule_spec, std::optional<unsigned> k, const std::string& path,
             std::ostream& out, std::ostream& err) {
  const Rule rule = Rule::parse(rule_spec);
  const ElectionInstance inst = load(path, k);
  const Profile& p = inst.profile;
  Engine engine(c, p, err);
  json doc = {{"rule", rule.name()}, {"k", inst.k}};
  Outcome outcome;
  std::ostringstream text;
  if (rule.kind() == Rule::Kind::scoring) {
    outcome = compute_outcome(rule, inst, engine.compute);
  } else {
    const EnumerationResult r = enumerate_outcomes(rule, inst, engine.enumeration);
    outcome = r.outcome;
    doc["unfilled_fallback"] = r.unfilled_fallback;
    doc["stats"] = {{"leaves", r.leaves}, {"branch_nodes", r.branch_nodes}, {"memo_hits", r.memo_hits},
                    {"mirrored", r.mirrored}};
    if (r.unfilled_fallback) text << "# some branch was filled with unapproved candidates\n";
  }
  doc["committees"] = committees_json(outcome);
  doc["named"] = named_json(outcome, p);
  for (const auto& w : outcome.committees()) text << format_committee(w, &p) << '\n';
  emit(out, c, doc, text.str());
  return ok;
}

json witness_json(const AbstentionWitness& w, const Profile& p) {
  json abstainers = json::array();
  for (const auto& a : w.abstainers) {
    abstainers.push_back({{"group", a.group}, {"count", a.count}, {"ballot", p.group(a.group).ballot}});
  }
  json approvals = json::array();
  for (const auto& a : w.approvals) {
    approvals.push_back({{"ballot", a.ballot}, {"before", a.before}, {"after", a.after}});
  }
  return {{"abstainers", abstainers},
          {"before", committees_json(w.before)},
          {"after", committees_json(w.after)},
          {"approvals", approvals}};
}

std::string witness_text(const AbstentionWitness& w, const Profile& p) {
  std::ostringstream s;
  s << "witness:";
  for (const auto& a : w.abstainers) {
    s << ' ' << a.count << "x" << format_committee(p.group(a.group).ballot, &p) << " (group " << a.group << ")";
  }
  s << "\n  before: " << outcome_text(w.before, p) << "\n  after:  " << outcome_text(w.after, p) << '\n';
  for (const auto& a : w.approvals) {
    s << "  approvals of " << format_committee(a.ballot, &p) << ": before";
    for (unsigned x : a.before) s << ' ' << x;
    s << ", after";
    for (unsigned x : a.after) s << ' ' << x;
    s << '\n';
  }
  return s.str();
}

struct ParticipationArgs {
  std::string rule;
  std::optional<unsigned> k;
  std::string profile;
  std::optional<std::size_t> group;
  Weight count = 1;
  bool unrepresented = false;
  std::optional<unsigned> group_size;
};

int do_participation(const Common& c, const ParticipationArgs& a, std::ostream& out, std::ostream& err) {
  const Rule rule = Rule::parse(a.rule);
  const ElectionInstance inst = load(a.profile, a.k);
  const Profile& p = inst.profile;
  Engine engine(c, p, err);
  ParticipationOptions opts;
  opts.compute = engine.compute;
  opts.threads = c.threads;
  if (a.group_size) opts.max_group_size = *a.group_size;

  std::vector<AbstentionWitness> found;
  std::string mode;
  if (a.group) {
    mode = "group";
    if (auto w = benefits_by_abstaining(rule, inst, *a.group, a.count, opts)) found.push_back(std::move(*w));
  } else if (a.unrepresented) {
    mode = "unrepresented";
    if (auto w = unrepresented_check(rule, inst, opts)) found.push_back(std::move(*w));
  } else if (a.group_size) {
    mode = "group-scan";
    found = scan_group_participation(rule, inst, opts);
  } else {
    mode = "scan";
    found = scan_participation(rule, inst, opts);
  }
  json arr = json::array();
  std::string text;
  for (const auto& w : found) {
    arr.push_back(witness_json(w, p));
    text += witness_text(w, p);
  }
  if (found.empty()) text = "no witness\n";
  emit(out, c, {{"rule", rule.name()}, {"k", inst.k}, {"mode", mode}, {"witnesses", arr}}, text);
  return found.empty() ? ok : witness;
}

struct VerifyArgs {
  std::string rule;
  std::optional<unsigned> k;
  std::string profile;
  std::optional<std::string> claimed;
  std::optional<std::size_t> group;
  std::optional<unsigned> at_least;
};

int do_verify(const Common& c, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.claimed && !(a.group && a.at_least)) {
    throw Error(ErrorCode::invariant, "verify-outcome needs a claimed outcome file or --group with --at-least");
  }
  if (a.group.has_value() != a.at_least.has_value()) {
    throw Error(ErrorCode::invariant, "--group and --at-least go together");
  }
  const Rule rule = Rule::parse(a.rule);
  const ElectionInstance inst = load(a.profile, a.k);
  const Profile& p = inst.profile;
  Engine engine(c, p, err);
  const Outcome actual = compute_outcome(rule, inst, engine.compute);
  json doc = {{"rule", rule.name()}, {"k", inst.k}, {"actual", committees_json(actual)}};
  std::ostringstream text;
  bool holds = true;
  if (a.claimed) {
    const Outcome claimed = outcome_from_json(nlohmann::json::parse(read_file(*a.claimed)));
    const bool valid = is_outcome(rule, inst, claimed, engine.compute);
    holds = holds && valid;
    doc["claimed"] = committees_json(claimed);
    doc["valid"] = valid;
    text << (valid ? "claimed outcome is f(A, k)\n" : "claimed outcome differs from f(A, k)\n");
  }
  if (a.group) {
    const auto& ballot = p.group(*a.group).ballot;
    const unsigned best = max_approvals(actual, ballot);
    const bool reached = best >= *a.at_least;
    holds = holds && reached;
    doc["group"] = *a.group;
    doc["max_approvals"] = best;
    doc["at_least"] = *a.at_least;
    doc["reached"] = reached;
    text << "group " << *a.group << ' ' << format_committee(ballot, &p) << ": best committee approves " << best
         << (reached ? " >= " : " < ") << *a.at_least << '\n';
  }
  text << "actual: " << outcome_text(actual, p) << '\n';
  emit(out, c, doc, text.str());
  return holds ? ok : witness;
}

int do_robustness(const Common& c, const std::string& rule_spec, std::optional<unsigned> k, const std::string& path,
                  std::ostream& out, std::ostream& err) {
  const Rule rule = Rule::parse(rule_spec);
  const ElectionInstance inst = load(path, k);
  const Profile& p = inst.profile;
  Engine engine(c, p, err);
  ParticipationOptions opts;
  opts.compute = engine.compute;
  opts.threads = c.threads;
  const auto change = single_approval_robustness(rule, inst, opts);
  json doc = {{"rule", rule.name()}, {"k", inst.k}};
  std::ostringstream text;
  if (change) {
    doc["change"] = {{"group", change->group},
                     {"candidate", change->candidate},
                     {"added", change->added},
                     {"before", committees_json(change->before)},
                     {"after", committees_json(change->after)}};
    text << "one voter of group " << change->group << ' ' << format_committee(p.group(change->group).ballot, &p)
         << (change->added ? " adds " : " deletes ") << p.label(change->candidate) << "\n  before: "
         << outcome_text(change->before, p) << "\n  after:  " << outcome_text(change->after, p) << '\n';
  } else {
    doc["change"] = nullptr;
    text << "no single added or deleted approval changes the outcome\n";
  }
  emit(out, c, doc, text.str());
  return change ? witness : ok;
}

int do_check_laminar(const Common& c, const std::string& path, bool dot, std::ostream& out) {
  const ElectionInstance inst = read_instance_file(path);
  const Profile& p = inst.profile;
  if (!is_laminar(p)) {
    emit(out, c, {{"laminar", false}}, "not laminar\n");
    return witness;
  }
  const LaminarForest f = laminar_forest(p);
  json nodes = json::array();
  for (const auto& n : f.nodes) {
    json node = {{"members", n.members}, {"weight", n.weight}};
    node["parent"] = n.parent ? json(*n.parent) : json(nullptr);
    nodes.push_back(node);
  }
  json doc = {{"laminar", true}, {"roots", f.roots}, {"nodes", nodes}};
  std::string text = "laminar: " + std::to_string(f.nodes.size()) + " classes, " + std::to_string(f.roots.size()) +
                     " roots\n";
  if (dot) {
    doc["dot"] = f.to_dot(p);
    text += f.to_dot(p);
  }
  emit(out, c, doc, text);
  return ok;
}

struct GenerateArgs {
  std::string kind;
  unsigned k = 3;
  Weight lambda = 1;
  std::string graph;
  unsigned t = 0;
  std::string scoring = "pav";
  std::optional<unsigned> mixed_blocks;
  std::string sets_in;
  std::string sets_out;
  LaminarParams laminar;
  unsigned laminar_k = 0;
  std::string output;
};

CubicGraph load_graph(const std::string& spec) {
  if (std::filesystem::exists(spec)) return CubicGraph::parse(read_file(spec));
  if (spec == "k4") return CubicGraph::k4();
  if (spec == "k33") return CubicGraph::k33();
  if (spec == "q3") return CubicGraph::q3();
  throw Error(ErrorCode::parse, "no graph file '" + spec + "' (built-ins: k4, k33, q3)");
}

int do_generate(const Common& c, const GenerateArgs& a, std::ostream& out) {
  ElectionInstance inst;
  std::optional<std::size_t> abstainer;
  json extra = json::object();
  if (a.kind == "concurrence") {
    inst = concurrence_profile();
  } else if (a.kind == "thm2") {
    const ReducedInstance r = theorem2_family(a.k, a.lambda);
    inst = r.instance;
    abstainer = r.abstainer;
    extra["lambda"] = a.lambda;
  } else if (a.kind == "mes-unrep") {
    const ReducedInstance r = mes_unrep_instance();
    inst = r.instance;
    abstainer = r.abstainer;
  } else if (a.kind == "indset") {
    if (a.graph.empty()) throw Error(ErrorCode::invariant, "indset needs --graph");
    const CubicGraph g = load_graph(a.graph);
    const unsigned limit = g.vertices + 4;
    const ScoringFunction s = builtin_scoring(a.scoring, limit);
    const ReducedInstance r = indset_reduction(g, a.t, s);
    inst = r.instance;
    abstainer = r.abstainer;
    extra["alpha"] = indset_alpha(s);
    extra["gadget_weight"] = indset_gadget_weight(s, g.vertices, a.t);
  } else if (a.kind == "rx3c") {
    Rx3cInstance sets;
    if (!a.sets_in.empty()) {
      sets = Rx3cInstance::parse(read_file(a.sets_in));
    } else {
      if (a.t == 0) throw Error(ErrorCode::invariant, "rx3c needs --t or --sets");
      sets = planted_rx3c(a.t, c.seed, a.mixed_blocks);
    }
    if (!a.sets_out.empty()) {
      std::ofstream f(a.sets_out);
      if (!f) throw Error(ErrorCode::parse, "cannot write '" + a.sets_out + "'");
      f << sets.format();
    }
    const ReducedInstance r = rx3c_reduction(sets);
    inst = r.instance;
    abstainer = r.abstainer;
    extra["t"] = sets.t;
  } else if (a.kind == "laminar") {
    const Profile p = random_laminar(a.laminar, c.seed);
    const unsigned k = a.laminar_k ? a.laminar_k : std::max(1u, a.laminar.m / 2);
    inst = ElectionInstance(p, k);
    extra["seed"] = c.seed;
  } else {
    throw Error(ErrorCode::parse, "unknown generator '" + a.kind + "'");
  }

  std::ostringstream text;
  std::string body;
  if (c.as_json()) {
    json doc = json(instance_to_json(inst));
    doc["generator"] = a.kind;
    if (abstainer) doc["abstainer"] = *abstainer;
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
    body = doc.dump() + "\n";
  } else {
    text << "# generator: " << a.kind << '\n';
    for (auto it = extra.begin(); it != extra.end(); ++it) text << "# " << it.key() << ": " << it.value() << '\n';
    if (abstainer) {
      text << "# abstainer group " << *abstainer << ": "
           << format_committee(inst.profile.group(*abstainer).ballot, &inst.profile) << '\n';
    }
    text << format_instance_text(inst);
    body = text.str();
  }
  if (a.output.empty()) {
    out << body;
  } else {
    std::ofstream f(a.output);
    if (!f) throw Error(ErrorCode::parse, "cannot write '" + a.output + "'");
    f << body;
  }
  return ok;
}

// Standardness, then concurrence for every candidate pair after every prefix
// of distinct candidates up to `max_length`.
int do_axiom_scan(const Common& c, const std::string& rule_spec, std::optional<unsigned> k, const std::string& path,
                  std::optional<unsigned> max_length, std::ostream& out) {
  const Rule rule = Rule::parse(rule_spec);
  const ElectionInstance inst = load(path, k);
  const Profile& p = inst.profile;
  const QueryFunction g = query_function(rule);
  const bool standard = check_standardness(g, inst);
  const unsigned m = p.num_candidates();
  const unsigned depth = std::min(max_length.value_or(inst.k - 1), inst.k - 1);

  std::size_t checks = 0;
  std::size_t holds = 0;
  std::size_t premise_fails = 0;
  json violations = json::array();
  std::ostringstream text;
  Sequence seq;
  std::vector<char> used(m, 0);
  std::function<void()> walk = [&] {
    for (CandidateId a = 0; a < m; ++a) {
      for (CandidateId b = 0; b < m; ++b) {
        if (a == b || used[a] || used[b]) continue;
        if (++checks > c.max_branches) throw Error(ErrorCode::branch_explosion, "axiom-scan exceeded --max-branches");
        switch (check_concurrence(g, p, inst.k, seq, a, b)) {
          case ConcurrenceVerdict::holds: ++holds; break;
          case ConcurrenceVerdict::premise_fails: ++premise_fails; break;
          case ConcurrenceVerdict::violated:
            violations.push_back({{"sequence", seq}, {"c", a}, {"d", b}});
            text << "concurrence violated after " << seq_text(seq, p) << " for c=" << p.label(a)
                 << " d=" << p.label(b) << '\n';
            break;
        }
      }
    }
    if (seq.size() == depth) return;
    for (CandidateId x = 0; x < m; ++x) {
      if (used[x]) continue;
      used[x] = 1;
      seq.push_back(x);
      walk();
      seq.pop_back();
      used[x] = 0;
    }
  };
  walk();
  const bool clean = standard && violations.empty();
  json doc = {{"rule", rule.name()},
              {"k", inst.k},
              {"standard", standard},
              {"concurrence", {{"checked", checks}, {"holds", holds}, {"premise_fails", premise_fails},
                               {"violations", violations}}}};
  std::ostringstream head;
  head << "standardness: " << (standard ? "holds" : "violated") << '\n'
       << "concurrence: " << checks << " checks, " << holds << " hold, " << premise_fails << " premise fails, "
       << violations.size() << " violated\n"
       << text.str();
  emit(out, c, doc, head.str());
  return clean ? ok : witness;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Participation and no-show checks for approval-based committee elections", "noshow"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--trace", common.trace, "stream sequential-rule steps to stderr");
  app.add_option("--seed", common.seed, "seed for generators");
  app.add_option("--max-branches", common.max_branches, "cap on explored tie branches");
  app.add_option("--max-subsets", common.max_subsets, "cap on committees scored by exhaustive rules");
  app.add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);

  std::function<int()> action;

  // elect
  auto* elect = app.add_subcommand("elect", "compute f(A, k)");
  std::string e_rule;
  std::optional<unsigned> e_k;
  std::string e_profile;
  elect->add_option("--rule", e_rule, "rule spec")->required();
  elect->add_option("--k", e_k, "committee size (overrides the file)");
  elect->add_option("profile", e_profile, "profile file or -")->required();
  elect->callback([&] { action = [&] { return do_elect(common, e_rule, e_k, e_profile, out, err); }; });

  // participation
  auto* part = app.add_subcommand("participation", "search for voters who gain by abstaining");
  ParticipationArgs pa;
  part->add_option("--rule", pa.rule)->required();
  part->add_option("--k", pa.k);
  part->add_option("profile", pa.profile)->required();
  part->add_option("--group", pa.group, "only this ballot group abstains");
  part->add_option("--count", pa.count, "voters of --group who abstain")->check(CLI::PositiveNumber);
  part->add_flag("--unrepresented", pa.unrepresented, "only voters unrepresented in some winning committee");
  part->add_option("--group-size", pa.group_size, "abstainer multisets up to this size")->check(CLI::PositiveNumber);
  part->callback([&] { action = [&] { return do_participation(common, pa, out, err); }; });

  // verify-outcome
  auto* verify = app.add_subcommand("verify-outcome", "check a claimed outcome or an approval threshold");
  VerifyArgs va;
  verify->add_option("--rule", va.rule)->required();
  verify->add_option("--k", va.k);
  verify->add_option("profile", va.profile)->required();
  verify->add_option("claimed", va.claimed, "JSON outcome: [[ids..],..] or {\"committees\": ..}");
  verify->add_option("--group", va.group, "ballot group whose approvals are counted");
  verify->add_option("--at-least", va.at_least, "required approvals in some winning committee");
  verify->callback([&] { action = [&] { return do_verify(common, va, out, err); }; });

  // robustness
  auto* robust = app.add_subcommand("robustness", "does one added or deleted approval change f(A, k)?");
  std::string r_rule;
  std::optional<unsigned> r_k;
  std::string r_profile;
  robust->add_option("--rule", r_rule)->required();
  robust->add_option("--k", r_k);
  robust->add_option("profile", r_profile)->required();
  robust->callback([&] { action = [&] { return do_robustness(common, r_rule, r_k, r_profile, out, err); }; });

  // check-laminar
  auto* lam = app.add_subcommand("check-laminar", "laminarity test and forest");
  std::string l_profile;
  bool l_dot = false;
  lam->add_option("profile", l_profile)->required();
  lam->add_flag("--dot", l_dot, "include the forest as Graphviz");
  lam->callback([&] { action = [&] { return do_check_laminar(common, l_profile, l_dot, out); }; });

  // generate
  auto* gen = app.add_subcommand("generate", "emit a constructed election");
  GenerateArgs ga;
  gen->add_option("kind", ga.kind, "concurrence | thm2 | mes-unrep | indset | rx3c | laminar")
      ->required()
      ->check(CLI::IsMember({"concurrence", "thm2", "mes-unrep", "indset", "rx3c", "laminar"}));
  gen->add_option("--k", ga.k, "thm2: committee size");
  gen->add_option("--lambda", ga.lambda, "thm2: copies of the base profile")->check(CLI::PositiveNumber);
  gen->add_option("--graph", ga.graph, "indset: edge-list file or k4 | k33 | q3");
  gen->add_option("--t", ga.t, "indset: independent-set size; rx3c: |U|/3");
  gen->add_option("--scoring", ga.scoring, "indset: pav | ccav");
  gen->add_option("--mixed-blocks", ga.mixed_blocks, "rx3c: re-partitioned 9-element blocks");
  gen->add_option("--sets", ga.sets_in, "rx3c: read the set family instead of planting one");
  gen->add_option("--sets-out", ga.sets_out, "rx3c: write the set family");
  gen->add_option("--m", ga.laminar.m, "laminar: candidates");
  gen->add_option("--depth", ga.laminar.depth, "laminar: tree depth");
  gen->add_option("--branching", ga.laminar.branching, "laminar: children per node");
  gen->add_option("--max-weight", ga.laminar.max_weight, "laminar: largest ballot weight");
  gen->add_option("--clone-percent", ga.laminar.clone_percent, "laminar: chance of joining a clone class");
  gen->add_option("--committee", ga.laminar_k, "laminar: committee size (default m/2)");
  gen->add_option("--output,-o", ga.output, "write to a file instead of stdout");
  gen->callback([&] { action = [&] { return do_generate(common, ga, out); }; });

  // axiom-scan
  auto* axiom = app.add_subcommand("axiom-scan", "standardness and concurrence of a sequential rule");
  std::string a_rule;
  std::optional<unsigned> a_k;
  std::string a_profile;
  std::optional<unsigned> a_len;
  axiom->add_option("--rule", a_rule)->required();
  axiom->add_option("--k", a_k);
  axiom->add_option("profile", a_profile)->required();
  axiom->add_option("--max-length", a_len, "longest prefix examined (default k-1)");
  axiom->callback([&] { action = [&] { return do_axiom_scan(common, a_rule, a_k, a_profile, a_len, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return failure;
}

}  // namespace noshow::cli
