#include "noshow/profile_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "noshow/error.hpp"

namespace noshow {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_uint(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    parse_fail(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

ElectionInstance parse_instance_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw_line;
  std::size_t line_no = 0;
  bool have_header = false;
  unsigned m = 0;
  unsigned k = 0;
  std::vector<BallotGroup> groups;
  std::vector<std::string> labels;

  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string_view line(raw_line);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto rest = split_ws(line.substr(hash + 1));
      if (!rest.empty() && rest.front() == "labels:") {
        if (!labels.empty()) parse_fail(line_no, "labels given twice");
        for (std::size_t i = 1; i < rest.size(); ++i) labels.emplace_back(rest[i]);
      }
      line = line.substr(0, hash);
    }
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (!have_header) {
      if (tokens.size() != 2) parse_fail(line_no, "header must be 'm k'");
      m = static_cast<unsigned>(parse_uint(tokens[0], line_no));
      k = static_cast<unsigned>(parse_uint(tokens[1], line_no));
      have_header = true;
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) parse_fail(line_no, "expected '<weight>: <candidates>'");
    auto weight_tokens = split_ws(line.substr(0, colon));
    if (weight_tokens.size() != 1) parse_fail(line_no, "expected exactly one weight before ':'");
    BallotGroup group;
    group.weight = parse_uint(weight_tokens[0], line_no);
    if (group.weight == 0) parse_fail(line_no, "weight must be >= 1");
    for (auto tok : split_ws(line.substr(colon + 1))) {
      const auto c = parse_uint(tok, line_no);
      if (c >= m) parse_fail(line_no, "candidate " + std::string(tok) + " out of range (m=" + std::to_string(m) + ")");
      group.ballot.push_back(static_cast<CandidateId>(c));
    }
    if (group.ballot.empty()) parse_fail(line_no, "empty ballot");
    groups.push_back(std::move(group));
  }
  if (!have_header) parse_fail(line_no, "missing 'm k' header");
  if (groups.empty()) parse_fail(line_no, "profile has no ballots");
  return ElectionInstance(Profile::normalize(m, std::move(groups), std::move(labels)), k);
}

ElectionInstance parse_instance_json(const nlohmann::json& doc) {
  try {
    const unsigned m = doc.at("m").get<unsigned>();
    const unsigned k = doc.at("k").get<unsigned>();
    std::vector<BallotGroup> groups;
    for (const auto& g : doc.at("groups")) {
      BallotGroup group;
      group.weight = g.value("weight", std::uint64_t{1});
      group.ballot = g.at("ballot").get<std::vector<CandidateId>>();
      groups.push_back(std::move(group));
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    return ElectionInstance(Profile::normalize(m, std::move(groups), std::move(labels)), k);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("json: ") + e.what());
  }
}

ElectionInstance parse_instance(std::string_view text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '{') {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::parse, std::string("json: ") + e.what());
      }
      return parse_instance_json(doc);
    }
    break;
  }
  return parse_instance_text(text);
}

ElectionInstance read_instance_file(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse, "cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  return parse_instance(buf.str());
}

std::string format_instance_text(const ElectionInstance& instance) {
  std::ostringstream out;
  if (!instance.profile.labels().empty()) {
    out << "# labels:";
    for (const auto& l : instance.profile.labels()) out << ' ' << l;
    out << '\n';
  }
  out << instance.profile.num_candidates() << ' ' << instance.k << '\n';
  for (const auto& g : instance.profile.groups()) {
    out << g.weight << ':';
    for (CandidateId c : g.ballot) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

nlohmann::json instance_to_json(const ElectionInstance& instance) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : instance.profile.groups()) {
    groups.push_back({{"weight", g.weight}, {"ballot", g.ballot}});
  }
  nlohmann::json doc = {{"m", instance.profile.num_candidates()}, {"k", instance.k}, {"groups", groups}};
  if (!instance.profile.labels().empty()) doc["labels"] = instance.profile.labels();
  return doc;
}

nlohmann::json committee_to_json(const Committee& w) { return nlohmann::json(w); }

nlohmann::json outcome_to_json(const Outcome& outcome) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : outcome.committees()) arr.push_back(committee_to_json(w));
  return arr;
}

Outcome outcome_from_json(const nlohmann::json& doc) {
  try {
    const auto& arr = doc.is_object() ? doc.at("committees") : doc;
    Outcome out;
    for (const auto& w : arr) out.insert(make_committee(w.get<std::vector<CandidateId>>()));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("json: ") + e.what());
  }
}

std::string format_committee(const Committee& w, const Profile* names) {
  std::string s = "{";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += names ? names->label(w[i]) : std::to_string(w[i]);
  }
  return s + "}";
}

}  // namespace noshow
