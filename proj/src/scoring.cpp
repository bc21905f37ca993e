#include "noshow/scoring.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "noshow/error.hpp"

namespace noshow {

ScoringFunction ScoringFunction::thiele(std::string name, std::vector<Rational> values) {
  if (values.size() < 2) throw Error(ErrorCode::bad_scoring, "Thiele table needs s(0) and s(1)");
  if (!values[0].is_zero()) throw Error(ErrorCode::bad_scoring, "s(0) must be 0");
  if (values[1].sign() <= 0) throw Error(ErrorCode::bad_scoring, "s(1) must be positive");
  for (std::size_t x = 1; x < values.size(); ++x) {
    if (values[x] < values[x - 1]) throw Error(ErrorCode::bad_scoring, "s must be nondecreasing");
    if (x + 1 < values.size() && values[x + 1] - values[x] > values[x] - values[x - 1]) {
      throw Error(ErrorCode::bad_scoring, "s must be concave");
    }
  }
  ScoringFunction s;
  s.kind_ = Kind::thiele;
  s.name_ = std::move(name);
  s.thiele_ = std::move(values);
  return s;
}

ScoringFunction ScoringFunction::general(std::string name, std::vector<std::vector<Rational>> rows) {
  for (std::size_t y = 1; y < rows.size(); ++y) {
    const auto& row = rows[y];
    if (row.empty()) continue;  // ballot size not covered
    if (row.size() != y + 1) {
      throw Error(ErrorCode::bad_scoring, "row y=" + std::to_string(y) + " must have y+1 entries");
    }
    if (!row[0].is_zero()) throw Error(ErrorCode::bad_scoring, "s(0,y) must be 0");
    for (std::size_t x = 1; x <= y; ++x) {
      if (row[x] < row[x - 1]) throw Error(ErrorCode::bad_scoring, "s(x,y) must be nondecreasing in x");
    }
  }
  ScoringFunction s;
  s.kind_ = Kind::general;
  s.name_ = std::move(name);
  s.rows_ = std::move(rows);
  return s;
}

const Rational& ScoringFunction::value(unsigned x, unsigned y) const {
  if (x > y) throw Error(ErrorCode::bad_scoring, "x > y in s(x,y)");
  if (kind_ == Kind::thiele) return thiele_value(x);
  if (y >= rows_.size() || rows_[y].empty()) {
    throw Error(ErrorCode::bad_scoring, "no table entry for ballot size " + std::to_string(y));
  }
  return rows_[y][x];
}

const Rational& ScoringFunction::thiele_value(unsigned x) const {
  if (kind_ != Kind::thiele) throw Error(ErrorCode::bad_scoring, name_ + " is not a Thiele function");
  if (x >= thiele_.size()) {
    throw Error(ErrorCode::bad_scoring, "no table entry for s(" + std::to_string(x) + ")");
  }
  return thiele_[x];
}

Rational ScoringFunction::delta(unsigned x) const {
  if (x == 0) throw Error(ErrorCode::bad_scoring, "delta(0) is undefined");
  return thiele_value(x) - thiele_value(x - 1);
}

unsigned ScoringFunction::table_limit() const {
  if (kind_ == Kind::thiele) return static_cast<unsigned>(thiele_.size() - 1);
  return rows_.empty() ? 0 : static_cast<unsigned>(rows_.size() - 1);
}

ScoringFunction builtin_scoring(const std::string& name, unsigned limit) {
  if (limit < 1) throw Error(ErrorCode::bad_scoring, "table limit must be >= 1");
  if (name == "sav") {
    std::vector<std::vector<Rational>> rows(limit + 1);
    for (unsigned y = 1; y <= limit; ++y) {
      for (unsigned x = 0; x <= y; ++x) rows[y].emplace_back(static_cast<long>(x), static_cast<long>(y));
    }
    return ScoringFunction::general("sav", std::move(rows));
  }
  std::vector<Rational> values{Rational(0)};
  for (unsigned x = 1; x <= limit; ++x) {
    if (name == "av") {
      values.emplace_back(static_cast<long>(x));
    } else if (name == "pav") {
      values.push_back(values.back() + Rational(1L, static_cast<long>(x)));
    } else if (name == "ccav") {
      values.emplace_back(1);
    } else {
      throw Error(ErrorCode::bad_scoring, "unknown builtin scoring function '" + name + "'");
    }
  }
  return ScoringFunction::thiele(name, std::move(values));
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

ScoringFunction read_thiele_file(const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<Rational> values;
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::getline(in, tok);
      continue;
    }
    values.push_back(Rational::parse(tok));
  }
  return ScoringFunction::thiele("thiele:" + path, std::move(values));
}

ScoringFunction read_general_file(const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<std::vector<Rational>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected 'y: values'");
    }
    const auto y = static_cast<std::size_t>(std::stoul(line.substr(0, colon)));
    if (rows.size() <= y) rows.resize(y + 1);
    std::istringstream vals(line.substr(colon + 1));
    std::string tok;
    rows[y].clear();
    while (vals >> tok) rows[y].push_back(Rational::parse(tok));
  }
  return ScoringFunction::general("general:" + path, std::move(rows));
}

Rational committee_score(const Profile& profile, const Committee& w, const ScoringFunction& s) {
  Rational total;
  for (const auto& g : profile.groups()) {
    const unsigned x = overlap(w, g.ballot);
    if (x == 0) continue;
    total += Rational(static_cast<unsigned long>(g.weight)) *
             s.value(x, static_cast<unsigned>(g.ballot.size()));
  }
  return total;
}

std::size_t binomial_capped(unsigned n, unsigned r, std::size_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (unsigned i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::size_t>(acc);
}

namespace {

// Per-group table w_g·s(x,|b_g|) scaled to a common denominator, so the inner
// loop runs on 128-bit integers whenever the total fits.
struct GroupTable {
  std::vector<std::vector<__int128>> fast;
  std::vector<std::vector<Rational>> exact;
  bool use_fast = true;
};

GroupTable build_table(const Profile& profile, const ScoringFunction& s, unsigned k) {
  GroupTable t;
  const auto groups = profile.groups();
  t.exact.resize(groups.size());
  mpz_class common = 1;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const unsigned y = static_cast<unsigned>(groups[g].ballot.size());
    const unsigned xmax = std::min(k, y);
    for (unsigned x = 0; x <= xmax; ++x) {
      t.exact[g].push_back(Rational(static_cast<unsigned long>(groups[g].weight)) * s.value(x, y));
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), t.exact[g].back().denominator().get_mpz_t());
    }
  }
  mpz_class bound = 0;
  t.fast.resize(groups.size());
  for (std::size_t g = 0; g < groups.size() && t.use_fast; ++g) {
    for (const auto& v : t.exact[g]) {
      mpz_class scaled = v.numerator() * (common / v.denominator());
      if (mpz_sizeinbase(scaled.get_mpz_t(), 2) > 62) {
        t.use_fast = false;
        break;
      }
      t.fast[g].push_back(static_cast<__int128>(scaled.get_si()));
    }
    bound += mpz_class(t.exact[g].back().numerator() * (common / t.exact[g].back().denominator()));
  }
  if (t.use_fast && mpz_sizeinbase(bound.get_mpz_t(), 2) > 120) t.use_fast = false;
  return t;
}

// rank-th k-subset of {0..m-1} in lexicographic order.
std::vector<CandidateId> unrank(std::size_t rank, unsigned m, unsigned k) {
  std::vector<CandidateId> out;
  CandidateId next = 0;
  for (unsigned slot = 0; slot < k; ++slot) {
    while (true) {
      const std::size_t with = binomial_capped(m - next - 1, k - slot - 1, SIZE_MAX - 1);
      if (rank < with) break;
      rank -= with;
      ++next;
    }
    out.push_back(next++);
  }
  return out;
}

bool next_combination(std::vector<CandidateId>& w, unsigned m) {
  const std::size_t k = w.size();
  for (std::size_t i = k; i-- > 0;) {
    if (w[i] < m - k + i) {
      ++w[i];
      for (std::size_t j = i + 1; j < k; ++j) w[j] = w[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct ChunkResult {
  bool fast = true;
  __int128 best_fast = -1;
  Rational best_exact{-1};
  std::vector<Committee> winners;
};

void scan_chunk(const Profile& profile, const GroupTable& table, unsigned k, std::size_t begin,
                std::size_t end, ChunkResult& result) {
  const unsigned m = profile.num_candidates();
  std::vector<unsigned> count(profile.num_groups(), 0);
  std::vector<std::size_t> touched;
  auto w = unrank(begin, m, k);
  result.fast = table.use_fast;
  for (std::size_t rank = begin; rank < end; ++rank) {
    touched.clear();
    for (CandidateId c : w) {
      for (std::size_t g : profile.supporters(c)) {
        if (count[g]++ == 0) touched.push_back(g);
      }
    }
    if (table.use_fast) {
      __int128 total = 0;
      for (std::size_t g : touched) total += table.fast[g][count[g]];
      if (total > result.best_fast) {
        result.best_fast = total;
        result.winners.clear();
      }
      if (total == result.best_fast) result.winners.push_back(w);
    } else {
      Rational total;
      for (std::size_t g : touched) total += table.exact[g][count[g]];
      if (total > result.best_exact) {
        result.best_exact = total;
        result.winners.clear();
      }
      if (total == result.best_exact) result.winners.push_back(w);
    }
    for (std::size_t g : touched) count[g] = 0;
    if (rank + 1 < end) next_combination(w, m);
  }
}

}  // namespace

Outcome elect_scoring(const ElectionInstance& instance, const ScoringFunction& s, const ScoringOptions& options) {
  const Profile& profile = instance.profile;
  const unsigned m = profile.num_candidates();
  const unsigned k = instance.k;
  const std::size_t total = binomial_capped(m, k, options.max_subsets);
  if (total > options.max_subsets) {
    throw Error(ErrorCode::too_large, "binomial(" + std::to_string(m) + "," + std::to_string(k) +
                                          ") exceeds the subset cap " + std::to_string(options.max_subsets));
  }
  const GroupTable table = build_table(profile, s, k);

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(total / 4096 + 1)));
  std::vector<ChunkResult> results(threads);
  if (threads == 1) {
    scan_chunk(profile, table, k, 0, total, results[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = total * t / threads;
      const std::size_t end = total * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] { scan_chunk(profile, table, k, begin, end, results[t]); });
    }
    for (auto& th : pool) th.join();
  }

  // Chunks are merged in rank order, so the result does not depend on scheduling.
  Outcome out;
  __int128 best_fast = -1;
  Rational best_exact(-1);
  for (const auto& r : results) {
    if (r.winners.empty()) continue;
    const bool better = table.use_fast ? r.best_fast > best_fast : r.best_exact > best_exact;
    const bool equal = table.use_fast ? r.best_fast == best_fast : r.best_exact == best_exact;
    if (better) {
      out = Outcome();
      best_fast = r.best_fast;
      best_exact = r.best_exact;
    }
    if (better || equal) {
      for (const auto& w : r.winners) out.insert(w);
    }
  }
  return out;
}

}  // namespace noshow
