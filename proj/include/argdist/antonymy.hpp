// Copyright 2026 The argdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Antonym ranking by distributional similarity, and evaluation of those
// rankings against human antonym-choice proportions.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "argdist/error.hpp"
#include "argdist/parallel.hpp"
#include "argdist/similarity.hpp"
#include "argdist/text.hpp"
#include "argdist/vectors.hpp"
#include "json.hpp"

namespace argdist {

// One prompt-response antonym pair with the percentage of presentations of
// the prompt that produced the response in each task.
struct GoldRecord {
  std::string prompt;
  std::string response;
  double task1_pct = 0.0;
  double task2_pct = 0.0;
  double total_pct = 0.0;
  bool free_only = false;         // produced only in the free-generation task
  std::optional<double> sim;      // reference similarity, when the file has one

  bool operator==(const GoldRecord&) const = default;
};

struct GoldWarning {
  std::size_t row = 0;  // 1-based, header is row 1
  std::string message;
};

inline constexpr std::string_view kGoldColumns[] = {
    "prompt", "response", "task1_pct", "task2_pct", "total_pct", "free_only"};

namespace detail {

inline double parse_number(const std::string& s, std::size_t row,
                           std::string_view column) {
  const std::string_view t = text::trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError("bad number in column " + std::string(column) + ": '" + s + "'",
                     row);
  }
  return v;
}

inline std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

// Reads gold CSV with header prompt,response,task1_pct,task2_pct,total_pct,
// free_only and an optional trailing sim column. Rows whose total differs
// from the task mean by more than 0.5 are kept and reported as warnings.
inline std::vector<GoldRecord> load_gold(std::istream& in,
                                         std::vector<GoldWarning>* warnings = nullptr) {
  std::vector<GoldRecord> out;
  std::string line;
  std::size_t row = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++row;
    line = text::strip_cr(line);
    if (text::trim(line).empty()) continue;
    auto f = text::split_csv(line);
    for (auto& field : f) field = std::string(text::trim(field));
    if (columns == 0) {
      const bool has_sim = f.size() == 7 && f[6] == "sim";
      if (!(f.size() == 6 || has_sim) ||
          !std::equal(std::begin(kGoldColumns), std::end(kGoldColumns), f.begin())) {
        throw ParseError("gold header must be prompt,response,task1_pct,task2_pct,"
                         "total_pct,free_only[,sim]", row);
      }
      columns = f.size();
      continue;
    }
    if (f.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " fields, got " +
                           std::to_string(f.size()), row);
    }
    GoldRecord r;
    r.prompt = text::to_lower(f[0]);
    r.response = text::to_lower(f[1]);
    if (r.prompt.empty() || r.response.empty()) {
      throw ParseError("empty prompt or response", row);
    }
    double* pct[] = {&r.task1_pct, &r.task2_pct, &r.total_pct};
    for (int k = 0; k < 3; ++k) {
      *pct[k] = detail::parse_number(f[2 + k], row, kGoldColumns[2 + k]);
      if (!(*pct[k] >= 0.0 && *pct[k] <= 100.0)) {
        throw ParseError("percentage outside [0,100] in column " +
                             std::string(kGoldColumns[2 + k]), row);
      }
    }
    const std::string flag = text::to_lower(f[5]);
    if (flag == "true" || flag == "1") {
      r.free_only = true;
    } else if (flag != "false" && flag != "0") {
      throw ParseError("free_only must be true or false", row);
    }
    if (r.free_only && r.task2_pct != 0.0) {
      throw ParseError("free-only response must have task2_pct = 0", row);
    }
    if (columns == 7 && !f[6].empty()) r.sim = detail::parse_number(f[6], row, "sim");
    const double mean = (r.task1_pct + r.task2_pct) / 2.0;
    if (std::abs(r.total_pct - mean) > 0.5 && warnings) {
      warnings->push_back({row, "total_pct " + detail::format_number(r.total_pct) +
                                    " differs from task mean " +
                                    detail::format_number(mean) + " by more than 0.5"});
    }
    out.push_back(std::move(r));
  }
  if (columns == 0) throw ParseError("missing gold header", 1);
  return out;
}

inline void write_gold(std::ostream& out, std::span<const GoldRecord> records) {
  const bool with_sim = std::any_of(records.begin(), records.end(),
                                    [](const GoldRecord& r) { return r.sim.has_value(); });
  for (std::size_t i = 0; i < std::size(kGoldColumns); ++i) {
    out << (i ? "," : "") << kGoldColumns[i];
  }
  out << (with_sim ? ",sim\n" : "\n");
  for (const auto& r : records) {
    out << r.prompt << ',' << r.response << ',' << detail::format_number(r.task1_pct)
        << ',' << detail::format_number(r.task2_pct) << ','
        << detail::format_number(r.total_pct) << ',' << (r.free_only ? "true" : "false");
    if (with_sim) out << ',' << (r.sim ? detail::format_number(*r.sim) : "");
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Ranking

struct RankedCandidate {
  std::string lemma;
  SimilarityScore score;
};

struct Ranking {
  std::string prompt;
  std::vector<RankedCandidate> candidates;  // descending score, ties by lemma
  std::vector<std::string> missing;         // candidates absent from the store
};

inline void sort_ranked(std::vector<RankedCandidate>& c) {
  std::sort(c.begin(), c.end(), [](const RankedCandidate& l, const RankedCandidate& r) {
    if (l.score.value != r.score.value) return l.score.value > r.score.value;
    return l.lemma < r.lemma;
  });
}

inline Ranking rank_candidates(std::string_view prompt,
                               std::span<const std::string> candidates,
                               const VectorStore& store,
                               const SimilarityConfig& cfg = {}) {
  if (candidates.empty()) throw Error("rank: empty candidate list");
  const ArgumentVector* pv = store.find(prompt);
  if (!pv) throw Error("rank: prompt '" + std::string(prompt) + "' not in vector store");
  Ranking ranking;
  ranking.prompt = std::string(prompt);
  std::set<std::string> seen;
  for (const auto& c : candidates) {
    if (c == prompt || !seen.insert(c).second) continue;
    const ArgumentVector* cv = store.find(c);
    if (!cv) {
      ranking.missing.push_back(c);
      continue;
    }
    ranking.candidates.push_back({c, similarity(*pv, *cv, cfg)});
  }
  sort_ranked(ranking.candidates);
  return ranking;
}

// ---------------------------------------------------------------------------
// Statistics

// Sample Pearson product-moment correlation.
inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("pearson: sequences differ in length");
  if (xs.size() < 3) throw DomainError("pearson: need at least 3 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DomainError("pearson: undefined for a constant sequence");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Mean over the gold prompts of 1 / (number of choices available for the
// prompt).
inline double chance_estimate(std::span<const GoldRecord> gold,
                              const std::map<std::string, std::size_t>& choices) {
  std::set<std::string> prompts;
  for (const auto& r : gold) prompts.insert(r.prompt);
  if (prompts.empty()) throw DomainError("chance_estimate: no prompts");
  // Sum of reciprocals as a reduced fraction num/den, so equal choice
  // counts give exactly 1/n. Falls back to floating point on overflow.
  std::uint64_t num = 0, den = 1;
  bool exact = true;
  double sum = 0.0;
  for (const auto& p : prompts) {
    const auto it = choices.find(p);
    if (it == choices.end()) throw DomainError("chance_estimate: no choice count for '" + p + "'");
    if (it->second == 0) throw DomainError("chance_estimate: zero choices for '" + p + "'");
    const std::uint64_t k = it->second;
    sum += 1.0 / static_cast<double>(k);
    if (!exact) continue;
    const std::uint64_t g = std::gcd(den, k);
    std::uint64_t lcm = 0, scaled = 0, add = 0;
    if (__builtin_mul_overflow(den / g, k, &lcm) ||
        __builtin_mul_overflow(num, lcm / den, &scaled) ||
        __builtin_add_overflow(scaled, lcm / k, &add)) {
      exact = false;
      continue;
    }
    const std::uint64_t r = std::gcd(add, lcm);
    num = add / r;
    den = lcm / r;
  }
  const auto n = static_cast<std::uint64_t>(prompts.size());
  std::uint64_t total_den = 0;
  if (!exact || __builtin_mul_overflow(den, n, &total_den)) {
    return sum / static_cast<double>(prompts.size());
  }
  const std::uint64_t r = std::gcd(num, total_den);
  return static_cast<double>(num / r) / static_cast<double>(total_den / r);
}

// Choices per prompt for a matching sheet of `sheet_size` words plus the
// prompt's free-only responses.
inline std::map<std::string, std::size_t> sheet_choice_counts(
    std::span<const GoldRecord> gold, std::size_t sheet_size) {
  std::map<std::string, std::size_t> out;
  for (const auto& r : gold) {
    out.try_emplace(r.prompt, sheet_size);
    if (r.free_only) ++out[r.prompt];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

enum class PairStatus { scored, uncovered, failed };

inline std::string_view to_string(PairStatus s) {
  switch (s) {
    case PairStatus::scored: return "scored";
    case PairStatus::uncovered: return "uncovered";
    case PairStatus::failed: return "failed";
  }
  return "failed";
}

struct PairResult {
  GoldRecord gold;
  PairStatus status = PairStatus::uncovered;
  std::optional<double> score;
  std::string message;
};

struct PromptResult {
  std::string prompt;
  std::string favored;               // most-frequently-identified response
  std::optional<std::size_t> rank;   // 1-based rank of `favored`; nullopt if unscored
  std::vector<RankedCandidate> ranking;
};

struct EvaluationReport {
  std::optional<double> pearson_task1;
  std::optional<double> pearson_task2;
  std::optional<double> pearson_total;
  std::vector<std::string> notes;  // why a correlation is missing

  // Denominator: prompts whose favored response was scored.
  double top1_rate = 0.0;
  double top2_rate = 0.0;
  // Denominator: scored pairs of those prompts.
  double top1_rate_pairs = 0.0;
  double top2_rate_pairs = 0.0;
  std::size_t prompts_evaluated = 0;

  std::size_t n_pairs = 0;
  std::size_t n_scored = 0;
  std::size_t n_uncovered = 0;
  std::size_t n_failed = 0;

  std::vector<PairResult> pairs;
  std::vector<PromptResult> prompts;
  std::optional<SimilarityConfig> config;
};

struct EvaluateOptions {
  std::size_t jobs = 1;
};

// The favored response is the one with the highest total, then the highest
// task-2 share, then the lexicographically smallest.
inline const GoldRecord& favored_response(std::span<const GoldRecord* const> rows) {
  return **std::min_element(rows.begin(), rows.end(), [](const GoldRecord* l,
                                                         const GoldRecord* r) {
    if (l->total_pct != r->total_pct) return l->total_pct > r->total_pct;
    if (l->task2_pct != r->task2_pct) return l->task2_pct > r->task2_pct;
    return l->response < r->response;
  });
}

// Scores every gold pair with `scorer(prompt, response)`, which returns
// nullopt when a lemma is not covered and throws when the measure fails.
// Pair scores may be computed concurrently; the report does not depend on
// the thread count.
template <typename Scorer>
EvaluationReport evaluate_with(std::span<const GoldRecord> gold, Scorer&& scorer,
                               const EvaluateOptions& options = {}) {
  if (gold.empty()) throw Error("evaluate: empty gold data");
  EvaluationReport report;
  report.n_pairs = gold.size();
  report.pairs.resize(gold.size());
  parallel_for(gold.size(), options.jobs, [&](std::size_t i) {
    PairResult& pr = report.pairs[i];
    pr.gold = gold[i];
    try {
      if (auto s = scorer(gold[i].prompt, gold[i].response)) {
        pr.status = PairStatus::scored;
        pr.score = *s;
      } else {
        pr.status = PairStatus::uncovered;
        pr.message = "lemma not in vector store";
      }
    } catch (const std::exception& e) {
      pr.status = PairStatus::failed;
      pr.message = e.what();
    }
  });

  std::vector<double> scores, t1, t2, total;
  for (const auto& pr : report.pairs) {
    switch (pr.status) {
      case PairStatus::scored:
        ++report.n_scored;
        scores.push_back(*pr.score);
        t1.push_back(pr.gold.task1_pct);
        t2.push_back(pr.gold.task2_pct);
        total.push_back(pr.gold.total_pct);
        break;
      case PairStatus::uncovered: ++report.n_uncovered; break;
      case PairStatus::failed: ++report.n_failed; break;
    }
  }
  for (auto [target, ys, name] :
       {std::tuple{&report.pearson_task1, &t1, "task1"},
        std::tuple{&report.pearson_task2, &t2, "task2"},
        std::tuple{&report.pearson_total, &total, "total"}}) {
    try {
      *target = pearson(scores, *ys);
    } catch (const DomainError& e) {
      report.notes.push_back(std::string("pearson_") + name + ": " + e.what());
    }
  }

  std::map<std::string, std::vector<std::size_t>> by_prompt;
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    by_prompt[report.pairs[i].gold.prompt].push_back(i);
  }
  std::size_t hit1 = 0, hit2 = 0, pairs_in = 0, pair_hit1 = 0, pair_hit2 = 0;
  for (const auto& [prompt, idx] : by_prompt) {
    std::vector<const GoldRecord*> rows;
    PromptResult result;
    result.prompt = prompt;
    for (std::size_t i : idx) {
      rows.push_back(&report.pairs[i].gold);
      const PairResult& pr = report.pairs[i];
      if (pr.status == PairStatus::scored) {
        result.ranking.push_back({pr.gold.response, {*pr.score, Measure::cosine, true}});
      }
    }
    result.favored = favored_response(rows).response;
    sort_ranked(result.ranking);
    for (std::size_t r = 0; r < result.ranking.size(); ++r) {
      if (result.ranking[r].lemma == result.favored) result.rank = r + 1;
    }
    if (result.rank) {
      ++report.prompts_evaluated;
      const std::size_t n = result.ranking.size();
      pairs_in += n;
      if (*result.rank == 1) {
        ++hit1;
        pair_hit1 += n;
      }
      if (*result.rank <= 2) {
        ++hit2;
        pair_hit2 += n;
      }
    }
    report.prompts.push_back(std::move(result));
  }
  if (report.prompts_evaluated > 0) {
    const double np = static_cast<double>(report.prompts_evaluated);
    report.top1_rate = static_cast<double>(hit1) / np;
    report.top2_rate = static_cast<double>(hit2) / np;
    report.top1_rate_pairs = static_cast<double>(pair_hit1) / static_cast<double>(pairs_in);
    report.top2_rate_pairs = static_cast<double>(pair_hit2) / static_cast<double>(pairs_in);
  }
  return report;
}

inline EvaluationReport evaluate(std::span<const GoldRecord> gold, const VectorStore& store,
                                 const SimilarityConfig& cfg = {},
                                 const EvaluateOptions& options = {}) {
  cfg.validate();
  auto report = evaluate_with(
      gold,
      [&](const std::string& prompt, const std::string& response) -> std::optional<double> {
        const ArgumentVector* x = store.find(prompt);
        const ArgumentVector* y = store.find(response);
        if (!x || !y) return std::nullopt;
        return similarity(*x, *y, cfg).value;
      },
      options);
  for (auto& p : report.prompts) {
    for (auto& c : p.ranking) c.score.measure = cfg.measure;
  }
  report.config = cfg;
  return report;
}

inline nlohmann::ordered_json to_json(const SimilarityConfig& cfg) {
  nlohmann::ordered_json j;
  j["measure"] = to_string(cfg.measure);
  j["fill"] = to_string(cfg.fill);
  j["truncate_k"] = cfg.truncate_k ? nlohmann::ordered_json(*cfg.truncate_k) : nullptr;
  j["alpha"] = cfg.alpha;
  return j;
}

inline nlohmann::ordered_json to_json(const EvaluationReport& r) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["pearson_task1"] = opt(r.pearson_task1);
  j["pearson_task2"] = opt(r.pearson_task2);
  j["pearson_total"] = opt(r.pearson_total);
  j["top1_rate"] = r.top1_rate;
  j["top2_rate"] = r.top2_rate;
  j["top1_rate_pairs"] = r.top1_rate_pairs;
  j["top2_rate_pairs"] = r.top2_rate_pairs;
  j["prompts_evaluated"] = r.prompts_evaluated;
  j["n_pairs"] = r.n_pairs;
  j["n_scored"] = r.n_scored;
  j["n_uncovered"] = r.n_uncovered;
  j["n_failed"] = r.n_failed;
  j["notes"] = r.notes;
  j["config"] = r.config ? to_json(*r.config) : nlohmann::ordered_json(nullptr);
  auto& prompts = j["prompts"] = nlohmann::ordered_json::array();
  for (const auto& p : r.prompts) {
    nlohmann::ordered_json pj;
    pj["prompt"] = p.prompt;
    pj["favored"] = p.favored;
    pj["favored_rank"] = p.rank ? nlohmann::ordered_json(*p.rank) : nullptr;
    auto& ranking = pj["ranking"] = nlohmann::ordered_json::array();
    for (const auto& c : p.ranking) ranking.push_back({{"response", c.lemma}, {"score", c.score.value}});
    prompts.push_back(std::move(pj));
  }
  auto& pairs = j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : r.pairs) {
    nlohmann::ordered_json pj;
    pj["prompt"] = p.gold.prompt;
    pj["response"] = p.gold.response;
    pj["task1_pct"] = p.gold.task1_pct;
    pj["task2_pct"] = p.gold.task2_pct;
    pj["total_pct"] = p.gold.total_pct;
    pj["status"] = to_string(p.status);
    pj["score"] = opt(p.score);
    if (!p.message.empty()) pj["message"] = p.message;
    pairs.push_back(std::move(pj));
  }
  return j;
}

inline void write_pair_scores_csv(std::ostream& out, const EvaluationReport& r) {
  out << "prompt,response,task1_pct,task2_pct,total_pct,status,score\n";
  for (const auto& p : r.pairs) {
    out << p.gold.prompt << ',' << p.gold.response << ','
        << detail::format_number(p.gold.task1_pct) << ','
        << detail::format_number(p.gold.task2_pct) << ','
        << detail::format_number(p.gold.total_pct) << ',' << to_string(p.status) << ','
        << (p.score ? detail::format_number(*p.score) : "") << '\n';
  }
}

}  // namespace argdist
