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

// Similarity between two argument distributions. All three measures are
// symmetric and oriented so that higher means more similar:
//
//   cosine     dot(a, b) / (|a| |b|)                       in [0, 1]
//   euclidean  1 / (1 + |p - q|), p and q L1-normalized     in (0, 1]
//   kl         exp(-(KL(p|q) + KL(q|p)) / 2), natural log   in (0, 1]

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "argdist/error.hpp"
#include "argdist/vectors.hpp"

namespace argdist {

enum class Measure { cosine, euclidean, kl };

inline std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::cosine: return "cosine";
    case Measure::euclidean: return "euclidean";
    case Measure::kl: return "kl";
  }
  return "cosine";
}

inline std::optional<Measure> parse_measure(std::string_view s) {
  for (Measure m : {Measure::cosine, Measure::euclidean, Measure::kl}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

// Defaults compare raw, untruncated, unsmoothed counts by cosine.
struct SimilarityConfig {
  Measure measure = Measure::cosine;
  Fill fill = Fill::zero;
  std::optional<std::size_t> truncate_k;
  double alpha = 0.0;

  // KL needs strictly positive components after preprocessing.
  void validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
      throw DomainError("alpha must be a finite non-negative number");
    }
    if (truncate_k && *truncate_k == 0) {
      throw DomainError("truncate_k must be at least 1");
    }
    if (measure == Measure::kl && alpha <= 0.0 && fill == Fill::zero) {
      throw DomainError("kl requires alpha > 0 or fill=one");
    }
  }

  bool operator==(const SimilarityConfig&) const = default;
};

struct SimilarityScore {
  double value = 0.0;
  Measure measure = Measure::cosine;
  bool higher_is_more_similar = true;
};

namespace detail {

inline void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("sequences differ in length");
  if (a.empty()) throw DomainError("empty sequences");
}

inline std::vector<double> l1_normalize(std::span<const double> v) {
  double total = 0.0;
  for (double x : v) {
    if (x < 0.0) throw DomainError("negative component");
    total += x;
  }
  if (!(total > 0.0)) throw DomainError("zero-total vector has no distribution");
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= total;
  return out;
}

}  // namespace detail

inline double cosine(std::span<const double> a, std::span<const double> b) {
  detail::check_lengths(a, b);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw DomainError("cosine undefined for a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

inline double cosine(const AlignedPair& pair) { return cosine(pair.a, pair.b); }

// Euclidean distance between the L1-normalized sequences.
inline double euclidean_distance(std::span<const double> a,
                                 std::span<const double> b) {
  detail::check_lengths(a, b);
  const auto p = detail::l1_normalize(a);
  const auto q = detail::l1_normalize(b);
  double d2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d2 += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(d2);
}

inline double euclidean_similarity(const AlignedPair& pair) {
  return 1.0 / (1.0 + euclidean_distance(pair.a, pair.b));
}

// Symmetrized KL divergence, (KL(p|q) + KL(q|p)) / 2 = sum (p-q)(ln p - ln q) / 2,
// over L1-normalized strictly positive sequences.
inline double symmetric_kl(std::span<const double> a, std::span<const double> b) {
  detail::check_lengths(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0)) {
      throw DomainError("kl requires strictly positive components");
    }
  }
  const auto p = detail::l1_normalize(a);
  const auto q = detail::l1_normalize(b);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d += (p[i] - q[i]) * (std::log(p[i]) - std::log(q[i]));
  }
  return std::max(0.0, 0.5 * d);
}

// Smooths by alpha, then maps the symmetrized divergence through exp(-D).
inline double kl_similarity(const AlignedPair& pair, double alpha = 0.0) {
  const AlignedPair s = smooth(pair, alpha);
  return std::exp(-symmetric_kl(s.a, s.b));
}

// Truncates each vector (if configured), aligns with the fill value,
// smooths, and dispatches on the measure.
inline SimilarityScore similarity(const ArgumentVector& x,
                                  const ArgumentVector& y,
                                  const SimilarityConfig& cfg = {}) {
  const auto where = [&] {
    return x.verb().text + "/" + y.verb().text + ": ";
  };
  try {
    cfg.validate();
    if (x.empty() || y.empty()) throw DomainError("empty argument vector");
    const ArgumentVector& tx = cfg.truncate_k ? truncate_tail(x, *cfg.truncate_k) : x;
    const ArgumentVector& ty = cfg.truncate_k ? truncate_tail(y, *cfg.truncate_k) : y;
    const AlignedPair pair = align(tx, ty, cfg.fill);
    double value = 0.0;
    switch (cfg.measure) {
      case Measure::cosine: value = cosine(smooth(pair, cfg.alpha)); break;
      case Measure::euclidean:
        value = euclidean_similarity(smooth(pair, cfg.alpha));
        break;
      case Measure::kl: value = kl_similarity(pair, cfg.alpha); break;
    }
    return {value, cfg.measure, true};
  } catch (const DomainError& e) {
    throw DomainError(where() + e.what());
  }
}

}  // namespace argdist
