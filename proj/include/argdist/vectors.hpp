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

// Per-verb sparse argument-frequency vectors and the transforms applied
// before comparing two of them: alignment over the union vocabulary, tail
// truncation, and additive smoothing.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "argdist/annotate.hpp"
#include "argdist/error.hpp"
#include "argdist/extract.hpp"
#include "argdist/text.hpp"

namespace argdist {

// Sparse argument counts for one verb. Stored counts are always > 0.
class ArgumentVector {
 public:
  ArgumentVector() = default;
  explicit ArgumentVector(Lemma verb) : verb_(std::move(verb)) {}

  void add(const Lemma& argument, std::uint64_t n = 1) {
    if (n == 0) return;
    counts_[argument] += n;
    total_ += n;
  }
  void merge(const ArgumentVector& other) {
    for (const auto& [arg, n] : other.counts_) add(arg, n);
  }

  const Lemma& verb() const { return verb_; }
  const std::map<Lemma, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  std::uint64_t count(const Lemma& argument) const {
    const auto it = counts_.find(argument);
    return it == counts_.end() ? 0 : it->second;
  }

  bool operator==(const ArgumentVector&) const = default;

 private:
  Lemma verb_;
  std::map<Lemma, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct RelationSet {
  bool subject = true;
  bool object = true;

  bool contains(Relation r) const {
    return r == Relation::subject ? subject : object;
  }
  bool operator==(const RelationSet&) const = default;

  // "subj,obj", "subject", "obj", ...
  static RelationSet parse(std::string_view s) {
    RelationSet set{false, false};
    for (const auto& part : text::split(s, ',')) {
      const auto r = parse_relation(text::trim(part));
      if (!r) throw Error("unknown relation '" + part + "'");
      (*r == Relation::subject ? set.subject : set.object) = true;
    }
    if (!set.subject && !set.object) throw Error("empty relation selection");
    return set;
  }
  std::string str() const {
    if (subject && object) return "subject,object";
    return subject ? "subject" : "object";
  }
};

// Verb lemma -> vector, ordered by lemma. Merging is count addition, so
// stores built from shards combine in any order.
class VectorStore {
 public:
  void add(const Lemma& verb, const Lemma& argument, std::uint64_t n = 1) {
    if (n == 0) return;
    auto it = vectors_.try_emplace(verb, verb).first;
    it->second.add(argument, n);
  }
  void merge(const VectorStore& other) {
    for (const auto& [verb, v] : other.vectors_) {
      vectors_.try_emplace(verb, verb).first->second.merge(v);
    }
  }

  const ArgumentVector* find(const Lemma& verb) const {
    const auto it = vectors_.find(verb);
    return it == vectors_.end() ? nullptr : &it->second;
  }
  // Looks a verb up by text alone, preferring the verb reading, then the
  // adjective reading, then any other.
  const ArgumentVector* find(std::string_view text) const {
    for (Pos p : {Pos::verb, Pos::adjective}) {
      if (const auto* v = find(Lemma{std::string(text), p})) return v;
    }
    const auto it = vectors_.lower_bound(Lemma{std::string(text), kAllPos[0]});
    if (it != vectors_.end() && it->first.text == text) return &it->second;
    return nullptr;
  }

  const std::map<Lemma, ArgumentVector>& vectors() const { return vectors_; }
  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }

  std::uint64_t grand_total() const {
    std::uint64_t t = 0;
    for (const auto& [verb, v] : vectors_) t += v.total();
    return t;
  }

  bool operator==(const VectorStore&) const = default;

 private:
  std::map<Lemma, ArgumentVector> vectors_;
};

inline VectorStore build_vectors(std::span<const ArgumentTriple> triples,
                                 RelationSet relations = {}) {
  VectorStore store;
  for (const auto& t : triples) {
    if (relations.contains(t.relation)) store.add(t.verb, t.argument);
  }
  return store;
}

inline VectorStore build_vectors(const TripleCounts& counts,
                                 RelationSet relations = {}) {
  VectorStore store;
  for (const auto& [key, n] : counts) {
    if (relations.contains(key.relation)) store.add(key.verb, key.argument, n);
  }
  return store;
}

enum class Fill { zero, one };

inline std::string_view to_string(Fill f) { return f == Fill::zero ? "zero" : "one"; }

inline std::optional<Fill> parse_fill(std::string_view s) {
  if (s == "zero" || s == "0") return Fill::zero;
  if (s == "one" || s == "1") return Fill::one;
  return std::nullopt;
}

// Two dense sequences over the sorted union of their supports.
struct AlignedPair {
  std::vector<Lemma> vocabulary;
  std::vector<double> a;
  std::vector<double> b;

  std::size_t size() const { return vocabulary.size(); }
};

// Aligns any two ordered Lemma -> weight maps. Missing entries take the
// fill value; present values are copied unchanged.
template <typename MapA, typename MapB>
AlignedPair align_weights(const MapA& x, const MapB& y, Fill fill) {
  if (x.empty() && y.empty()) {
    throw DomainError("cannot align two empty vectors: no vocabulary");
  }
  const double missing = fill == Fill::zero ? 0.0 : 1.0;
  AlignedPair pair;
  auto ix = x.begin();
  auto iy = y.begin();
  while (ix != x.end() || iy != y.end()) {
    if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
      pair.vocabulary.push_back(ix->first);
      pair.a.push_back(static_cast<double>(ix->second));
      pair.b.push_back(missing);
      ++ix;
    } else if (ix == x.end() || iy->first < ix->first) {
      pair.vocabulary.push_back(iy->first);
      pair.a.push_back(missing);
      pair.b.push_back(static_cast<double>(iy->second));
      ++iy;
    } else {
      pair.vocabulary.push_back(ix->first);
      pair.a.push_back(static_cast<double>(ix->second));
      pair.b.push_back(static_cast<double>(iy->second));
      ++ix;
      ++iy;
    }
  }
  return pair;
}

inline AlignedPair align(const ArgumentVector& x, const ArgumentVector& y,
                         Fill fill = Fill::zero) {
  return align_weights(x.counts(), y.counts(), fill);
}

// Keeps the k most frequent arguments; among equal counts at the cut the
// lexicographically smaller lemmas survive.
inline ArgumentVector truncate_tail(const ArgumentVector& v, std::size_t k) {
  if (k == 0) throw DomainError("truncate_tail: k must be at least 1");
  if (k >= v.size()) return v;
  std::vector<std::pair<Lemma, std::uint64_t>> entries(v.counts().begin(),
                                                       v.counts().end());
  std::stable_sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) {
    return l.second > r.second;
  });
  ArgumentVector out(v.verb());
  for (std::size_t i = 0; i < k; ++i) out.add(entries[i].first, entries[i].second);
  return out;
}

inline AlignedPair smooth(AlignedPair pair, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("smoothing constant must be a finite non-negative number");
  }
  if (alpha == 0.0) return pair;
  for (double& v : pair.a) v += alpha;
  for (double& v : pair.b) v += alpha;
  return pair;
}

// ---------------------------------------------------------------------------
// Store file: "verb<TAB>arg<TAB>count" rows sorted by verb then argument.

inline constexpr std::string_view kStoreHeader = "verb\targ\tcount";

inline void write_store(std::ostream& out, const VectorStore& store) {
  out << kStoreHeader << '\n';
  for (const auto& [verb, v] : store.vectors()) {
    const std::string verb_text = encode_lemma(verb, Pos::verb);
    for (const auto& [arg, n] : v.counts()) {
      out << verb_text << '\t' << encode_lemma(arg, Pos::noun) << '\t' << n
          << '\n';
    }
  }
}

inline VectorStore read_store(std::istream& in) {
  VectorStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = text::strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    if (lineno == 1 && line == kStoreHeader) continue;
    const auto f = text::split(line, '\t');
    if (f.size() != 3) throw ParseError("expected 3 tab-separated fields", lineno);
    const std::uint64_t n = parse_count(f[2], lineno);
    if (n == 0) throw ParseError("stored counts must be positive", lineno);
    store.add(decode_lemma(f[0], Pos::verb), decode_lemma(f[1], Pos::noun), n);
  }
  return store;
}

}  // namespace argdist
