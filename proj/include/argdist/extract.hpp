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

// Shallow parsing into noun-phrase and verb-group chunks, and attachment of
// the nearest noun phrases to each verb group as its subject and object.

#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "argdist/annotate.hpp"
#include "argdist/error.hpp"
#include "argdist/text.hpp"
#include "json.hpp"

namespace argdist {

struct Chunk {
  enum class Kind { noun_phrase, verb_group };

  Kind kind = Kind::noun_phrase;
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::size_t head = 0;

  bool operator==(const Chunk&) const = default;
};

enum class Relation { subject, object };

inline std::string_view to_string(Relation r) {
  return r == Relation::subject ? "subject" : "object";
}

// Accepts "subject"/"subj" and "object"/"obj".
inline std::optional<Relation> parse_relation(std::string_view s) {
  if (s == "subject" || s == "subj") return Relation::subject;
  if (s == "object" || s == "obj") return Relation::object;
  return std::nullopt;
}

struct ArgumentTriple {
  Lemma verb;      // pos verb, or adjective for predicative heads
  Lemma argument;  // pos noun or number
  Relation relation = Relation::subject;

  auto operator<=>(const ArgumentTriple&) const = default;
  bool operator==(const ArgumentTriple&) const = default;
};

struct ChunkOptions {
  std::unordered_set<std::string> determiners = {
      "the", "a",    "an",   "this", "that",  "these", "those",
      "its", "their", "his", "her",  "our",   "my",    "your",
      "some", "any", "every", "each", "no",   "all",   "both"};
  // Verb lemmas that never head a verb group.
  std::unordered_set<std::string> auxiliaries = {
      "be",  "have",  "do",    "will", "would", "shall", "should",
      "can", "could", "may",   "might", "must"};
  // Adjectives after a form of "be" head the verb group ("shares were weak").
  bool predicative_adjectives = true;
};

struct ExtractOptions {
  ChunkOptions chunking;
  std::unordered_set<std::string> stoplist = {
      "i",    "you",  "he",    "she",   "it",    "we",   "they",
      "me",   "him",  "her",   "us",    "them",  "that", "which",
      "who",  "what", "this",  "these", "those"};
  // Maximum number of tokens between a verb group and its argument's
  // noun phrase; nullopt means the whole sentence.
  std::optional<std::size_t> window;
};

namespace detail {

inline bool is_det(const TaggedToken& t, const ChunkOptions& o) {
  return t.pos == Pos::other && o.determiners.count(t.lemma) > 0;
}

}  // namespace detail

// Greedy left-to-right chunking. Noun phrases are maximal matches of
// (determiner? adjective* noun+ | number noun?), headed by the last noun
// (or the number). Verb groups are maximal runs of verbs and adverbs with
// at least one non-auxiliary verb, headed by the last such verb.
inline std::vector<Chunk> chunk(std::span<const TaggedToken> s,
                                const ChunkOptions& options = {}) {
  std::vector<Chunk> chunks;
  const std::size_t n = s.size();
  const auto pos_at = [&](std::size_t k) {
    return k < n ? s[k].pos : Pos::punct;
  };
  std::size_t i = 0;
  while (i < n) {
    // Noun phrase, determiner/adjective/noun alternative.
    {
      std::size_t j = i;
      if (j < n && detail::is_det(s[j], options)) ++j;
      while (pos_at(j) == Pos::adjective) ++j;
      std::size_t k = j;
      while (pos_at(k) == Pos::noun) ++k;
      if (k > j) {
        chunks.push_back({Chunk::Kind::noun_phrase, i, k, k - 1});
        i = k;
        continue;
      }
    }
    if (s[i].pos == Pos::number) {
      if (pos_at(i + 1) == Pos::noun) {
        chunks.push_back({Chunk::Kind::noun_phrase, i, i + 2, i + 1});
        i += 2;
      } else {
        chunks.push_back({Chunk::Kind::noun_phrase, i, i + 1, i});
        i += 1;
      }
      continue;
    }
    if (s[i].pos == Pos::verb || s[i].pos == Pos::adverb) {
      std::size_t j = i;
      std::optional<std::size_t> head;
      bool copula = false;
      while (pos_at(j) == Pos::verb || pos_at(j) == Pos::adverb) {
        if (s[j].pos == Pos::verb) {
          if (options.auxiliaries.count(s[j].lemma) == 0) head = j;
          if (s[j].lemma == "be") copula = true;
        }
        ++j;
      }
      if (head) {
        chunks.push_back({Chunk::Kind::verb_group, i, j, *head});
        i = j;
        continue;
      }
      if (copula && options.predicative_adjectives &&
          pos_at(j) == Pos::adjective) {
        std::size_t k = j;
        while (pos_at(k) == Pos::adjective) ++k;
        if (pos_at(k) != Pos::noun) {
          chunks.push_back({Chunk::Kind::verb_group, i, k, k - 1});
          i = k;
          continue;
        }
      }
      // Auxiliary-only run: the rest of it cannot start a chunk either.
      i = std::max(j, i + 1);
      continue;
    }
    ++i;
  }
  return chunks;
}

// Subject = head of the nearest noun phrase wholly left of a verb group,
// object = head of the nearest one wholly to its right. Emission follows
// verb-group order, subject before object.
inline std::vector<ArgumentTriple> extract_triples(
    std::span<const TaggedToken> s, std::span<const Chunk> chunks,
    const ExtractOptions& options = {}) {
  std::vector<ArgumentTriple> out;
  const auto within = [&](std::size_t gap) {
    return !options.window || gap <= *options.window;
  };
  for (const Chunk& vg : chunks) {
    if (vg.kind != Chunk::Kind::verb_group) continue;
    const Chunk* left = nullptr;
    const Chunk* right = nullptr;
    for (const Chunk& np : chunks) {
      if (np.kind != Chunk::Kind::noun_phrase) continue;
      if (np.end <= vg.start && within(vg.start - np.end) &&
          (!left || np.end > left->end)) {
        left = &np;
      }
      if (np.start >= vg.end && within(np.start - vg.end) &&
          (!right || np.start < right->start)) {
        right = &np;
      }
    }
    const TaggedToken& verb = s[vg.head];
    for (auto [np, rel] : {std::pair{left, Relation::subject},
                           std::pair{right, Relation::object}}) {
      if (!np) continue;
      const TaggedToken& arg = s[np->head];
      if (options.stoplist.count(arg.lemma)) continue;
      out.push_back({{verb.lemma, verb.pos}, {arg.lemma, arg.pos}, rel});
    }
  }
  return out;
}

inline std::vector<ArgumentTriple> extract_sentence(
    std::span<const TaggedToken> s, const ExtractOptions& options = {}) {
  const auto chunks = chunk(s, options.chunking);
  return extract_triples(s, chunks, options);
}

// ---------------------------------------------------------------------------
// Triples files

// Lemmas are written as bare text when they carry the slot's usual tag
// (verb for verbs, noun for arguments) and as "text/tag" otherwise.
inline std::string encode_lemma(const Lemma& l, Pos usual) {
  if (l.pos == usual) return l.text;
  return l.text + "/" + std::string(to_string(l.pos));
}

inline Lemma decode_lemma(std::string_view s, Pos usual) {
  if (const auto slash = s.rfind('/'); slash != std::string_view::npos) {
    if (auto pos = parse_pos(s.substr(slash + 1))) {
      return {std::string(s.substr(0, slash)), *pos};
    }
  }
  return {std::string(s), usual};
}

struct TripleKey {
  Lemma verb;
  Relation relation = Relation::subject;
  Lemma argument;

  auto operator<=>(const TripleKey&) const = default;
  bool operator==(const TripleKey&) const = default;
};

using TripleCounts = std::map<TripleKey, std::uint64_t>;

inline void add_triples(TripleCounts& counts,
                        std::span<const ArgumentTriple> triples) {
  for (const auto& t : triples) ++counts[{t.verb, t.relation, t.argument}];
}

inline constexpr std::string_view kTriplesHeader =
    "verb_lemma\trelation\targ_lemma\tcount";

inline void write_triples_tsv(std::ostream& out, const TripleCounts& counts) {
  out << kTriplesHeader << '\n';
  for (const auto& [key, n] : counts) {
    out << encode_lemma(key.verb, Pos::verb) << '\t' << to_string(key.relation)
        << '\t' << encode_lemma(key.argument, Pos::noun) << '\t' << n << '\n';
  }
}

inline std::uint64_t parse_count(const std::string& s, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("count must be a non-negative integer: '" + s + "'", line);
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError("count out of range: '" + s + "'", line);
  }
}

inline TripleCounts read_triples_tsv(std::istream& in) {
  TripleCounts counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = text::strip_cr(line);
    if (line.empty() || line.front() == '#') continue;
    if (lineno == 1 && line == kTriplesHeader) continue;
    const auto f = text::split(line, '\t');
    if (f.size() != 4) throw ParseError("expected 4 tab-separated fields", lineno);
    const auto rel = parse_relation(f[1]);
    if (!rel) throw ParseError("unknown relation '" + f[1] + "'", lineno);
    counts[{decode_lemma(f[0], Pos::verb), *rel, decode_lemma(f[2], Pos::noun)}] +=
        parse_count(f[3], lineno);
  }
  return counts;
}

// Per-sentence JSONL: {"sentence": n, "triples": [[verb, relation, arg]...]}.
inline void write_triples_jsonl(
    std::ostream& out, std::span<const std::vector<ArgumentTriple>> sentences) {
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    nlohmann::ordered_json j;
    j["sentence"] = i;
    auto& arr = j["triples"] = nlohmann::ordered_json::array();
    for (const auto& t : sentences[i]) {
      arr.push_back({encode_lemma(t.verb, Pos::verb),
                     std::string(to_string(t.relation)),
                     encode_lemma(t.argument, Pos::noun)});
    }
    out << j.dump() << '\n';
  }
}

inline TripleCounts read_triples_jsonl(std::istream& in) {
  TripleCounts counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      for (const auto& t : j.at("triples")) {
        const auto rel = parse_relation(t.at(1).get<std::string>());
        if (!rel) throw ParseError("unknown relation", lineno);
        ++counts[{decode_lemma(t.at(0).get<std::string>(), Pos::verb), *rel,
                  decode_lemma(t.at(2).get<std::string>(), Pos::noun)}];
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed triples line: ") + e.what(), lineno);
    }
  }
  return counts;
}

}  // namespace argdist
