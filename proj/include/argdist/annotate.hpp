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

// Part-of-speech tagging and lemmatization over a closed seven-tag set.
//
// Two routes produce TaggedTokens: the built-in baseline tagger (lexicon
// lookup, irregular tables, suffix rules) and read_pretagged(), which
// imports the output of an external tagger in vertical format through a
// tag-mapping table.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "argdist/error.hpp"
#include "argdist/text.hpp"

namespace argdist {

enum class Pos { noun, verb, adjective, adverb, number, punct, other };

inline constexpr std::array<Pos, 7> kAllPos = {
    Pos::noun, Pos::verb,  Pos::adjective, Pos::adverb,
    Pos::number, Pos::punct, Pos::other};

inline std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adjective: return "adjective";
    case Pos::adverb: return "adverb";
    case Pos::number: return "number";
    case Pos::punct: return "punct";
    case Pos::other: return "other";
  }
  return "other";
}

inline std::optional<Pos> parse_pos(std::string_view name) {
  for (Pos p : kAllPos) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

// A lemma is identified by its text and part of speech: fall/noun and
// fall/verb are different lemmas.
struct Lemma {
  std::string text;
  Pos pos = Pos::other;

  auto operator<=>(const Lemma&) const = default;
  bool operator==(const Lemma&) const = default;
};

struct TaggedToken {
  std::string surface;
  Pos pos = Pos::other;
  std::string lemma;

  bool operator==(const TaggedToken&) const = default;
};

using TaggedSentence = std::vector<TaggedToken>;

// Word-to-tag lexicon plus the irregular inflection tables. Lexicon words
// are lemma forms; the tag list is in preference order.
class Lexicon {
 public:
  Lexicon() = default;

  void add(std::string word, Pos pos) {
    auto& tags = entries_[text::to_lower(word)];
    if (std::find(tags.begin(), tags.end(), pos) == tags.end()) {
      tags.push_back(pos);
    }
  }
  void add_irregular(Pos pos, std::string form, std::string lemma) {
    (pos == Pos::verb ? irregular_verbs_ : irregular_nouns_)
        .insert_or_assign(text::to_lower(form), text::to_lower(lemma));
  }

  const std::vector<Pos>* find(std::string_view word) const {
    const auto it = entries_.find(std::string(word));
    return it == entries_.end() ? nullptr : &it->second;
  }
  bool has(std::string_view word, Pos pos) const {
    const auto* tags = find(word);
    return tags && std::find(tags->begin(), tags->end(), pos) != tags->end();
  }
  const std::string* irregular(Pos pos, std::string_view form) const {
    const auto& table = pos == Pos::verb ? irregular_verbs_ : irregular_nouns_;
    const auto it = table.find(std::string(form));
    return it == table.end() ? nullptr : &it->second;
  }
  const std::map<std::string, std::string>& irregular_table(Pos pos) const {
    return pos == Pos::verb ? irregular_verbs_ : irregular_nouns_;
  }

  // Words after which a noun/verb-ambiguous token is read as a verb.
  bool is_verb_cue(std::string_view lower) const {
    static const std::unordered_set<std::string_view> kCues = {
        "to",    "will", "would", "can",  "could", "may", "might",
        "must",  "shall", "should", "did", "does", "do"};
    return kCues.count(lower) > 0;
  }

  std::size_t size() const { return entries_.size(); }

  // lexicon.tsv: "word<TAB>tag[,tag...]"; irregular tables:
  // "form<TAB>lemma". '#' starts a comment line.
  static Lexicon load(const std::filesystem::path& lexicon_path,
                      const std::filesystem::path& irregular_verbs_path,
                      const std::filesystem::path& irregular_nouns_path) {
    Lexicon lex;
    for_each_row(lexicon_path, [&](const std::vector<std::string>& f,
                                   std::size_t line) {
      for (const auto& tag : text::split(f[1], ',')) {
        const auto pos = parse_pos(text::trim(tag));
        if (!pos) throw ParseError("unknown tag '" + tag + "' in " +
                                       lexicon_path.string(), line);
        lex.add(f[0], *pos);
      }
    });
    for (auto [path, pos] : {std::pair{irregular_verbs_path, Pos::verb},
                             std::pair{irregular_nouns_path, Pos::noun}}) {
      for_each_row(path, [&, pos = pos](const std::vector<std::string>& f,
                                        std::size_t) {
        lex.add_irregular(pos, f[0], f[1]);
      });
    }
    return lex;
  }

 private:
  template <typename Fn>
  static void for_each_row(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      line = text::strip_cr(line);
      if (text::trim(line).empty() || line.front() == '#') continue;
      auto fields = text::split(line, '\t');
      if (fields.size() != 2) {
        throw ParseError("expected 2 tab-separated fields in " + path.string(),
                         lineno);
      }
      fn(fields, lineno);
    }
  }

  std::unordered_map<std::string, std::vector<Pos>> entries_;
  std::map<std::string, std::string> irregular_verbs_;
  std::map<std::string, std::string> irregular_nouns_;
};

namespace detail {

inline bool has_vowel(std::string_view s) {
  return s.find_first_of("aeiouy") != std::string_view::npos;
}

inline bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

inline bool doubled_final(std::string_view s) {
  if (s.size() < 3) return false;
  const char c = s.back();
  return c == s[s.size() - 2] && !is_vowel(c) &&
         std::string_view("bdgmnprt").find(c) != std::string_view::npos;
}

// Stems whose lemma probably ends in a silent 'e' (alleviat-ed,
// surg-ing). Only consulted when no candidate is in the lexicon.
inline bool wants_final_e(std::string_view s) {
  for (std::string_view end : {"at", "iz", "v", "rg", "dg", "ng", "nc", "rc",
                               "uc", "ag", "bl", "pl", "tl"}) {
    if (text::ends_with(s, end)) return true;
  }
  return false;
}

struct Candidates {
  std::vector<std::string> options;  // lexicon-checked in order
  std::string fallback;
};

inline std::optional<Candidates> verb_candidates(const std::string& w) {
  const auto strip = [&](std::size_t n) { return w.substr(0, w.size() - n); };
  if (text::ends_with(w, "ies") && w.size() > 4) {
    return Candidates{{strip(3) + "y"}, strip(3) + "y"};
  }
  if (text::ends_with(w, "ied") && w.size() > 4) {
    return Candidates{{strip(3) + "y"}, strip(3) + "y"};
  }
  if (text::ends_with(w, "es") && w.size() > 3) {
    const std::string es = strip(2);
    const bool sibilant = text::ends_with(es, "ss") || text::ends_with(es, "x") ||
                          text::ends_with(es, "ch") || text::ends_with(es, "sh") ||
                          text::ends_with(es, "zz") || text::ends_with(es, "o");
    return Candidates{{strip(1), es}, sibilant ? es : strip(1)};
  }
  if (text::ends_with(w, "s") && w.size() > 3 && !text::ends_with(w, "ss") &&
      !text::ends_with(w, "us") && !text::ends_with(w, "is")) {
    return Candidates{{strip(1)}, strip(1)};
  }
  for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
    const std::string_view suffix = n == 2 ? "ed" : "ing";
    if (!text::ends_with(w, suffix) || w.size() < n + 3) continue;
    const std::string stem = strip(n);
    if (!has_vowel(stem)) continue;
    Candidates c;
    c.options = {stem};
    if (doubled_final(stem)) c.options.push_back(stem.substr(0, stem.size() - 1));
    c.options.push_back(stem + "e");
    if (doubled_final(stem)) {
      c.fallback = stem.substr(0, stem.size() - 1);
    } else if (wants_final_e(stem)) {
      c.fallback = stem + "e";
    } else {
      c.fallback = stem;
    }
    return c;
  }
  return std::nullopt;
}

inline std::optional<Candidates> noun_candidates(const std::string& w) {
  const auto strip = [&](std::size_t n) { return w.substr(0, w.size() - n); };
  if (text::ends_with(w, "ies") && w.size() > 4) {
    return Candidates{{strip(3) + "y"}, strip(3) + "y"};
  }
  if (text::ends_with(w, "es") && w.size() > 3) {
    const std::string es = strip(2);
    const bool sibilant = text::ends_with(es, "ss") || text::ends_with(es, "x") ||
                          text::ends_with(es, "ch") || text::ends_with(es, "sh") ||
                          text::ends_with(es, "zz");
    return Candidates{{strip(1), es}, sibilant ? es : strip(1)};
  }
  if (text::ends_with(w, "s") && w.size() > 3 && !text::ends_with(w, "ss") &&
      !text::ends_with(w, "us") && !text::ends_with(w, "is")) {
    return Candidates{{strip(1)}, strip(1)};
  }
  return std::nullopt;
}

inline std::string lemmatize_step(const std::string& w, Pos pos,
                                  const Lexicon& lex) {
  if (pos != Pos::verb && pos != Pos::noun) return w;
  if (const std::string* lemma = lex.irregular(pos, w)) return *lemma;
  if (lex.has(w, pos)) return w;
  const auto cands = pos == Pos::verb ? verb_candidates(w) : noun_candidates(w);
  if (!cands) return w;
  for (const auto& c : cands->options) {
    if (lex.has(c, pos) || lex.irregular(pos, c)) return c;
  }
  return cands->fallback.size() >= 2 && has_vowel(cands->fallback)
             ? cands->fallback
             : w;
}

}  // namespace detail

// Lowercase lemma of `surface` read as `pos`. Irregular tables win, then
// lexicon-checked suffix stripping, then fallback suffix rules. The rules
// are applied until the form stops changing, so the result is a fixed
// point: lemmatize(lemmatize(w, p), p) == lemmatize(w, p).
inline std::string lemmatize(std::string_view surface, Pos pos,
                             const Lexicon& lex) {
  std::string w = text::to_lower(surface);
  for (int i = 0; i < 16; ++i) {
    std::string next = detail::lemmatize_step(w, pos, lex);
    if (next == w) break;
    w = std::move(next);
  }
  return w;
}

namespace detail {

inline bool is_punct_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c));
  });
}

// 12, -3.5, 1,000, 4.2%
inline bool is_number_token(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
    return false;
  }
  if (s.back() == '%') s.remove_suffix(1);
  bool prev_digit = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      prev_digit = true;
    } else if ((c == '.' || c == ',') && prev_digit && i + 1 < s.size()) {
      prev_digit = false;
    } else {
      return false;
    }
  }
  return prev_digit;
}

inline std::optional<Pos> suffix_heuristic(std::string_view surface,
                                           std::string_view lower) {
  if (text::ends_with(lower, "ing") || text::ends_with(lower, "ed")) {
    return Pos::verb;
  }
  if (text::ends_with(lower, "ly")) return Pos::adverb;
  for (std::string_view end : {"tion", "sion", "ment", "ness", "ity", "ism",
                               "ance", "ence", "ship"}) {
    if (text::ends_with(lower, end) && lower.size() > end.size() + 2) {
      return Pos::noun;
    }
  }
  if (text::starts_with_upper(surface)) return Pos::noun;
  return std::nullopt;
}

// Candidate tags for a word absent from the lexicon, found by reducing it
// to a known noun or verb lemma.
inline std::vector<Pos> inflected_candidates(const std::string& lower,
                                             const Lexicon& lex) {
  std::vector<Pos> out;
  const bool verbal = text::ends_with(lower, "ed") || text::ends_with(lower, "ing");
  std::array<Pos, 2> order = verbal ? std::array{Pos::verb, Pos::noun}
                                    : std::array{Pos::noun, Pos::verb};
  for (Pos pos : order) {
    if (lex.irregular(pos, lower)) {
      out.push_back(pos);
      continue;
    }
    const std::string lemma = lemmatize(lower, pos, lex);
    if (lemma != lower && lex.has(lemma, pos)) out.push_back(pos);
  }
  return out;
}

}  // namespace detail

// Tags one tokenized sentence. Each token gets the first applicable of:
// punctuation, number, lexicon tags, tags reachable through inflection,
// suffix heuristics, "other". A token that can be either noun or verb is
// a verb right after a noun, number, adverb, auxiliary/modal or "to", and
// a noun otherwise.
inline TaggedSentence tag(std::span<const std::string> tokens,
                          const Lexicon& lex) {
  TaggedSentence out;
  out.reserve(tokens.size());
  for (const std::string& surface : tokens) {
    const std::string lower = text::to_lower(surface);
    Pos pos = Pos::other;
    if (detail::is_number_token(surface)) {
      pos = Pos::number;
    } else if (detail::is_punct_token(surface)) {
      pos = Pos::punct;
    } else {
      std::vector<Pos> cands;
      if (const auto* tags = lex.find(lower)) {
        cands = *tags;
      } else {
        cands = detail::inflected_candidates(lower, lex);
      }
      if (cands.empty()) {
        pos = detail::suffix_heuristic(surface, lower).value_or(Pos::other);
      } else {
        pos = cands.front();
        const bool noun_or_verb =
            std::find(cands.begin(), cands.end(), Pos::noun) != cands.end() &&
            std::find(cands.begin(), cands.end(), Pos::verb) != cands.end();
        if (noun_or_verb) {
          bool verb_context = false;
          if (!out.empty()) {
            const TaggedToken& prev = out.back();
            verb_context = prev.pos == Pos::noun || prev.pos == Pos::number ||
                           prev.pos == Pos::adverb ||
                           lex.is_verb_cue(prev.lemma) ||
                           (prev.pos == Pos::verb &&
                            (prev.lemma == "be" || prev.lemma == "have"));
          }
          pos = verb_context ? Pos::verb : Pos::noun;
        }
      }
    }
    std::string lemma = (pos == Pos::number || pos == Pos::punct)
                            ? lower
                            : lemmatize(lower, pos, lex);
    out.push_back({surface, pos, std::move(lemma)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertical format

// Maps an external tag schema onto the coarse tag set.
class TagMap {
 public:
  TagMap() = default;

  // Maps each coarse tag name to itself; used to read files this tool wrote.
  static TagMap coarse() {
    TagMap m;
    for (Pos p : kAllPos) m.map_.emplace(std::string(to_string(p)), p);
    return m;
  }

  // CSV with header "external_tag,coarse_tag".
  static TagMap load(std::istream& in) {
    TagMap m;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      line = text::strip_cr(line);
      if (text::trim(line).empty()) continue;
      const auto fields = text::split_csv(line);
      if (fields.size() != 2) throw ParseError("expected 2 CSV fields", lineno);
      if (lineno == 1 && fields[0] == "external_tag") continue;
      const auto pos = parse_pos(text::trim(fields[1]));
      if (!pos) throw ParseError("unknown coarse tag '" + fields[1] + "'", lineno);
      m.map_.insert_or_assign(fields[0], *pos);
    }
    return m;
  }
  static TagMap load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    return load(in);
  }

  void add(std::string external, Pos pos) {
    map_.insert_or_assign(std::move(external), pos);
  }
  std::optional<Pos> find(const std::string& external) const {
    const auto it = map_.find(external);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<std::string, Pos> map_;
};

struct TagWarning {
  std::size_t line = 0;  // first line the tag was seen on
  std::string tag;
  std::size_t count = 0;
};

struct PretaggedCorpus {
  std::vector<TaggedSentence> sentences;
  std::vector<TagWarning> warnings;  // unmapped tags, by first appearance
};

// Reads "surface<TAB>tag<TAB>lemma" lines; a blank line (or end of input)
// ends a sentence. Unmapped tags become Pos::other with a warning. An empty
// or "<unknown>" lemma falls back to the lowercased surface.
inline PretaggedCorpus read_pretagged(std::istream& in, const TagMap& map) {
  PretaggedCorpus out;
  std::unordered_map<std::string, std::size_t> warned;
  TaggedSentence current;
  std::string line;
  std::size_t lineno = 0;
  const auto flush = [&] {
    if (!current.empty()) out.sentences.push_back(std::move(current));
    current.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = text::strip_cr(line);
    if (line.empty()) {
      flush();
      continue;
    }
    auto fields = text::split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError("expected 3 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    }
    if (fields[0].empty()) throw ParseError("empty surface form", lineno);
    Pos pos = Pos::other;
    if (auto mapped = map.find(fields[1])) {
      pos = *mapped;
    } else {
      auto [it, inserted] = warned.try_emplace(fields[1], out.warnings.size());
      if (inserted) out.warnings.push_back({lineno, fields[1], 0});
      ++out.warnings[it->second].count;
    }
    std::string lemma = fields[2];
    if (lemma.empty() || lemma == "<unknown>") lemma = fields[0];
    current.push_back({std::move(fields[0]), pos, text::to_lower(lemma)});
  }
  flush();
  return out;
}

inline void write_vertical(std::ostream& out,
                           std::span<const TaggedSentence> sentences) {
  for (const auto& sentence : sentences) {
    for (const auto& t : sentence) {
      out << t.surface << '\t' << to_string(t.pos) << '\t' << t.lemma << '\n';
    }
    out << '\n';
  }
}

}  // namespace argdist
