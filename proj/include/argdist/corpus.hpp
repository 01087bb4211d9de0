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

// Corpus ingestion: raw documents in, deduplicated plain-text articles out,
// plus sentence segmentation and tokenization of article bodies.
//
// Articles are keyed on the first 50 characters (code points) of their
// normalized body; the first document with a given key wins.

#pragma once

#include <algorithm>
#include <filesystem>
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
#include "json.hpp"

namespace argdist::corpus {

inline constexpr std::size_t kDedupKeyLength = 50;

struct RawDocument {
  std::string id;
  std::string source;
  std::optional<std::string> date;
  std::optional<std::string> title;
  std::string body;  // raw bytes, possibly with markup
};

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  bool operator==(const Span&) const = default;
};

struct Article {
  std::string id;
  std::string source;
  std::optional<std::string> date;  // YYYY-MM-DD
  std::optional<std::string> title;
  std::string body;  // markup-free, whitespace-normalized UTF-8
  // Sentence spans into body, when segmentation ran at ingest time.
  std::optional<std::vector<Span>> sentences;

  bool operator==(const Article&) const = default;
};

struct DocumentError {
  std::size_t position = 0;  // 1-based line (jsonl) or input ordinal
  std::string id;
  std::string message;

  bool operator==(const DocumentError&) const = default;
};

// Documents read from an input plus the ones that could not be read.
struct RawBatch {
  std::vector<RawDocument> documents;
  std::vector<DocumentError> errors;
};

struct KeyCollision {
  std::string key;
  std::string kept_id;
  std::vector<std::string> dropped_ids;
};

struct IngestOptions {
  std::size_t key_length = kDedupKeyLength;
};

struct IngestResult {
  std::vector<Article> articles;
  std::vector<DocumentError> errors;
  std::vector<KeyCollision> collisions;  // ordered by first occurrence
  std::size_t dropped = 0;
};

// First `length` code points of an already-normalized body.
inline std::string dedup_key(std::string_view body,
                             std::size_t length = kDedupKeyLength) {
  return std::string(body.substr(0, text::utf8_prefix_bytes(body, length)));
}

// Markup stripping and whitespace normalization applied to every body.
inline std::string normalize_body(std::string_view raw) {
  if (raw.substr(0, 3) == "\xEF\xBB\xBF") raw.remove_prefix(3);
  return text::normalize_whitespace(text::strip_markup(raw));
}

inline bool is_iso_date(std::string_view d) {
  if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!std::isdigit(static_cast<unsigned char>(d[i]))) return false;
  }
  const int month = (d[5] - '0') * 10 + (d[6] - '0');
  const int day = (d[8] - '0') * 10 + (d[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// Normalizes and deduplicates documents in input order. Documents with
// invalid UTF-8 or a malformed date are reported and skipped.
inline IngestResult ingest(std::span<const RawDocument> documents,
                           const IngestOptions& options = {}) {
  IngestResult result;
  std::unordered_map<std::string, std::size_t> seen;  // key -> collision slot
  std::unordered_map<std::string, std::string> kept_by_key;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    const RawDocument& doc = documents[i];
    const auto report = [&](std::string message) {
      result.errors.push_back({i + 1, doc.id, std::move(message)});
    };
    const std::string* bad_field = nullptr;
    std::size_t bad_offset = 0;
    for (const std::string* field : {&doc.body, &doc.id, &doc.source}) {
      if (auto bad = text::find_invalid_utf8(*field)) {
        bad_field = field;
        bad_offset = *bad;
        break;
      }
    }
    if (bad_field) {
      report("invalid UTF-8 at byte " + std::to_string(bad_offset));
      continue;
    }
    if (doc.title && text::find_invalid_utf8(*doc.title)) {
      report("invalid UTF-8 in title");
      continue;
    }
    if (doc.date && !is_iso_date(*doc.date)) {
      report("date is not YYYY-MM-DD: " + *doc.date);
      continue;
    }
    Article article{doc.id, doc.source, doc.date, std::nullopt,
                    normalize_body(doc.body), std::nullopt};
    if (doc.title) article.title = normalize_body(*doc.title);
    std::string key = dedup_key(article.body, options.key_length);
    if (auto it = kept_by_key.find(key); it != kept_by_key.end()) {
      ++result.dropped;
      auto [slot, inserted] = seen.try_emplace(key, result.collisions.size());
      if (inserted) result.collisions.push_back({key, it->second, {}});
      result.collisions[slot->second].dropped_ids.push_back(article.id);
      continue;
    }
    kept_by_key.emplace(std::move(key), article.id);
    result.articles.push_back(std::move(article));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Input formats

namespace detail {

inline std::optional<std::string> optional_string(const nlohmann::json& obj,
                                                  const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number()) return it->dump();
  throw Error(std::string("field '") + name + "' must be a string");
}

}  // namespace detail

// One JSON object per line: {id?, source?, date?, title?, body}. Blank
// lines are skipped; unparseable lines become errors.
inline RawBatch read_jsonl(std::istream& in) {
  RawBatch batch;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      const nlohmann::json obj = nlohmann::json::parse(line);
      if (!obj.is_object()) throw Error("line is not a JSON object");
      RawDocument doc;
      doc.id = detail::optional_string(obj, "id").value_or(
          "doc-" + std::to_string(lineno));
      doc.source = detail::optional_string(obj, "source").value_or("");
      doc.date = detail::optional_string(obj, "date");
      doc.title = detail::optional_string(obj, "title");
      auto body = detail::optional_string(obj, "body");
      if (!body) throw Error("missing 'body'");
      doc.body = std::move(*body);
      batch.documents.push_back(std::move(doc));
    } catch (const std::exception& e) {
      batch.errors.push_back({lineno, "", e.what()});
    }
  }
  return batch;
}

// Every regular file under `dir` is one document, visited in sorted
// relative-path order; the relative path is the id.
inline RawBatch read_textdir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  RawBatch batch;
  for (const auto& file : files) {
    RawDocument doc;
    doc.id = fs::relative(file, dir).generic_string();
    doc.body = text::read_file(file);
    batch.documents.push_back(std::move(doc));
  }
  return batch;
}

inline nlohmann::ordered_json to_json(const Article& a) {
  nlohmann::ordered_json j;
  j["id"] = a.id;
  j["source"] = a.source;
  if (a.date) j["date"] = *a.date;
  if (a.title) j["title"] = *a.title;
  j["body"] = a.body;
  if (a.sentences) {
    auto& spans = j["sentences"] = nlohmann::ordered_json::array();
    for (const Span& sp : *a.sentences) spans.push_back({sp.begin, sp.end});
  }
  return j;
}

inline void write_articles(std::ostream& out,
                           std::span<const Article> articles) {
  for (const Article& a : articles) out << to_json(a).dump() << '\n';
}

inline std::vector<Article> read_articles(std::istream& in) {
  std::vector<Article> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      Article a;
      a.id = obj.at("id").get<std::string>();
      a.source = obj.value("source", "");
      a.date = detail::optional_string(obj, "date");
      a.title = detail::optional_string(obj, "title");
      a.body = obj.at("body").get<std::string>();
      if (const auto it = obj.find("sentences"); it != obj.end()) {
        std::vector<Span> spans;
        for (const auto& sp : *it) {
          Span span{sp.at(0).get<std::size_t>(), sp.at(1).get<std::size_t>()};
          if (span.begin > span.end || span.end > a.body.size()) {
            throw ParseError("sentence span out of range", lineno);
          }
          spans.push_back(span);
        }
        a.sentences = std::move(spans);
      }
      out.push_back(std::move(a));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed article: ") + e.what(), lineno);
    }
  }
  return out;
}

inline nlohmann::ordered_json dedup_report(const IngestResult& result,
                                           std::span<const DocumentError>
                                               read_errors = {}) {
  nlohmann::ordered_json j;
  j["kept"] = result.articles.size();
  j["dropped"] = result.dropped;
  auto& collisions = j["collisions"] = nlohmann::ordered_json::array();
  for (const auto& c : result.collisions) {
    collisions.push_back(
        {{"key", c.key}, {"kept_id", c.kept_id}, {"dropped_ids", c.dropped_ids}});
  }
  auto& errors = j["errors"] = nlohmann::ordered_json::array();
  const auto add = [&](const char* stage, std::span<const DocumentError> errs) {
    for (const auto& e : errs) {
      errors.push_back({{"stage", stage},
                        {"position", e.position},
                        {"id", e.id},
                        {"message", e.message}});
    }
  };
  add("read", read_errors);
  add("ingest", result.errors);
  return j;
}

// ---------------------------------------------------------------------------
// Segmentation

class Abbreviations {
 public:
  Abbreviations() = default;
  explicit Abbreviations(std::vector<std::string> words)
      : words_(words.begin(), words.end()) {}

  // Common English and finance abbreviations.
  static Abbreviations defaults() {
    return Abbreviations({"U.S.", "U.K.", "Mr.", "Mrs.", "Ms.", "Dr.", "Inc.",
                          "Corp.", "Co.", "Ltd.", "St.", "vs.", "No."});
  }
  static Abbreviations load(const std::filesystem::path& path) {
    return Abbreviations(text::read_word_list(path));
  }

  bool contains(std::string_view word) const {
    return words_.count(std::string(word)) > 0;
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct Sentence {
  std::string article_id;
  std::size_t index = 0;
  std::vector<std::string> tokens;
};

namespace detail {

inline bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

inline bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

inline bool is_opener(char c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{' || c == '`';
}

inline bool is_trailing_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' ||
         c == '?' || is_closer(c);
}

// "U.S.", "e.g." style initialisms.
inline bool is_initialism(std::string_view w) {
  if (w.size() < 4 || w.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < w.size(); i += 2) {
    if (!std::isalpha(static_cast<unsigned char>(w[i])) || w[i + 1] != '.') {
      return false;
    }
  }
  return true;
}

inline bool is_all_punct(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c));
  });
}

}  // namespace detail

// Splits text into sentence spans (byte offsets, trimmed). A run of
// terminators, with any closing quotes or brackets, ends a sentence when
// followed by whitespace or the end of the text, unless the word it closes
// is a listed abbreviation.
inline std::vector<Span> segment_sentences(
    std::string_view body, const Abbreviations& abbrev = Abbreviations::defaults()) {
  std::vector<Span> spans;
  std::size_t start = 0;
  const auto skip_space = [&](std::size_t i) {
    while (i < body.size() && text::is_space(body[i])) ++i;
    return i;
  };
  start = skip_space(0);
  std::size_t i = start;
  while (i < body.size()) {
    if (!detail::is_terminator(body[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < body.size() && detail::is_terminator(body[j])) ++j;
    const std::size_t run_end = j;
    while (j < body.size() && detail::is_closer(body[j])) ++j;
    if (j < body.size() && !text::is_space(body[j])) {
      i = j;
      continue;
    }
    if (body[i] == '.' && run_end == i + 1) {
      std::size_t w = i;
      while (w > start && !text::is_space(body[w - 1])) --w;
      while (w < i && detail::is_opener(body[w])) ++w;
      if (abbrev.contains(body.substr(w, i + 1 - w))) {
        i = j;
        continue;
      }
    }
    spans.push_back({start, j});
    start = skip_space(j);
    i = start;
  }
  std::size_t end = body.size();
  while (end > start && text::is_space(body[end - 1])) --end;
  if (end > start) spans.push_back({start, end});
  return spans;
}

// Whitespace tokenization with leading openers and trailing clause or
// sentence punctuation detached. Internal hyphens, periods and commas stay
// put ("FTSE-100", "3.5", "1,000"); abbreviations and initialisms keep
// their final period. Chunks made only of punctuation stay whole.
inline std::vector<std::string> tokenize(
    std::string_view sentence, const Abbreviations& abbrev = Abbreviations()) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && text::is_space(sentence[i])) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !text::is_space(sentence[j])) ++j;
    if (j == i) break;
    std::string_view chunk = sentence.substr(i, j - i);
    i = j;
    if (detail::is_all_punct(chunk)) {
      tokens.emplace_back(chunk);
      continue;
    }
    while (!chunk.empty() && detail::is_opener(chunk.front())) {
      tokens.emplace_back(chunk.substr(0, 1));
      chunk.remove_prefix(1);
    }
    std::vector<std::string> trailing;
    while (!chunk.empty() && detail::is_trailing_punct(chunk.back())) {
      if (chunk.back() == '.' &&
          (abbrev.contains(chunk) || detail::is_initialism(chunk))) {
        break;
      }
      std::size_t run = 1;
      if (chunk.back() == '.') {
        while (run < chunk.size() && chunk[chunk.size() - 1 - run] == '.') ++run;
      }
      trailing.emplace_back(chunk.substr(chunk.size() - run));
      chunk.remove_suffix(run);
    }
    if (!chunk.empty()) tokens.emplace_back(chunk);
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
  }
  return tokens;
}

inline std::vector<Sentence> split_article(const Article& article,
                                           const Abbreviations& abbrev) {
  std::vector<Sentence> out;
  const std::vector<Span> spans =
      article.sentences ? *article.sentences : segment_sentences(article.body, abbrev);
  for (const Span& span : spans) {
    auto tokens = tokenize(
        std::string_view(article.body).substr(span.begin, span.end - span.begin),
        abbrev);
    if (tokens.empty()) continue;
    out.push_back({article.id, out.size(), std::move(tokens)});
  }
  return out;
}

}  // namespace argdist::corpus
