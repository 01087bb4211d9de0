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

// Pipeline configuration: a flat "key = value" file with one section per
// stage. Relative paths resolve against the config file's directory.
//
//   [corpus]      abbreviations
//   [annotate]    lexicon, irregular_verbs, irregular_nouns, tag_map
//   [extract]     stoplist, auxiliaries, window, predicative_adjectives
//   [vectors]     relations
//   [similarity]  measure, fill, truncate, alpha
//   [output]      dir

#pragma once

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "argdist/annotate.hpp"
#include "argdist/corpus.hpp"
#include "argdist/error.hpp"
#include "argdist/extract.hpp"
#include "argdist/similarity.hpp"
#include "argdist/text.hpp"
#include "argdist/vectors.hpp"

#ifndef ARGDIST_DEFAULT_DATA_DIR
#define ARGDIST_DEFAULT_DATA_DIR "data"
#endif

namespace argdist {

// $ARGDIST_DATA_DIR, else the directory baked in at build time.
inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("ARGDIST_DATA_DIR"); env && *env) return env;
  return ARGDIST_DEFAULT_DATA_DIR;
}

struct PipelineConfig {
  std::filesystem::path abbreviations;
  std::filesystem::path lexicon;
  std::filesystem::path irregular_verbs;
  std::filesystem::path irregular_nouns;
  std::filesystem::path tag_map;
  std::filesystem::path stoplist;
  std::filesystem::path auxiliaries;
  std::optional<std::size_t> window;  // nullopt: whole sentence
  bool predicative_adjectives = true;
  RelationSet relations;
  SimilarityConfig similarity;
  std::filesystem::path output_dir = "out";

  static PipelineConfig defaults(const std::filesystem::path& data = default_data_dir()) {
    PipelineConfig c;
    c.abbreviations = data / "abbreviations.txt";
    c.lexicon = data / "lexicon.tsv";
    c.irregular_verbs = data / "irregular_verbs.tsv";
    c.irregular_nouns = data / "irregular_nouns.tsv";
    c.tag_map = data / "treetagger_map.csv";
    c.stoplist = data / "stoplist.txt";
    c.auxiliaries = data / "auxiliaries.txt";
    return c;
  }

  static PipelineConfig parse(std::istream& in, const std::filesystem::path& base_dir,
                              PipelineConfig c = defaults()) {
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t(text::trim(text::strip_cr(line)));
      if (t.empty() || t.front() == '#' || t.front() == ';') continue;
      if (t.front() == '[') {
        if (t.back() != ']') throw ParseError("unterminated section header", lineno);
        section = std::string(text::trim(std::string_view(t).substr(1, t.size() - 2)));
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
      const std::string key(text::trim(std::string_view(t).substr(0, eq)));
      const std::string value(text::trim(std::string_view(t).substr(eq + 1)));
      try {
        c.set(section, key, value, base_dir);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno);
      }
    }
    return c;
  }

  // Loads a config file and checks that every referenced path exists.
  static PipelineConfig load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path.string());
    PipelineConfig c = parse(in, path.parent_path());
    c.check_paths();
    return c;
  }

  void set(const std::string& section, const std::string& key, const std::string& value,
           const std::filesystem::path& base_dir) {
    const auto path = [&] {
      const std::filesystem::path p(value);
      return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
    };
    const auto size_or_none = [&]() -> std::optional<std::size_t> {
      if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
        throw Error("expected a non-negative integer for " + section + "." + key);
      }
      const std::size_t v = std::stoul(value);
      return v == 0 ? std::nullopt : std::optional(v);
    };
    const std::string id = section + "." + key;
    if (id == "corpus.abbreviations") abbreviations = path();
    else if (id == "annotate.lexicon") lexicon = path();
    else if (id == "annotate.irregular_verbs") irregular_verbs = path();
    else if (id == "annotate.irregular_nouns") irregular_nouns = path();
    else if (id == "annotate.tag_map") tag_map = path();
    else if (id == "extract.stoplist") stoplist = path();
    else if (id == "extract.auxiliaries") auxiliaries = path();
    else if (id == "extract.window") window = size_or_none();
    else if (id == "extract.predicative_adjectives") {
      if (value != "true" && value != "false") throw Error("expected true or false for " + id);
      predicative_adjectives = value == "true";
    } else if (id == "vectors.relations") relations = RelationSet::parse(value);
    else if (id == "similarity.measure") {
      const auto m = parse_measure(value);
      if (!m) throw Error("unknown measure '" + value + "'");
      similarity.measure = *m;
    } else if (id == "similarity.fill") {
      const auto f = parse_fill(value);
      if (!f) throw Error("unknown fill '" + value + "'");
      similarity.fill = *f;
    } else if (id == "similarity.truncate") similarity.truncate_k = size_or_none();
    else if (id == "similarity.alpha") {
      try {
        similarity.alpha = std::stod(value);
      } catch (const std::exception&) {
        throw Error("bad alpha '" + value + "'");
      }
    } else if (id == "output.dir") output_dir = path();
    else throw Error("unknown config key '" + id + "'");
  }

  void check_paths() const {
    for (const auto* p : {&abbreviations, &lexicon, &irregular_verbs, &irregular_nouns,
                          &tag_map, &stoplist, &auxiliaries}) {
      if (!std::filesystem::exists(*p)) throw Error("config path does not exist: " + p->string());
    }
  }

  // Settings in canonical form, with each data file replaced by a hash of
  // its contents so the fingerprint does not depend on where files live.
  std::string canonical() const {
    std::ostringstream os;
    const auto file = [](const std::filesystem::path& p) {
      return std::filesystem::exists(p) ? text::hex64(text::fnv1a(text::read_file(p)))
                                        : std::string("missing");
    };
    os << "corpus.abbreviations=" << file(abbreviations) << '\n'
       << "annotate.lexicon=" << file(lexicon) << '\n'
       << "annotate.irregular_verbs=" << file(irregular_verbs) << '\n'
       << "annotate.irregular_nouns=" << file(irregular_nouns) << '\n'
       << "annotate.tag_map=" << file(tag_map) << '\n'
       << "extract.stoplist=" << file(stoplist) << '\n'
       << "extract.auxiliaries=" << file(auxiliaries) << '\n'
       << "extract.window=" << (window ? *window : 0) << '\n'
       << "extract.predicative_adjectives=" << (predicative_adjectives ? "true" : "false")
       << '\n'
       << "vectors.relations=" << relations.str() << '\n'
       << "similarity.measure=" << to_string(similarity.measure) << '\n'
       << "similarity.fill=" << to_string(similarity.fill) << '\n'
       << "similarity.truncate=" << (similarity.truncate_k ? *similarity.truncate_k : 0)
       << '\n'
       << "similarity.alpha=" << shortest(similarity.alpha) << '\n';
    return os.str();
  }

  static std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }

  std::string hash() const { return text::hex64(text::fnv1a(canonical())); }
};

// Everything the stages need, loaded from the paths in a config.
struct Resources {
  corpus::Abbreviations abbreviations;
  Lexicon lexicon;
  ExtractOptions extract;

  static Resources load(const PipelineConfig& c) {
    c.check_paths();
    Resources r;
    r.abbreviations = corpus::Abbreviations::load(c.abbreviations);
    r.lexicon = Lexicon::load(c.lexicon, c.irregular_verbs, c.irregular_nouns);
    const auto stop = text::read_word_list(c.stoplist);
    r.extract.stoplist = {stop.begin(), stop.end()};
    const auto aux = text::read_word_list(c.auxiliaries);
    r.extract.chunking.auxiliaries = {aux.begin(), aux.end()};
    r.extract.chunking.predicative_adjectives = c.predicative_adjectives;
    r.extract.window = c.window;
    return r;
  }
};

}  // namespace argdist
