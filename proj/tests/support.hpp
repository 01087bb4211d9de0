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


// Shared helpers for the test binaries: fixture paths, scratch directories,
// a seeded generator, fixture readers and a synthetic corpus builder.

#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "argdist/argdist.hpp"
#include "json.hpp"

#ifndef ARGDIST_SOURCE_DIR
#define ARGDIST_SOURCE_DIR "."
#endif

namespace argdist {

inline void PrintTo(const Lemma& l, std::ostream* os) { *os << l.text << '/' << to_string(l.pos); }

inline void PrintTo(const ArgumentTriple& t, std::ostream* os) {
  *os << '(' << t.verb.text << '/' << to_string(t.verb.pos) << ' ' << to_string(t.relation)
      << ' ' << t.argument.text << '/' << to_string(t.argument.pos) << ')';
}

}  // namespace argdist

namespace argdist::testing {

namespace fs = std::filesystem;

inline fs::path source_path(const std::string& rel) { return fs::path(ARGDIST_SOURCE_DIR) / rel; }

inline std::string slurp(const fs::path& p) { return text::read_file(p); }

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("argdist-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline std::mt19937_64 rng(std::uint64_t seed = 20110601) { return std::mt19937_64(seed); }

// Random sparse non-negative integer vector: each of `dim` components is
// zero with probability `zero_p`, else uniform in [1, max_count].
inline std::vector<double> random_counts(std::mt19937_64& g, std::size_t dim, int max_count,
                                         double zero_p) {
  std::bernoulli_distribution zero(zero_p);
  std::uniform_int_distribution<int> count(1, max_count);
  std::vector<double> v(dim);
  for (auto& x : v) x = zero(g) ? 0.0 : count(g);
  return v;
}

inline ArgumentVector vector_from(const std::string& verb, const std::vector<double>& counts) {
  ArgumentVector v(Lemma{verb, Pos::verb});
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) {
      v.add(Lemma{"a" + std::to_string(i), Pos::noun}, static_cast<std::uint64_t>(counts[i]));
    }
  }
  return v;
}

// fixtures/table1_top10.csv -> (argument, rise %, fall %)
struct Table1Row {
  std::string argument;
  double rise = 0.0;
  double fall = 0.0;
};

inline std::vector<Table1Row> load_table1() {
  std::istringstream in(slurp(source_path("fixtures/table1_top10.csv")));
  std::string line;
  std::getline(in, line);
  std::vector<Table1Row> rows;
  while (std::getline(in, line)) {
    const auto f = text::split_csv(text::strip_cr(line));
    if (f.size() == 3) rows.push_back({f[0], std::stod(f[1]), std::stod(f[2])});
  }
  return rows;
}

inline std::vector<GoldRecord> load_table3() {
  std::istringstream in(slurp(source_path("gold/table3.csv")));
  return load_gold(in);
}

// Blocks separated by blank lines, '#' lines ignored.
inline std::vector<std::vector<std::string>> read_blocks(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::string> cur;
  std::string line;
  while (std::getline(in, line)) {
    line = text::strip_cr(line);
    if (!line.empty() && line.front() == '#') continue;
    if (line.empty()) {
      if (!cur.empty()) blocks.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    cur.push_back(line);
  }
  if (!cur.empty()) blocks.push_back(std::move(cur));
  return blocks;
}

struct ExtractionCase {
  std::string sentence;
  std::vector<ArgumentTriple> triples;
};

inline std::vector<ExtractionCase> load_extraction_gold() {
  std::vector<ExtractionCase> cases;
  for (const auto& block : read_blocks(source_path("fixtures/extraction_gold.txt"))) {
    ExtractionCase c;
    c.sentence = block.front();
    for (std::size_t i = 1; i < block.size(); ++i) {
      const auto f = text::split(block[i], '\t');
      c.triples.push_back({decode_lemma(f[0], Pos::verb), decode_lemma(f[2], Pos::noun),
                           *parse_relation(f[1])});
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

inline const Resources& default_resources() {
  static const Resources res = Resources::load(PipelineConfig::defaults());
  return res;
}

// Tokenize, tag and extract one sentence with the bundled resources.
inline std::vector<ArgumentTriple> extract_text(const std::string& sentence) {
  const auto& res = default_resources();
  const auto tokens = corpus::tokenize(sentence, res.abbreviations);
  return extract_sentence(tag(tokens, res.lexicon), res.extract);
}

// ---------------------------------------------------------------------------
// Synthetic corpus. Ten UP/DOWN verb pairs each own a cluster of three
// argument nouns; both members of a pair use their cluster with similar
// proportions. DOWN verbs borrow one noun from the neighbouring cluster, and
// a distractor verb ("leave") takes arguments no pair uses.

struct SyntheticPair {
  std::string up, up_past, down, down_past;
  std::vector<std::string> nouns;
};

inline const std::vector<SyntheticPair>& synthetic_pairs() {
  static const std::vector<SyntheticPair> pairs = {
      {"rise", "rose", "fall", "fell", {"index", "share", "point"}},
      {"gain", "gained", "lose", "lost", {"dollar", "euro", "yen"}},
      {"increase", "increased", "decrease", "decreased", {"demand", "supply", "output"}},
      {"climb", "climbed", "tumble", "tumbled", {"gold", "silver", "copper"}},
      {"jump", "jumped", "slip", "slipped", {"bond", "yield", "note"}},
      {"rally", "rallied", "retreat", "retreated", {"stock", "equity", "market"}},
      {"advance", "advanced", "slide", "slid", {"nikkei", "ftse", "nasdaq"}},
      {"surge", "surged", "plunge", "plunged", {"oil", "energy", "barrel"}},
      {"recover", "recovered", "worsen", "worsened", {"economy", "recession", "sentiment"}},
      {"soar", "soared", "plummet", "plummeted", {"profit", "revenue", "earning"}},
  };
  return pairs;
}

struct SyntheticCorpus {
  std::string jsonl;      // raw documents, one JSON object per line
  std::string gold_csv;   // gold rows for the ten UP prompts
  std::size_t sentences = 0;
  std::size_t documents = 0;
  std::size_t duplicates = 0;
};

inline SyntheticCorpus synthetic_corpus() {
  const auto& pairs = synthetic_pairs();
  std::vector<std::string> sentences;
  const auto say = [&](const std::string& subj, const std::string& verb, const std::string& obj) {
    sentences.push_back("The " + subj + " " + verb + " against the " + obj + ".");
  };
  // Weights over (subject, object) noun indices give each verb a slightly
  // different, overlapping profile over its cluster.
  const int up_pattern[10][2] = {{0, 1}, {0, 2}, {1, 0}, {0, 1}, {2, 1},
                                 {1, 2}, {0, 0}, {1, 1}, {2, 0}, {0, 2}};
  const int down_pattern[8][2] = {{0, 1}, {1, 0}, {0, 2}, {2, 1},
                                  {1, 2}, {0, 1}, {2, 2}, {1, 0}};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& pr = pairs[p];
    for (const auto& w : up_pattern) say(pr.nouns[w[0]], pr.up_past, pr.nouns[w[1]]);
    for (const auto& w : down_pattern) say(pr.nouns[w[0]], pr.down_past, pr.nouns[w[1]]);
    const auto& next = pairs[(p + 1) % pairs.size()].nouns;
    say(next[0], pr.down_past, pr.nouns[2]);
  }
  const std::string distractor_nouns[] = {"minister", "official", "government"};
  for (int i = 0; i < 10; ++i) {
    say(distractor_nouns[i % 3], "left", distractor_nouns[(i + 1) % 3]);
  }

  SyntheticCorpus out;
  out.sentences = sentences.size();
  std::vector<std::string> bodies;
  for (std::size_t i = 0; i < sentences.size(); i += 5) {
    std::string body = "<p>Bulletin " + std::to_string(bodies.size() + 1) + ".</p>";
    for (std::size_t k = i; k < std::min(i + 5, sentences.size()); ++k) {
      body += " <p>" + sentences[k] + "</p>";
    }
    bodies.push_back(std::move(body));
  }
  std::ostringstream js;
  const auto emit = [&](std::size_t i, const std::string& body) {
    nlohmann::ordered_json j;
    j["id"] = "syn-" + std::to_string(out.documents + 1);
    j["source"] = "SYN";
    j["date"] = "2009-0" + std::to_string(1 + i % 9) + "-15";
    j["body"] = body;
    js << j.dump() << '\n';
    ++out.documents;
  };
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    emit(i, bodies[i]);
    if (i % 16 == 3) {
      emit(i, bodies[i] + " <p>Reprinted.</p>");
      ++out.duplicates;
    }
  }
  out.jsonl = js.str();

  std::ostringstream gold;
  gold << "prompt,response,task1_pct,task2_pct,total_pct,free_only\n";
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& pr = pairs[p];
    const auto& other = pairs[(p + 9) % pairs.size()].down;
    gold << pr.up << ',' << pr.down << ",60,70,65,false\n";
    gold << pr.up << ',' << other << ",20,10,15,false\n";
    gold << pr.up << ",leave,10,0,5,true\n";
  }
  out.gold_csv = gold.str();
  return out;
}

}  // namespace argdist::testing
