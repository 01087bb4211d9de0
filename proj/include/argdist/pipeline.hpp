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

// In-memory stage drivers shared by the CLI subcommands. Each stage fans
// out over independent units (articles, sentences) and collects results in
// input order.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "argdist/annotate.hpp"
#include "argdist/config.hpp"
#include "argdist/corpus.hpp"
#include "argdist/extract.hpp"
#include "argdist/parallel.hpp"
#include "argdist/text.hpp"
#include "json.hpp"

namespace argdist::pipeline {

inline void segment(std::vector<corpus::Article>& articles,
                    const corpus::Abbreviations& abbrev) {
  for (auto& a : articles) a.sentences = corpus::segment_sentences(a.body, abbrev);
}

inline std::vector<TaggedSentence> tag_articles(std::span<const corpus::Article> articles,
                                                const Resources& res, std::size_t jobs) {
  std::vector<std::vector<TaggedSentence>> per_article(articles.size());
  parallel_for(articles.size(), jobs, [&](std::size_t i) {
    for (const auto& s : corpus::split_article(articles[i], res.abbreviations)) {
      per_article[i].push_back(tag(s.tokens, res.lexicon));
    }
  });
  std::vector<TaggedSentence> out;
  for (auto& sentences : per_article) {
    for (auto& s : sentences) out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<std::vector<ArgumentTriple>> extract_all(
    std::span<const TaggedSentence> sentences, const ExtractOptions& options,
    std::size_t jobs) {
  std::vector<std::vector<ArgumentTriple>> out(sentences.size());
  parallel_for(sentences.size(), jobs, [&](std::size_t i) {
    out[i] = extract_sentence(sentences[i], options);
  });
  return out;
}

inline TripleCounts aggregate(std::span<const std::vector<ArgumentTriple>> per_sentence) {
  TripleCounts counts;
  for (const auto& triples : per_sentence) add_triples(counts, triples);
  return counts;
}

inline std::string content_hash(std::string_view bytes) {
  return text::hex64(text::fnv1a(bytes));
}

// Run record written next to (or embedded in) every output. Holds
// no paths or timestamps, so reruns on the same inputs are byte-identical.
inline nlohmann::ordered_json manifest(
    std::string_view stage, const PipelineConfig& config,
    std::span<const std::pair<std::string, std::string>> input_hashes) {
  nlohmann::ordered_json j;
  j["tool"] = "argdist";
  j["stage"] = stage;
  j["config_hash"] = config.hash();
  auto& inputs = j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [name, hash] : input_hashes) inputs[name] = hash;
  return j;
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& out) {
  return std::filesystem::path(out.string() + ".manifest.json");
}

}  // namespace argdist::pipeline
