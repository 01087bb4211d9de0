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

// The argdist command line. Every subcommand reads its inputs from files,
// writes its outputs to files (rank writes CSV to the output stream) and
// reports diagnostics on the error stream.
//
// Exit status: 0 success, 1 input error, 2 usage error.

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "argdist/annotate.hpp"
#include "argdist/antonymy.hpp"
#include "argdist/config.hpp"
#include "argdist/corpus.hpp"
#include "argdist/error.hpp"
#include "argdist/extract.hpp"
#include "argdist/pipeline.hpp"
#include "argdist/similarity.hpp"
#include "argdist/text.hpp"
#include "argdist/vectors.hpp"
#include "json.hpp"

namespace argdist::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;  // accepted for reproducible scripts; nothing is random
};

struct SimOptions {
  std::optional<std::string> measure;
  std::optional<std::string> fill;
  std::optional<std::size_t> truncate;
  std::optional<double> alpha;
};

namespace detail {

inline void require_file(const fs::path& p, std::string_view what) {
  if (!fs::exists(p)) throw Error(std::string(what) + " not found: " + p.string());
}

inline PipelineConfig load_config(const CommonOptions& common) {
  if (common.config.empty()) return PipelineConfig::defaults();
  require_file(common.config, "config file");
  return PipelineConfig::load(common.config);
}

inline void apply(PipelineConfig& cfg, const SimOptions& sim) {
  if (sim.measure) {
    const auto m = parse_measure(*sim.measure);
    if (!m) throw UsageError("unknown measure '" + *sim.measure + "' (cosine|euclidean|kl)");
    cfg.similarity.measure = *m;
  }
  if (sim.fill) {
    const auto f = parse_fill(*sim.fill);
    if (!f) throw UsageError("unknown fill '" + *sim.fill + "' (zero|one)");
    cfg.similarity.fill = *f;
  }
  if (sim.truncate) {
    cfg.similarity.truncate_k =
        *sim.truncate == 0 ? std::nullopt : std::optional<std::size_t>(*sim.truncate);
  }
  if (sim.alpha) cfg.similarity.alpha = *sim.alpha;
  try {
    cfg.similarity.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

inline void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--config", common.config, "Pipeline config file");
  sub->add_option("--jobs", common.jobs, "Maximum worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--seed", common.seed, "Reserved; no stage is stochastic");
}

inline void add_sim(CLI::App* sub, SimOptions& sim) {
  sub->add_option("--measure", sim.measure, "cosine|euclidean|kl");
  sub->add_option("--fill", sim.fill, "Value for arguments missing from one vector: zero|one");
  sub->add_option("--truncate", sim.truncate, "Keep only the k most frequent arguments (0 = all)");
  sub->add_option("--alpha", sim.alpha, "Additive smoothing constant");
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline void write_with_manifest(const fs::path& out, const std::string& content,
                                const nlohmann::ordered_json& manifest) {
  text::write_file(out, content);
  text::write_file(pipeline::sidecar_path(out), dump(manifest));
}

inline std::string triples_format_for(const fs::path& p) {
  return p.extension() == ".jsonl" ? "jsonl" : "tsv";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stages. Each takes resolved paths and the effective config.

struct IngestArgs {
  fs::path input;
  std::string format = "jsonl";
  fs::path out;
  fs::path report;  // empty: <out>.dedup.json
};

inline void stage_ingest(const PipelineConfig& cfg, const IngestArgs& a, std::ostream& err) {
  detail::require_file(a.input, "input");
  detail::require_file(cfg.abbreviations, "abbreviation list");
  corpus::RawBatch batch;
  std::string input_hash;
  if (a.format == "textdir") {
    batch = corpus::read_textdir(a.input);
    std::string joined;
    for (const auto& d : batch.documents) joined += d.id + '\0' + d.body + '\0';
    input_hash = pipeline::content_hash(joined);
  } else {
    const std::string bytes = text::read_file(a.input);
    input_hash = pipeline::content_hash(bytes);
    std::istringstream in(bytes);
    batch = corpus::read_jsonl(in);
  }
  auto result = corpus::ingest(batch.documents);
  pipeline::segment(result.articles, corpus::Abbreviations::load(cfg.abbreviations));

  std::ostringstream articles;
  corpus::write_articles(articles, result.articles);
  const std::pair<std::string, std::string> inputs[] = {{"input", input_hash}};
  auto manifest = pipeline::manifest("ingest", cfg, inputs);
  detail::write_with_manifest(a.out, articles.str(), manifest);

  nlohmann::ordered_json report;
  report["manifest"] = manifest;
  const auto dedup = corpus::dedup_report(result, batch.errors);
  for (const auto& [k, v] : dedup.items()) report[k] = v;
  text::write_file(a.report.empty() ? fs::path(a.out.string() + ".dedup.json") : a.report,
                   detail::dump(report));
  for (const auto& e : batch.errors) {
    err << "ingest: skipped line " << e.position << ": " << e.message << '\n';
  }
  for (const auto& e : result.errors) {
    err << "ingest: skipped document " << e.position << " (" << e.id << "): " << e.message << '\n';
  }
  err << "ingest: kept " << result.articles.size() << ", dropped " << result.dropped
      << " duplicates, " << batch.errors.size() + result.errors.size() << " errors\n";
}

inline void stage_tag(const PipelineConfig& cfg, const fs::path& in, const fs::path& out,
                      std::size_t jobs, std::ostream& err) {
  detail::require_file(in, "input");
  const Resources res = Resources::load(cfg);
  const std::string bytes = text::read_file(in);
  std::istringstream is(bytes);
  const auto articles = corpus::read_articles(is);
  const auto sentences = pipeline::tag_articles(articles, res, jobs);
  std::ostringstream os;
  write_vertical(os, sentences);
  const std::pair<std::string, std::string> inputs[] = {{"articles", pipeline::content_hash(bytes)}};
  detail::write_with_manifest(out, os.str(), pipeline::manifest("tag", cfg, inputs));
  err << "tag: " << articles.size() << " articles, " << sentences.size() << " sentences\n";
}

inline void stage_import_tagged(const PipelineConfig& cfg, const fs::path& in,
                                const fs::path& map_path, const fs::path& out,
                                std::ostream& err) {
  detail::require_file(in, "input");
  detail::require_file(map_path, "tag map");
  const TagMap map = TagMap::load(map_path);
  const std::string bytes = text::read_file(in);
  std::istringstream is(bytes);
  const auto corpus = read_pretagged(is, map);
  for (const auto& w : corpus.warnings) {
    err << "import-tagged: unmapped tag '" << w.tag << "' (first at line " << w.line << ", "
        << w.count << " tokens) mapped to other\n";
  }
  std::ostringstream os;
  write_vertical(os, corpus.sentences);
  const std::pair<std::string, std::string> inputs[] = {
      {"vertical", pipeline::content_hash(bytes)},
      {"tag_map", pipeline::content_hash(text::read_file(map_path))}};
  detail::write_with_manifest(out, os.str(), pipeline::manifest("import-tagged", cfg, inputs));
  err << "import-tagged: " << corpus.sentences.size() << " sentences\n";
}

inline void stage_extract(const PipelineConfig& cfg, const fs::path& in, const fs::path& out,
                          const std::string& format, std::size_t jobs, std::ostream& err) {
  detail::require_file(in, "input");
  const Resources res = Resources::load(cfg);
  const std::string bytes = text::read_file(in);
  std::istringstream is(bytes);
  const auto tagged = read_pretagged(is, TagMap::coarse());
  if (!tagged.warnings.empty()) {
    throw Error("tagged input uses non-coarse tag '" + tagged.warnings.front().tag +
                "'; run import-tagged first");
  }
  const auto per_sentence = pipeline::extract_all(tagged.sentences, res.extract, jobs);
  std::ostringstream os;
  std::size_t n = 0;
  for (const auto& t : per_sentence) n += t.size();
  if (format == "jsonl") {
    write_triples_jsonl(os, per_sentence);
  } else {
    write_triples_tsv(os, pipeline::aggregate(per_sentence));
  }
  const std::pair<std::string, std::string> inputs[] = {{"tagged", pipeline::content_hash(bytes)}};
  detail::write_with_manifest(out, os.str(), pipeline::manifest("extract", cfg, inputs));
  err << "extract: " << tagged.sentences.size() << " sentences, " << n << " triples\n";
}

inline void stage_vectors(const PipelineConfig& cfg, const fs::path& in, const fs::path& out,
                          std::ostream& err) {
  detail::require_file(in, "input");
  const std::string bytes = text::read_file(in);
  std::istringstream is(bytes);
  const TripleCounts counts = detail::triples_format_for(in) == "jsonl"
                                  ? read_triples_jsonl(is)
                                  : read_triples_tsv(is);
  const VectorStore store = build_vectors(counts, cfg.relations);
  std::ostringstream os;
  write_store(os, store);
  const std::pair<std::string, std::string> inputs[] = {{"triples", pipeline::content_hash(bytes)}};
  auto manifest = pipeline::manifest("vectors", cfg, inputs);
  manifest["relations"] = cfg.relations.str();
  manifest["verbs"] = store.size();
  manifest["total"] = store.grand_total();
  detail::write_with_manifest(out, os.str(), manifest);
  err << "vectors: " << store.size() << " verbs, " << store.grand_total() << " argument tokens\n";
}

inline VectorStore load_store(const fs::path& p, std::string* bytes_out = nullptr) {
  detail::require_file(p, "vector store");
  std::string bytes = text::read_file(p);
  std::istringstream is(bytes);
  VectorStore store = read_store(is);
  if (bytes_out) *bytes_out = std::move(bytes);
  return store;
}

inline void stage_sim(const PipelineConfig& cfg, const fs::path& store_path,
                      const fs::path& pairs_path, const fs::path& out, std::ostream& err) {
  const VectorStore store = load_store(store_path);
  detail::require_file(pairs_path, "pairs file");
  std::ifstream in(pairs_path);
  std::ostringstream os;
  os << "verb1,verb2,measure,score\n";
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = text::strip_cr(line);
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = text::split_csv(line);
    if (f.size() != 2) throw ParseError("pairs file rows need 2 fields", lineno);
    for (auto& s : f) s = text::to_lower(text::trim(s));
    if (lineno == 1 && f[0] == "verb1" && f[1] == "verb2") continue;
    const auto* x = store.find(f[0]);
    const auto* y = store.find(f[1]);
    if (!x || !y) {
      err << "sim: line " << lineno << ": '" << (x ? f[1] : f[0]) << "' not in store, skipped\n";
      continue;
    }
    const auto s = similarity(*x, *y, cfg.similarity);
    os << f[0] << ',' << f[1] << ',' << to_string(s.measure) << ','
       << argdist::detail::format_number(s.value) << '\n';
  }
  text::write_file(out, os.str());
}

struct EvalArgs {
  fs::path store;
  fs::path gold;
  fs::path out;
  fs::path pairs_csv;  // optional
};

inline void stage_eval(const PipelineConfig& cfg, const EvalArgs& a, std::size_t jobs,
                       std::ostream& err) {
  std::string store_bytes;
  const VectorStore store = load_store(a.store, &store_bytes);
  detail::require_file(a.gold, "gold file");
  const std::string gold_bytes = text::read_file(a.gold);
  std::istringstream gs(gold_bytes);
  std::vector<GoldWarning> warnings;
  const auto gold = load_gold(gs, &warnings);
  for (const auto& w : warnings) err << "eval: gold row " << w.row << ": " << w.message << '\n';
  const auto report = evaluate(gold, store, cfg.similarity, {jobs});
  const std::pair<std::string, std::string> inputs[] = {
      {"store", pipeline::content_hash(store_bytes)},
      {"gold", pipeline::content_hash(gold_bytes)}};
  nlohmann::ordered_json j;
  j["manifest"] = pipeline::manifest("eval", cfg, inputs);
  const auto body = to_json(report);
  for (const auto& [k, v] : body.items()) j[k] = v;
  text::write_file(a.out, detail::dump(j));
  if (!a.pairs_csv.empty()) {
    std::ostringstream os;
    write_pair_scores_csv(os, report);
    text::write_file(a.pairs_csv, os.str());
  }
  for (const auto& p : report.pairs) {
    if (p.status == PairStatus::failed) {
      err << "eval: " << p.gold.prompt << "-" << p.gold.response << " failed: " << p.message << '\n';
    }
  }
  err << "eval: " << report.n_scored << "/" << report.n_pairs << " pairs scored, top1 "
      << report.top1_rate << ", top2 " << report.top2_rate << " over "
      << report.prompts_evaluated << " prompts\n";
}

struct PipelineArgs {
  IngestArgs ingest;
  fs::path gold;
  fs::path out_dir;
};

// ingest -> tag -> extract -> vectors -> eval, with fixed file names in the
// output directory.
inline void stage_pipeline(const PipelineConfig& cfg, const PipelineArgs& a, std::size_t jobs,
                           std::ostream& err) {
  const fs::path dir = a.out_dir.empty() ? cfg.output_dir : a.out_dir;
  fs::create_directories(dir);
  IngestArgs ingest = a.ingest;
  ingest.out = dir / "articles.jsonl";
  ingest.report = dir / "dedup_report.json";
  stage_ingest(cfg, ingest, err);
  stage_tag(cfg, ingest.out, dir / "tagged.vert", jobs, err);
  stage_extract(cfg, dir / "tagged.vert", dir / "triples.tsv", "tsv", jobs, err);
  stage_vectors(cfg, dir / "triples.tsv", dir / "vectors.tsv", err);
  stage_eval(cfg, {dir / "vectors.tsv", a.gold, dir / "report.json", dir / "pair_scores.csv"},
             jobs, err);
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"argdist: verb argument distributions and antonym ranking", "argdist"};
  app.require_subcommand(1);

  CommonOptions common;
  SimOptions sim;
  IngestArgs ingest_args;
  std::optional<std::string> abbrev, lexicon, stoplist, tag_map, relations;
  std::optional<std::size_t> window;
  std::string in, out_path, format = "tsv", store, pairs, gold, prompt, candidates, pairs_csv;
  bool no_predicative = false;
  fs::path out_dir;

  auto* ingest = app.add_subcommand("ingest", "Normalize and deduplicate raw documents");
  ingest->add_option("--input", ingest_args.input, "JSONL file or directory")->required();
  ingest->add_option("--format", ingest_args.format, "jsonl|textdir")
      ->check(CLI::IsMember({"jsonl", "textdir"}));
  ingest->add_option("--abbrev", abbrev, "Abbreviation list for sentence splitting");
  ingest->add_option("--out", ingest_args.out, "Output articles JSONL")->required();
  ingest->add_option("--report", ingest_args.report, "Dedup report JSON");

  auto* tag_cmd = app.add_subcommand("tag", "Tag and lemmatize ingested articles");
  tag_cmd->add_option("--in", in, "Articles JSONL")->required();
  tag_cmd->add_option("--out", out_path, "Tagged vertical file")->required();
  tag_cmd->add_option("--abbrev", abbrev, "Abbreviation list");
  tag_cmd->add_option("--lexicon", lexicon, "Tagging lexicon");

  auto* import = app.add_subcommand("import-tagged", "Import an externally tagged vertical file");
  import->add_option("--in", in, "Vertical file: surface<TAB>tag<TAB>lemma")->required();
  import->add_option("--map", tag_map, "CSV external_tag,coarse_tag");
  import->add_option("--out", out_path, "Tagged vertical file (coarse tags)")->required();

  auto* extract = app.add_subcommand("extract", "Extract verb-argument triples");
  extract->add_option("--in", in, "Tagged vertical file")->required();
  extract->add_option("--stoplist", stoplist, "Argument stoplist");
  extract->add_option("--window", window, "Max tokens between verb and argument (0 = sentence)");
  extract->add_flag("--no-predicative", no_predicative, "Do not treat predicative adjectives as heads");
  extract->add_option("--format", format, "tsv (aggregated) | jsonl (per sentence)")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  extract->add_option("--out", out_path, "Triples file")->required();

  auto* vectors = app.add_subcommand("vectors", "Build per-verb argument vectors");
  vectors->add_option("--in", in, "Triples file (.tsv or .jsonl)")->required();
  vectors->add_option("--relations", relations, "subj,obj | subj | obj");
  vectors->add_option("--out", out_path, "Vector store TSV")->required();

  auto* sim_cmd = app.add_subcommand("sim", "Score verb pairs");
  sim_cmd->add_option("--store", store, "Vector store")->required();
  sim_cmd->add_option("--pairs", pairs, "CSV of verb1,verb2")->required();
  sim_cmd->add_option("--out", out_path, "Output CSV verb1,verb2,measure,score")->required();

  auto* rank = app.add_subcommand("rank", "Rank candidate antonyms for a prompt");
  rank->add_option("--store", store, "Vector store")->required();
  rank->add_option("--prompt", prompt, "Prompt lemma")->required();
  rank->add_option("--candidates", candidates, "Comma-separated candidate lemmas")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate similarity against gold antonym data");
  eval->add_option("--store", store, "Vector store")->required();
  eval->add_option("--gold", gold, "Gold CSV")->required();
  eval->add_option("--out", out_path, "Report JSON (default: <output dir>/report.json)");
  eval->add_option("--pairs-csv", pairs_csv, "Optional per-pair score CSV");

  auto* pipe = app.add_subcommand("pipeline", "Run ingest, tag, extract, vectors and eval");
  pipe->add_option("--input", ingest_args.input, "Raw corpus")->required();
  pipe->add_option("--format", ingest_args.format, "jsonl|textdir")
      ->check(CLI::IsMember({"jsonl", "textdir"}));
  pipe->add_option("--gold", gold, "Gold CSV")->required();
  pipe->add_option("--out-dir", out_dir, "Output directory (default: config output.dir)");

  for (auto* sub : {ingest, tag_cmd, import, extract, vectors, sim_cmd, rank, eval, pipe}) {
    detail::add_common(sub, common);
  }
  for (auto* sub : {sim_cmd, rank, eval, pipe}) detail::add_sim(sub, sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "argdist: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    PipelineConfig cfg = detail::load_config(common);
    detail::apply(cfg, sim);
    if (abbrev) cfg.abbreviations = *abbrev;
    if (lexicon) cfg.lexicon = *lexicon;
    if (stoplist) cfg.stoplist = *stoplist;
    if (tag_map) cfg.tag_map = *tag_map;
    if (window) cfg.window = *window == 0 ? std::nullopt : std::optional<std::size_t>(*window);
    if (no_predicative) cfg.predicative_adjectives = false;
    if (relations) {
      try {
        cfg.relations = RelationSet::parse(*relations);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }

    if (ingest->parsed()) {
      stage_ingest(cfg, ingest_args, err);
    } else if (tag_cmd->parsed()) {
      stage_tag(cfg, in, out_path, common.jobs, err);
    } else if (import->parsed()) {
      stage_import_tagged(cfg, in, cfg.tag_map, out_path, err);
    } else if (extract->parsed()) {
      stage_extract(cfg, in, out_path, format, common.jobs, err);
    } else if (vectors->parsed()) {
      stage_vectors(cfg, in, out_path, err);
    } else if (sim_cmd->parsed()) {
      stage_sim(cfg, store, pairs, out_path, err);
    } else if (rank->parsed()) {
      const VectorStore vs = load_store(store);
      std::vector<std::string> cands;
      for (const auto& c : text::split(candidates, ',')) {
        const std::string t = text::to_lower(text::trim(c));
        if (!t.empty()) cands.push_back(t);
      }
      const Ranking r = rank_candidates(text::to_lower(prompt), cands, vs, cfg.similarity);
      for (const auto& m : r.missing) err << "rank: '" << m << "' not in store, skipped\n";
      std::ostringstream os;
      os << "rank,candidate,measure,score\n";
      for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        os << i + 1 << ',' << r.candidates[i].lemma << ','
           << to_string(r.candidates[i].score.measure) << ','
           << argdist::detail::format_number(r.candidates[i].score.value) << '\n';
      }
      out << os.str();
    } else if (eval->parsed()) {
      fs::path report = out_path;
      if (report.empty()) {
        fs::create_directories(cfg.output_dir);
        report = cfg.output_dir / "report.json";
      }
      stage_eval(cfg, {store, gold, report, pairs_csv}, common.jobs, err);
    } else if (pipe->parsed()) {
      stage_pipeline(cfg, {ingest_args, gold, out_dir}, common.jobs, err);
    }
  } catch (const UsageError& e) {
    err << "argdist: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "argdist: error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"argdist"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace argdist::cli
