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


#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

namespace argdist::corpus {
namespace {

using argdist::testing::read_blocks;
using argdist::testing::source_path;

RawDocument doc(std::string id, std::string body) {
  RawDocument d;
  d.id = std::move(id);
  d.source = "FT";
  d.body = std::move(body);
  return d;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!text::is_space(c)) out.push_back(c);
  }
  return out;
}

// Random body mixing words, markup, entities, multibyte text and spacing.
std::string random_body(std::mt19937_64& g) {
  static const std::vector<std::string> parts = {
      "Shares", "rose", "fell", " ", "  ", "\n", "<p>", "</p>", "<b>", "&amp;", "3.5",
      "percent", ".", "U.S.", "caf\xC3\xA9", "\xE2\x82\xAC", "<!-- x -->", "\t", "index"};
  std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
  std::uniform_int_distribution<int> len(0, 40);
  std::string s;
  for (int i = len(g); i > 0; --i) s += parts[pick(g)];
  return s;
}

// ---------------------------------------------------------------- dedup_key

TEST(DedupKey, ShortBodyVerbatim) {
  const std::string body(49, 'b');
  EXPECT_EQ(dedup_key(body), body);
}

TEST(DedupKey, FiftyCharacterPrefix) {
  EXPECT_EQ(dedup_key(std::string(50, 'a') + "xyz"), std::string(50, 'a'));
}

TEST(DedupKey, DifferenceAtCharacter51IsIgnored) {
  const std::string stem(50, 'q');
  EXPECT_EQ(dedup_key(stem + "1 tail"), dedup_key(stem + "2 tail"));
}

TEST(DedupKey, EmptyBody) { EXPECT_EQ(dedup_key(""), ""); }

TEST(DedupKey, CountsCodePointsNotBytes) {
  std::string body;
  for (int i = 0; i < 60; ++i) body += "\xC3\xA9";
  const auto key = dedup_key(body);
  EXPECT_EQ(text::utf8_length(key), 50u);
  EXPECT_FALSE(text::find_invalid_utf8(key));
}

TEST(DedupKey, PropertyLengthAtMost50) {
  auto g = argdist::testing::rng();
  for (int i = 0; i < 2000; ++i) {
    const auto key = dedup_key(normalize_body(random_body(g) + random_body(g)));
    EXPECT_LE(text::utf8_length(key), 50u);
  }
}

// ------------------------------------------------------------------ ingest

TEST(Ingest, EmptyStream) {
  const auto r = ingest(std::vector<RawDocument>{});
  EXPECT_TRUE(r.articles.empty());
  EXPECT_TRUE(r.errors.empty());
  EXPECT_EQ(r.dropped, 0u);
}

TEST(Ingest, StripsParagraphTags) {
  const std::vector docs{doc("d1", "<p>Shares rose.</p>")};
  const auto r = ingest(docs);
  ASSERT_EQ(r.articles.size(), 1u);
  EXPECT_EQ(r.articles[0].body, "Shares rose.");
}

TEST(Ingest, SharedFirst50CharactersKeepsFirst) {
  const std::string stem = "The FTSE 100 index rose 30 points in early trading ";
  ASSERT_GE(stem.size(), 50u);
  const std::vector docs{doc("a", stem + "on Monday."), doc("b", stem + "on Tuesday."),
                         doc("c", "Unrelated story.")};
  const auto r = ingest(docs);
  ASSERT_EQ(r.articles.size(), 2u);
  EXPECT_EQ(r.articles[0].id, "a");
  EXPECT_EQ(r.articles[1].id, "c");
  EXPECT_EQ(r.dropped, 1u);
  ASSERT_EQ(r.collisions.size(), 1u);
  EXPECT_EQ(r.collisions[0].kept_id, "a");
  EXPECT_EQ(r.collisions[0].dropped_ids, std::vector<std::string>{"b"});
}

TEST(Ingest, MarkupDifferencesDoNotDefeatDedup) {
  const std::vector docs{doc("a", "<p>Oil   prices fell sharply.</p>"),
                         doc("b", "Oil prices <b>fell</b>\n sharply.")};
  EXPECT_EQ(ingest(docs).articles.size(), 1u);
}

TEST(Ingest, InvalidUtf8IsReportedAndSkipped) {
  const std::vector docs{doc("good1", "Stocks fell."), doc("bad", "Stocks \xFF fell."),
                         doc("good2", "Bonds rose.")};
  const auto r = ingest(docs);
  ASSERT_EQ(r.articles.size(), 2u);
  EXPECT_EQ(r.articles[1].id, "good2");
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].id, "bad");
  EXPECT_EQ(r.errors[0].position, 2u);
}

TEST(Ingest, MalformedDateIsReportedAndSkipped) {
  auto d = doc("x", "Gold rose.");
  d.date = "15/03/2009";
  auto ok = doc("y", "Gold fell.");
  ok.date = "2009-03-15";
  const std::vector docs{d, ok};
  const auto r = ingest(docs);
  ASSERT_EQ(r.articles.size(), 1u);
  EXPECT_EQ(r.articles[0].date, "2009-03-15");
  EXPECT_EQ(r.errors.size(), 1u);
}

TEST(Ingest, StripsByteOrderMark) {
  const std::vector docs{doc("bom", "\xEF\xBB\xBFShares rose.")};
  EXPECT_EQ(ingest(docs).articles.at(0).body, "Shares rose.");
}

std::vector<RawDocument> random_stream(std::mt19937_64& g, std::size_t n) {
  std::vector<RawDocument> docs;
  std::uniform_int_distribution<int> reuse(0, 3);
  for (std::size_t i = 0; i < n; ++i) {
    if (!docs.empty() && reuse(g) == 0) {
      auto copy = docs[g() % docs.size()];
      copy.id = "dup" + std::to_string(i);
      docs.push_back(copy);
    } else {
      docs.push_back(doc("d" + std::to_string(i), random_body(g)));
    }
  }
  return docs;
}

TEST(IngestProperty, Deterministic) {
  auto g = argdist::testing::rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto docs = random_stream(g, 40);
    const auto a = ingest(docs), b = ingest(docs);
    std::ostringstream x, y;
    write_articles(x, a.articles);
    write_articles(y, b.articles);
    EXPECT_EQ(x.str(), y.str());
  }
}

TEST(IngestProperty, IdempotentUnderSelfConcatenation) {
  auto g = argdist::testing::rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto docs = random_stream(g, 30);
    auto doubled = docs;
    doubled.insert(doubled.end(), docs.begin(), docs.end());
    EXPECT_EQ(ingest(doubled).articles, ingest(docs).articles);
  }
}

TEST(IngestProperty, UniqueKeysAndNoMarkup) {
  auto g = argdist::testing::rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = ingest(random_stream(g, 50));
    std::set<std::string> keys;
    for (const auto& a : r.articles) {
      EXPECT_TRUE(keys.insert(dedup_key(a.body)).second);
      EXPECT_EQ(a.body.find("<p>"), std::string::npos);
      EXPECT_EQ(a.body.find("<b>"), std::string::npos);
      EXPECT_EQ(a.body.find("<!--"), std::string::npos);
      EXPECT_FALSE(text::find_invalid_utf8(a.body));
    }
  }
}

// ------------------------------------------------------------ input formats

TEST(ReadJsonl, FieldsDefaultsAndErrors) {
  std::istringstream in(
      R"({"id":"a1","source":"FT","date":"2009-01-02","title":"T","body":"<p>x</p>"})"
      "\n\n"
      "not json\n"
      R"({"body":"no id"})"
      "\n"
      R"({"id":"b"})"
      "\n");
  const auto batch = read_jsonl(in);
  ASSERT_EQ(batch.documents.size(), 2u);
  EXPECT_EQ(batch.documents[0].id, "a1");
  EXPECT_EQ(batch.documents[0].title, "T");
  EXPECT_EQ(batch.documents[1].id, "doc-4");
  ASSERT_EQ(batch.errors.size(), 2u);
  EXPECT_EQ(batch.errors[0].position, 3u);
  EXPECT_EQ(batch.errors[1].position, 5u);
}

TEST(ReadTextdir, SortedRelativePaths) {
  argdist::testing::TempDir dir;
  std::filesystem::create_directories(dir / "sub");
  text::write_file(dir / "b.txt", "Second.");
  text::write_file(dir / "a.txt", "First.");
  text::write_file(dir / "sub" / "c.html", "<p>Third.</p>");
  const auto batch = read_textdir(dir.path());
  ASSERT_EQ(batch.documents.size(), 3u);
  EXPECT_EQ(batch.documents[0].id, "a.txt");
  EXPECT_EQ(batch.documents[1].id, "b.txt");
  EXPECT_EQ(batch.documents[2].id, "sub/c.html");
  EXPECT_THROW(read_textdir(dir / "missing"), Error);
}

TEST(Articles, JsonlRoundTrip) {
  std::vector docs{doc("a", "Stocks fell. Bonds rose."), doc("b", "Gold rose.")};
  docs[0].date = "2009-02-03";
  docs[0].title = "Markets";
  auto r = ingest(docs);
  r.articles[0].sentences = segment_sentences(r.articles[0].body);
  std::ostringstream out;
  write_articles(out, r.articles);
  std::istringstream in(out.str());
  EXPECT_EQ(read_articles(in), r.articles);
}

TEST(Articles, RejectsOutOfRangeSpan) {
  std::istringstream in(R"({"id":"a","body":"abc","sentences":[[0,9]]})");
  EXPECT_THROW(read_articles(in), ParseError);
}

TEST(DedupReport, CountsAndCollisions) {
  const std::vector docs{doc("a", "Same body."), doc("b", "Same body."), doc("c", "\xFF")};
  const auto r = ingest(docs);
  const std::vector<DocumentError> read_errors{{4, "", "broken"}};
  const auto j = dedup_report(r, read_errors);
  EXPECT_EQ(j["kept"], 1);
  EXPECT_EQ(j["dropped"], 1);
  EXPECT_EQ(j["collisions"][0]["kept_id"], "a");
  EXPECT_EQ(j["errors"].size(), 2u);
  EXPECT_EQ(j["errors"][0]["stage"], "read");
}

// ------------------------------------------------------------- segmentation

Abbreviations bundled() { return Abbreviations::load(source_path("data/abbreviations.txt")); }

std::vector<std::string> sentence_texts(std::string_view body, const Abbreviations& ab) {
  std::vector<std::string> out;
  for (const auto& sp : segment_sentences(body, ab)) {
    out.emplace_back(body.substr(sp.begin, sp.end - sp.begin));
  }
  return out;
}

TEST(Segment, Examples) {
  const auto ab = bundled();
  EXPECT_EQ(sentence_texts("Stocks fell. Bonds rose.", ab).size(), 2u);
  EXPECT_EQ(sentence_texts("U.S. stocks fell.", ab),
            std::vector<std::string>{"U.S. stocks fell."});
  EXPECT_TRUE(segment_sentences("", ab).empty());
  EXPECT_EQ(sentence_texts("no terminator here", ab),
            std::vector<std::string>{"no terminator here"});
}

TEST(Segment, HandSegmentedFixture) {
  const auto ab = bundled();
  const auto blocks = read_blocks(source_path("fixtures/segmentation.txt"));
  ASSERT_EQ(blocks.size(), 7u);
  for (const auto& b : blocks) {
    ASSERT_EQ(b.front().substr(0, 2), "> ");
    const std::string input = b.front().substr(2);
    const std::vector<std::string> expected(b.begin() + 1, b.end());
    EXPECT_EQ(sentence_texts(input, ab), expected) << input;
  }
}

TEST(SegmentProperty, OrderedDisjointAndCovering) {
  auto g = argdist::testing::rng(11);
  const auto ab = bundled();
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string body = normalize_body(random_body(g));
    const auto spans = segment_sentences(body, ab);
    std::size_t prev = 0;
    std::string covered;
    for (const auto& sp : spans) {
      ASSERT_LE(prev, sp.begin);
      ASSERT_LT(sp.begin, sp.end);
      ASSERT_LE(sp.end, body.size());
      for (std::size_t i = prev; i < sp.begin; ++i) ASSERT_TRUE(text::is_space(body[i]));
      covered += body.substr(sp.begin, sp.end - sp.begin);
      prev = sp.end;
    }
    for (std::size_t i = prev; i < body.size(); ++i) ASSERT_TRUE(text::is_space(body[i]));
    EXPECT_EQ(strip_spaces(covered), strip_spaces(body));
  }
}

// ------------------------------------------------------------- tokenization

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("Shares fell 3.5 percent."),
            (std::vector<std::string>{"Shares", "fell", "3.5", "percent", "."}));
  EXPECT_EQ(tokenize("FTSE-100 rallied"), (std::vector<std::string>{"FTSE-100", "rallied"}));
  EXPECT_TRUE(tokenize("").empty());
}

TEST(Tokenize, HandTokenizedFixture) {
  const auto ab = bundled();
  const auto blocks = read_blocks(source_path("fixtures/tokenization.txt"));
  ASSERT_EQ(blocks.size(), 8u);
  for (const auto& b : blocks) {
    ASSERT_EQ(b.size(), 2u);
    std::vector<std::string> expected;
    for (const auto& t : text::split(b[1], '|')) expected.emplace_back(text::trim(t));
    EXPECT_EQ(tokenize(b[0].substr(2), ab), expected) << b[0];
  }
}

TEST(TokenizeProperty, NonEmptyTokensReconstructSentence) {
  auto g = argdist::testing::rng(12);
  const auto ab = bundled();
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string body = normalize_body(random_body(g));
    for (const auto& sp : segment_sentences(body, ab)) {
      const std::string_view s(body.data() + sp.begin, sp.end - sp.begin);
      const auto tokens = tokenize(s, ab);
      ASSERT_FALSE(tokens.empty()) << s;
      std::string joined;
      for (const auto& t : tokens) {
        ASSERT_FALSE(t.empty());
        ASSERT_EQ(t.find(' '), std::string::npos);
        joined += t + " ";
      }
      EXPECT_EQ(strip_spaces(joined), strip_spaces(s));
      EXPECT_EQ(tokenize(s, ab), tokens);
    }
  }
}

TEST(SplitArticle, UsesStoredSpansWhenPresent) {
  Article a;
  a.id = "x";
  a.body = "Alpha fell. Beta rose.";
  a.sentences = std::vector<Span>{{0, a.body.size()}};
  const auto one = split_article(a, Abbreviations());
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].tokens.size(), 6u);
  a.sentences.reset();
  const auto two = split_article(a, Abbreviations());
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[1].index, 1u);
  EXPECT_EQ(two[1].article_id, "x");
}

}  // namespace
}  // namespace argdist::corpus
