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

namespace argdist {
namespace {

using argdist::testing::default_resources;
using argdist::testing::source_path;

const Lexicon& lex() { return default_resources().lexicon; }

TaggedSentence tag_text(const std::string& s) {
  return tag(corpus::tokenize(s, default_resources().abbreviations), lex());
}

std::vector<Pos> tags_of(const TaggedSentence& s) {
  std::vector<Pos> out;
  for (const auto& t : s) out.push_back(t.pos);
  return out;
}

TEST(Pos, NamesRoundTrip) {
  for (Pos p : kAllPos) EXPECT_EQ(parse_pos(to_string(p)), p);
  EXPECT_FALSE(parse_pos("VVD"));
}

TEST(Lemma, PosIsPartOfIdentity) {
  EXPECT_NE((Lemma{"fall", Pos::noun}), (Lemma{"fall", Pos::verb}));
  EXPECT_EQ((Lemma{"fall", Pos::verb}), (Lemma{"fall", Pos::verb}));
}

// ----------------------------------------------------------------- tagging

TEST(Tag, Examples) {
  const std::vector<std::string> fell{"fell"};
  const auto a = tag(fell, lex());
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].pos, Pos::verb);
  EXPECT_EQ(a[0].lemma, "fall");

  const std::vector<std::string> num{"3.5"};
  EXPECT_EQ(tag(num, lex())[0].pos, Pos::number);
  EXPECT_EQ(tag(num, lex())[0].lemma, "3.5");

  const std::vector<std::string> dot{"."};
  EXPECT_EQ(tag(dot, lex())[0].pos, Pos::punct);
  EXPECT_EQ(tag(dot, lex())[0].lemma, ".");
}

TEST(Tag, NumberForms) {
  for (std::string n : {"12", "1,200", "-3.5", "4.25%", "2009"}) {
    const std::vector<std::string> t{n};
    EXPECT_EQ(tag(t, lex())[0].pos, Pos::number) << n;
  }
  const std::vector<std::string> t{"FTSE-100"};
  EXPECT_NE(tag(t, lex())[0].pos, Pos::number);
}

TEST(Tag, SuffixHeuristicsForUnknownWords) {
  const std::vector<std::string> t{"zorbled", "glimping", "quuxly", "blorfication",
                                   "Acme", "zzz"};
  EXPECT_EQ(tags_of(tag(t, lex())),
            (std::vector<Pos>{Pos::verb, Pos::verb, Pos::adverb, Pos::noun, Pos::noun,
                              Pos::other}));
}

TEST(Tag, NounVerbAmbiguityByContext) {
  // "rise" and "fall" are both noun and verb in the lexicon.
  const auto a = tag_text("Prices rise.");
  EXPECT_EQ(a[1].pos, Pos::verb);
  const auto b = tag_text("The rise was sharp.");
  EXPECT_EQ(b[1].pos, Pos::noun);
  const auto c = tag_text("Shares will fall.");
  EXPECT_EQ(c[2].pos, Pos::verb);
  const auto d = tag_text("A fall in prices.");
  EXPECT_EQ(d[1].pos, Pos::noun);
}

TEST(Tag, NounPluralOfAmbiguousWord) {
  const auto a = tag_text("three falls");
  EXPECT_EQ(a[1].pos, Pos::noun);
  EXPECT_EQ(a[1].lemma, "fall");
}

TEST(Tag, InflectedKnownVerbs) {
  const auto s = tag_text("Shares tumbled and bonds were slipping.");
  EXPECT_EQ(s[1].lemma, "tumble");
  EXPECT_EQ(s[1].pos, Pos::verb);
  EXPECT_EQ(s[4].lemma, "be");
  EXPECT_EQ(s[5].lemma, "slip");
}

TEST(TagProperty, PreservesCountOrderAndSurface) {
  auto g = argdist::testing::rng(21);
  static const std::vector<std::string> words = {
      "The", "index", "fell", "rose", "3.5", "percent", ".", ",", "sharply", "rise",
      "falls", "shares", "zorbled", "Acme", "to", "will", "(", "\xC3\xA9t\xC3\xA9"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1), len(0, 25);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> tokens;
    for (std::size_t n = len(g); n > 0; --n) tokens.push_back(words[pick(g)]);
    const auto tagged = tag(tokens, lex());
    ASSERT_EQ(tagged.size(), tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      EXPECT_EQ(tagged[i].surface, tokens[i]);
      EXPECT_FALSE(tagged[i].lemma.empty());
      EXPECT_EQ(tagged[i].lemma, text::to_lower(tagged[i].lemma));
    }
    EXPECT_EQ(tag(tokens, lex()), tagged);
  }
}

// -------------------------------------------------------------- lemmatizer

TEST(Lemmatize, Examples) {
  EXPECT_EQ(lemmatize("falls", Pos::noun, lex()), "fall");
  EXPECT_EQ(lemmatize("rose", Pos::verb, lex()), "rise");
  EXPECT_EQ(lemmatize("fall", Pos::verb, lex()), "fall");
}

TEST(Lemmatize, RegularVerbRules) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"rallied", "rally"},   {"rallies", "rally"},   {"climbed", "climb"},
      {"climbing", "climb"},  {"slipped", "slip"},    {"slipping", "slip"},
      {"eased", "ease"},      {"easing", "ease"},     {"surges", "surge"},
      {"plunged", "plunge"},  {"worsened", "worsen"}, {"plummeted", "plummet"},
      {"advances", "advance"}, {"Dipped", "dip"},     {"recovering", "recover"},
      {"alleviated", "alleviate"}, {"elevates", "elevate"}, {"retreating", "retreat"}};
  for (const auto& [form, lemma] : cases) {
    EXPECT_EQ(lemmatize(form, Pos::verb, lex()), lemma) << form;
  }
}

TEST(Lemmatize, RegularNounRules) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"shares", "share"},   {"Stocks", "stock"},       {"companies", "company"},
      {"losses", "loss"},    {"indices", "index"},      {"indexes", "index"},
      {"crises", "crisis"},  {"news", "news"},          {"treasuries", "treasury"},
      {"yields", "yield"},   {"percent", "percent"},    {"gas", "gas"}};
  for (const auto& [form, lemma] : cases) {
    EXPECT_EQ(lemmatize(form, Pos::noun, lex()), lemma) << form;
  }
}

TEST(Lemmatize, OtherPosOnlyLowercases) {
  EXPECT_EQ(lemmatize("Sharply", Pos::adverb, lex()), "sharply");
  EXPECT_EQ(lemmatize("The", Pos::other, lex()), "the");
}

TEST(Lemmatize, IrregularTablesExact) {
  for (Pos pos : {Pos::verb, Pos::noun}) {
    const auto& table = lex().irregular_table(pos);
    EXPECT_GT(table.size(), 20u);
    for (const auto& [form, lemma] : table) {
      EXPECT_EQ(lemmatize(form, pos, lex()), lemma) << form;
      EXPECT_EQ(lex().irregular(pos, lemma) ? *lex().irregular(pos, lemma) : lemma, lemma)
          << "lemma " << lemma << " is itself remapped";
    }
  }
}

TEST(Lemmatize, IrregularTablesCoverInventoryVerbs) {
  for (auto [form, lemma] : std::vector<std::pair<std::string, std::string>>{
           {"fell", "fall"}, {"fallen", "fall"}, {"rose", "rise"}, {"risen", "rise"},
           {"lost", "lose"}, {"sank", "sink"}, {"sunk", "sink"}, {"slid", "slide"},
           {"left", "leave"}, {"sold", "sell"}, {"was", "be"}, {"had", "have"}}) {
    EXPECT_EQ(lemmatize(form, Pos::verb, lex()), lemma);
  }
}

TEST(LemmatizeProperty, IdempotentOnTableAndRandomWords) {
  std::vector<std::pair<std::string, Pos>> words;
  for (Pos pos : {Pos::verb, Pos::noun}) {
    for (const auto& [form, lemma] : lex().irregular_table(pos)) {
      words.emplace_back(form, pos);
      words.emplace_back(lemma, pos);
    }
  }
  auto g = argdist::testing::rng(22);
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  const std::vector<std::string> endings = {"", "s", "es", "ies", "ed", "ied", "ing", "e",
                                            "ss", "us", "is", "ied", "eed", "ting"};
  std::uniform_int_distribution<std::size_t> letter(0, 25), len(1, 8),
      end(0, endings.size() - 1);
  for (int i = 0; i < 5000; ++i) {
    std::string w;
    for (std::size_t n = len(g); n > 0; --n) w.push_back(letters[letter(g)]);
    w += endings[end(g)];
    for (Pos pos : kAllPos) words.emplace_back(w, pos);
  }
  for (const auto& [w, pos] : words) {
    const std::string once = lemmatize(w, pos, lex());
    EXPECT_FALSE(once.empty()) << w;
    EXPECT_EQ(lemmatize(once, pos, lex()), once) << w << " / " << to_string(pos);
  }
}

TEST(Lexicon, LoadRejectsBadRows) {
  argdist::testing::TempDir dir;
  text::write_file(dir / "lex.tsv", "good\tnoun\nbad\tnounish\n");
  text::write_file(dir / "v.tsv", "");
  text::write_file(dir / "n.tsv", "");
  try {
    Lexicon::load(dir / "lex.tsv", dir / "v.tsv", dir / "n.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(Lexicon::load(dir / "missing.tsv", dir / "v.tsv", dir / "n.tsv"), Error);
}

// ----------------------------------------------------------- vertical files

TagMap treetagger() { return TagMap::load(source_path("data/treetagger_map.csv")); }

TEST(ReadPretagged, TreeTaggerExample) {
  std::istringstream in("fell\tVVD\tfall\n\n");
  const auto corpus = read_pretagged(in, treetagger());
  ASSERT_EQ(corpus.sentences.size(), 1u);
  ASSERT_EQ(corpus.sentences[0].size(), 1u);
  EXPECT_EQ(corpus.sentences[0][0].pos, Pos::verb);
  EXPECT_EQ(corpus.sentences[0][0].lemma, "fall");
  EXPECT_TRUE(corpus.warnings.empty());
}

TEST(ReadPretagged, EmptyStream) {
  std::istringstream in("");
  EXPECT_TRUE(read_pretagged(in, treetagger()).sentences.empty());
}

TEST(ReadPretagged, FieldCountErrorCarriesLine) {
  std::istringstream in("fell\tVVD\n");
  try {
    read_pretagged(in, treetagger());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  std::istringstream later("The\tDT\tthe\nindex\tNN\tindex\n\nrose\tVVD\n");
  try {
    read_pretagged(later, treetagger());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(ReadPretagged, UnmappedTagsWarnOnceAndBecomeOther) {
  std::istringstream in("x\tZZ\tx\ny\tZZ\ty\n\nShares\tNNS\tshare\nfoo\tQQ\t<unknown>\n");
  const auto corpus = read_pretagged(in, treetagger());
  ASSERT_EQ(corpus.sentences.size(), 2u);
  ASSERT_EQ(corpus.warnings.size(), 2u);
  EXPECT_EQ(corpus.warnings[0].tag, "ZZ");
  EXPECT_EQ(corpus.warnings[0].count, 2u);
  EXPECT_EQ(corpus.warnings[0].line, 1u);
  EXPECT_EQ(corpus.warnings[1].tag, "QQ");
  EXPECT_EQ(corpus.sentences[0][0].pos, Pos::other);
  EXPECT_EQ(corpus.sentences[1][0].pos, Pos::noun);
  EXPECT_EQ(corpus.sentences[1][1].lemma, "foo");
}

TEST(ReadPretagged, TreeTaggerPunctuationAndNumbers) {
  std::istringstream in(",\t,\t,\n3.5\tCD\t@card@\n.\tSENT\t.\n");
  const auto s = read_pretagged(in, treetagger()).sentences.at(0);
  EXPECT_EQ(tags_of(s), (std::vector<Pos>{Pos::punct, Pos::number, Pos::punct}));
}

TEST(Vertical, WriteReadRoundTrip) {
  std::vector<TaggedSentence> sentences;
  for (const auto& s : {"The index fell 100 points.", "Shares rose sharply.",
                        "U.S. yields eased, analysts said."}) {
    sentences.push_back(tag_text(s));
  }
  std::ostringstream out;
  write_vertical(out, sentences);
  std::istringstream in(out.str());
  const auto back = read_pretagged(in, TagMap::coarse());
  EXPECT_TRUE(back.warnings.empty());
  EXPECT_EQ(back.sentences, sentences);
}

}  // namespace
}  // namespace argdist
