// Copyright 2026 The biomine Authors.
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

#include "biomine/segmenter.hpp"

#include <gtest/gtest.h>

#include "biomine/text_util.hpp"
#include "support/fixtures.hpp"

namespace biomine {
namespace {

ArticleText article(const std::string& language, const std::string& text) {
  ArticleText a;
  a.key = {language, "T"};
  a.plain_text = text;
  return a;
}

std::vector<std::string> texts(const std::vector<Sentence>& sentences) {
  std::vector<std::string> out;
  for (const auto& s : sentences) out.push_back(s.text);
  return out;
}

TEST(SegmenterTest, TerminalPunctuation) {
  const auto sentences = segment_sentences(article("en", "First sentence. Second? Third!"));
  EXPECT_EQ(texts(sentences),
            (std::vector<std::string>{"First sentence.", "Second?", "Third!"}));
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    EXPECT_EQ(sentences[i].index, i);
    EXPECT_EQ(sentences[i].article.title, "T");
  }
}

TEST(SegmenterTest, AbbreviationSuppressesSplit) {
  EXPECT_EQ(texts(segment_sentences(article("en", "Dr. Smith arrived in 2015."))),
            (std::vector<std::string>{"Dr. Smith arrived in 2015."}));
  EXPECT_EQ(texts(segment_sentences(article("en", "J. R. R. Tolkien wrote. It sold."))),
            (std::vector<std::string>{"J. R. R. Tolkien wrote.", "It sold."}));
  EXPECT_EQ(texts(segment_sentences(article("es", "La Sra. García llegó. Luego habló."))),
            (std::vector<std::string>{"La Sra. García llegó.", "Luego habló."}));
}

TEST(SegmenterTest, EmptyAndShortPieces) {
  EXPECT_TRUE(segment_sentences(article("en", "")).empty());
  EXPECT_TRUE(segment_sentences(article("en", "  \n ")).empty());
  EXPECT_EQ(texts(segment_sentences(article("en", "x\nOk.\nA real sentence here."))),
            (std::vector<std::string>{"Ok.", "A real sentence here."}));
}

TEST(SegmenterTest, QuotesDigitsAndLineBreaks) {
  EXPECT_EQ(texts(segment_sentences(article("en", "He said \"no.\" \"Yes,\" she said."))),
            (std::vector<std::string>{"He said \"no.\"", "\"Yes,\" she said."}));
  EXPECT_EQ(texts(segment_sentences(article("en", "It ended in 1990. 1991 was calm."))),
            (std::vector<std::string>{"It ended in 1990.", "1991 was calm."}));
  EXPECT_EQ(texts(segment_sentences(article("en", "A heading line\nBody text. more text"))),
            (std::vector<std::string>{"A heading line", "Body text. more text"}));
  EXPECT_EQ(texts(segment_sentences(article("es", "¿Quién fue? ¡Nadie lo sabe!"))),
            (std::vector<std::string>{"¿Quién fue?", "¡Nadie lo sabe!"}));
}

TEST(SegmenterTest, ConcatenationReproducesText) {
  const std::string text =
      "Ada Lovelace was born in 1815. She met Mr. Babbage in 1833!  Was the engine "
      "ever built? No.\nLater years were hard.";
  const auto sentences = segment_sentences(article("en", text));
  std::string joined;
  for (const auto& s : sentences) joined += (joined.empty() ? "" : " ") + s.text;
  EXPECT_EQ(joined, text::collapse_whitespace(text));
}

TEST(SegmenterTest, NoUnsuppressedBoundaryInsideASentence) {
  const std::string text =
      "Mr. Brown met Dr. Green. They talked about U.S. politics. Then e.g. Rome came "
      "up. It was late.";
  SentenceSegmenter segmenter;
  for (const auto& s : segmenter.segment(article("en", text))) {
    const auto cps = text::decode(s.text);
    for (std::size_t i = 0; i + 2 < cps.size(); ++i) {
      if ((cps[i] == U'.' || cps[i] == U'?' || cps[i] == U'!') && cps[i + 1] == U' ' &&
          text::is_upper(cps[i + 2])) {
        // Only allowed after an abbreviation or initial.
        std::size_t start = i;
        while (start > 0 && !text::is_space(cps[start - 1])) --start;
        std::string token;
        for (std::size_t j = start; j < i; ++j) text::append_utf8(token, cps[j]);
        EXPECT_TRUE(segmenter.is_abbreviation("en", token)) << s.text;
      }
    }
  }
}

TEST(SegmenterTest, CustomAbbreviationLists) {
  SentenceSegmenter segmenter;
  EXPECT_EQ(segmenter.split("Prof. Kim left.", "en").size(), 1u);
  segmenter.set_abbreviations("en", "# only this\nCapt\n");
  EXPECT_EQ(segmenter.split("Prof. Kim left.", "en").size(), 2u);
  EXPECT_EQ(segmenter.split("Capt. Kim left.", "en").size(), 1u);

  testing::TempDir dir;
  testing::write_file(dir / "xx.txt", "Abc\n");
  segmenter.load_directory(dir.path());
  EXPECT_TRUE(segmenter.is_abbreviation("xx", "Abc"));
}

}  // namespace
}  // namespace biomine
