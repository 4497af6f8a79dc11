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

#include "biomine/article_index.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

namespace biomine {
namespace {

RawPage pivot_page(const std::string& title, std::uint64_t wpid,
                   std::vector<std::pair<LanguageCode, std::string>> links) {
  RawPage page;
  page.title = title;
  page.wpid = wpid;
  page.language = "en";
  page.langlinks = std::move(links);
  return page;
}

ArticleText article(const LanguageCode& language, const std::string& title,
                    std::uint64_t wpid) {
  ArticleText a;
  a.key = {language, title};
  a.wpid = wpid;
  a.plain_text = "x";
  return a;
}

TEST(ArticleIndexTest, ResolvesWhenAllTargetsAreLinked) {
  const std::vector<RawPage> pages = {
      pivot_page("Aurelia Arkotxa", 51690640,
                 {{"es", "Aurelia Arkotxa"}, {"ca", "Aurelia Arkotxa"}}),
      pivot_page("Only Spanish", 2, {{"es", "Solo"}}),
  };
  IndexSummary summary;
  const auto mapping = resolve_interlanguage(pages, {"es", "ca"}, &summary);
  ASSERT_EQ(mapping.size(), 1u);
  const auto& links = mapping.entries.at("Aurelia Arkotxa");
  EXPECT_EQ(links, (std::vector<std::pair<LanguageCode, std::string>>{
                       {"es", "Aurelia Arkotxa"}, {"ca", "Aurelia Arkotxa"}}));
  EXPECT_EQ(summary.input_titles, 2u);
  EXPECT_EQ(summary.linked_titles, 1u);
  EXPECT_EQ(summary.linked_per_language.at("es"), 2u);
  EXPECT_EQ(summary.linked_per_language.at("ca"), 1u);
}

TEST(ArticleIndexTest, EmptyInputAndBadLanguages) {
  EXPECT_EQ(resolve_interlanguage({}, {"es"}).size(), 0u);
  EXPECT_THROW(resolve_interlanguage({pivot_page("A", 1, {})}, {"en"}), InvalidArgument);
  RawPage other = pivot_page("B", 2, {});
  other.language = "fr";
  EXPECT_THROW(resolve_interlanguage({pivot_page("A", 1, {}), other}, {"es"}),
               InvalidArgument);
}

TEST(ArticleIndexTest, MappingNeverContainsThePivot) {
  const auto mapping =
      resolve_interlanguage({pivot_page("A", 1, {{"es", "A"}, {"en", "Self"}})}, {"es"});
  ASSERT_EQ(mapping.size(), 1u);
  for (const auto& [language, title] : mapping.entries.at("A")) EXPECT_NE(language, "en");
}

TEST(ArticleIndexTest, SelectsOnlyFullyRetrievedEntries) {
  std::vector<RawPage> pages;
  for (int i = 0; i < 5; ++i) {
    const std::string t = "Bio " + std::to_string(i);
    pages.push_back(pivot_page(t, 100 + i, {{"es", t + " es"}, {"ca", t + " ca"}}));
  }
  const auto mapping = resolve_interlanguage(pages, {"es", "ca"});
  ASSERT_EQ(mapping.size(), 5u);
  std::vector<ArticleText> retrieved;
  for (int i = 0; i < 5; ++i) {
    const std::string t = "Bio " + std::to_string(i);
    retrieved.push_back(article("en", t, 100 + i));
    if (i != 1) retrieved.push_back(article("es", t + " es", 200 + i));
    if (i != 3) retrieved.push_back(article("ca", t + " ca", 300 + i));
  }
  IndexSummary summary;
  const auto complete = select_complete_entries(mapping, retrieved, &summary);
  ASSERT_EQ(complete.size(), 3u);
  EXPECT_EQ(complete.languages, (std::vector<LanguageCode>{"en", "es", "ca"}));
  std::vector<std::string> titles;
  for (const auto& e : complete.entries) titles.push_back(e.pivot_title);
  EXPECT_EQ(titles, (std::vector<std::string>{"Bio 0", "Bio 2", "Bio 4"}));
  EXPECT_EQ(complete.entries[1].wpids, (std::vector<std::uint64_t>{102, 202, 302}));
  EXPECT_EQ(complete.entries[1].articles[2], (ArticleKey{"ca", "Bio 2 ca"}));
  EXPECT_EQ(summary.complete_entries, 3u);

  // Order independence.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(retrieved.begin(), retrieved.end(), rng);
    const auto again = select_complete_entries(mapping, retrieved);
    ASSERT_EQ(again.size(), complete.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      EXPECT_EQ(again.entries[i].pivot_title, complete.entries[i].pivot_title);
      EXPECT_EQ(again.entries[i].wpids, complete.entries[i].wpids);
    }
  }
}

TEST(ArticleIndexTest, IdentityWhenEverythingIsRetrieved) {
  const auto mapping = resolve_interlanguage(
      {pivot_page("A", 1, {{"es", "A"}}), pivot_page("B", 2, {{"es", "Be"}})}, {"es"});
  const auto complete = select_complete_entries(
      mapping, {article("en", "A", 1), article("en", "B", 2), article("es", "A", 3),
                article("es", "Be", 4)});
  EXPECT_EQ(complete.size(), mapping.size());
}

TEST(ArticleIndexTest, SummaryIsLineOriented) {
  IndexSummary summary;
  summary.input_titles = 3;
  summary.linked_titles = 2;
  summary.complete_entries = 1;
  std::ostringstream out;
  write_summary(out, summary);
  EXPECT_NE(out.str().find("input_titles\t3\n"), std::string::npos);
  EXPECT_NE(out.str().find("complete_entries\t1\n"), std::string::npos);
}

}  // namespace
}  // namespace biomine
