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

#include "biomine/wikitext.hpp"

#include <gtest/gtest.h>

#include <random>

#include "biomine/dump.hpp"

namespace biomine {
namespace {

TEST(WikitextTest, BoldAndLinks) {
  EXPECT_EQ(strip_markup("'''Bold''' text with a [[Page|link label]]."),
            "Bold text with a link label.");
  EXPECT_EQ(strip_markup("See [[Paris]] and ''[[Rome|the city]]''."),
            "See Paris and the city.");
}

TEST(WikitextTest, TemplatesAreRemovedWithNesting) {
  EXPECT_EQ(strip_markup("{{Infobox person|name=X}}Body."), "Body.");
  EXPECT_EQ(strip_markup("{{A|{{B|c}}|d}}Body {{x}}text."), "Body text.");
}

TEST(WikitextTest, CategoryLinksLeaveTheBody) {
  RawPage page;
  page.title = "T";
  page.language = "en";
  page.wikitext = "Body.[[Category:Living people]]";
  const auto links = scan_links(page.wikitext);
  ASSERT_EQ(links.categories.size(), 1u);
  EXPECT_EQ(links.categories[0], "Living people");
  EXPECT_EQ(strip_wikitext(page).plain_text, "Body.");
}

TEST(WikitextTest, ReferencesTablesTagsAndFiles) {
  const std::string input =
      "Intro.<ref name=\"a\">Cite {{x}}</ref> More<ref name=b/>.\n"
      "{| class=\"wikitable\"\n|-\n| cell || cell\n|}\n"
      "[[File:Portrait.jpg|thumb|A [[caption]] here]]Text <small>small</small> "
      "<!-- hidden --> end &amp; more.";
  const std::string out = strip_markup(input);
  EXPECT_EQ(out, "Intro. More.\nText small end & more.");
}

TEST(WikitextTest, HeadingsAndListsAreHandled) {
  EXPECT_EQ(strip_markup("Lead.\n\n== Early life ==\nBorn here.\n* item one\n"),
            "Lead.\nBorn here.\nitem one");
}

TEST(WikitextTest, UnbalancedTemplateStripsToEndWithWarning) {
  std::vector<std::string> warnings;
  EXPECT_EQ(strip_markup("Keep this. {{Broken|x Lost text.", &warnings), "Keep this.");
  EXPECT_FALSE(warnings.empty());
}

TEST(WikitextTest, NoMarkupTokensSurvive) {
  const std::string input =
      "{{a}} '''x''' [[y|z]] [[Category:c]] [[es:w]] {{b|{{c}}}} ''i'' [http://e.com ext] "
      "[[File:f.png|thumb|cap]] }} ]] [[ {{ end.";
  const std::string out = strip_markup(input);
  for (const char* token : {"[[", "]]", "{{", "}}", "'''"}) {
    EXPECT_EQ(out.find(token), std::string::npos) << token << " in " << out;
  }
}

TEST(WikitextTest, StripIsIdempotent) {
  const std::vector<std::string> samples = {
      "'''A''' [[b|c]] {{d}} e.",
      "x '' y ''' z ''''' w",
      "[[a|[[b]]]] {{c|[[d]]}} e",
      "Text [http://x y] [[ unclosed",
      "== H ==\n* a\n# b\n: c\n;d",
      "&lt;ref&gt;x&lt;/ref&gt; &amp;amp; y",
      "{| t\n|}\n|} stray",
  };
  for (const auto& s : samples) {
    const std::string once = strip_markup(s);
    EXPECT_EQ(strip_markup(once), once) << s;
  }
  // Random markup soup.
  std::mt19937_64 rng(7);
  const std::vector<std::string> pieces = {"[[", "]]", "{{", "}}", "'''", "''", "|",
                                           "a", "B. ", "\n", "==", "<ref>", "</ref>",
                                           "&amp;", "[", "]", "*", " "};
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    for (int i = 0; i < 30; ++i) s += pieces[rng() % pieces.size()];
    const std::string once = strip_markup(s);
    EXPECT_EQ(strip_markup(once), once) << s;
  }
}

TEST(WikitextTest, LanglinksAreCollectedOncePerLanguage) {
  const auto links = scan_links(
      "Text [[es:Aurelia Arkotxa]] [[ca:Aurelia_Arkotxa]] [[es:Other]] "
      "[[wikt:word]] [[:es:Inline]] <!-- [[fr:Hidden]] -->");
  ASSERT_EQ(links.langlinks.size(), 2u);
  EXPECT_EQ(links.langlinks[0], std::make_pair(LanguageCode("es"), std::string("Aurelia Arkotxa")));
  EXPECT_EQ(links.langlinks[1], std::make_pair(LanguageCode("ca"), std::string("Aurelia Arkotxa")));
}

TEST(WikitextTest, NormalizeTitle) {
  EXPECT_EQ(normalize_title("  aurelia__Arkotxa  "), "Aurelia Arkotxa");
  EXPECT_EQ(normalize_title("Aurelia Arkotxa "), "Aurelia Arkotxa");
  EXPECT_EQ(normalize_title("élise"), "Élise");
  EXPECT_TRUE(is_language_code("ca"));
  EXPECT_FALSE(is_language_code("wikt"));
}

}  // namespace
}  // namespace biomine
