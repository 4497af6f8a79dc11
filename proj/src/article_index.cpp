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

#include <algorithm>

namespace biomine {

TitleMapping resolve_interlanguage(const std::vector<RawPage>& pivot_pages,
                                   const std::vector<LanguageCode>& targets,
                                   IndexSummary* summary) {
  TitleMapping mapping;
  mapping.targets = targets;
  if (!pivot_pages.empty()) mapping.pivot = pivot_pages.front().language;
  if (std::find(targets.begin(), targets.end(), mapping.pivot) != targets.end()) {
    throw InvalidArgument("pivot language " + mapping.pivot +
                          " listed among target languages");
  }

  IndexSummary local;
  local.input_titles = pivot_pages.size();
  for (const auto& page : pivot_pages) {
    if (page.language != mapping.pivot) {
      throw InvalidArgument("pivot page '" + page.title + "' has language " +
                            page.language + ", expected " + mapping.pivot);
    }
    std::vector<std::pair<LanguageCode, std::string>> links;
    for (const auto& target : targets) {
      const auto it = std::find_if(
          page.langlinks.begin(), page.langlinks.end(),
          [&](const auto& link) { return link.first == target; });
      if (it == page.langlinks.end()) continue;
      ++local.linked_per_language[target];
      links.emplace_back(target, normalize_title(it->second));
    }
    if (links.size() != targets.size()) continue;
    // Duplicate pivot titles keep their first occurrence.
    mapping.entries.emplace(page.title, std::move(links));
  }
  local.linked_titles = mapping.entries.size();
  if (summary) {
    summary->input_titles = local.input_titles;
    summary->linked_titles = local.linked_titles;
    summary->linked_per_language = std::move(local.linked_per_language);
  }
  return mapping;
}

CompleteEntrySet select_complete_entries(
    const TitleMapping& mapping, const std::vector<ArticleText>& retrieved,
    IndexSummary* summary) {
  // Index by key; among duplicate keys the smallest wpid wins so the result
  // cannot depend on input order.
  std::map<ArticleKey, std::uint64_t> wpid_by_key;
  for (const auto& article : retrieved) {
    const auto [it, inserted] = wpid_by_key.emplace(article.key, article.wpid);
    if (!inserted) it->second = std::min(it->second, article.wpid);
  }

  CompleteEntrySet result;
  result.languages.push_back(mapping.pivot);
  result.languages.insert(result.languages.end(), mapping.targets.begin(),
                          mapping.targets.end());

  std::map<LanguageCode, std::size_t> retrieved_per_language;
  for (const auto& [pivot_title, links] : mapping.entries) {
    CompleteEntry entry;
    entry.pivot_title = pivot_title;
    bool complete = true;
    const auto take = [&](const ArticleKey& key) {
      const auto it = wpid_by_key.find(key);
      if (it == wpid_by_key.end()) {
        complete = false;
        return;
      }
      ++retrieved_per_language[key.language];
      entry.articles.push_back(key);
      entry.wpids.push_back(it->second);
    };
    take({mapping.pivot, pivot_title});
    for (const auto& target : mapping.targets) {
      const auto link = std::find_if(links.begin(), links.end(),
                                     [&](const auto& l) { return l.first == target; });
      if (link == links.end()) {
        complete = false;
        continue;
      }
      take({link->first, link->second});
    }
    if (complete) result.entries.push_back(std::move(entry));
  }

  if (summary) {
    summary->complete_entries = result.entries.size();
    summary->retrieved_per_language = std::move(retrieved_per_language);
  }
  return result;
}

void write_summary(std::ostream& out, const IndexSummary& summary) {
  out << "input_titles\t" << summary.input_titles << '\n';
  out << "linked_titles\t" << summary.linked_titles << '\n';
  for (const auto& [language, count] : summary.linked_per_language) {
    out << "linked\t" << language << '\t' << count << '\n';
  }
  for (const auto& [language, count] : summary.retrieved_per_language) {
    out << "retrieved\t" << language << '\t' << count << '\n';
  }
  out << "complete_entries\t" << summary.complete_entries << '\n';
}

}  // namespace biomine
