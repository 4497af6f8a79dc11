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

#ifndef BIOMINE_RESOURCES_HPP_
#define BIOMINE_RESOURCES_HPP_

#include <string_view>
#include <vector>

#include "biomine/common.hpp"

// Default data files (data/abbreviations/*.txt, data/pronouns.tsv) compiled
// into the library.
namespace biomine::resources {

// Raw abbreviation list for a language, empty if none is shipped.
std::string_view abbreviations(std::string_view language);
std::vector<LanguageCode> abbreviation_languages();
std::string_view pronoun_lexicon();

}  // namespace biomine::resources

#endif  // BIOMINE_RESOURCES_HPP_
