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

#include "biomine/common.hpp"

namespace biomine {

std::string to_string(const SentenceRef& ref) {
  return ref.language + ':' + ref.title + '#' + std::to_string(ref.index);
}

const char* gender_name(GenderLabel label) {
  switch (label) {
    case GenderLabel::kFemale:
      return "Female";
    case GenderLabel::kMale:
      return "Male";
    case GenderLabel::kUnknown:
      return "Unknown";
  }
  return "Unknown";
}

GenderLabel parse_gender(const std::string& name) {
  if (name == "Female") return GenderLabel::kFemale;
  if (name == "Male") return GenderLabel::kMale;
  if (name == "Unknown") return GenderLabel::kUnknown;
  throw InvalidArgument("unknown gender label '" + name + "'");
}

}  // namespace biomine
