// Copyright 2026 The Checkworthy Authors.
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

#ifndef CHECKWORTHY_EMBEDDED_DATA_H_
#define CHECKWORTHY_EMBEDDED_DATA_H_

#include <string_view>

// Contents of the files under data/, compiled in.
namespace checkworthy::embedded {

std::string_view stopwords_en();
std::string_view pronoun_keep();
std::string_view vip_default();
std::string_view hashtag_split_golden();
std::string_view normalizer_golden();

}  // namespace checkworthy::embedded

#endif  // CHECKWORTHY_EMBEDDED_DATA_H_
