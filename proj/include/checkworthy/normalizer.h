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

#ifndef CHECKWORTHY_NORMALIZER_H_
#define CHECKWORTHY_NORMALIZER_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "checkworthy/corpus.h"

// Tweet pre-processing. Three pipelines share one rule sequence:
//
//   replace_urls -> replace_mentions -> unify_covid -> strip_trailing_hashtags
//   -> split hashtags (then unify_covid again on the split words)
//   -> expand_quantities -> strip_punctuation -> tokenize + lowercase
//
// `corona` additionally maps covid-19 / corona virus to "ebola" before
// tokenizing, and `swc` also drops stop words afterwards. Replacements made by
// the rules ("url", "user", VIP names, "covid-19", "corona virus", "ebola")
// are protected: later rules neither split, lowercase, nor drop them.
//
// All functions are pure and thread-safe.
namespace checkworthy::normalizer {

enum class Pipeline { kDefault, kCorona, kSwc };

std::string_view pipeline_name(Pipeline p);
// Throws UsageError for anything but "default", "corona" or "swc".
Pipeline parse_pipeline(std::string_view name);

struct NormalizedTweet {
  std::string tweet_id;
  std::vector<std::string> tokens;
  Pipeline pipeline = Pipeline::kDefault;
};

// "#TheMoreYouKnow" -> {"the", "more", "you", "know"}. Splits at
// lower->upper and letter<->digit changes, before the last capital of an
// upper-case run that continues in lower case, and at '_' / '-'. Words are
// lowercased unless they are all-caps with at least two letters.
std::vector<std::string> split_hashtag(std::string_view hashtag);

// Individual rules on plain text. Replacements are separated from adjacent
// text by a space.
std::string replace_urls(std::string_view text);
std::string replace_mentions(std::string_view text, const corpus::VipTable& vip);
std::string unify_covid(std::string_view text);
std::string strip_trailing_hashtags(std::string_view text);
std::string expand_quantities(std::string_view text);
std::string strip_punctuation(std::string_view text);
std::string corona_swap(std::string_view text);

class StopWords {
 public:
  StopWords(std::unordered_set<std::string> stop, std::unordered_set<std::string> keep);

  // Bundled English list and pronoun keep-set.
  static const StopWords& bundled();

  bool removes(std::string_view token) const;
  std::size_t list_size() const { return stop_.size(); }
  const std::unordered_set<std::string>& keep() const { return keep_; }

 private:
  std::unordered_set<std::string> stop_;
  std::unordered_set<std::string> keep_;
};

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const StopWords& words = StopWords::bundled());

std::vector<std::string> normalize_text(std::string_view text, Pipeline pipeline,
                                        const corpus::VipTable& vip);
NormalizedTweet normalize(const corpus::Tweet& tweet, Pipeline pipeline,
                          const corpus::VipTable& vip);

std::string detokenize(std::span<const std::string> tokens);

// True for tokens that keep their case: at least two ASCII letters and no
// lower-case ASCII letter.
bool is_acronym(std::string_view token);

}  // namespace checkworthy::normalizer

#endif  // CHECKWORTHY_NORMALIZER_H_
