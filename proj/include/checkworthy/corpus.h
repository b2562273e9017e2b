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

#ifndef CHECKWORTHY_CORPUS_H_
#define CHECKWORTHY_CORPUS_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "checkworthy/linalg.h"

// Data model, loaders, and writers for everything the pipeline reads or
// emits. Loaded tables are immutable after construction and can be shared
// across threads.
namespace checkworthy::corpus {

using Timestamp = std::chrono::sys_seconds;

// Accepts `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM:SS[.frac]` with an optional `Z` or
// `+00:00` suffix. Throws DataError on anything else.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

struct Tweet {
  std::string tweet_id;
  std::string topic_id;
  std::string text;
  std::optional<int> label;  // 1 = check-worthy
  bool verified = false;
  std::int64_t friends_count = 0;
  std::optional<Timestamp> created_at;
  std::int64_t retweet_count = 0;
  std::vector<std::string> urls;
};

class Dataset {
 public:
  Dataset() = default;
  // Throws DataError on duplicate ids or a tweet created after
  // `collection_date`.
  Dataset(std::vector<Tweet> tweets, Timestamp collection_date);

  const std::vector<Tweet>& tweets() const { return tweets_; }
  std::size_t size() const { return tweets_.size(); }
  bool empty() const { return tweets_.empty(); }
  Timestamp collection_date() const { return collection_date_; }

  const Tweet* find(std::string_view tweet_id) const;
  const Tweet& at(std::string_view tweet_id) const;

  // Labels in dataset order; throws DataError if any tweet is unlabeled.
  std::vector<int> labels() const;
  std::vector<std::string> ids() const;

 private:
  std::vector<Tweet> tweets_;
  Timestamp collection_date_{};
  std::unordered_map<std::string, std::size_t> index_;
};

// One JSON object per line. When `collection_date` is absent the latest
// `created_at` in the file is used (epoch if no tweet carries one).
Dataset load_tweets(const std::filesystem::path& path,
                    std::optional<Timestamp> collection_date = std::nullopt);
Dataset parse_tweets(std::string_view content,
                     std::optional<Timestamp> collection_date = std::nullopt);

// Keyed fixed-length vectors: word vectors keyed by token, or precomputed
// sentence vectors keyed by tweet id.
class KeyedVectors {
 public:
  KeyedVectors() = default;
  explicit KeyedVectors(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  const Vector* find(std::string_view key) const;
  // Replaces an existing entry. Throws DataError on a dimension mismatch.
  void insert(std::string key, Vector v);

  const std::unordered_map<std::string, Vector>& entries() const { return entries_; }

 private:
  int dim_ = 0;
  std::unordered_map<std::string, Vector> entries_;
};

using VectorTable = KeyedVectors;
using PrecomputedVectors = KeyedVectors;

// `key v1 ... vd` per line, space separated, no header. Later duplicates
// overwrite earlier ones (with a warning). An empty file is an error.
VectorTable load_word_vectors(const std::filesystem::path& path);
PrecomputedVectors load_precomputed_vectors(const std::filesystem::path& path);
KeyedVectors parse_vectors(std::string_view content, std::string_view what);

enum class Factuality {
  kVeryHigh,
  kHigh,
  kMostlyFactual,
  kMixed,
  kLow,
  kFakeNews,
  kConspiracy,
};
inline constexpr int kFactualityLevels = 7;

// Canonical snake_case names, in enum order.
const std::array<std::string_view, kFactualityLevels>& factuality_names();
// Accepts the canonical names and their spaced/hyphenated variants
// ("mostly factual", "fake-news"), case-insensitively.
Factuality parse_factuality(std::string_view label);

// Scheme, `www.`, port, path, and query stripped; lowercased.
std::string registered_domain(std::string_view url);

class FactualityTable {
 public:
  void insert(std::string domain, Factuality level);
  std::size_t size() const { return entries_.size(); }
  // Exact host first, then each parent domain with at least two labels.
  std::optional<Factuality> lookup_url(std::string_view url) const;
  std::optional<Factuality> lookup_domain(std::string_view domain) const;

 private:
  std::unordered_map<std::string, Factuality> entries_;
};

class VipTable {
 public:
  // Throws DataError on an empty phrase or one containing characters other
  // than letters, digits, spaces, hyphens and apostrophes.
  void insert(std::string_view handle, std::string phrase);
  const std::string* find(std::string_view handle) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;  // lowercase handle -> phrase
};

// Two-column comma-separated files; `#` comment lines and blank lines skipped.
FactualityTable load_factuality_table(const std::filesystem::path& path);
FactualityTable parse_factuality_table(std::string_view content);
VipTable load_vip_table(const std::filesystem::path& path);
VipTable parse_vip_table(std::string_view content);
// The three handles shipped with the toolkit.
const VipTable& default_vip_table();

struct FoldAssignment {
  int k = 0;
  std::unordered_map<std::string, int> fold_of;

  // Fold index per id, in the given order. Throws DataError on unknown ids.
  std::vector<int> folds_for(const std::vector<std::string>& ids) const;
};

// Positives and negatives are shuffled separately and dealt round-robin, the
// negatives continuing where the positives stopped, so fold sizes and
// per-fold positive counts each differ by at most one.
FoldAssignment stratified_kfold(const Dataset& dataset, int k, std::uint64_t seed);

// Run files: `topic_id<TAB>tweet_id<TAB>score<TAB>run_id`, score with six
// decimals, sorted by descending score then ascending tweet id.
struct RunRow {
  std::string topic_id;
  std::string tweet_id;
  double score = 0.0;
  std::string run_id;
};

// Ranking order used everywhere: descending score, ties by ascending id.
std::vector<std::string> rank_ids(const std::map<std::string, double>& scores);

std::string format_run(std::string_view run_id, const std::map<std::string, double>& scores,
                       std::string_view topic_id);
void write_run_file(const std::filesystem::path& path, std::string_view run_id,
                    const std::map<std::string, double>& scores, std::string_view topic_id);
// Rows in file order.
std::vector<RunRow> parse_run(std::string_view content);
std::vector<RunRow> read_run_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace checkworthy::corpus

#endif  // CHECKWORTHY_CORPUS_H_
