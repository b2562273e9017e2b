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

#ifndef CHECKWORTHY_FEATURES_H_
#define CHECKWORTHY_FEATURES_H_

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "checkworthy/corpus.h"
#include "checkworthy/linalg.h"

namespace checkworthy::features {

using Doc = std::vector<std::string>;

// Dense features, one row per tweet.
struct FeatureMatrix {
  std::vector<std::string> row_ids;
  Matrix values;
  std::vector<std::string> column_names;

  std::size_t rows() const { return row_ids.size(); }
  std::size_t cols() const { return column_names.size(); }

  // Throws DataError when shapes disagree or a value is not finite.
  void validate() const;

  // Rows reordered to `ids`; throws DataError on an id this matrix lacks.
  FeatureMatrix select(std::span<const std::string> ids) const;
};

class TfidfModel {
 public:
  TfidfModel() = default;
  TfidfModel(std::vector<std::string> terms, std::vector<int> df, int n_docs);

  std::size_t size() const { return terms_.size(); }
  int n_docs() const { return n_docs_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const Vector& idf() const { return idf_; }

  std::optional<int> index_of(std::string_view term) const;
  // Smooth idf; a term outside the vocabulary is treated as df = 0.
  double idf_of(std::string_view term) const;

 private:
  std::vector<std::string> terms_;  // sorted, index = column
  std::unordered_map<std::string, int> index_;
  Vector idf_;
  int n_docs_ = 0;
};

// idf(t) = ln((1 + n) / (1 + df(t))) + 1, vocabulary in lexicographic order.
// Throws DataError when every document is empty.
TfidfModel fit_tfidf(std::span<const Doc> docs);

// Count times idf, each non-empty row scaled to unit L2 norm.
FeatureMatrix tfidf_transform(const TfidfModel& model, std::span<const Doc> docs,
                              std::vector<std::string> row_ids);

// Pooling over the tokens found in `table` (exact match first, then the
// ASCII-lowercased token). No hit gives the zero vector.
Vector pool_mean(std::span<const std::string> tokens, const corpus::VectorTable& table);
Vector pool_max(std::span<const std::string> tokens, const corpus::VectorTable& table);
// Weighted mean with weight tf(token) * idf(token), weights summing to one.
Vector pool_tfidf(std::span<const std::string> tokens, const corpus::VectorTable& table,
                  const TfidfModel& model);

enum class Pooling { kMean, kMax, kTfidf };
// `model` is required for kTfidf.
FeatureMatrix pool_matrix(std::span<const Doc> docs, std::vector<std::string> row_ids,
                          const corpus::VectorTable& table, Pooling pooling,
                          const TfidfModel* model = nullptr);

// Throws DataError "no vector for <id>".
const Vector& sentence_vector(std::string_view tweet_id, const corpus::PrecomputedVectors& store);
FeatureMatrix sentence_matrix(std::span<const std::string> ids,
                              const corpus::PrecomputedVectors& store);

inline constexpr int kMetadataColumns = 12;
inline constexpr int kBooleanMetadataColumns = 9;
const std::array<std::string_view, kMetadataColumns>& metadata_columns();

// [verified, has_url, seven factuality flags, ln_retweets, ln_friends,
// account_age_years]. A tweet without created_at has age 0.
Vector extract_metadata(const corpus::Tweet& tweet, const corpus::FactualityTable& fact,
                        corpus::Timestamp collection_date);
FeatureMatrix metadata_matrix(const corpus::Dataset& dataset, const corpus::FactualityTable& fact);

// Horizontal concatenation; row ids must match in order.
FeatureMatrix concat_features(std::span<const FeatureMatrix> parts);

// Tab-separated: `tweet_id` plus column names, then one row per tweet with
// nine significant digits.
std::string format_feature_matrix(const FeatureMatrix& m);
FeatureMatrix parse_feature_matrix(std::string_view content);
void save_feature_matrix(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix load_feature_matrix(const std::filesystem::path& path);

}  // namespace checkworthy::features

#endif  // CHECKWORTHY_FEATURES_H_
