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

#include "checkworthy/ensemble.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "checkworthy/common.h"
#include "parallel.h"

namespace checkworthy::ensemble {

ScoreFile load_score_file(const std::filesystem::path& path) {
  ScoreFile out;
  out.name = path.stem().string();
  const auto rows = corpus::read_run_file(path);
  if (!rows.empty()) out.name = rows.front().run_id;
  for (const auto& row : rows) {
    if (!out.scores.emplace(row.tweet_id, row.score).second) {
      throw DataError(path.string() + ": tweet " + row.tweet_id + " scored twice");
    }
  }
  return out;
}

void save_score_file(const std::filesystem::path& path, const ScoreFile& file, std::string_view topic_id) {
  corpus::write_run_file(path, file.name, file.scores, topic_id);
}

ScoreFile average_runs(std::span<const ScoreFile> files) {
  if (files.empty()) throw UsageError("nothing to average");
  std::set<std::string> all, shared;
  for (const auto& [id, s] : files.front().scores) shared.insert(id);
  for (const auto& f : files) {
    std::set<std::string> next;
    for (const auto& [id, s] : f.scores) {
      all.insert(id);
      if (shared.count(id)) next.insert(id);
    }
    shared = std::move(next);
  }
  if (shared.size() != all.size()) {
    std::string msg = "score files cover different tweets; not in every file:";
    int listed = 0;
    for (const auto& id : all) {
      if (shared.count(id)) continue;
      if (++listed > 20) {
        msg += " ...";
        break;
      }
      msg += " " + id;
    }
    throw DataError(msg);
  }
  ScoreFile out;
  out.name = "avg";
  for (std::size_t i = 0; i < files.size(); ++i) out.name += (i == 0 ? "(" : "+") + files[i].name;
  out.name += ")";
  for (const auto& id : all) {
    // Running mean, exact when every file agrees.
    double mean = 0.0;
    for (std::size_t i = 0; i < files.size(); ++i) {
      mean += (files[i].scores.at(id) - mean) / static_cast<double>(i + 1);
    }
    out.scores[id] = mean;
  }
  return out;
}

ScoreFile oof_scores(const models::ModelConfig& config, const features::FeatureMatrix& features,
                     std::span<const int> labels, std::span<const int> folds, unsigned threads) {
  features.validate();
  const std::size_t n = features.rows();
  if (labels.size() != n || folds.size() != n) throw DataError("labels and folds must match the feature rows");
  if (n == 0) throw DataError("no rows to score");
  if (*std::min_element(folds.begin(), folds.end()) < 0) throw DataError("negative fold index");
  const int k = *std::max_element(folds.begin(), folds.end()) + 1;
  if (k < 2) throw UsageError("out-of-fold scoring needs at least two folds");

  std::vector<double> scores(n);
  internal::parallel_for(static_cast<std::size_t>(k), threads, [&](std::size_t f) {
    std::vector<Eigen::Index> train_rows, test_rows;
    for (std::size_t i = 0; i < n; ++i) {
      (folds[i] == static_cast<int>(f) ? test_rows : train_rows).push_back(static_cast<Eigen::Index>(i));
    }
    if (test_rows.empty()) throw DataError("fold " + std::to_string(f) + " is empty");
    Matrix X_train(static_cast<Eigen::Index>(train_rows.size()), features.values.cols());
    std::vector<int> y_train;
    for (std::size_t r = 0; r < train_rows.size(); ++r) {
      X_train.row(static_cast<Eigen::Index>(r)) = features.values.row(train_rows[r]);
      y_train.push_back(labels[static_cast<std::size_t>(train_rows[r])]);
    }
    Matrix X_test(static_cast<Eigen::Index>(test_rows.size()), features.values.cols());
    for (std::size_t r = 0; r < test_rows.size(); ++r) X_test.row(static_cast<Eigen::Index>(r)) = features.values.row(test_rows[r]);
    const Vector s = models::predict(models::train(config, X_train, y_train), X_test);
    for (std::size_t r = 0; r < test_rows.size(); ++r) {
      scores[static_cast<std::size_t>(test_rows[r])] = s[static_cast<Eigen::Index>(r)];
    }
  });
  ScoreFile out;
  out.name = "oof";
  for (std::size_t i = 0; i < n; ++i) out.scores[features.row_ids[i]] = scores[i];
  return out;
}

void StackedDesign::validate() const {
  if (upstream.empty()) throw UsageError("stacking needs at least one upstream score file");
  if (metadata_columns != features::kBooleanMetadataColumns && metadata_columns != features::kMetadataColumns) {
    throw UsageError("stacking uses either the 9 boolean or all 12 metadata features");
  }
}

std::vector<std::string> StackedDesign::column_names() const {
  std::vector<std::string> out;
  for (const auto& u : upstream) out.push_back("upstream:" + u);
  const auto& meta = features::metadata_columns();
  for (int j = 0; j < metadata_columns; ++j) out.emplace_back(meta[static_cast<std::size_t>(j)]);
  return out;
}

features::FeatureMatrix stacked_matrix(const StackedDesign& design, std::span<const ScoreFile> upstream,
                                       const corpus::Dataset& tweets, const corpus::FactualityTable& fact) {
  design.validate();
  if (upstream.size() != design.upstream.size()) {
    throw DataError("stacker expects " + std::to_string(design.upstream.size()) + " upstream score files, got " +
                    std::to_string(upstream.size()));
  }
  for (std::size_t u = 0; u < upstream.size(); ++u) {
    if (upstream[u].name != design.upstream[u]) {
      throw DataError("upstream column " + std::to_string(u + 1) + " should be '" + design.upstream[u] +
                      "', got '" + upstream[u].name + "'");
    }
  }
  std::vector<std::string> ids;
  for (const auto& [id, s] : upstream.front().scores) {
    bool everywhere = true;
    for (const auto& f : upstream) everywhere = everywhere && f.scores.count(id);
    if (everywhere) ids.push_back(id);
  }
  features::FeatureMatrix out;
  out.column_names = design.column_names();
  out.values.resize(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(out.column_names.size()));
  const auto n_up = static_cast<Eigen::Index>(upstream.size());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    const corpus::Tweet* tweet = tweets.find(ids[r]);
    if (tweet == nullptr) throw DataError("no tweet record (metadata source) for " + ids[r]);
    const auto row = static_cast<Eigen::Index>(r);
    for (Eigen::Index u = 0; u < n_up; ++u) {
      out.values(row, u) = upstream[static_cast<std::size_t>(u)].scores.at(ids[r]);
    }
    const Vector meta = features::extract_metadata(*tweet, fact, tweets.collection_date());
    out.values.row(row).segment(n_up, design.metadata_columns) = meta.head(design.metadata_columns).transpose();
  }
  out.row_ids = std::move(ids);
  out.validate();
  return out;
}

Stacker fit_stacker(const StackedDesign& design, std::span<const ScoreFile> upstream,
                    const corpus::Dataset& tweets, const corpus::FactualityTable& fact,
                    const models::ModelConfig& config) {
  const features::FeatureMatrix all = stacked_matrix(design, upstream, tweets, fact);
  std::vector<std::string> labeled;
  std::vector<int> labels;
  for (const auto& t : tweets.tweets()) {
    if (!t.label) continue;
    labeled.push_back(t.tweet_id);
    labels.push_back(*t.label);
  }
  if (labeled.empty()) throw DataError("stacker needs labeled tweets");
  std::vector<std::string> uncovered;
  for (const auto& id : labeled) {
    if (!std::binary_search(all.row_ids.begin(), all.row_ids.end(), id)) uncovered.push_back(id);
  }
  if (!uncovered.empty()) {
    std::string msg = std::to_string(uncovered.size()) + " labeled tweets lack an upstream score, e.g.";
    for (std::size_t i = 0; i < uncovered.size() && i < 5; ++i) msg += " " + uncovered[i];
    throw DataError(msg);
  }
  const features::FeatureMatrix train = all.select(labeled);
  return Stacker{design, models::train(config, train.values, labels)};
}

ScoreFile predict_stacked(const Stacker& stacker, std::span<const ScoreFile> upstream,
                          const corpus::Dataset& tweets, const corpus::FactualityTable& fact, std::string name) {
  const features::FeatureMatrix m = stacked_matrix(stacker.design, upstream, tweets, fact);
  const Vector s = models::predict(stacker.model, m.values);
  ScoreFile out;
  out.name = std::move(name);
  for (std::size_t r = 0; r < m.rows(); ++r) out.scores[m.row_ids[r]] = s[static_cast<Eigen::Index>(r)];
  return out;
}

}  // namespace checkworthy::ensemble
