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

#ifndef CHECKWORTHY_ENSEMBLE_H_
#define CHECKWORTHY_ENSEMBLE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "checkworthy/corpus.h"
#include "checkworthy/features.h"
#include "checkworthy/models.h"

// Score averaging, out-of-fold scoring, and the stacked meta-classifier over
// upstream scores plus tweet metadata.
namespace checkworthy::ensemble {

struct ScoreFile {
  std::string name;
  std::map<std::string, double> scores;
};

// Run-file format. The name is the run id of the first row, or the file
// stem when the file is empty.
ScoreFile load_score_file(const std::filesystem::path& path);
void save_score_file(const std::filesystem::path& path, const ScoreFile& file, std::string_view topic_id);

// Per-id arithmetic mean. Throws DataError when the id sets differ (naming
// the ids not shared by every file) or when `files` is empty.
ScoreFile average_runs(std::span<const ScoreFile> files);

// Every row is scored by the model trained on the other folds. `labels` and
// `folds` are aligned with the rows of `features`. Training failures
// propagate.
ScoreFile oof_scores(const models::ModelConfig& config, const features::FeatureMatrix& features,
                     std::span<const int> labels, std::span<const int> folds, unsigned threads = 0);

struct StackedDesign {
  std::vector<std::string> upstream;  // score-file names, in column order
  int metadata_columns = features::kMetadataColumns;  // 9 (boolean only) or 12

  void validate() const;
  std::vector<std::string> column_names() const;
};

// Rows for the tweets scored by every upstream file, in ascending id order.
// Upstream files must match the design by name and order; every row needs a
// tweet in `tweets` for its metadata.
features::FeatureMatrix stacked_matrix(const StackedDesign& design, std::span<const ScoreFile> upstream,
                                       const corpus::Dataset& tweets, const corpus::FactualityTable& fact);

struct Stacker {
  StackedDesign design;
  models::TrainedModel model;
};

// Trains on every labeled tweet in `tweets`; each must be scored by every
// upstream file.
Stacker fit_stacker(const StackedDesign& design, std::span<const ScoreFile> upstream,
                    const corpus::Dataset& tweets, const corpus::FactualityTable& fact,
                    const models::ModelConfig& config);

ScoreFile predict_stacked(const Stacker& stacker, std::span<const ScoreFile> upstream,
                          const corpus::Dataset& tweets, const corpus::FactualityTable& fact,
                          std::string name);

}  // namespace checkworthy::ensemble

#endif  // CHECKWORTHY_ENSEMBLE_H_
