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

#ifndef CHECKWORTHY_HYPERSEARCH_H_
#define CHECKWORTHY_HYPERSEARCH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "checkworthy/features.h"
#include "checkworthy/models.h"
#include "checkworthy/random.h"

// Randomized hyperparameter search scored by k-fold cross-validated MAP.
namespace checkworthy::hypersearch {

enum class ModelKind { kSvm, kLogReg };

std::string_view model_kind_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct SearchSpace {
  ModelKind model_kind = ModelKind::kSvm;
  double gamma_shape = 2.0;
  double gamma_rate = 1.0;
  std::vector<models::Kernel> kernels = {models::Kernel::kLinear, models::Kernel::kPoly, models::Kernel::kRbf};
  int degree_min = 2;
  int degree_max = 5;
  std::vector<models::Solver> solvers = {models::Solver::kGradientDescent, models::Solver::kNewton};
  int n_iter = 1000;

  // 1000 trials for SVMs, 1250 for logistic regression.
  static SearchSpace defaults(ModelKind kind);
  void validate() const;
};

// One draw from Gamma(shape, rate), density proportional to
// x^(shape-1) exp(-rate x) (Marsaglia-Tsang). Always strictly positive.
double sample_gamma(Rng& rng, double shape, double rate);

// SVM draws consume kernel, C, gamma and degree in that order whatever the
// kernel; logistic regression draws consume C then solver.
models::ModelConfig sample_config(Rng& rng, const SearchSpace& space);

struct Trial {
  int index = 0;
  std::uint64_t seed = 0;
  models::ModelConfig config;
  std::vector<double> per_fold_map;
  std::vector<double> per_fold_macro_f1;
  double mean_map = 0.0;
  double mean_macro_f1 = 0.0;
  bool failed = false;
  std::string error;
};

// `labels` and `folds` are aligned with the rows of `features`; fold indices
// run from 0 to k-1 and every fold must be non-empty. A training failure on
// any fold marks the trial failed instead of throwing.
Trial cross_validate(const models::ModelConfig& config, const features::FeatureMatrix& features,
                     std::span<const int> labels, std::span<const int> folds);

struct SearchResult {
  std::vector<Trial> trials;  // in trial-index order
  int best = -1;              // index into trials
};

// Highest mean MAP among non-failed trials, then higher mean macro-F1, then
// lower index. Throws NumericalError when every trial failed.
int select_best(std::span<const Trial> trials);

// Trial i samples its configuration from Rng(derive_seed(seed, i)), so the
// result does not depend on `threads` (0 means one per hardware thread).
SearchResult random_search(const SearchSpace& space, const features::FeatureMatrix& features,
                           std::span<const int> labels, std::span<const int> folds, std::uint64_t seed,
                           unsigned threads = 0);

// Evaluates caller-supplied configurations with the same machinery.
SearchResult evaluate_configs(std::span<const models::ModelConfig> configs,
                              const features::FeatureMatrix& features, std::span<const int> labels,
                              std::span<const int> folds, std::uint64_t seed, unsigned threads = 0);

// Config fragments are JSON objects such as
// {"model":"svm","kernel":"rbf","C":1.5,"gamma":0.8,"degree":3}.
std::string config_to_json(const models::ModelConfig& config);
models::ModelConfig config_from_json(std::string_view text);

// One JSON object per line, in trial order.
std::string format_trial_log(std::span<const Trial> trials);

}  // namespace checkworthy::hypersearch

#endif  // CHECKWORTHY_HYPERSEARCH_H_
