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

#include "checkworthy/hypersearch.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "checkworthy/common.h"
#include "checkworthy/ranking_eval.h"
#include "parallel.h"

namespace checkworthy::hypersearch {

using models::Kernel;
using models::LogRegConfig;
using models::ModelConfig;
using models::Solver;
using models::SvmConfig;
using nlohmann::json;

std::string_view model_kind_name(ModelKind kind) { return kind == ModelKind::kSvm ? "svm" : "logreg"; }

ModelKind parse_model_kind(std::string_view name) {
  if (name == "svm") return ModelKind::kSvm;
  if (name == "logreg") return ModelKind::kLogReg;
  throw UsageError("unknown model kind '" + std::string(name) + "' (expected svm or logreg)");
}

SearchSpace SearchSpace::defaults(ModelKind kind) {
  SearchSpace s;
  s.model_kind = kind;
  s.n_iter = kind == ModelKind::kSvm ? 1000 : 1250;
  return s;
}

void SearchSpace::validate() const {
  if (n_iter < 1) throw UsageError("search needs at least one iteration");
  if (!(gamma_shape > 0.0) || !(gamma_rate > 0.0)) throw UsageError("Gamma shape and rate must be positive");
  if (kernels.empty() || solvers.empty()) throw UsageError("search space has an empty choice list");
  if (degree_min < 1 || degree_max < degree_min) throw UsageError("bad polynomial degree range");
}

double sample_gamma(Rng& rng, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) throw UsageError("Gamma shape and rate must be positive");
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a + 1) * U^(1/a).
    const double u = 1.0 - rng.uniform01();
    return sample_gamma(rng, shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = rng.normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = 1.0 - rng.uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return d * v / rate;
    }
  }
}

ModelConfig sample_config(Rng& rng, const SearchSpace& space) {
  space.validate();
  if (space.model_kind == ModelKind::kSvm) {
    SvmConfig c;
    c.kernel = space.kernels[rng.uniform_index(space.kernels.size())];
    c.C = sample_gamma(rng, space.gamma_shape, space.gamma_rate);
    const double gamma = sample_gamma(rng, space.gamma_shape, space.gamma_rate);
    const auto span = static_cast<std::uint64_t>(space.degree_max - space.degree_min + 1);
    const int degree = space.degree_min + static_cast<int>(rng.uniform_index(span));
    if (c.kernel != Kernel::kLinear) c.gamma = gamma;
    if (c.kernel == Kernel::kPoly) c.degree = degree;
    return c;
  }
  LogRegConfig c;
  c.C = sample_gamma(rng, space.gamma_shape, space.gamma_rate);
  c.solver = space.solvers[rng.uniform_index(space.solvers.size())];
  return c;
}

Trial cross_validate(const ModelConfig& config, const features::FeatureMatrix& features,
                     std::span<const int> labels, std::span<const int> folds) {
  features.validate();
  const auto n = static_cast<std::size_t>(features.rows());
  if (labels.size() != n || folds.size() != n) throw DataError("labels and folds must match the feature rows");
  const int k = folds.empty() ? 0 : *std::max_element(folds.begin(), folds.end()) + 1;
  if (k < 2) throw UsageError("cross-validation needs at least two folds");

  Trial trial;
  trial.config = config;
  try {
    for (int f = 0; f < k; ++f) {
      std::vector<Eigen::Index> train_rows, test_rows;
      for (std::size_t i = 0; i < n; ++i) {
        if (folds[i] < 0) throw DataError("negative fold index");
        (folds[i] == f ? test_rows : train_rows).push_back(static_cast<Eigen::Index>(i));
      }
      if (test_rows.empty()) throw DataError("fold " + std::to_string(f) + " is empty");
      Matrix X_train(static_cast<Eigen::Index>(train_rows.size()), features.cols());
      std::vector<int> y_train;
      for (std::size_t r = 0; r < train_rows.size(); ++r) {
        X_train.row(static_cast<Eigen::Index>(r)) = features.values.row(train_rows[r]);
        y_train.push_back(labels[static_cast<std::size_t>(train_rows[r])]);
      }
      Matrix X_test(static_cast<Eigen::Index>(test_rows.size()), features.cols());
      for (std::size_t r = 0; r < test_rows.size(); ++r) {
        X_test.row(static_cast<Eigen::Index>(r)) = features.values.row(test_rows[r]);
      }
      const models::TrainedModel model = models::train(config, X_train, y_train);
      const Vector scores = models::predict(model, X_test);
      std::map<std::string, double> fold_scores;
      std::map<std::string, int> fold_gold;
      for (std::size_t r = 0; r < test_rows.size(); ++r) {
        const auto& id = features.row_ids[static_cast<std::size_t>(test_rows[r])];
        fold_scores[id] = scores[static_cast<Eigen::Index>(r)];
        fold_gold[id] = labels[static_cast<std::size_t>(test_rows[r])];
      }
      const auto kind = models::scores_are_probabilities(model) ? ranking_eval::ScoreKind::kProbability
                                                                : ranking_eval::ScoreKind::kMargin;
      const auto report = ranking_eval::evaluate(fold_scores, fold_gold, kind);
      trial.per_fold_map.push_back(report.map);
      trial.per_fold_macro_f1.push_back(report.macro_f1.value_or(0.0));
    }
  } catch (const Error& e) {
    trial.failed = true;
    trial.error = e.what();
    trial.per_fold_map.clear();
    trial.per_fold_macro_f1.clear();
    return trial;
  }
  double map_sum = 0.0, f1_sum = 0.0;
  for (int f = 0; f < k; ++f) {
    map_sum += trial.per_fold_map[static_cast<std::size_t>(f)];
    f1_sum += trial.per_fold_macro_f1[static_cast<std::size_t>(f)];
  }
  trial.mean_map = map_sum / k;
  trial.mean_macro_f1 = f1_sum / k;
  return trial;
}

int select_best(std::span<const Trial> trials) {
  int best = -1;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const Trial& t = trials[i];
    if (t.failed) continue;
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const Trial& b = trials[static_cast<std::size_t>(best)];
    if (t.mean_map > b.mean_map || (t.mean_map == b.mean_map && t.mean_macro_f1 > b.mean_macro_f1)) {
      best = static_cast<int>(i);
    }
  }
  if (best < 0) {
    std::string msg = "every search trial failed";
    if (!trials.empty()) msg += "; first error: " + trials.front().error;
    throw NumericalError(msg);
  }
  return best;
}

SearchResult evaluate_configs(std::span<const ModelConfig> configs, const features::FeatureMatrix& features,
                              std::span<const int> labels, std::span<const int> folds, std::uint64_t seed,
                              unsigned threads) {
  SearchResult result;
  result.trials.resize(configs.size());
  internal::parallel_for(configs.size(), threads, [&](std::size_t i) {
    Trial t = cross_validate(configs[i], features, labels, folds);
    t.index = static_cast<int>(i);
    t.seed = derive_seed(seed, i);
    result.trials[i] = std::move(t);
  });
  result.best = select_best(result.trials);
  return result;
}

SearchResult random_search(const SearchSpace& space, const features::FeatureMatrix& features,
                           std::span<const int> labels, std::span<const int> folds, std::uint64_t seed,
                           unsigned threads) {
  space.validate();
  std::vector<ModelConfig> configs;
  configs.reserve(static_cast<std::size_t>(space.n_iter));
  for (int i = 0; i < space.n_iter; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    configs.push_back(sample_config(rng, space));
  }
  return evaluate_configs(configs, features, labels, folds, seed, threads);
}

namespace {

json config_json(const ModelConfig& config) {
  json j;
  if (const auto* lr = std::get_if<LogRegConfig>(&config)) {
    j["model"] = "logreg";
    j["C"] = lr->C;
    j["solver"] = std::string(models::solver_name(lr->solver));
    j["max_iter"] = lr->max_iter;
    j["tol"] = lr->tol;
    return j;
  }
  const auto& svm = std::get<SvmConfig>(config);
  j["model"] = "svm";
  j["kernel"] = std::string(models::kernel_name(svm.kernel));
  j["C"] = svm.C;
  if (svm.gamma) j["gamma"] = *svm.gamma;
  j["degree"] = svm.degree;
  j["coef0"] = svm.coef0;
  j["tol"] = svm.tol;
  return j;
}

double positive(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw DataError(std::string("config field '") + key + "' must be a number");
  const double v = j[key].get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw DataError(std::string("config field '") + key + "' must be positive");
  return v;
}

}  // namespace

std::string config_to_json(const ModelConfig& config) { return config_json(config).dump(); }

namespace {

ModelConfig config_from(const json& j) {
  if (!j.is_object() || !j.contains("model") || !j["model"].is_string()) {
    throw DataError("config must be a JSON object with a \"model\" field");
  }
  const auto kind = j["model"].get<std::string>();
  if (kind == "logreg") {
    LogRegConfig c;
    c.C = positive(j, "C", c.C);
    if (j.contains("solver")) c.solver = models::parse_solver(j["solver"].get<std::string>());
    c.max_iter = static_cast<int>(positive(j, "max_iter", c.max_iter));
    c.tol = positive(j, "tol", c.tol);
    return c;
  }
  if (kind == "svm") {
    SvmConfig c;
    if (j.contains("kernel")) c.kernel = models::parse_kernel(j["kernel"].get<std::string>());
    c.C = positive(j, "C", c.C);
    if (j.contains("gamma")) c.gamma = positive(j, "gamma", 1.0);
    c.degree = static_cast<int>(positive(j, "degree", c.degree));
    if (j.contains("coef0")) c.coef0 = j["coef0"].get<double>();
    c.tol = positive(j, "tol", c.tol);
    return c;
  }
  throw DataError("config model must be svm or logreg, got '" + kind + "'");
}

}  // namespace

ModelConfig config_from_json(std::string_view text) {
  try {
    return config_from(json::parse(text));
  } catch (const json::exception& e) {
    throw DataError(std::string("bad config: ") + e.what());
  }
}

std::string format_trial_log(std::span<const Trial> trials) {
  std::string out;
  for (const Trial& t : trials) {
    json j;
    j["trial"] = t.index;
    j["seed"] = t.seed;
    j["config"] = config_json(t.config);
    j["per_fold_map"] = t.per_fold_map;
    j["per_fold_macro_f1"] = t.per_fold_macro_f1;
    j["mean_map"] = t.mean_map;
    j["mean_macro_f1"] = t.mean_macro_f1;
    j["failed"] = t.failed;
    if (t.failed) j["error"] = t.error;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace checkworthy::hypersearch
