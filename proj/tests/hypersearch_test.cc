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

#include <cmath>
#include <map>
#include <numeric>

#include "checkworthy/common.h"
#include "doctest.h"
#include "oracles.h"

namespace checkworthy::hypersearch {
namespace {

using models::Kernel;
using models::LogRegConfig;
using models::ModelConfig;
using models::SvmConfig;

features::FeatureMatrix as_features(const testing::Instance& inst) {
  features::FeatureMatrix fm;
  fm.values = inst.X;
  for (Eigen::Index i = 0; i < inst.X.rows(); ++i) fm.row_ids.push_back("t" + std::to_string(1000 + i));
  for (Eigen::Index j = 0; j < inst.X.cols(); ++j) fm.column_names.push_back("x" + std::to_string(j));
  return fm;
}

std::vector<int> round_robin_folds(std::size_t n, int k) {
  std::vector<int> folds(n);
  for (std::size_t i = 0; i < n; ++i) folds[i] = static_cast<int>(i % static_cast<std::size_t>(k));
  return folds;
}

TEST_CASE("Gamma(2,1) moments") {
  Rng rng(42);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  bool all_positive = true;
  for (int i = 0; i < n; ++i) {
    const double x = sample_gamma(rng, 2.0, 1.0);
    all_positive = all_positive && x > 0.0;
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = (sum_sq - n * mean * mean) / (n - 1);
  CHECK(all_positive);
  CHECK(std::abs(mean - 2.0) <= 0.03);
  CHECK(std::abs(var - 2.0) <= 0.06);
}

TEST_CASE("Gamma(2,1) matches its CDF") {
  // Kolmogorov-Smirnov against F(x) = 1 - exp(-x)(1 + x).
  Rng rng(7);
  const int n = 20000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = sample_gamma(rng, 2.0, 1.0);
  std::sort(xs.begin(), xs.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = 1.0 - std::exp(-xs[i]) * (1.0 + xs[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
  }
  // 0.1% critical value.
  CHECK(d < 1.95 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("Gamma with other shapes and rates") {
  Rng rng(3);
  for (const auto& [shape, rate] : std::vector<std::pair<double, double>>{{0.5, 2.0}, {1.0, 1.0}, {7.5, 0.5}}) {
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = sample_gamma(rng, shape, rate);
      REQUIRE(x > 0.0);
      sum += x;
    }
    const double mean = shape / rate;
    const double sd = std::sqrt(shape) / rate;
    CHECK(std::abs(sum / n - mean) <= 5.0 * sd / std::sqrt(static_cast<double>(n)));
  }
  CHECK_THROWS_AS(sample_gamma(rng, 0.0, 1.0), UsageError);
  CHECK_THROWS_AS(sample_gamma(rng, 1.0, -1.0), UsageError);
}

TEST_CASE("sampled kernels, degrees and solvers are uniform") {
  Rng rng(11);
  const auto space = SearchSpace::defaults(ModelKind::kSvm);
  std::map<Kernel, int> kernels;
  std::map<int, int> degrees;
  int poly = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto c = std::get<SvmConfig>(sample_config(rng, space));
    ++kernels[c.kernel];
    CHECK(c.C > 0.0);
    CHECK(c.gamma.has_value() == (c.kernel != Kernel::kLinear));
    if (c.gamma) CHECK(*c.gamma > 0.0);
  }
  for (const auto& [k, count] : kernels) CHECK(std::abs(count / 10000.0 - 1.0 / 3.0) <= 0.02);
  CHECK(kernels.size() == 3);
  while (poly < 10000) {
    const auto c = std::get<SvmConfig>(sample_config(rng, space));
    if (c.kernel != Kernel::kPoly) continue;
    ++poly;
    ++degrees[c.degree];
  }
  CHECK(degrees.size() == 4);
  for (const auto& [d, count] : degrees) {
    CHECK(d >= 2);
    CHECK(d <= 5);
    CHECK(std::abs(count / 10000.0 - 0.25) <= 0.02);
  }

  const auto lr_space = SearchSpace::defaults(ModelKind::kLogReg);
  CHECK(lr_space.n_iter == 1250);
  CHECK(space.n_iter == 1000);
  int newton = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto c = std::get<LogRegConfig>(sample_config(rng, lr_space));
    newton += c.solver == models::Solver::kNewton;
    CHECK(c.C > 0.0);
  }
  CHECK(std::abs(newton / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("same seed gives the same configurations") {
  const auto space = SearchSpace::defaults(ModelKind::kSvm);
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(config_to_json(sample_config(a, space)) == config_to_json(sample_config(b, space)));
}

TEST_CASE("cross-validation on separable data") {
  Rng rng(21);
  const auto inst = testing::separable_instance(rng, 40, 3, 1.0);
  const auto fm = as_features(inst);
  const auto folds = round_robin_folds(40, 5);
  const Trial t = cross_validate(SvmConfig{.kernel = Kernel::kLinear, .C = 10.0}, fm, inst.labels, folds);
  REQUIRE_FALSE(t.failed);
  CHECK(t.per_fold_map.size() == 5);
  CHECK(t.mean_map == 1.0);
  CHECK(t.mean_macro_f1 == 1.0);
  const Trial lr = cross_validate(LogRegConfig{}, fm, inst.labels, folds);
  CHECK(lr.mean_map == 1.0);
  CHECK(lr.mean_map == doctest::Approx(std::accumulate(lr.per_fold_map.begin(), lr.per_fold_map.end(), 0.0) / 5));
}

TEST_CASE("a fold that cannot be trained marks the trial failed") {
  Rng rng(22);
  const auto inst = testing::separable_instance(rng, 20, 2, 1.0);
  const auto fm = as_features(inst);
  // Fold 0 holds every positive, so its training set has one class.
  std::vector<int> folds(20);
  for (int i = 0; i < 20; ++i) folds[i] = inst.labels[i] == 1 ? 0 : 1;
  const Trial t = cross_validate(LogRegConfig{}, fm, inst.labels, folds);
  CHECK(t.failed);
  CHECK_FALSE(t.error.empty());
  CHECK(t.per_fold_map.empty());
  const std::vector<int> one_fold(20, 0);
  CHECK_THROWS_AS(cross_validate(LogRegConfig{}, fm, inst.labels, one_fold), UsageError);
}

TEST_CASE("best selection") {
  std::vector<Trial> trials(4);
  trials[0].mean_map = 0.7;
  trials[1].mean_map = 0.9;
  trials[1].mean_macro_f1 = 0.4;
  trials[2].mean_map = 0.9;
  trials[2].mean_macro_f1 = 0.6;
  trials[3].mean_map = 1.0;
  trials[3].failed = true;
  CHECK(select_best(trials) == 2);
  trials[1].mean_macro_f1 = 0.6;
  CHECK(select_best(trials) == 1);
  for (auto& t : trials) t.failed = true;
  CHECK_THROWS_AS(select_best(trials), NumericalError);
}

TEST_CASE("random search") {
  Rng rng(23);
  const auto inst = testing::random_instance(rng, 60, 3);
  const auto fm = as_features(inst);
  const auto folds = round_robin_folds(60, 3);

  auto space = SearchSpace::defaults(ModelKind::kSvm);
  space.n_iter = 1;
  const auto single = random_search(space, fm, inst.labels, folds, 42, 1);
  CHECK(single.trials.size() == 1);
  CHECK(single.best == 0);

  space.n_iter = 12;
  const auto serial = random_search(space, fm, inst.labels, folds, 42, 1);
  const auto threaded = random_search(space, fm, inst.labels, folds, 42, 4);
  CHECK(format_trial_log(serial.trials) == format_trial_log(threaded.trials));
  CHECK(serial.best == threaded.best);
  for (const auto& t : serial.trials) {
    if (!t.failed) CHECK(serial.trials[static_cast<std::size_t>(serial.best)].mean_map >= t.mean_map);
  }
  const auto other = random_search(space, fm, inst.labels, folds, 43, 4);
  CHECK(format_trial_log(serial.trials) != format_trial_log(other.trials));

  auto lr_space = SearchSpace::defaults(ModelKind::kLogReg);
  lr_space.n_iter = 4;
  CHECK_NOTHROW(random_search(lr_space, fm, inst.labels, folds, 1, 2));
}

TEST_CASE("an injected perfect configuration wins") {
  Rng rng(24);
  const auto inst = testing::separable_instance(rng, 30, 3, 1.0);
  auto fm = as_features(inst);
  const auto folds = round_robin_folds(30, 3);
  // Scramble all but the first column so only linear models on x0 can rank
  // perfectly.
  Matrix X = inst.X;
  for (Eigen::Index i = 0; i < X.rows(); ++i) X(i, 0) = inst.y[i] * (1.0 + 0.1 * i);
  fm.values = X;
  std::vector<ModelConfig> configs;
  Rng cfg_rng(2);
  for (int i = 0; i < 5; ++i) configs.push_back(sample_config(cfg_rng, SearchSpace::defaults(ModelKind::kSvm)));
  configs.push_back(SvmConfig{.kernel = Kernel::kLinear, .C = 100.0});
  const auto result = evaluate_configs(configs, fm, inst.labels, folds, 9, 2);
  CHECK(result.trials[static_cast<std::size_t>(result.best)].mean_map == 1.0);
  CHECK(result.trials.back().mean_map == 1.0);
}

TEST_CASE("config fragments round-trip") {
  const std::vector<ModelConfig> configs = {
      LogRegConfig{.C = 0.25, .solver = models::Solver::kGradientDescent, .max_iter = 77, .tol = 1e-6},
      SvmConfig{.kernel = Kernel::kRbf, .C = 1.0 / 3.0, .gamma = 0.1},
      SvmConfig{.kernel = Kernel::kPoly, .C = 2.0, .gamma = 0.7, .degree = 4},
      SvmConfig{.kernel = Kernel::kLinear, .C = 5.0},
  };
  for (const auto& c : configs) {
    const std::string text = config_to_json(c);
    CHECK(config_to_json(config_from_json(text)) == text);
  }
  const auto svm = std::get<SvmConfig>(config_from_json(R"({"model":"svm","kernel":"rbf","C":1.5})"));
  CHECK(svm.C == 1.5);
  CHECK_FALSE(svm.gamma.has_value());
  CHECK_THROWS_AS(config_from_json("{"), DataError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"tree"})"), DataError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"svm","C":-1})"), DataError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"svm","kernel":3})"), DataError);
  CHECK_THROWS_AS(config_from_json(R"({"model":"svm","kernel":"sigmoid"})"), UsageError);
}

TEST_CASE("trial log lines") {
  Trial t;
  t.index = 3;
  t.seed = 99;
  t.config = LogRegConfig{};
  t.per_fold_map = {1.0, 0.5};
  t.mean_map = 0.75;
  const std::string log = format_trial_log(std::vector<Trial>{t});
  CHECK(log.back() == '\n');
  CHECK(log.find("\"trial\":3") != std::string::npos);
  CHECK(log.find("\"mean_map\":0.75") != std::string::npos);
  CHECK(log.find("\"failed\":false") != std::string::npos);
}

}  // namespace
}  // namespace checkworthy::hypersearch
