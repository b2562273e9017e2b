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

#ifndef CHECKWORTHY_MODELS_H_
#define CHECKWORTHY_MODELS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "checkworthy/linalg.h"

// Convex classifiers trained from scratch. Labels are 0/1 at the API
// boundary and mapped to -1/+1 internally.
namespace checkworthy::models {

enum class Kernel { kLinear, kPoly, kRbf };
enum class Solver { kGradientDescent, kNewton };

std::string_view kernel_name(Kernel k);
Kernel parse_kernel(std::string_view name);
std::string_view solver_name(Solver s);
Solver parse_solver(std::string_view name);

struct LogRegConfig {
  double C = 1.0;
  Solver solver = Solver::kNewton;
  int max_iter = 1000;
  double tol = 1e-4;  // on the sup-norm of the gradient
};

struct SvmConfig {
  Kernel kernel = Kernel::kLinear;
  double C = 1.0;
  std::optional<double> gamma;  // unset means 1 / dim
  int degree = 3;
  double coef0 = 0.0;
  double tol = 1e-3;
};

using ModelConfig = std::variant<LogRegConfig, SvmConfig>;

struct TrainedLogReg {
  Vector w;
  double b = 0.0;
  bool converged = false;
  int iterations = 0;
};

struct TrainedSvm {
  Matrix support_vectors;
  Vector dual_coef;  // alpha_i * y_i
  double b = 0.0;
  SvmConfig config;  // gamma always set
  // Filled by training only: row of each support vector in the training
  // matrix, the final dual objective, and the number of pair updates.
  std::vector<Eigen::Index> support_indices;
  double dual_objective = 0.0;
  long iterations = 0;
};

using TrainedModel = std::variant<TrainedLogReg, TrainedSvm>;

// Gamma actually used for `dim` features.
double resolved_gamma(const SvmConfig& config, Eigen::Index dim);

double kernel_eval(const SvmConfig& config, const Vector& x, const Vector& z);
// K(a_i, b_j) for all row pairs.
Matrix kernel_matrix(const SvmConfig& config, const Matrix& a, const Matrix& b);

struct ObjectiveGrad {
  double objective = 0.0;
  Vector grad_w;
  double grad_b = 0.0;
};

// J = 0.5 |w|^2 + C sum_i ln(1 + exp(-y_i (w.x_i + b))), y in {-1,+1}.
ObjectiveGrad logreg_objective_grad(const Vector& w, double b, const Matrix& X, const Vector& y,
                                    double C);

// Throws DataError unless both classes are present.
TrainedLogReg train_logreg(const Matrix& X, std::span<const int> labels, const LogRegConfig& config);

// SMO with maximal-violating-pair selection. Stops once every point meets
// the KKT conditions within config.tol. Throws NumericalError (carrying the
// best dual objective) when the solver stalls. When `objective_trace` is
// given, the dual objective after every pair update is appended to it.
TrainedSvm train_svm_smo(const Matrix& X, std::span<const int> labels, const SvmConfig& config,
                         std::vector<double>* objective_trace = nullptr);

// sum_i alpha_i - 0.5 sum_ij alpha_i alpha_j y_i y_j K_ij.
double svm_dual_objective(const Matrix& K, const Vector& y, const Vector& alpha);

Vector logreg_margin(const TrainedLogReg& model, const Matrix& X);
// Probabilities sigma(w.x + b).
Vector predict_logreg(const TrainedLogReg& model, const Matrix& X);
// Raw decision values.
Vector predict_svm(const TrainedSvm& model, const Matrix& X);

TrainedModel train(const ModelConfig& config, const Matrix& X, std::span<const int> labels);
Vector predict(const TrainedModel& model, const Matrix& X);
// True when predict() yields probabilities rather than margins.
bool scores_are_probabilities(const TrainedModel& model);
Eigen::Index model_dim(const TrainedModel& model);

// Text format: a header line naming the kind and parameters, then numeric
// rows at 17 significant digits.
std::string format_model(const TrainedModel& model);
TrainedModel parse_model(std::string_view content);
void save_model(const std::filesystem::path& path, const TrainedModel& model);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace checkworthy::models

#endif  // CHECKWORTHY_MODELS_H_
