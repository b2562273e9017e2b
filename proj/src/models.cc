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

#include "checkworthy/models.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "checkworthy/common.h"
#include "checkworthy/corpus.h"
#include "string_util.h"

namespace checkworthy::models {

std::string_view kernel_name(Kernel k) {
  switch (k) {
    case Kernel::kLinear:
      return "linear";
    case Kernel::kPoly:
      return "poly";
    case Kernel::kRbf:
      return "rbf";
  }
  return "linear";
}

Kernel parse_kernel(std::string_view name) {
  if (name == "linear") return Kernel::kLinear;
  if (name == "poly") return Kernel::kPoly;
  if (name == "rbf") return Kernel::kRbf;
  throw UsageError("unknown kernel '" + std::string(name) + "' (expected linear, poly or rbf)");
}

std::string_view solver_name(Solver s) {
  return s == Solver::kNewton ? "newton" : "gradient_descent";
}

Solver parse_solver(std::string_view name) {
  if (name == "newton") return Solver::kNewton;
  if (name == "gradient_descent") return Solver::kGradientDescent;
  throw UsageError("unknown solver '" + std::string(name) + "' (expected gradient_descent or newton)");
}

namespace {

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Vector signed_labels(std::span<const int> labels, Eigen::Index n) {
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw DataError("got " + std::to_string(labels.size()) + " labels for " + std::to_string(n) + " rows");
  }
  Vector y(n);
  bool pos = false, neg = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    if (l != 0 && l != 1) throw DataError("labels must be 0 or 1, got " + std::to_string(l));
    y[i] = l == 1 ? 1.0 : -1.0;
    pos = pos || l == 1;
    neg = neg || l == 0;
  }
  if (!pos || !neg) throw DataError("training needs both classes, got only " + std::string(pos ? "1" : "0"));
  return y;
}

void check_dim(Eigen::Index expected, Eigen::Index got) {
  if (expected != got) {
    throw DataError("feature dimension mismatch: model has " + std::to_string(expected) + ", input has " +
                    std::to_string(got));
  }
}

}  // namespace

double resolved_gamma(const SvmConfig& config, Eigen::Index dim) {
  if (config.gamma) return *config.gamma;
  return dim > 0 ? 1.0 / static_cast<double>(dim) : 1.0;
}

double kernel_eval(const SvmConfig& config, const Vector& x, const Vector& z) {
  if (x.size() != z.size()) {
    throw DataError("kernel arguments differ in length: " + std::to_string(x.size()) + " vs " +
                    std::to_string(z.size()));
  }
  const double gamma = resolved_gamma(config, x.size());
  switch (config.kernel) {
    case Kernel::kLinear:
      return x.dot(z);
    case Kernel::kPoly:
      return std::pow(gamma * x.dot(z) + config.coef0, config.degree);
    case Kernel::kRbf:
      return std::exp(-gamma * (x - z).squaredNorm());
  }
  return 0.0;
}

Matrix kernel_matrix(const SvmConfig& config, const Matrix& a, const Matrix& b) {
  check_dim(a.cols(), b.cols());
  const double gamma = resolved_gamma(config, a.cols());
  Matrix k = a * b.transpose();
  switch (config.kernel) {
    case Kernel::kLinear:
      break;
    case Kernel::kPoly:
      k = (gamma * k.array() + config.coef0).pow(config.degree).matrix();
      break;
    case Kernel::kRbf: {
      const Vector na = a.rowwise().squaredNorm();
      const Vector nb = b.rowwise().squaredNorm();
      for (Eigen::Index i = 0; i < k.rows(); ++i) {
        for (Eigen::Index j = 0; j < k.cols(); ++j) {
          const double d2 = std::max(0.0, na[i] + nb[j] - 2.0 * k(i, j));
          k(i, j) = std::exp(-gamma * d2);
        }
      }
      break;
    }
  }
  return k;
}

ObjectiveGrad logreg_objective_grad(const Vector& w, double b, const Matrix& X, const Vector& y, double C) {
  const Vector m = (X * w).array() + b;
  Vector s(m.size());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double z = -y[i] * m[i];
    loss += softplus(z);
    s[i] = y[i] * sigmoid(z);
  }
  ObjectiveGrad out;
  out.objective = 0.5 * w.squaredNorm() + C * loss;
  out.grad_w = w - C * (X.transpose() * s);
  out.grad_b = -C * s.sum();
  return out;
}

namespace {

struct LogRegState {
  Vector w;
  double b = 0.0;
  ObjectiveGrad og;
};

double sup_norm(const ObjectiveGrad& og) {
  return std::max(og.grad_w.size() > 0 ? og.grad_w.cwiseAbs().maxCoeff() : 0.0, std::abs(og.grad_b));
}

// Backtracking (Armijo) along (dw, db) starting from `step`. Returns false
// when no decrease is found.
bool line_search(const Matrix& X, const Vector& y, double C, LogRegState& s, const Vector& dw, double db,
                 double slope, double& step) {
  for (int k = 0; k < 60; ++k) {
    const Vector w = s.w + step * dw;
    const double b = s.b + step * db;
    ObjectiveGrad og = logreg_objective_grad(w, b, X, y, C);
    if (og.objective <= s.og.objective + 1e-4 * step * slope) {
      s.w = w;
      s.b = b;
      s.og = std::move(og);
      return true;
    }
    step *= 0.5;
  }
  return false;
}

// Conjugate gradients on H p = -g, H = diag(1,..,1,0) + C Xt D Xt^T with
// Xt = [X 1]. Stops at the usual inexact-Newton forcing tolerance.
void newton_direction(const Matrix& X, const Vector& curvature, const ObjectiveGrad& og, Vector& pw,
                      double& pb) {
  const Eigen::Index d = X.cols();
  const auto hess = [&](const Vector& vw, double vb, Vector& hw, double& hb) {
    const Vector u = ((X * vw).array() + vb).matrix().cwiseProduct(curvature);
    hw = vw + X.transpose() * u;
    hb = u.sum();
  };
  pw = Vector::Zero(d);
  pb = 0.0;
  Vector rw = -og.grad_w;
  double rb = -og.grad_b;
  Vector qw = rw;
  double qb = rb;
  double rs = rw.squaredNorm() + rb * rb;
  const double gnorm = std::sqrt(rs);
  const double eps = std::min(0.5, std::sqrt(gnorm)) * gnorm;
  const int max_cg = static_cast<int>(std::min<Eigen::Index>(2 * (d + 1), 250));
  Vector hw;
  double hb = 0.0;
  for (int it = 0; it < max_cg && std::sqrt(rs) > eps; ++it) {
    hess(qw, qb, hw, hb);
    const double qhq = qw.dot(hw) + qb * hb;
    if (qhq <= 1e-16 * (qw.squaredNorm() + qb * qb)) break;
    const double a = rs / qhq;
    pw += a * qw;
    pb += a * qb;
    rw -= a * hw;
    rb -= a * hb;
    const double rs_new = rw.squaredNorm() + rb * rb;
    qw = rw + (rs_new / rs) * qw;
    qb = rb + (rs_new / rs) * qb;
    rs = rs_new;
  }
  if (pw.squaredNorm() + pb * pb == 0.0) {
    pw = -og.grad_w;
    pb = -og.grad_b;
  }
}

}  // namespace

TrainedLogReg train_logreg(const Matrix& X, std::span<const int> labels, const LogRegConfig& config) {
  if (!(config.C > 0.0) || !(config.tol > 0.0)) throw UsageError("logistic regression needs C > 0 and tol > 0");
  const Vector y = signed_labels(labels, X.rows());
  LogRegState s;
  s.w = Vector::Zero(X.cols());
  s.og = logreg_objective_grad(s.w, s.b, X, y, config.C);

  TrainedLogReg out;
  // Gradient descent keeps its step between iterations, growing it by two
  // before each backtracking search.
  const double safe_step = 1.0 / (1.0 + 0.25 * config.C * (X.squaredNorm() + static_cast<double>(X.rows())));
  double gd_step = safe_step;
  int it = 0;
  for (; it < config.max_iter; ++it) {
    if (sup_norm(s.og) <= config.tol) break;
    bool moved = false;
    if (config.solver == Solver::kNewton) {
      const Vector m = (X * s.w).array() + s.b;
      Vector curvature(m.size());
      for (Eigen::Index i = 0; i < m.size(); ++i) {
        const double p = sigmoid(m[i]);
        curvature[i] = config.C * p * (1.0 - p);
      }
      Vector pw;
      double pb = 0.0;
      newton_direction(X, curvature, s.og, pw, pb);
      double slope = s.og.grad_w.dot(pw) + s.og.grad_b * pb;
      if (slope >= 0.0) {
        pw = -s.og.grad_w;
        pb = -s.og.grad_b;
        slope = -(pw.squaredNorm() + pb * pb);
      }
      double step = 1.0;
      moved = line_search(X, y, config.C, s, pw, pb, slope, step);
    } else {
      const Vector dw = -s.og.grad_w;
      const double db = -s.og.grad_b;
      const double slope = -(dw.squaredNorm() + db * db);
      gd_step *= 2.0;
      moved = line_search(X, y, config.C, s, dw, db, slope, gd_step);
    }
    if (!moved) {
      // Near the optimum the Armijo test drowns in rounding of the objective.
      // A gradient step of 1/L still decreases it, so take that instead.
      const Vector w = s.w - safe_step * s.og.grad_w;
      const double b = s.b - safe_step * s.og.grad_b;
      ObjectiveGrad og = logreg_objective_grad(w, b, X, y, config.C);
      if (!(sup_norm(og) < sup_norm(s.og))) break;
      s.w = w;
      s.b = b;
      s.og = std::move(og);
      gd_step = safe_step;
    }
  }
  out.w = s.w;
  out.b = s.b;
  out.iterations = it;
  out.converged = sup_norm(s.og) <= config.tol;
  if (!out.w.allFinite() || !std::isfinite(out.b)) throw NumericalError("logistic regression diverged");
  return out;
}

double svm_dual_objective(const Matrix& K, const Vector& y, const Vector& alpha) {
  const Vector ay = alpha.cwiseProduct(y);
  return alpha.sum() - 0.5 * ay.dot(K * ay);
}

TrainedSvm train_svm_smo(const Matrix& X, std::span<const int> labels, const SvmConfig& config,
                         std::vector<double>* objective_trace) {
  if (!(config.C > 0.0) || !(config.tol > 0.0)) throw UsageError("SVM needs C > 0 and tol > 0");
  if (config.kernel == Kernel::kPoly && (config.degree < 1)) throw UsageError("polynomial degree must be positive");
  if (config.gamma && !(*config.gamma > 0.0)) throw UsageError("SVM gamma must be positive");
  const Vector y = signed_labels(labels, X.rows());
  const Eigen::Index n = X.rows();
  const double C = config.C;

  SvmConfig resolved = config;
  resolved.gamma = resolved_gamma(config, X.cols());
  Matrix K = kernel_matrix(resolved, X, X);
  if (config.kernel == Kernel::kRbf) K.diagonal().setOnes();

  Vector alpha = Vector::Zero(n);
  Vector F = -y;  // f(x_i) without bias, minus y_i

  const auto in_up = [&](Eigen::Index k) { return y[k] > 0 ? alpha[k] < C : alpha[k] > 0.0; };
  const auto in_low = [&](Eigen::Index k) { return y[k] > 0 ? alpha[k] > 0.0 : alpha[k] < C; };

  const long max_updates = std::max<long>(1000000L, 1000L * static_cast<long>(n));
  const long patience = 10L * static_cast<long>(n);
  long stalled = 0;
  long updates = 0;
  double min_up = 0.0, max_low = 0.0;
  for (;;) {
    Eigen::Index i = -1, j = -1;
    min_up = std::numeric_limits<double>::infinity();
    max_low = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
      if (in_up(k) && F[k] < min_up) {
        min_up = F[k];
        i = k;
      }
      if (in_low(k) && F[k] > max_low) {
        max_low = F[k];
        j = k;
      }
    }
    if (i < 0 || j < 0 || max_low - min_up <= config.tol) break;
    if (updates >= max_updates || stalled >= patience) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "SMO did not converge after %ld updates (KKT gap %.3g, best dual objective %.17g)", updates,
                    max_low - min_up, svm_dual_objective(K, y, alpha));
      throw NumericalError(buf);
    }

    double eta = K(i, i) + K(j, j) - 2.0 * K(i, j);
    if (eta <= 0.0) eta = 1e-12;
    double t = (max_low - min_up) / eta;
    const double bound_i = y[i] > 0 ? C - alpha[i] : alpha[i];
    const double bound_j = y[j] > 0 ? alpha[j] : C - alpha[j];
    bool clip_i = false, clip_j = false;
    if (t >= bound_i) {
      t = bound_i;
      clip_i = true;
    }
    if (t >= bound_j) {
      t = bound_j;
      clip_j = true;
      clip_i = clip_i && bound_i == bound_j;
    }
    alpha[i] = clip_i ? (y[i] > 0 ? C : 0.0) : alpha[i] + y[i] * t;
    alpha[j] = clip_j ? (y[j] > 0 ? 0.0 : C) : alpha[j] - y[j] * t;
    F += t * (K.col(i) - K.col(j));

    const double gain = t * (max_low - min_up) - 0.5 * t * t * eta;
    ++updates;
    if (gain > 0.0) {
      stalled = 0;
    } else {
      ++stalled;
    }
    if (objective_trace != nullptr) {
      // Recomputed from the solver state rather than from the gain formula.
      objective_trace->push_back(alpha.sum() - 0.5 * alpha.cwiseProduct(y).dot(F + y));
    }
  }

  TrainedSvm out;
  double free_sum = 0.0;
  int n_free = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (alpha[k] > 0.0 && alpha[k] < C) {
      free_sum += F[k];
      ++n_free;
    }
  }
  out.b = n_free > 0 ? -free_sum / n_free : -(min_up + max_low) / 2.0;
  if (!std::isfinite(out.b)) out.b = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (alpha[k] > 0.0) out.support_indices.push_back(k);
  }
  const auto n_sv = static_cast<Eigen::Index>(out.support_indices.size());
  out.support_vectors.resize(n_sv, X.cols());
  out.dual_coef.resize(n_sv);
  for (Eigen::Index s = 0; s < n_sv; ++s) {
    const Eigen::Index k = out.support_indices[static_cast<std::size_t>(s)];
    out.support_vectors.row(s) = X.row(k);
    out.dual_coef[s] = alpha[k] * y[k];
  }
  out.config = resolved;
  out.dual_objective = svm_dual_objective(K, y, alpha);
  out.iterations = updates;
  return out;
}

Vector logreg_margin(const TrainedLogReg& model, const Matrix& X) {
  check_dim(model.w.size(), X.cols());
  return (X * model.w).array() + model.b;
}

Vector predict_logreg(const TrainedLogReg& model, const Matrix& X) {
  return logreg_margin(model, X).unaryExpr([](double m) { return sigmoid(m); });
}

Vector predict_svm(const TrainedSvm& model, const Matrix& X) {
  check_dim(model.support_vectors.cols(), X.cols());
  if (model.support_vectors.rows() == 0) return Vector::Constant(X.rows(), model.b);
  const Matrix k = kernel_matrix(model.config, X, model.support_vectors);
  return (k * model.dual_coef).array() + model.b;
}

TrainedModel train(const ModelConfig& config, const Matrix& X, std::span<const int> labels) {
  if (const auto* lr = std::get_if<LogRegConfig>(&config)) return train_logreg(X, labels, *lr);
  return train_svm_smo(X, labels, std::get<SvmConfig>(config));
}

Vector predict(const TrainedModel& model, const Matrix& X) {
  if (const auto* lr = std::get_if<TrainedLogReg>(&model)) return predict_logreg(*lr, X);
  return predict_svm(std::get<TrainedSvm>(model), X);
}

bool scores_are_probabilities(const TrainedModel& model) {
  return std::holds_alternative<TrainedLogReg>(model);
}

Eigen::Index model_dim(const TrainedModel& model) {
  if (const auto* lr = std::get_if<TrainedLogReg>(&model)) return lr->w.size();
  return std::get<TrainedSvm>(model).support_vectors.cols();
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_num(std::string_view s, std::string_view what) {
  const auto v = util::parse_double(s);
  if (!v || !std::isfinite(*v)) throw DataError("model file: bad " + std::string(what) + " '" + std::string(s) + "'");
  return *v;
}

long parse_int(std::string_view s, std::string_view what) {
  const double v = parse_num(s, what);
  if (v != std::floor(v) || v < 0) throw DataError("model file: bad " + std::string(what) + " '" + std::string(s) + "'");
  return static_cast<long>(v);
}

}  // namespace

std::string format_model(const TrainedModel& model) {
  std::string out;
  if (const auto* lr = std::get_if<TrainedLogReg>(&model)) {
    out = "checkworthy-model logreg dim=" + std::to_string(lr->w.size()) + " converged=" +
          (lr->converged ? "1" : "0") + " iterations=" + std::to_string(lr->iterations) + "\n";
    out += "bias " + num(lr->b) + "\n";
    out += "w";
    for (Eigen::Index j = 0; j < lr->w.size(); ++j) out += " " + num(lr->w[j]);
    out += "\n";
    return out;
  }
  const auto& svm = std::get<TrainedSvm>(model);
  const auto& c = svm.config;
  out = "checkworthy-model svm kernel=" + std::string(kernel_name(c.kernel)) +
        " dim=" + std::to_string(svm.support_vectors.cols()) + " n_sv=" + std::to_string(svm.support_vectors.rows()) +
        " C=" + num(c.C) + " gamma=" + num(resolved_gamma(c, svm.support_vectors.cols())) +
        " degree=" + std::to_string(c.degree) + " coef0=" + num(c.coef0) + " tol=" + num(c.tol) + "\n";
  out += "bias " + num(svm.b) + "\n";
  for (Eigen::Index s = 0; s < svm.support_vectors.rows(); ++s) {
    out += num(svm.dual_coef[s]);
    for (Eigen::Index j = 0; j < svm.support_vectors.cols(); ++j) out += " " + num(svm.support_vectors(s, j));
    out += "\n";
  }
  return out;
}

TrainedModel parse_model(std::string_view content) {
  std::vector<std::string_view> lines;
  for (const auto l : util::split_lines(content)) {
    if (!util::trim(l).empty()) lines.push_back(l);
  }
  if (lines.size() < 2) throw DataError("model file is truncated");
  const auto head = util::split_ws(lines[0]);
  if (head.size() < 2 || head[0] != "checkworthy-model") throw DataError("not a model file");
  std::map<std::string, std::string, std::less<>> kv;
  for (std::size_t i = 2; i < head.size(); ++i) {
    const auto eq = head[i].find('=');
    if (eq == std::string_view::npos) throw DataError("model file: bad header field '" + std::string(head[i]) + "'");
    kv.emplace(std::string(head[i].substr(0, eq)), std::string(head[i].substr(eq + 1)));
  }
  const auto field = [&](std::string_view key) -> std::string_view {
    const auto it = kv.find(key);
    if (it == kv.end()) throw DataError("model file: header lacks " + std::string(key));
    return it->second;
  };
  const auto bias = util::split_ws(lines[1]);
  if (bias.size() != 2 || bias[0] != "bias") throw DataError("model file: expected a bias line");
  const double b = parse_num(bias[1], "bias");
  const long dim = parse_int(field("dim"), "dim");

  if (head[1] == "logreg") {
    TrainedLogReg lr;
    lr.b = b;
    lr.converged = field("converged") == "1";
    lr.iterations = static_cast<int>(parse_int(field("iterations"), "iterations"));
    if (lines.size() != 3) throw DataError("model file: expected one weight line");
    const auto ws = util::split_ws(lines[2]);
    if (ws.empty() || ws[0] != "w" || static_cast<long>(ws.size()) != dim + 1) {
      throw DataError("model file: weight line does not have " + std::to_string(dim) + " values");
    }
    lr.w.resize(dim);
    for (long j = 0; j < dim; ++j) lr.w[j] = parse_num(ws[static_cast<std::size_t>(j + 1)], "weight");
    return lr;
  }
  if (head[1] != "svm") throw DataError("model file: unknown model kind '" + std::string(head[1]) + "'");
  TrainedSvm svm;
  svm.b = b;
  svm.config.kernel = parse_kernel(field("kernel"));
  svm.config.C = parse_num(field("C"), "C");
  svm.config.gamma = parse_num(field("gamma"), "gamma");
  svm.config.degree = static_cast<int>(parse_int(field("degree"), "degree"));
  svm.config.coef0 = parse_num(field("coef0"), "coef0");
  svm.config.tol = parse_num(field("tol"), "tol");
  const long n_sv = parse_int(field("n_sv"), "n_sv");
  if (static_cast<long>(lines.size()) != n_sv + 2) throw DataError("model file: expected " + std::to_string(n_sv) + " support vectors");
  svm.support_vectors.resize(n_sv, dim);
  svm.dual_coef.resize(n_sv);
  for (long s = 0; s < n_sv; ++s) {
    const auto f = util::split_ws(lines[static_cast<std::size_t>(s + 2)]);
    if (static_cast<long>(f.size()) != dim + 1) throw DataError("model file: support vector row " + std::to_string(s + 1) + " has the wrong length");
    svm.dual_coef[s] = parse_num(f[0], "dual coefficient");
    for (long j = 0; j < dim; ++j) svm.support_vectors(s, j) = parse_num(f[static_cast<std::size_t>(j + 1)], "support vector");
  }
  return svm;
}

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
  corpus::write_file(path, format_model(model));
}

TrainedModel load_model(const std::filesystem::path& path) { return parse_model(corpus::read_file(path)); }

}  // namespace checkworthy::models
