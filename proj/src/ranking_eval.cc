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

#include "checkworthy/ranking_eval.h"

#include <algorithm>
#include <cstdio>

#include "checkworthy/common.h"
#include "checkworthy/corpus.h"

namespace checkworthy::ranking_eval {

namespace {

int count_positives(std::span<const int> labels) {
  int r = 0;
  for (const int l : labels) r += l == 1;
  return r;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

double average_precision(std::span<const int> ranked_labels) {
  double sum = 0.0;
  int hits = 0;
  for (std::size_t k = 0; k < ranked_labels.size(); ++k) {
    if (ranked_labels[k] == 1) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  if (hits == 0) throw DataError("average precision is undefined without a positive label");
  return sum / hits;
}

double precision_at_k(std::span<const int> ranked_labels, int k) {
  if (k < 1) throw UsageError("precision cutoff must be at least 1");
  const auto n = std::min(ranked_labels.size(), static_cast<std::size_t>(k));
  return static_cast<double>(count_positives(ranked_labels.first(n))) / k;
}

double r_precision(std::span<const int> ranked_labels) {
  const int r = count_positives(ranked_labels);
  if (r == 0) throw DataError("R-precision is undefined without a positive label");
  return precision_at_k(ranked_labels, r);
}

std::string_view score_kind_name(ScoreKind kind) {
  return kind == ScoreKind::kProbability ? "probability" : "margin";
}

ScoreKind parse_score_kind(std::string_view name) {
  if (name == "probability") return ScoreKind::kProbability;
  if (name == "margin") return ScoreKind::kMargin;
  throw UsageError("unknown score kind '" + std::string(name) + "' (expected probability or margin)");
}

double threshold(ScoreKind kind) { return kind == ScoreKind::kProbability ? 0.5 : 0.0; }

double macro_f1(std::span<const double> scores, std::span<const int> gold, ScoreKind kind) {
  if (scores.size() != gold.size()) throw DataError("macro-F1: score and label counts differ");
  const double t = threshold(kind);
  // Confusion counts indexed by [gold][predicted].
  long c[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] != 0 && gold[i] != 1) throw DataError("macro-F1: labels must be 0 or 1");
    ++c[gold[i]][scores[i] >= t ? 1 : 0];
  }
  if (c[0][0] + c[0][1] == 0 || c[1][0] + c[1][1] == 0) throw DataError("macro-F1 needs both classes in gold");
  double total = 0.0;
  for (int cls = 0; cls < 2; ++cls) {
    const long tp = c[cls][cls];
    const long fp = c[1 - cls][cls];
    const long fn = c[cls][1 - cls];
    const long denom = 2 * tp + fp + fn;
    total += denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
  }
  return total / 2.0;
}

std::vector<int> ranked_labels(const std::map<std::string, double>& scores,
                               const std::map<std::string, int>& gold) {
  std::vector<std::string> missing;
  for (const auto& [id, s] : scores) {
    if (!gold.count(id)) missing.push_back(id);
  }
  for (const auto& [id, g] : gold) {
    if (!scores.count(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    std::string msg = "scores and gold labels cover different tweets:";
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i) msg += " " + missing[i];
    if (missing.size() > 10) msg += " ... (" + std::to_string(missing.size()) + " in total)";
    throw DataError(msg);
  }
  std::vector<int> out;
  out.reserve(scores.size());
  for (const auto& id : corpus::rank_ids(scores)) {
    const int g = gold.at(id);
    if (g != 0 && g != 1) throw DataError("gold label for " + id + " must be 0 or 1");
    out.push_back(g);
  }
  return out;
}

EvalReport evaluate(const std::map<std::string, double>& scores, const std::map<std::string, int>& gold,
                    ScoreKind kind) {
  const std::vector<int> labels = ranked_labels(scores, gold);
  EvalReport report;
  report.map = average_precision(labels);
  report.r_precision = r_precision(labels);
  for (std::size_t c = 0; c < kCutoffs.size(); ++c) report.p_at[c] = precision_at_k(labels, kCutoffs[c]);
  if (count_positives(labels) < static_cast<int>(labels.size())) {
    std::vector<double> s;
    std::vector<int> g;
    for (const auto& [id, v] : scores) {
      s.push_back(v);
      g.push_back(gold.at(id));
    }
    report.macro_f1 = macro_f1(s, g, kind);
  }
  return report;
}

std::string report_header(const EvalReport& report) {
  std::string out = "MAP\tR-Pr";
  for (const int k : kCutoffs) out += "\tP@" + std::to_string(k);
  if (report.macro_f1) out += "\tmacro-F1";
  return out;
}

std::string format_report(const EvalReport& report) {
  std::string out = fixed4(report.map) + "\t" + fixed4(report.r_precision);
  for (const double p : report.p_at) out += "\t" + fixed4(p);
  if (report.macro_f1) out += "\t" + fixed4(*report.macro_f1);
  return out;
}

}  // namespace checkworthy::ranking_eval
