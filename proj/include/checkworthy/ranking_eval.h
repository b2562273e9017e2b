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

#ifndef CHECKWORTHY_RANKING_EVAL_H_
#define CHECKWORTHY_RANKING_EVAL_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Ranked-retrieval measures over a single topic. Ranked label lists hold
// 0/1 gold labels in rank order.
namespace checkworthy::ranking_eval {

// Throws DataError when the list holds no positive.
double average_precision(std::span<const int> ranked_labels);

// Positives among the first k, divided by k. When k exceeds the list length
// the whole list is counted and the divisor stays k. Throws UsageError for
// k < 1.
double precision_at_k(std::span<const int> ranked_labels, int k);

// P@R with R the number of positives. Throws DataError when R = 0.
double r_precision(std::span<const int> ranked_labels);

// How scores map to a predicted label for macro-F1.
enum class ScoreKind { kProbability, kMargin };

std::string_view score_kind_name(ScoreKind kind);
ScoreKind parse_score_kind(std::string_view name);
// 0.5 for probabilities, 0 for margins; a score at the threshold is positive.
double threshold(ScoreKind kind);

// Unweighted mean of the per-class F1 scores. A class whose F1 has a zero
// denominator contributes 0. Throws DataError unless gold holds both classes.
double macro_f1(std::span<const double> scores, std::span<const int> gold, ScoreKind kind);

inline constexpr std::array<int, 6> kCutoffs = {1, 3, 5, 10, 20, 30};

struct EvalReport {
  double map = 0.0;
  double r_precision = 0.0;
  std::array<double, kCutoffs.size()> p_at{};  // aligned with kCutoffs
  std::optional<double> macro_f1;              // absent when gold is one-class
};

// Gold labels in the order of the global ranking rule (descending score,
// ascending id). Throws DataError when the id sets differ.
std::vector<int> ranked_labels(const std::map<std::string, double>& scores,
                               const std::map<std::string, int>& gold);

// Throws DataError on mismatched ids, labels other than 0/1, or no positive.
EvalReport evaluate(const std::map<std::string, double>& scores, const std::map<std::string, int>& gold,
                    ScoreKind kind);

// Tab-separated: MAP, R-Pr, P@1, P@3, P@5, P@10, P@20, P@30, then macro-F1
// when present. Values at four decimals.
std::string report_header(const EvalReport& report);
std::string format_report(const EvalReport& report);

}  // namespace checkworthy::ranking_eval

#endif  // CHECKWORTHY_RANKING_EVAL_H_
