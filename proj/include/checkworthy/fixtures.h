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

#ifndef CHECKWORTHY_FIXTURES_H_
#define CHECKWORTHY_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "checkworthy/corpus.h"
#include "checkworthy/linalg.h"
#include "checkworthy/normalizer.h"

// Desk-scale synthetic data for tests and the end-to-end smoke run.
namespace checkworthy::fixtures {

struct Fixture {
  corpus::Dataset tweets;  // labels alternate 1, 0, 1, 0, ...
  corpus::PrecomputedVectors sentence_vectors;
  corpus::VectorTable word_vectors;
  corpus::FactualityTable factuality;
  corpus::VipTable vip;
  Vector direction;  // unit normal of the separating hyperplane
};

// n tweets, n/2 per class. Sentence vectors lie at least margin/2 on the
// class side of a random hyperplane through the origin; word vectors of the
// class vocabularies do the same, and each tweet only uses words of its own
// class, so pooled and TF-IDF features separate as well. Throws UsageError
// unless n is even and positive and margin > 0.
Fixture make_separable_fixture(int n, int d, double margin, std::uint64_t seed);

// Writes tweets.jsonl plus its split into train.jsonl (first three quarters,
// rounded down to an even count) and test.jsonl, sentence_vectors.txt,
// word_vectors.txt, factuality.csv and vip.csv.
void write_fixture(const Fixture& fixture, const std::filesystem::path& dir);

// One tweet record line, in the loader's format.
std::string format_tweet_record(const corpus::Tweet& tweet);

struct GoldenRow {
  normalizer::Pipeline pipeline;
  std::string raw;
  std::string expected;  // space-joined tokens
};

// The bundled normalizer golden table.
std::vector<GoldenRow> golden_normalizer_corpus();

}  // namespace checkworthy::fixtures

#endif  // CHECKWORTHY_FIXTURES_H_
