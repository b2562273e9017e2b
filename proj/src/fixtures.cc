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

#include "checkworthy/fixtures.h"

#include <cstdio>

#include <json.hpp>

#include "checkworthy/common.h"
#include "checkworthy/embedded_data.h"
#include "checkworthy/random.h"
#include "string_util.h"

namespace checkworthy::fixtures {

namespace {

const std::vector<std::string>& claim_words() {
  static const std::vector<std::string> words = {
      "officials", "confirm", "cases",    "deaths",     "reported", "hospitals", "vaccine",
      "tested",    "million", "thousand", "percent",    "government", "data",    "infections",
      "world",     "health",  "organization", "ministry", "spread",   "outbreak"};
  return words;
}

const std::vector<std::string>& chat_words() {
  static const std::vector<std::string> words = {
      "love",  "happy",  "morning", "coffee", "friends", "weekend", "music",  "lol",
      "thanks", "sunny", "movie",   "dinner", "great",   "beach",   "puppy",  "pizza",
      "garden", "guitar", "birthday", "cake"};
  return words;
}

const std::vector<std::pair<std::string, corpus::Factuality>>& outlets() {
  static const std::vector<std::pair<std::string, corpus::Factuality>> o = {
      {"reuters.com", corpus::Factuality::kVeryHigh},   {"apnews.com", corpus::Factuality::kHigh},
      {"cnn.com", corpus::Factuality::kMostlyFactual},  {"foxnews.com", corpus::Factuality::kMixed},
      {"dailymail.co.uk", corpus::Factuality::kLow},    {"yournewswire.com", corpus::Factuality::kFakeNews},
      {"infowars.com", corpus::Factuality::kConspiracy}};
  return o;
}

std::string capitalized(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

// A point whose component along `dir` is side * (margin/2 + U[0,1)) and whose
// orthogonal part is standard normal.
Vector side_point(Rng& rng, const Vector& dir, double side, double margin) {
  Vector x(dir.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = rng.normal();
  x -= x.dot(dir) * dir;
  x += side * (margin / 2.0 + rng.uniform01()) * dir;
  return x;
}

std::string vector_line(const std::string& key, const Vector& v) {
  std::string line = key;
  char buf[32];
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    std::snprintf(buf, sizeof(buf), " %.9g", v[j]);
    line += buf;
  }
  return line + "\n";
}

std::string vectors_file(const corpus::KeyedVectors& table, const std::vector<std::string>& order) {
  std::string out;
  for (const auto& key : order) out += vector_line(key, *table.find(key));
  return out;
}

}  // namespace

Fixture make_separable_fixture(int n, int d, double margin, std::uint64_t seed) {
  if (n <= 0 || n % 2 != 0) throw UsageError("fixture size must be even and positive");
  if (d < 1) throw UsageError("fixture dimension must be positive");
  if (!(margin > 0.0)) throw UsageError("fixture margin must be positive");
  Rng rng(seed);
  Fixture fx;
  fx.direction.resize(d);
  for (int j = 0; j < d; ++j) fx.direction[j] = rng.normal();
  fx.direction.normalize();

  fx.word_vectors = corpus::VectorTable(d);
  for (const auto& w : claim_words()) fx.word_vectors.insert(w, side_point(rng, fx.direction, 1.0, margin));
  for (const auto& w : chat_words()) fx.word_vectors.insert(w, side_point(rng, fx.direction, -1.0, margin));
  for (const auto& [domain, level] : outlets()) fx.factuality.insert(domain, level);
  fx.vip = corpus::parse_vip_table(embedded::vip_default());

  const corpus::Timestamp collection = corpus::parse_timestamp("2020-03-20");
  const corpus::Timestamp earliest = corpus::parse_timestamp("2008-01-01");
  const auto span_seconds = (collection - earliest).count();
  fx.sentence_vectors = corpus::PrecomputedVectors(d);
  std::vector<corpus::Tweet> tweets;
  for (int i = 0; i < n; ++i) {
    const bool positive = i % 2 == 0;
    corpus::Tweet t;
    char id[32];
    std::snprintf(id, sizeof(id), "sep-%04d", i);
    t.tweet_id = id;
    t.topic_id = "covid-19";
    t.label = positive ? 1 : 0;

    const auto& vocab = positive ? claim_words() : chat_words();
    const int len = 4 + static_cast<int>(rng.uniform_index(4));
    std::string text;
    for (int k = 0; k < len; ++k) {
      const std::string& w = vocab[rng.uniform_index(vocab.size())];
      text += k == 0 ? capitalized(w) : " " + w;
    }
    const auto extra = rng.uniform_index(4);
    if (positive) {
      if (extra == 0) text += " as @WHO warns";
      if (extra == 1) text += ", " + std::to_string(1 + rng.uniform_index(90)) + "k tested";
      if (rng.uniform01() < 0.5) {
        const auto& outlet = outlets()[rng.uniform_index(outlets().size())];
        t.urls.push_back("https://www." + outlet.first + "/story/" + std::to_string(i));
        text += " https://t.co/f" + std::to_string(i);
      }
      if (extra == 2) text += " #COVID19";
    } else {
      if (extra == 0) text = "@friend_" + std::to_string(i) + " " + text;
      if (extra == 1) text += " #GoodVibes";
      if (extra == 2) text += "!";
    }
    t.text = text;
    t.verified = rng.uniform01() < 0.3;
    t.friends_count = static_cast<std::int64_t>(rng.uniform_index(5000));
    t.retweet_count = static_cast<std::int64_t>(rng.uniform_index(300));
    if (rng.uniform01() < 0.9) {
      t.created_at = earliest + std::chrono::seconds(static_cast<std::int64_t>(rng.uniform_index(
                                    static_cast<std::uint64_t>(span_seconds))));
    }
    fx.sentence_vectors.insert(t.tweet_id, side_point(rng, fx.direction, positive ? 1.0 : -1.0, margin));
    tweets.push_back(std::move(t));
  }
  fx.tweets = corpus::Dataset(std::move(tweets), collection);
  return fx;
}

std::string format_tweet_record(const corpus::Tweet& tweet) {
  nlohmann::ordered_json j;
  j["tweet_id"] = tweet.tweet_id;
  j["topic_id"] = tweet.topic_id;
  j["tweet_text"] = tweet.text;
  if (tweet.label) j["check_worthiness"] = *tweet.label;
  j["verified"] = tweet.verified;
  j["friends_count"] = tweet.friends_count;
  if (tweet.created_at) j["created_at"] = corpus::format_timestamp(*tweet.created_at);
  j["retweet_count"] = tweet.retweet_count;
  j["urls"] = tweet.urls;
  return j.dump() + "\n";
}

void write_fixture(const Fixture& fixture, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& tweets = fixture.tweets.tweets();
  const std::size_t n_train = (tweets.size() * 3 / 4) / 2 * 2;
  std::string all, train, test;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    const std::string line = format_tweet_record(tweets[i]);
    all += line;
    (i < n_train ? train : test) += line;
    ids.push_back(tweets[i].tweet_id);
  }
  corpus::write_file(dir / "tweets.jsonl", all);
  corpus::write_file(dir / "train.jsonl", train);
  corpus::write_file(dir / "test.jsonl", test);
  corpus::write_file(dir / "sentence_vectors.txt", vectors_file(fixture.sentence_vectors, ids));

  std::vector<std::string> words = claim_words();
  words.insert(words.end(), chat_words().begin(), chat_words().end());
  corpus::write_file(dir / "word_vectors.txt", vectors_file(fixture.word_vectors, words));

  std::string fact = "# domain,factuality of reporting\n";
  for (const auto& [domain, level] : outlets()) {
    fact += domain + "," + std::string(corpus::factuality_names()[static_cast<std::size_t>(level)]) + "\n";
  }
  corpus::write_file(dir / "factuality.csv", fact);
  corpus::write_file(dir / "vip.csv", std::string(embedded::vip_default()));
}

std::vector<GoldenRow> golden_normalizer_corpus() {
  std::vector<GoldenRow> rows;
  for (const auto line : util::split_lines(embedded::normalizer_golden())) {
    if (line.empty()) continue;
    const auto cols = util::split(line, '\t');
    if (cols.size() != 3) throw DataError("golden normalizer table: expected three columns");
    rows.push_back({normalizer::parse_pipeline(cols[0]), std::string(cols[1]), std::string(cols[2])});
  }
  return rows;
}

}  // namespace checkworthy::fixtures
