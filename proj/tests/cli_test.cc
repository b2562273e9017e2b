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

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "checkworthy/corpus.h"
#include "checkworthy/ensemble.h"
#include "checkworthy/features.h"
#include "checkworthy/manifest.h"
#include "checkworthy/normalizer.h"
#include "checkworthy/ranking_eval.h"
#include "cli_harness.h"
#include "doctest.h"
#include "string_util.h"

namespace checkworthy::testing {
namespace {

namespace fs = std::filesystem;

const std::string kSeparable = (kFixtureDir / "separable").string();
const std::string kCovid = (kFixtureDir / "covid").string();

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

double ap_of_run(const fs::path& run, const fs::path& gold_file) {
  const auto scores = ensemble::load_score_file(run).scores;
  std::map<std::string, int> gold;
  const auto tweets = corpus::load_tweets(gold_file);
  for (const auto& t : tweets.tweets()) gold[t.tweet_id] = *t.label;
  return ranking_eval::evaluate(scores, gold, ranking_eval::ScoreKind::kMargin).map;
}

TEST_CASE("bundled separable fixture regenerates byte for byte") {
  ScratchDir dir;
  const auto r = run_cli(dir.path(), {"fixture", "--out", "fx"});
  REQUIRE(r.exit_code == 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "fx")) {
    ++files;
    const auto name = entry.path().filename();
    INFO(name.string());
    CHECK(corpus::read_file(entry.path()) == corpus::read_file(fs::path(kSeparable) / name));
  }
  CHECK(files == 7);
}

TEST_CASE("normalize reproduces the covid fixture outputs") {
  ScratchDir dir;
  for (const std::string pipeline : {"default", "corona", "swc"}) {
    INFO(pipeline);
    const auto r = run_cli(dir.path(), {"normalize", "--in", kCovid + "/tweets.jsonl", "--out", "out.tsv",
                                        "--pipeline", pipeline});
    REQUIRE(r.exit_code == 0);
    const std::string out = corpus::read_file(dir / "out.tsv");
    CHECK(out == corpus::read_file(kCovid + "/expected." + pipeline + ".tsv"));
    CHECK(fs::exists(dir / "out.tsv.manifest.json"));
  }
  const std::string corona = corpus::read_file(kCovid + "/expected.corona.tsv");
  CHECK(corona.find("ebola") != std::string::npos);
  CHECK(corona.find("covid-19") == std::string::npos);
  CHECK(corona.find("corona virus") == std::string::npos);
}

TEST_CASE("normalize is idempotent at the command level") {
  ScratchDir dir;
  REQUIRE(run_cli(dir.path(), {"normalize", "--in", kCovid + "/tweets.jsonl", "--out", "a.tsv"}).exit_code == 0);
  REQUIRE(run_cli(dir.path(), {"normalize", "--in", kCovid + "/tweets.jsonl", "--out", "b.tsv"}).exit_code == 0);
  CHECK(corpus::read_file(dir / "a.tsv") == corpus::read_file(dir / "b.tsv"));
  CHECK(manifest_sans_timestamps(dir / "a.tsv.manifest.json").find("default") != std::string::npos);

  // Feeding the normalized text back through the default pipeline changes nothing.
  std::string records;
  const std::string normalized = corpus::read_file(dir / "a.tsv");
  for (const auto line : util::split_lines(normalized)) {
    if (line.empty()) continue;
    const auto cols = util::split(line, '\t');
    nlohmann::ordered_json j;
    j["tweet_id"] = std::string(cols[0]);
    j["topic_id"] = "covid-19";
    j["tweet_text"] = std::string(cols[1]);
    records += j.dump() + "\n";
  }
  corpus::write_file(dir / "again.jsonl", records);
  REQUIRE(run_cli(dir.path(), {"normalize", "--in", "again.jsonl", "--out", "c.tsv"}).exit_code == 0);
  CHECK(corpus::read_file(dir / "c.tsv") == corpus::read_file(dir / "a.tsv"));
}

TEST_CASE("exit codes") {
  ScratchDir dir;
  const std::string tweets = kSeparable + "/train.jsonl";
  SUBCASE("help and version") {
    CHECK(run_cli(dir.path(), {"--help"}).exit_code == 0);
    CHECK(run_cli(dir.path(), {"featurize", "--help"}).exit_code == 0);
    const auto v = run_cli(dir.path(), {"--version"});
    CHECK(v.exit_code == 0);
    CHECK(v.out.find(CHECKWORTHY_VERSION) != std::string::npos);
  }
  SUBCASE("usage errors") {
    CHECK(run_cli(dir.path(), {}).exit_code == 1);
    CHECK(run_cli(dir.path(), {"bogus"}).exit_code == 1);
    CHECK(run_cli(dir.path(), {"normalize", "--in", tweets}).exit_code == 1);
    CHECK(run_cli(dir.path(), {"normalize", "--in", tweets, "--out", "x", "--pipeline", "klingon"}).exit_code == 1);
    CHECK(run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "x", "--features", "bogus"}).exit_code == 1);
    const auto r = run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "x", "--features", "sentvec"});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("--vectors") != std::string::npos);
    CHECK(run_cli(dir.path(), {"evaluate", "--run", "x", "--gold", tweets, "--score-kind", "odds"}).exit_code == 1);
    CHECK_FALSE(fs::exists(dir / "x"));
  }
  SUBCASE("data errors") {
    CHECK(run_cli(dir.path(), {"normalize", "--in", "missing.jsonl", "--out", "x"}).exit_code == 2);
    corpus::write_file(dir / "broken.jsonl", "{\"tweet_id\": \"a\", \"tweet_text\": \n");
    CHECK(run_cli(dir.path(), {"normalize", "--in", "broken.jsonl", "--out", "x"}).exit_code == 2);
    CHECK_FALSE(fs::exists(dir / "x"));
    // Gold covers tweets the run does not score.
    REQUIRE(run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "f.tsv", "--features", "sentvec",
                                 "--vectors", kSeparable + "/sentence_vectors.txt"})
                .exit_code == 0);
    corpus::write_file(dir / "lr.json", "{\"model\": \"logreg\", \"C\": 1.0}");
    REQUIRE(run_cli(dir.path(), {"train", "--features", "f.tsv", "--tweets", tweets, "--config", "lr.json", "--out",
                                 "m.txt"})
                .exit_code == 0);
    REQUIRE(run_cli(dir.path(), {"predict", "--model", "m.txt", "--features", "f.tsv", "--out", "run.tsv"})
                .exit_code == 0);
    CHECK(run_cli(dir.path(), {"evaluate", "--run", "run.tsv", "--gold", kSeparable + "/tweets.jsonl"}).exit_code ==
          2);
  }
  SUBCASE("numerical errors") {
    REQUIRE(run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "f.tsv", "--features", "tfidf", "--features",
                                 "pool-tfidf", "--features", "metadata", "--vectors",
                                 kSeparable + "/word_vectors.txt", "--fact", kSeparable + "/factuality.csv"})
                .exit_code == 0);
    corpus::write_file(dir / "svm.json",
                       "{\"model\": \"svm\", \"kernel\": \"rbf\", \"C\": 10, \"gamma\": 1, \"tol\": 1e-300}");
    const auto r =
        run_cli(dir.path(), {"train", "--features", "f.tsv", "--tweets", tweets, "--config", "svm.json", "--out", "m"});
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("best dual objective") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "m"));
  }
}

TEST_CASE("featurize") {
  ScratchDir dir;
  const std::string tweets = kSeparable + "/tweets.jsonl";
  SUBCASE("metadata without a factuality table warns and zeroes those columns") {
    const auto r = run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "m.tsv", "--features", "metadata"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    const auto fm = features::load_feature_matrix(dir / "m.tsv");
    CHECK(fm.cols() == features::kMetadataColumns);
    int fact_cols = 0;
    for (std::size_t j = 0; j < fm.cols(); ++j) {
      if (fm.column_names[j].find("fact") == std::string::npos) continue;
      ++fact_cols;
      CHECK(fm.values.col(static_cast<Eigen::Index>(j)).isZero());
    }
    CHECK(fact_cols > 0);

    REQUIRE(run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "f.tsv", "--features", "metadata", "--fact",
                                 kSeparable + "/factuality.csv"})
                .exit_code == 0);
    CHECK_FALSE(features::load_feature_matrix(dir / "f.tsv").values.isApprox(fm.values));
  }
  SUBCASE("feature sets concatenate in flag order") {
    REQUIRE(run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "a.tsv", "--features", "pool-mean,sentvec",
                                 "--vectors", kSeparable + "/word_vectors.txt"})
                .exit_code == 2);  // word vectors do not cover tweet ids
    REQUIRE(run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "a.tsv", "--features", "pool-mean",
                                 "--features", "pool-max", "--vectors", kSeparable + "/word_vectors.txt"})
                .exit_code == 0);
    const auto fm = features::load_feature_matrix(dir / "a.tsv");
    CHECK(fm.rows() == 80);
    CHECK(fm.cols() == 20);
  }
  SUBCASE("pool-mean matches the library") {
    REQUIRE(run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "p.tsv", "--features", "pool-mean",
                                 "--vectors", kSeparable + "/word_vectors.txt"})
                .exit_code == 0);
    const auto data = corpus::load_tweets(tweets);
    const auto vectors = corpus::load_word_vectors(kSeparable + "/word_vectors.txt");
    std::vector<features::Doc> docs;
    for (const auto& t : data.tweets()) {
      docs.push_back(normalizer::normalize(t, normalizer::Pipeline::kDefault, corpus::default_vip_table()).tokens);
    }
    const auto expected = features::pool_matrix(docs, data.ids(), vectors, features::Pooling::kMean);
    const auto got = features::load_feature_matrix(dir / "p.tsv");
    CHECK(got.row_ids == expected.row_ids);
    CHECK((got.values - expected.values).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("search logs and seeds") {
  ScratchDir dir;
  const std::string tweets = kSeparable + "/train.jsonl";
  REQUIRE(run_cli(dir.path(), {"featurize", "--in", tweets, "--out", "f.tsv", "--features", "sentvec", "--vectors",
                               kSeparable + "/sentence_vectors.txt"})
              .exit_code == 0);
  const std::vector<std::string> base = {"search", "--features", "f.tsv", "--tweets", tweets};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return run_cli(dir.path(), args);
  };
  REQUIRE(with({"--iters", "1", "--log", "one.jsonl"}).exit_code == 0);
  CHECK(count_lines(corpus::read_file(dir / "one.jsonl")) == 1);

  const auto a = with({"--iters", "15", "--seed", "5", "--log", "a.jsonl", "--threads", "1"});
  const auto b = with({"--iters", "15", "--seed", "5", "--log", "b.jsonl", "--threads", "4"});
  const auto c = with({"--iters", "15", "--seed", "6", "--log", "c.jsonl"});
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(corpus::read_file(dir / "a.jsonl") == corpus::read_file(dir / "b.jsonl"));
  CHECK(corpus::read_file(dir / "a.jsonl") != corpus::read_file(dir / "c.jsonl"));
  CHECK(nlohmann::json::parse(a.out).contains("kernel"));

  REQUIRE(with({"--log", "svm.jsonl"}).exit_code == 0);
  CHECK(count_lines(corpus::read_file(dir / "svm.jsonl")) == 1000);
  REQUIRE(with({"--model", "logreg", "--log", "lr.jsonl"}).exit_code == 0);
  CHECK(count_lines(corpus::read_file(dir / "lr.jsonl")) == 1250);
}

TEST_CASE("smoke pipeline reruns are byte-identical") {
  ScratchDir a, b;
  const auto ra = run_smoke(a.path());
  const auto rb = run_smoke(b.path());
  REQUIRE_MESSAGE(ra.exit_code == 0, ra.err);
  REQUIRE_MESSAGE(rb.exit_code == 0, rb.err);
  CHECK(ra.out == corpus::read_file(kSeparable + "/expected/smoke_eval.tsv"));
  CHECK(ra.out == rb.out);
  for (const auto& f : smoke_outputs()) {
    INFO(f);
    CHECK(corpus::read_file(a / f) == corpus::read_file(b / f));
    CHECK(manifest_sans_timestamps(a / (f + ".manifest.json")) ==
          manifest_sans_timestamps(b / (f + ".manifest.json")));
  }
  const auto m = nlohmann::json::parse(corpus::read_file(a / "run.tsv.manifest.json"));
  CHECK(m["outputs"]["run.tsv"] == manifest::sha256_file(a / "run.tsv"));
  CHECK(m["inputs"]["model.txt"] == manifest::sha256_file(a / "model.txt"));
}

TEST_CASE("oof, average and stack") {
  ScratchDir dir;
  const std::string train = kSeparable + "/train.jsonl";
  const std::string test = kSeparable + "/test.jsonl";
  auto ok = [&](std::vector<std::string> args) {
    const auto r = run_cli(dir.path(), args);
    INFO(r.err);
    REQUIRE(r.exit_code == 0);
  };
  ok({"featurize", "--in", train, "--out", "train.tsv", "--features", "sentvec", "--vectors",
      kSeparable + "/sentence_vectors.txt"});
  ok({"featurize", "--in", test, "--out", "test.tsv", "--features", "sentvec", "--vectors",
      kSeparable + "/sentence_vectors.txt"});
  corpus::write_file(dir / "svm.json", "{\"model\": \"svm\", \"kernel\": \"linear\", \"C\": 1.0}");
  corpus::write_file(dir / "lr.json", "{\"model\": \"logreg\", \"C\": 1.0}");
  ok({"oof", "--features", "train.tsv", "--tweets", train, "--config", "svm.json", "--out", "oof.tsv", "--run-id",
      "svm"});
  ok({"oof", "--features", "train.tsv", "--tweets", train, "--config", "svm.json", "--out", "oof2.tsv", "--run-id",
      "svm", "--threads", "1"});
  CHECK(corpus::read_file(dir / "oof.tsv") == corpus::read_file(dir / "oof2.tsv"));
  CHECK(ap_of_run(dir / "oof.tsv", train) == 1.0);

  ok({"train", "--features", "train.tsv", "--tweets", train, "--config", "svm.json", "--out", "svm.model"});
  ok({"predict", "--model", "svm.model", "--features", "test.tsv", "--out", "svm.tsv", "--run-id", "svm-test"});
  ok({"train", "--features", "train.tsv", "--tweets", train, "--config", "lr.json", "--out", "lr.model"});
  ok({"predict", "--model", "lr.model", "--features", "test.tsv", "--out", "lr.tsv", "--run-id", "lr-test"});

  ok({"ensemble", "average", "--runs", "svm.tsv", "lr.tsv", "--out", "avg.tsv"});
  const auto avg = ensemble::load_score_file(dir / "avg.tsv");
  CHECK(avg.name == "avg(svm-test+lr-test)");
  CHECK(ap_of_run(dir / "avg.tsv", test) == 1.0);
  CHECK(run_cli(dir.path(), {"ensemble", "average", "--runs", "svm.tsv", "oof.tsv", "--out", "x.tsv"}).exit_code == 2);

  // One upstream plus all twelve metadata features through logistic regression.
  ok({"ensemble", "stack", "--train-runs", "oof.tsv", "--train-tweets", train, "--runs", "svm.tsv", "--tweets", test,
      "--fact", kSeparable + "/factuality.csv", "--out", "primary.tsv"});
  CHECK(ap_of_run(dir / "primary.tsv", test) == 1.0);
  const auto m = nlohmann::json::parse(corpus::read_file(dir / "primary.tsv.manifest.json"));
  CHECK(m["config"]["metadata_columns"] == "12");
  ok({"ensemble", "stack", "--train-runs", "oof.tsv", "--train-tweets", train, "--runs", "svm.tsv", "--tweets", test,
      "--fact", kSeparable + "/factuality.csv", "--out", "primary2.tsv"});
  CHECK(corpus::read_file(dir / "primary.tsv") == corpus::read_file(dir / "primary2.tsv"));

  CHECK(run_cli(dir.path(), {"ensemble", "stack", "--train-runs", "oof.tsv", "--train-tweets", train, "--runs",
                             "svm.tsv", "--tweets", test, "--metadata", "10", "--out", "x.tsv"})
            .exit_code == 1);
  CHECK(run_cli(dir.path(), {"ensemble", "stack", "--train-runs", "oof.tsv", "oof2.tsv", "--train-tweets", train,
                             "--runs", "svm.tsv", "--tweets", test, "--out", "x.tsv"})
            .exit_code == 1);
}

}  // namespace
}  // namespace checkworthy::testing
