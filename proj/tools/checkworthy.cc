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

// Command-line front end: normalize, featurize, search, train, predict,
// evaluate, oof, ensemble, fixture.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "checkworthy/common.h"
#include "checkworthy/corpus.h"
#include "checkworthy/ensemble.h"
#include "checkworthy/features.h"
#include "checkworthy/fixtures.h"
#include "checkworthy/hypersearch.h"
#include "checkworthy/manifest.h"
#include "checkworthy/models.h"
#include "checkworthy/normalizer.h"
#include "checkworthy/ranking_eval.h"

namespace fs = std::filesystem;

namespace checkworthy::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 42;

// Collects manifest fields as a command runs; written next to each output.
class Run {
 public:
  Run(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) m_.command.emplace_back(argv[i]);
    m_.command[0] = fs::path(m_.command[0]).filename().string();
    m_.version = manifest::version();
    m_.started_at = manifest::utc_now();
  }

  void seed(std::uint64_t s) { m_.seed = s; }
  void input(const fs::path& p) { m_.add_input(p); }
  void set(const std::string& key, const std::string& value) { m_.config[key] = value; }

  void finish(const std::vector<fs::path>& outputs) {
    for (const auto& p : outputs) m_.add_output(p);
    m_.finished_at = manifest::utc_now();
    for (const auto& p : outputs) manifest::write_manifest(p, m_);
  }

 private:
  manifest::RunManifest m_;
};

corpus::VipTable vip_table(const std::string& path, Run& run) {
  if (path.empty()) return corpus::default_vip_table();
  run.input(path);
  return corpus::load_vip_table(path);
}

corpus::FactualityTable fact_table(const std::string& path, Run& run, bool warn_missing) {
  if (path.empty()) {
    if (warn_missing) warn("no --fact table given; factuality columns will be zero");
    return {};
  }
  run.input(path);
  return corpus::load_factuality_table(path);
}

std::optional<corpus::Timestamp> collection_date(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return corpus::parse_timestamp(text);
}

std::vector<features::Doc> normalized_docs(const corpus::Dataset& data, normalizer::Pipeline pipeline,
                                           const corpus::VipTable& vip) {
  std::vector<features::Doc> docs;
  docs.reserve(data.size());
  for (const auto& t : data.tweets()) docs.push_back(normalizer::normalize(t, pipeline, vip).tokens);
  return docs;
}

// Labels for the rows of `fm`, looked up in `tweets`.
std::vector<int> labels_for(const features::FeatureMatrix& fm, const corpus::Dataset& tweets) {
  std::vector<int> labels;
  labels.reserve(fm.rows());
  for (const auto& id : fm.row_ids) {
    const corpus::Tweet* t = tweets.find(id);
    if (t == nullptr) throw DataError("feature row " + id + " has no tweet record");
    if (!t->label) throw DataError("tweet " + id + " has no check_worthiness label");
    labels.push_back(*t->label);
  }
  return labels;
}

// Stratified folds over exactly the feature rows.
std::vector<int> folds_for(const features::FeatureMatrix& fm, const corpus::Dataset& tweets, int k,
                           std::uint64_t seed) {
  std::vector<corpus::Tweet> rows;
  rows.reserve(fm.rows());
  for (const auto& id : fm.row_ids) rows.push_back(tweets.at(id));
  const corpus::Dataset subset(std::move(rows), tweets.collection_date());
  return corpus::stratified_kfold(subset, k, seed).folds_for(fm.row_ids);
}

models::ModelConfig read_config(const std::string& path, Run& run) {
  run.input(path);
  return hypersearch::config_from_json(corpus::read_file(path));
}

// ---------------------------------------------------------------- normalize

struct NormalizeOpts {
  std::string in, out, pipeline = "default", vip;
};

int cmd_normalize(const NormalizeOpts& o, Run& run) {
  const auto pipeline = normalizer::parse_pipeline(o.pipeline);
  const auto vip = vip_table(o.vip, run);
  run.input(o.in);
  run.set("pipeline", o.pipeline);
  const auto data = corpus::load_tweets(o.in);
  std::string out;
  for (const auto& t : data.tweets()) {
    const auto n = normalizer::normalize(t, pipeline, vip);
    out += t.tweet_id + "\t" + normalizer::detokenize(n.tokens) + "\n";
  }
  corpus::write_file(o.out, out);
  run.finish({o.out});
  return 0;
}

// ---------------------------------------------------------------- featurize

struct FeaturizeOpts {
  std::string in, out, pipeline = "default", vip, vectors, fact, date, fit_on;
  std::vector<std::string> features;
};

int cmd_featurize(const FeaturizeOpts& o, Run& run) {
  const auto pipeline = normalizer::parse_pipeline(o.pipeline);
  for (const auto& f : o.features) {
    static const std::vector<std::string> known = {"tfidf", "pool-mean", "pool-max", "pool-tfidf", "sentvec",
                                                   "metadata"};
    if (std::find(known.begin(), known.end(), f) == known.end()) {
      throw UsageError("unknown feature set '" + f + "'");
    }
    if ((f == "sentvec" || f.rfind("pool-", 0) == 0) && o.vectors.empty()) {
      throw UsageError("--features " + f + " needs --vectors");
    }
  }
  const auto vip = vip_table(o.vip, run);
  run.input(o.in);
  const auto data = corpus::load_tweets(o.in, collection_date(o.date));
  run.set("pipeline", o.pipeline);
  run.set("collection_date", corpus::format_timestamp(data.collection_date()));
  const auto ids = data.ids();
  const auto docs = normalized_docs(data, pipeline, vip);

  std::optional<features::TfidfModel> idf;
  const auto tfidf_model = [&]() -> const features::TfidfModel& {
    if (!idf) {
      if (o.fit_on.empty() || o.fit_on == o.in) {
        idf = features::fit_tfidf(docs);
      } else {
        run.input(o.fit_on);
        const auto fit_data = corpus::load_tweets(o.fit_on);
        idf = features::fit_tfidf(normalized_docs(fit_data, pipeline, vip));
      }
      run.set("tfidf_fit_on", o.fit_on.empty() ? o.in : o.fit_on);
    }
    return *idf;
  };
  std::optional<corpus::KeyedVectors> vectors;
  const auto vector_table = [&]() -> const corpus::KeyedVectors& {
    if (!vectors) {
      run.input(o.vectors);
      vectors = corpus::load_word_vectors(o.vectors);
    }
    return *vectors;
  };

  std::vector<features::FeatureMatrix> parts;
  std::string names;
  for (const auto& f : o.features) {
    names += (names.empty() ? "" : ",") + f;
    if (f == "tfidf") {
      parts.push_back(features::tfidf_transform(tfidf_model(), docs, ids));
    } else if (f == "pool-mean") {
      parts.push_back(features::pool_matrix(docs, ids, vector_table(), features::Pooling::kMean));
    } else if (f == "pool-max") {
      parts.push_back(features::pool_matrix(docs, ids, vector_table(), features::Pooling::kMax));
    } else if (f == "pool-tfidf") {
      parts.push_back(features::pool_matrix(docs, ids, vector_table(), features::Pooling::kTfidf, &tfidf_model()));
    } else if (f == "sentvec") {
      parts.push_back(features::sentence_matrix(ids, vector_table()));
    } else {
      parts.push_back(features::metadata_matrix(data, fact_table(o.fact, run, true)));
    }
  }
  run.set("features", names);
  features::save_feature_matrix(o.out, features::concat_features(parts));
  run.finish({o.out});
  return 0;
}

// ---------------------------------------------------------------- search

struct SearchOpts {
  std::string features, tweets, model = "svm", log, out;
  int iters = 0;
  int k = 5;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

int cmd_search(const SearchOpts& o, Run& run) {
  auto space = hypersearch::SearchSpace::defaults(hypersearch::parse_model_kind(o.model));
  if (o.iters != 0) space.n_iter = o.iters;
  space.validate();
  run.seed(o.seed);
  run.input(o.features);
  run.input(o.tweets);
  run.set("model", o.model);
  run.set("iters", std::to_string(space.n_iter));
  run.set("k", std::to_string(o.k));
  const auto fm = features::load_feature_matrix(o.features);
  const auto tweets = corpus::load_tweets(o.tweets);
  const auto labels = labels_for(fm, tweets);
  const auto folds = folds_for(fm, tweets, o.k, o.seed);
  const auto result = hypersearch::random_search(space, fm, labels, folds, o.seed, o.threads);
  const auto& best = result.trials[static_cast<std::size_t>(result.best)];

  const std::string fragment = hypersearch::config_to_json(best.config) + "\n";
  std::cout << fragment;
  char summary[160];
  std::snprintf(summary, sizeof(summary), "best trial %d of %zu: mean MAP %.4f, mean macro-F1 %.4f\n", best.index,
                result.trials.size(), best.mean_map, best.mean_macro_f1);
  std::cerr << summary;

  std::vector<fs::path> outputs;
  const fs::path log = o.log.empty() ? fs::path(o.out.empty() ? "" : o.out + ".trials.jsonl") : fs::path(o.log);
  if (!o.out.empty()) {
    corpus::write_file(o.out, fragment);
    outputs.push_back(o.out);
  }
  if (!log.empty()) {
    corpus::write_file(log, hypersearch::format_trial_log(result.trials));
    outputs.push_back(log);
  }
  run.finish(outputs);
  return 0;
}

// ---------------------------------------------------------------- train

struct TrainOpts {
  std::string features, tweets, config, out;
};

int cmd_train(const TrainOpts& o, Run& run) {
  const auto config = read_config(o.config, run);
  run.input(o.features);
  run.input(o.tweets);
  run.set("config", hypersearch::config_to_json(config));
  const auto fm = features::load_feature_matrix(o.features);
  const auto labels = labels_for(fm, corpus::load_tweets(o.tweets));
  const auto model = models::train(config, fm.values, labels);
  if (const auto* lr = std::get_if<models::TrainedLogReg>(&model); lr != nullptr && !lr->converged) {
    warn("logistic regression stopped at max_iter before reaching tol");
  }
  models::save_model(o.out, model);
  run.finish({o.out});
  return 0;
}

// ---------------------------------------------------------------- predict

struct PredictOpts {
  std::string model, features, out, run_id = "run", topic = "covid-19";
};

int cmd_predict(const PredictOpts& o, Run& run) {
  run.input(o.model);
  run.input(o.features);
  run.set("run_id", o.run_id);
  run.set("topic", o.topic);
  const auto model = models::load_model(o.model);
  const auto fm = features::load_feature_matrix(o.features);
  run.set("score_kind", models::scores_are_probabilities(model) ? "probability" : "margin");
  const Vector s = models::predict(model, fm.values);
  std::map<std::string, double> scores;
  for (std::size_t i = 0; i < fm.rows(); ++i) scores[fm.row_ids[i]] = s[static_cast<Eigen::Index>(i)];
  corpus::write_run_file(o.out, o.run_id, scores, o.topic);
  run.finish({o.out});
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOpts {
  std::string run, gold, score_kind = "margin";
  bool header = false;
};

int cmd_evaluate(const EvaluateOpts& o) {
  const auto kind = ranking_eval::parse_score_kind(o.score_kind);
  std::map<std::string, double> scores;
  for (const auto& row : corpus::read_run_file(o.run)) {
    if (!scores.emplace(row.tweet_id, row.score).second) throw DataError("run scores tweet " + row.tweet_id + " twice");
  }
  std::map<std::string, int> gold;
  const auto gold_tweets = corpus::load_tweets(o.gold);
  for (const auto& t : gold_tweets.tweets()) {
    if (!t.label) throw DataError("gold tweet " + t.tweet_id + " has no check_worthiness label");
    gold[t.tweet_id] = *t.label;
  }
  const auto report = ranking_eval::evaluate(scores, gold, kind);
  if (o.header) std::cout << ranking_eval::report_header(report) << "\n";
  std::cout << ranking_eval::format_report(report) << "\n";
  return 0;
}

// ---------------------------------------------------------------- oof

struct OofOpts {
  std::string features, tweets, config, out, run_id = "oof", topic = "covid-19";
  int k = 5;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

int cmd_oof(const OofOpts& o, Run& run) {
  const auto config = read_config(o.config, run);
  run.seed(o.seed);
  run.input(o.features);
  run.input(o.tweets);
  run.set("config", hypersearch::config_to_json(config));
  run.set("k", std::to_string(o.k));
  const auto fm = features::load_feature_matrix(o.features);
  const auto tweets = corpus::load_tweets(o.tweets);
  const auto labels = labels_for(fm, tweets);
  const auto folds = folds_for(fm, tweets, o.k, o.seed);
  auto scores = ensemble::oof_scores(config, fm, labels, folds, o.threads);
  scores.name = o.run_id;
  ensemble::save_score_file(o.out, scores, o.topic);
  run.finish({o.out});
  return 0;
}

// ---------------------------------------------------------------- ensemble

struct AverageOpts {
  std::vector<std::string> runs;
  std::string out, run_id, topic = "covid-19";
};

int cmd_average(const AverageOpts& o, Run& run) {
  std::vector<ensemble::ScoreFile> files;
  for (const auto& r : o.runs) {
    run.input(r);
    files.push_back(ensemble::load_score_file(r));
  }
  auto avg = ensemble::average_runs(files);
  if (!o.run_id.empty()) avg.name = o.run_id;
  ensemble::save_score_file(o.out, avg, o.topic);
  run.finish({o.out});
  return 0;
}

struct StackOpts {
  std::vector<std::string> train_runs, runs;
  std::string train_tweets, tweets, fact, config, out, run_id = "primary", topic = "covid-19";
  int metadata = features::kMetadataColumns;
};

int cmd_stack(const StackOpts& o, Run& run) {
  if (o.train_runs.size() != o.runs.size()) {
    throw UsageError("--train-runs and --runs must list the same number of score files");
  }
  models::ModelConfig config = models::LogRegConfig{};
  if (!o.config.empty()) config = read_config(o.config, run);
  run.set("config", hypersearch::config_to_json(config));
  run.set("metadata_columns", std::to_string(o.metadata));
  run.set("stacker_columns", "one per upstream score file");
  const auto fact = fact_table(o.fact, run, true);

  ensemble::StackedDesign design;
  design.metadata_columns = o.metadata;
  std::vector<ensemble::ScoreFile> train_up, test_up;
  for (std::size_t i = 0; i < o.runs.size(); ++i) {
    run.input(o.train_runs[i]);
    run.input(o.runs[i]);
    train_up.push_back(ensemble::load_score_file(o.train_runs[i]));
    // Columns pair up by position; the design names them after the
    // training-side files.
    design.upstream.push_back(train_up.back().name);
    test_up.push_back(ensemble::load_score_file(o.runs[i]));
    test_up.back().name = design.upstream.back();
  }
  run.input(o.train_tweets);
  run.input(o.tweets);
  const auto train_tweets = corpus::load_tweets(o.train_tweets);
  const auto tweets = corpus::load_tweets(o.tweets);
  const auto stacker = ensemble::fit_stacker(design, train_up, train_tweets, fact, config);
  const auto scores = ensemble::predict_stacked(stacker, test_up, tweets, fact, o.run_id);
  ensemble::save_score_file(o.out, scores, o.topic);
  run.finish({o.out});
  return 0;
}

// ---------------------------------------------------------------- fixture

struct FixtureOpts {
  std::string out;
  int n = 80;
  int d = 10;
  double margin = 2.0;
  std::uint64_t seed = 7;
};

int cmd_fixture(const FixtureOpts& o) {
  fixtures::write_fixture(fixtures::make_separable_fixture(o.n, o.d, o.margin, o.seed), o.out);
  return 0;
}

int run_main(int argc, char** argv) {
  CLI::App app{"Check-worthiness ranking toolkit"};
  app.set_version_flag("--version", std::string(manifest::version()));
  app.require_subcommand(1);

  NormalizeOpts norm;
  auto* normalize = app.add_subcommand("normalize", "Normalize tweet text; one `id<TAB>tokens` line per tweet");
  normalize->add_option("--in", norm.in, "Tweet records (JSON lines)")->required();
  normalize->add_option("--out", norm.out, "Output file")->required();
  normalize->add_option("--pipeline", norm.pipeline, "default, corona or swc")->capture_default_str();
  normalize->add_option("--vip", norm.vip, "VIP handle table (default: bundled)");

  FeaturizeOpts feat;
  auto* featurize = app.add_subcommand("featurize", "Build a feature matrix");
  featurize->add_option("--in", feat.in, "Tweet records")->required();
  featurize->add_option("--out", feat.out, "Feature matrix (TSV)")->required();
  featurize
      ->add_option("--features", feat.features,
                   "tfidf, pool-mean, pool-max, pool-tfidf, sentvec or metadata; repeat to concatenate")
      ->required()
      ->delimiter(',');
  featurize->add_option("--pipeline", feat.pipeline, "Normalizer pipeline")->capture_default_str();
  featurize->add_option("--vip", feat.vip, "VIP handle table");
  featurize->add_option("--vectors", feat.vectors, "Word vectors (pool-*) or sentence vectors (sentvec)");
  featurize->add_option("--fact", feat.fact, "Factuality table (metadata)");
  featurize->add_option("--collection-date", feat.date, "Reference date for account age (default: latest created_at)");
  featurize->add_option("--fit-on", feat.fit_on, "Tweets to fit idf on (default: --in)");

  SearchOpts srch;
  auto* search = app.add_subcommand("search", "Randomized hyperparameter search by cross-validated MAP");
  search->add_option("--features", srch.features, "Feature matrix")->required();
  search->add_option("--tweets", srch.tweets, "Labeled tweet records")->required();
  search->add_option("--model", srch.model, "svm or logreg")->capture_default_str();
  search->add_option("--iters", srch.iters, "Trials (default: 1000 for svm, 1250 for logreg)");
  search->add_option("--k", srch.k, "Folds")->capture_default_str();
  search->add_option("--seed", srch.seed, "Master seed")->capture_default_str();
  search->add_option("--threads", srch.threads, "Worker threads (0: all cores)")->capture_default_str();
  search->add_option("--out", srch.out, "Write the best config fragment here");
  search->add_option("--log", srch.log, "Trial log (default: <out>.trials.jsonl)");

  TrainOpts trn;
  auto* train = app.add_subcommand("train", "Train one model on all rows");
  train->add_option("--features", trn.features, "Feature matrix")->required();
  train->add_option("--tweets", trn.tweets, "Labeled tweet records")->required();
  train->add_option("--config", trn.config, "Config fragment (JSON)")->required();
  train->add_option("--out", trn.out, "Model file")->required();

  PredictOpts pred;
  auto* predict = app.add_subcommand("predict", "Score a feature matrix into a run file");
  predict->add_option("--model", pred.model, "Model file")->required();
  predict->add_option("--features", pred.features, "Feature matrix")->required();
  predict->add_option("--out", pred.out, "Run file")->required();
  predict->add_option("--run-id", pred.run_id, "Run id column")->capture_default_str();
  predict->add_option("--topic", pred.topic, "Topic id column")->capture_default_str();

  EvaluateOpts eval;
  auto* evaluate = app.add_subcommand("evaluate", "MAP, R-Pr, P@k and macro-F1 of a run file");
  evaluate->add_option("--run", eval.run, "Run file")->required();
  evaluate->add_option("--gold", eval.gold, "Labeled tweet records")->required();
  evaluate->add_option("--score-kind", eval.score_kind, "probability (threshold 0.5) or margin (threshold 0)")
      ->capture_default_str();
  evaluate->add_flag("--header", eval.header, "Print a header line first");

  OofOpts oof;
  auto* oofc = app.add_subcommand("oof", "Out-of-fold scores for stacking");
  oofc->add_option("--features", oof.features, "Feature matrix")->required();
  oofc->add_option("--tweets", oof.tweets, "Labeled tweet records")->required();
  oofc->add_option("--config", oof.config, "Config fragment (JSON)")->required();
  oofc->add_option("--out", oof.out, "Run file")->required();
  oofc->add_option("--run-id", oof.run_id, "Run id column")->capture_default_str();
  oofc->add_option("--topic", oof.topic, "Topic id column")->capture_default_str();
  oofc->add_option("--k", oof.k, "Folds")->capture_default_str();
  oofc->add_option("--seed", oof.seed, "Fold seed")->capture_default_str();
  oofc->add_option("--threads", oof.threads, "Worker threads (0: all cores)")->capture_default_str();

  auto* ens = app.add_subcommand("ensemble", "Combine run files");
  ens->require_subcommand(1);
  AverageOpts avg;
  auto* average = ens->add_subcommand("average", "Per-tweet mean of several run files");
  average->add_option("--runs", avg.runs, "Run files")->required();
  average->add_option("--out", avg.out, "Run file")->required();
  average->add_option("--run-id", avg.run_id, "Run id (default: avg(<inputs>))");
  average->add_option("--topic", avg.topic, "Topic id column")->capture_default_str();
  StackOpts stk;
  auto* stack = ens->add_subcommand("stack", "Meta-classifier over upstream scores plus metadata");
  stack->add_option("--train-runs", stk.train_runs, "Out-of-fold upstream run files")->required();
  stack->add_option("--train-tweets", stk.train_tweets, "Labeled tweets for fitting")->required();
  stack->add_option("--runs", stk.runs, "Upstream run files to stack, same order")->required();
  stack->add_option("--tweets", stk.tweets, "Tweets to score")->required();
  stack->add_option("--fact", stk.fact, "Factuality table");
  stack->add_option("--metadata", stk.metadata, "12 (all) or 9 (boolean only)")->capture_default_str();
  stack->add_option("--config", stk.config, "Stacker config fragment (default: logistic regression)");
  stack->add_option("--out", stk.out, "Run file")->required();
  stack->add_option("--run-id", stk.run_id, "Run id column")->capture_default_str();
  stack->add_option("--topic", stk.topic, "Topic id column")->capture_default_str();

  FixtureOpts fix;
  auto* fixture = app.add_subcommand("fixture", "Write the synthetic separable fixture");
  fixture->add_option("--out", fix.out, "Output directory")->required();
  fixture->add_option("--n", fix.n, "Tweets (even)")->capture_default_str();
  fixture->add_option("--d", fix.d, "Vector dimension")->capture_default_str();
  fixture->add_option("--margin", fix.margin, "Class margin")->capture_default_str();
  fixture->add_option("--seed", fix.seed, "Seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  Run run(argc, argv);
  if (normalize->parsed()) return cmd_normalize(norm, run);
  if (featurize->parsed()) return cmd_featurize(feat, run);
  if (search->parsed()) return cmd_search(srch, run);
  if (train->parsed()) return cmd_train(trn, run);
  if (predict->parsed()) return cmd_predict(pred, run);
  if (evaluate->parsed()) return cmd_evaluate(eval);
  if (oofc->parsed()) return cmd_oof(oof, run);
  if (average->parsed()) return cmd_average(avg, run);
  if (stack->parsed()) return cmd_stack(stk, run);
  return cmd_fixture(fix);
}

}  // namespace
}  // namespace checkworthy::cli

int main(int argc, char** argv) {
  using namespace checkworthy;
  try {
    return cli::run_main(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
