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

#ifndef CHECKWORTHY_TESTS_CLI_HARNESS_H_
#define CHECKWORTHY_TESTS_CLI_HARNESS_H_

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "checkworthy/corpus.h"

namespace checkworthy::testing {

inline const std::filesystem::path kCliBinary = CHECKWORTHY_CLI;
inline const std::filesystem::path kSourceDir = CHECKWORTHY_SOURCE_DIR;
inline const std::filesystem::path kFixtureDir = kSourceDir / "fixtures";

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// A fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  ScratchDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("checkworthy-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Runs the checkworthy binary with `args` inside `cwd`.
inline CliResult run_cli(const std::filesystem::path& cwd, const std::vector<std::string>& args) {
  const auto out_path = cwd / ".stdout";
  const auto err_path = cwd / ".stderr";
  std::string cmd = "cd " + shell_quote(cwd.string()) + " && " + shell_quote(kCliBinary.string());
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " > " + shell_quote(out_path.string()) + " 2> " + shell_quote(err_path.string());
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = corpus::read_file(out_path);
  r.err = corpus::read_file(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return r;
}

// Manifest contents without the timestamps field.
inline std::string manifest_sans_timestamps(const std::filesystem::path& manifest) {
  auto j = nlohmann::ordered_json::parse(corpus::read_file(manifest));
  j.erase("timestamps");
  return j.dump();
}

// The smoke pipeline on the bundled separable fixture, run inside `dir`.
// Returns the evaluate output, or the first failing step's stderr.
inline CliResult run_smoke(const std::filesystem::path& dir, const std::string& seed = "42") {
  const std::string fx = (kFixtureDir / "separable").string();
  const std::vector<std::vector<std::string>> steps = {
      {"featurize", "--in", fx + "/train.jsonl", "--out", "train.tsv", "--features", "sentvec", "--vectors",
       fx + "/sentence_vectors.txt"},
      {"featurize", "--in", fx + "/test.jsonl", "--out", "test.tsv", "--features", "sentvec", "--vectors",
       fx + "/sentence_vectors.txt"},
      {"search", "--features", "train.tsv", "--tweets", fx + "/train.jsonl", "--model", "svm", "--iters", "20",
       "--seed", seed, "--out", "best.json"},
      {"train", "--features", "train.tsv", "--tweets", fx + "/train.jsonl", "--config", "best.json", "--out",
       "model.txt"},
      {"predict", "--model", "model.txt", "--features", "test.tsv", "--out", "run.tsv"},
      {"evaluate", "--run", "run.tsv", "--gold", fx + "/test.jsonl", "--header"},
  };
  CliResult last;
  for (const auto& step : steps) {
    last = run_cli(dir, step);
    if (last.exit_code != 0) return last;
  }
  return last;
}

// Files the smoke pipeline writes, each with a manifest next to it.
inline const std::vector<std::string>& smoke_outputs() {
  static const std::vector<std::string> files = {"train.tsv", "test.tsv",  "best.json", "best.json.trials.jsonl",
                                                 "model.txt", "run.tsv"};
  return files;
}

}  // namespace checkworthy::testing

#endif  // CHECKWORTHY_TESTS_CLI_HARNESS_H_
