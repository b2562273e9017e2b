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

#include "checkworthy/manifest.h"

#include <chrono>
#include <cstdio>

#include <json.hpp>
#include <openssl/evp.h>

#include "checkworthy/common.h"
#include "checkworthy/corpus.h"

namespace checkworthy::manifest {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(corpus::read_file(path)); }

void RunManifest::add_input(const std::filesystem::path& path) { inputs[path.string()] = sha256_file(path); }

void RunManifest::add_output(const std::filesystem::path& path) { outputs[path.string()] = sha256_file(path); }

std::string utc_now() {
  return corpus::format_timestamp(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

std::string format_manifest(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["config"] = m.config;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["timestamps"] = {{"started", m.started_at}, {"finished", m.finished_at}};
  return j.dump(2) + "\n";
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  return std::filesystem::path(output.string() + ".manifest.json");
}

void write_manifest(const std::filesystem::path& output, const RunManifest& m) {
  corpus::write_file(manifest_path(output), format_manifest(m));
}

const char* version() { return CHECKWORTHY_VERSION; }

}  // namespace checkworthy::manifest
