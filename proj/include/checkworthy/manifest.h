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

#ifndef CHECKWORTHY_MANIFEST_H_
#define CHECKWORTHY_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

// Run manifests: what produced an output, for reproducibility audits.
namespace checkworthy::manifest {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

struct RunManifest {
  std::vector<std::string> command;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> inputs;   // path -> sha256
  std::map<std::string, std::string> outputs;  // path -> sha256
  std::map<std::string, std::string> config;   // flag or setting -> value
  std::string version;
  // Kept apart so everything else is byte-identical across reruns.
  std::string started_at;
  std::string finished_at;

  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
};

// UTC, second resolution.
std::string utc_now();

std::string format_manifest(const RunManifest& m);
// Written to `<output>.manifest.json`.
std::filesystem::path manifest_path(const std::filesystem::path& output);
void write_manifest(const std::filesystem::path& output, const RunManifest& m);

const char* version();

}  // namespace checkworthy::manifest

#endif  // CHECKWORTHY_MANIFEST_H_
