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

#include "checkworthy/common.h"

#include <iostream>
#include <utility>

namespace checkworthy {
namespace {

WarningSink& sink() {
  static WarningSink s;
  return s;
}

}  // namespace

void set_warning_sink(WarningSink s) { sink() = std::move(s); }

void warn(std::string_view message) {
  if (sink()) {
    sink()(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace checkworthy
