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

#ifndef CHECKWORTHY_COMMON_H_
#define CHECKWORTHY_COMMON_H_

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace checkworthy {

// Base class for every error the toolkit raises. The CLI maps the three
// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad flags, wrong argument combinations, or a precondition the caller
// controls directly (e.g. k larger than a class count).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A solver failed to converge or produced non-finite values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Warnings go to stderr unless a sink is installed. Install the sink once at
// startup; it is not synchronized.
using WarningSink = std::function<void(std::string_view)>;
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace checkworthy

#endif  // CHECKWORTHY_COMMON_H_
