// Copyright 2026 The cohloss authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace cohloss {

// Error categories. The numeric values double as process exit codes and as
// the C API status codes, so they must stay stable.
enum class Errc : int {
  argument = 2,     // malformed input / misuse
  validation = 3,   // an invariant or precondition failed
  io = 4,           // file system / parse-from-file failure
  physics = 5,      // a physical consistency check failed at runtime
  vacuum_test = 6,  // linear-optics vacuum preservation test failure
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace cohloss
