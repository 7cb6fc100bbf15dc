// Copyright 2026 The Greencell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GREENCELL_ERROR_HPP_
#define GREENCELL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace greencell {

enum class Errc {
  invalid_parameter = 1,
  domain_error,
  no_sign_change,
  non_convergence,
  overflow,
  infeasible,
  non_finite,
  io_error,
  parse_error,
};

std::string_view to_string(Errc code);

// All library failures are reported through this exception type. The code is
// what the C API forwards; the message names the offending key or value.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Thrown when a throughput target cannot be met. Carries the largest
// long-term average number of users any admissible policy reaches.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& message, double max_achievable)
      : Error(Errc::infeasible, message), max_achievable_(max_achievable) {}

  double max_achievable() const noexcept { return max_achievable_; }

 private:
  double max_achievable_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace greencell

#endif  // GREENCELL_ERROR_HPP_
