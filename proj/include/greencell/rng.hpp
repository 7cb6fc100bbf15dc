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

#ifndef GREENCELL_RNG_HPP_
#define GREENCELL_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace greencell {

// Deterministic random source. The engine is std::mt19937_64 seeded through
// std::seed_seq from (seed, stream); both are fully specified by the C++
// standard, and every variate below is derived from raw engine output with
// explicit formulas, so streams are reproducible across toolchains.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm =
      "mt19937_64/seed_seq(seed_lo,seed_hi,stream_lo,stream_hi);u53;exp=-log1p(-u);"
      "poisson=inversion(chunk<=256)";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Unit-mean exponential.
  double exponential();
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t poisson_small(double mean);

  std::mt19937_64 engine_;
};

}  // namespace greencell

#endif  // GREENCELL_RNG_HPP_
