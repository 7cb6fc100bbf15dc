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

#include "greencell/rng.hpp"

#include <cmath>

#include "greencell/error.hpp"

namespace greencell {

namespace {

std::seed_seq make_seq(std::uint64_t seed, std::uint64_t stream) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream),
                       static_cast<std::uint32_t>(stream >> 32)};
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  auto seq = make_seq(seed, stream);
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::exponential() { return -std::log1p(-uniform()); }

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    fail(Errc::domain_error, "poisson mean must be finite and >= 0");
  }
  // A Poisson(m) variate is a sum of independent Poisson chunks; chunking
  // keeps exp(-chunk) far from underflow.
  constexpr double kChunk = 256.0;
  std::uint64_t count = 0;
  while (mean > kChunk) {
    count += poisson_small(kChunk);
    mean -= kChunk;
  }
  return count + poisson_small(mean);
}

std::uint64_t Rng::poisson_small(double mean) {
  if (mean == 0.0) return 0;
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t n = 0;
  while (u >= cdf) {
    ++n;
    p *= mean / static_cast<double>(n);
    const double next = cdf + p;
    if (next == cdf) break;  // tail mass below resolution
    cdf = next;
  }
  return n;
}

}  // namespace greencell
