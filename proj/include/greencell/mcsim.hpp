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

#ifndef GREENCELL_MCSIM_HPP_
#define GREENCELL_MCSIM_HPP_

#include <cstdint>
#include <vector>

#include "greencell/params.hpp"
#include "greencell/rng.hpp"

namespace greencell {

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;  // +inf when fewer than two trials
  long long trials = 0;
};

struct McConfig {
  long long trials = 100000;
  std::uint64_t seed = 1;
  // 0 picks std::thread::hardware_concurrency(). Results do not depend on
  // this: trials are cut into fixed blocks, each with its own stream, and
  // merged in block order.
  unsigned workers = 0;
};

inline constexpr long long kTrialsPerBlock = 4096;

// User distances for one snapshot of a Poisson field in a disc of radius R.
std::vector<double> sample_users(double density, double radius, Rng& rng);

// Empirical mean of the total STPC transmit power over snapshots.
McEstimate simulate_total_power(double density, double radius, const Model& m,
                                const McConfig& cfg);

// Empirical probability that the L-block average rate of one user at
// distance r, among n, misses the target rate at the given transmit power.
McEstimate simulate_outage(double r, int n, double per_user_power, const Model& m,
                           const McConfig& cfg);

}  // namespace greencell

#endif  // GREENCELL_MCSIM_HPP_
