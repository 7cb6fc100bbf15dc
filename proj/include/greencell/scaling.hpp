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

#ifndef GREENCELL_SCALING_HPP_
#define GREENCELL_SCALING_HPP_

#include <numbers>

#include "greencell/numerics.hpp"
#include "greencell/params.hpp"

namespace greencell {

struct CellState {
  double radius;   // meters
  double density;  // users per square meter
};

// Exponents (in bits) above this are rejected as unphysical loads.
inline constexpr double kMaxExponentBits = 1024.0;

// Per-user transmit power meeting the outage target at distance r with n
// users sharing the band equally. Flat inside the reference distance.
double stpc_power(double r, int n, const Model& m);

// Average total transmit power D1 R^alpha (2^(D2 pi lambda R^2) - 1).
double avg_transmit_power(const CellState& s, const Model& m);
double avg_transmit_power_x(double x, double density, const Model& m);

// Same average without dropping the near-field term or linearizing
// 2^(v/W) - 1; this is what Monte Carlo converges to.
double avg_transmit_power_exact(const CellState& s, const Model& m);

// Consumption: a * transmit + P_c when on (R > 0), P_sleep when off.
double bs_power(const CellState& s, const Model& m);
double bs_power_x(double x, double density, const Model& m);

// Radius at which consumption equals `budget`. Requires budget > P_c and
// density > 0.
double max_range(double density, double budget, const Model& m, const RootOptions& opts = {});
double max_range_x(double density, double budget, const Model& m, const RootOptions& opts = {});

// Average number of users in coverage, pi lambda R^2.
inline double throughput(const CellState& s) {
  return std::numbers::pi * s.density * s.radius * s.radius;
}

}  // namespace greencell

#endif  // GREENCELL_SCALING_HPP_
