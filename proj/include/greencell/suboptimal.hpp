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

#ifndef GREENCELL_SUBOPTIMAL_HPP_
#define GREENCELL_SUBOPTIMAL_HPP_

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "greencell/metrics.hpp"
#include "greencell/optimal.hpp"
#include "greencell/params.hpp"
#include "greencell/traffic.hpp"

namespace greencell {

// Fixed or adaptive range, with or without on/off control.
enum class Scheme { frw_ofc, frw_oofc, arw_ofc, arw_oofc };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::frw_ofc, Scheme::frw_oofc,
                                                      Scheme::arw_ofc, Scheme::arw_oofc};

std::string_view to_string(Scheme s);
// Accepts the canonical tags (FRwOFC, ...) and the slash forms (FRw/OFC, ...).
std::optional<Scheme> parse_scheme(std::string_view s);
bool is_fixed_range(Scheme s);

struct SchemeOptions {
  int line_points = 512;
  int table_points = 2048;
  int tail_pieces = 64;
  RootOptions root;
  QuadOptions quad;
};

struct SchemeResult {
  Scheme scheme = Scheme::frw_oofc;
  double target_users = 0.0;
  double cutoff = 0.0;          // on for lambda >= cutoff
  double fixed_radius_m = 0.0;  // FR schemes only
  double fixed_power_w = 0.0;   // AR schemes only
  PolicyMetrics metrics;
  std::vector<PolicyRow> table;
};

// x(lambda) of a scheme defined by its cut-off and fixed radius or power.
RangePolicy scheme_policy(const SchemeResult& r, const Model& m, const RootOptions& opts = {});

SchemeResult frw_ofc(double u_avg, const DensityDistribution& dist, const Model& m,
                     const SchemeOptions& opts = {});
SchemeResult frw_oofc(double u_avg, const DensityDistribution& dist, const Model& m,
                      const SchemeOptions& opts = {});
SchemeResult arw_ofc(double u_avg, const DensityDistribution& dist, const Model& m,
                     const SchemeOptions& opts = {});
SchemeResult arw_oofc(double u_avg, const DensityDistribution& dist, const Model& m,
                      const SchemeOptions& opts = {});

SchemeResult run_scheme(Scheme s, double u_avg, const DensityDistribution& dist, const Model& m,
                        const SchemeOptions& opts = {});

// The FR schemes only with lambda_c pinned (lambda_c = 0 reproduces FRw/oOFC).
SchemeResult frw_with_cutoff(double u_avg, double cutoff, const DensityDistribution& dist,
                             const Model& m, const SchemeOptions& opts = {});
// The AR scheme at a given constant consumption, with its largest cut-off.
SchemeResult arw_with_power(double u_avg, double fixed_power, const DensityDistribution& dist,
                            const Model& m, const SchemeOptions& opts = {});

}  // namespace greencell

#endif  // GREENCELL_SUBOPTIMAL_HPP_
