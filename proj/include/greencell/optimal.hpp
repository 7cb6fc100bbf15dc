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

#ifndef GREENCELL_OPTIMAL_HPP_
#define GREENCELL_OPTIMAL_HPP_

#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "greencell/metrics.hpp"
#include "greencell/numerics.hpp"
#include "greencell/params.hpp"
#include "greencell/traffic.hpp"

namespace greencell {

enum class SolveMode { exact, hse };
enum class CaseTag { case_A, case_B };

// How a critical density was obtained. A crossing beyond the scan ceiling is
// reported as +inf (above_range); one below the scan floor as 0.
enum class CriticalFlag { finite, above_range, below_range };

std::string_view to_string(SolveMode mode);
std::string_view to_string(CaseTag tag);
std::string_view to_string(CriticalFlag flag);

struct CriticalDensities {
  double lambda1 = std::numeric_limits<double>::infinity();
  double lambda2 = std::numeric_limits<double>::infinity();
  double lambda3 = std::numeric_limits<double>::infinity();
  CriticalFlag flag1 = CriticalFlag::above_range;
  CriticalFlag flag2 = CriticalFlag::above_range;
  CriticalFlag flag3 = CriticalFlag::above_range;
  CaseTag case_tag = CaseTag::case_A;

  // Density below which the base station sleeps.
  double cutoff() const noexcept { return case_tag == CaseTag::case_A ? lambda1 : lambda3; }
};

struct OptimalOptions {
  RootOptions root;
  QuadOptions quad;
  int grid_points = 2048;
  double scan_ceiling = 1e3;   // critical-density scan limit, in units of lambda_max
  double scan_floor = 1e-9;    // same units
  double dual_rel_tol = 1e-4;
  double dual_hi_limit = 1e12;
  int dual_max_iter = 200;
  double case_rel_tol = 1e-9;
};

// L(x, mu) = P_BS(x, lambda) - mu pi lambda x.
double lagrangian_x(double x, double lambda, double mu, const Model& m);
// dL/dx for x > 0; +inf once the load exponent leaves the guarded range.
double stationarity(double x, double lambda, double mu, const Model& m);

double x1_star(double lambda, double mu, const Model& m, const RootOptions& opts = {});
double x2_star(double lambda, const Model& m, const RootOptions& opts = {});

// Minimizer of L over {0} and the stationary or budget-capped x.
double subproblem(double lambda, double mu, const Model& m, const RootOptions& opts = {});

CriticalDensities critical_densities(double mu, double lambda_max, const Model& m,
                                     const OptimalOptions& opts = {});

// Lambert-W forms valid when the spectral efficiency D2 pi lambda x is large.
double hse_x1(double lambda, double mu, const Model& m);
double hse_x2(double lambda, const Model& m);
CriticalDensities hse_critical_densities(double mu, const Model& m, double case_rel_tol = 1e-9);

// D2 pi lambda x, the quantity the HSE forms assume is large.
double spectral_efficiency(double x, double lambda, const Model& m);

// x(lambda) following the on/off structure implied by the critical densities.
// In hse mode the Lambert-W radii are used and capped at the exact budget
// radius so the peak-power limit still holds.
double structured_x(double lambda, double mu, const CriticalDensities& crit, SolveMode mode,
                    const Model& m, const RootOptions& opts = {});

RangePolicy make_range_policy(double mu, const CriticalDensities& crit, SolveMode mode,
                              double lambda_max, const Model& m, const RootOptions& opts = {});

struct PolicyRow {
  double lambda;
  double radius_m;
  double bs_power_w;
  double users;
};

struct PolicyJump {
  double lambda;
  double x_left;
  double x_right;
};

struct AdaptationPolicy {
  double mu = 0.0;
  CriticalDensities criticals;
  SolveMode mode = SolveMode::exact;
  std::vector<PolicyRow> table;
  std::vector<PolicyJump> jumps;
  // Smallest D2 pi lambda x over the on-region rows (+inf if never on).
  double min_spectral_efficiency = std::numeric_limits<double>::infinity();

  TabulatedRange range() const;
};

// `points` uniform samples on [0, lambda_max], endpoints included.
std::vector<double> uniform_grid(double lambda_max, int points);

AdaptationPolicy policy_for_mu(double mu, std::span<const double> grid, const Model& m,
                               SolveMode mode = SolveMode::exact, const OptimalOptions& opts = {});

struct SolveResult {
  AdaptationPolicy policy;
  PolicyMetrics metrics;
  double target_users = 0.0;
  double max_achievable_users = 0.0;
  // Set when E[U](mu) jumps across the target, so the tolerance cannot be
  // met; metrics.avg_users then holds the nearest value above the target.
  bool jump_limited = false;
  int dual_iterations = 0;
};

// Largest E[U] any admissible policy reaches: x2 at every density.
double max_achievable_users(const DensityDistribution& dist, const Model& m,
                            const OptimalOptions& opts = {});

SolveResult solve(double u_avg, const DensityDistribution& dist, const Model& m,
                  SolveMode mode = SolveMode::exact, const OptimalOptions& opts = {});

}  // namespace greencell

#endif  // GREENCELL_OPTIMAL_HPP_
