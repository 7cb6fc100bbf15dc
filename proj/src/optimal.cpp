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

#include "greencell/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "greencell/error.hpp"
#include "greencell/expectation.hpp"
#include "greencell/scaling.hpp"

namespace greencell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be finite and > 0, got " << v;
    fail(Errc::domain_error, os.str());
  }
}

// Locates the single sign change of g on [floor, ceiling] * lambda_max.
// `before` is the sign g takes below the crossing.
template <typename G>
std::pair<double, CriticalFlag> find_crossing(G&& g, Sign before, double lambda_max,
                                              const OptimalOptions& opts) {
  const auto in_t = [&](double t) { return g(t * lambda_max); };
  const double lo = opts.scan_floor;
  const double hi = opts.scan_ceiling;
  const Sign s_lo = sign_of(in_t(lo));
  const Sign s_hi = sign_of(in_t(hi));
  if (s_lo != before) return {0.0, CriticalFlag::below_range};
  if (s_hi == before) return {kInf, CriticalFlag::above_range};
  const double t = bisect(in_t, Bracket{lo, hi, s_lo, s_hi}, opts.root);
  return {t * lambda_max, CriticalFlag::finite};
}

CaseTag decide_case(double lambda1, double lambda2, double tol) {
  return lambda2 >= lambda1 * (1.0 - tol) ? CaseTag::case_A : CaseTag::case_B;
}

bool is_finite_inside(double v, double lo, double hi) { return std::isfinite(v) && v > lo && v < hi; }

std::vector<double> finite_criticals(const CriticalDensities& c, double lambda_max) {
  std::vector<double> out;
  for (double v : {c.lambda1, c.lambda2, c.lambda3}) {
    if (is_finite_inside(v, 0.0, lambda_max)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CriticalDensities never_on() {
  CriticalDensities c;
  c.case_tag = CaseTag::case_A;
  return c;
}

}  // namespace

std::string_view to_string(SolveMode mode) {
  return mode == SolveMode::exact ? "exact" : "hse";
}

std::string_view to_string(CaseTag tag) {
  return tag == CaseTag::case_A ? "case_A" : "case_B";
}

std::string_view to_string(CriticalFlag flag) {
  switch (flag) {
    case CriticalFlag::finite: return "finite";
    case CriticalFlag::above_range: return "above_range";
    case CriticalFlag::below_range: return "below_range";
  }
  return "unknown";
}

double lagrangian_x(double x, double lambda, double mu, const Model& m) {
  return bs_power_x(x, lambda, m) - mu * kPi * lambda * x;
}

double stationarity(double x, double lambda, double mu, const Model& m) {
  if (!(x > 0.0)) return -mu * kPi * lambda;
  const auto& p = m.params();
  const auto& c = m.constants();
  const double alpha = p.pathloss_exp;
  const double bits = c.d2 * kPi * lambda * x;
  if (bits > kMaxExponentBits) return kInf;
  const double half = 0.5 * alpha;
  const double grow = half * std::pow(x, half - 1.0) * std::expm1(kLn2 * bits);
  const double load = kLn2 * c.d2 * kPi * lambda * std::pow(x, half) * std::exp2(bits);
  return p.amp_scaling * c.d1 * (grow + load) - mu * kPi * lambda;
}

double x1_star(double lambda, double mu, const Model& m, const RootOptions& opts) {
  require_positive(lambda, "x1_star density");
  require_positive(mu, "x1_star dual variable");
  const auto f = [&](double x) { return stationarity(x, lambda, mu, m); };
  const double hi = grow_until([&](double x) { return f(x) > 0.0; }, 1.0);
  return bisect(f, Bracket{0.0, hi, Sign::negative, Sign::positive}, opts);
}

double x2_star(double lambda, const Model& m, const RootOptions& opts) {
  return max_range_x(lambda, m.params().max_bs_power, m, opts);
}

double subproblem(double lambda, double mu, const Model& m, const RootOptions& opts) {
  if (!(lambda >= 0.0) || !(mu >= 0.0)) {
    fail(Errc::domain_error, "subproblem requires density >= 0 and mu >= 0");
  }
  if (lambda == 0.0 || mu == 0.0) return 0.0;
  const auto& p = m.params();
  const double x1 = x1_star(lambda, mu, m, opts);
  if (bs_power_x(x1, lambda, m) <= p.max_bs_power) {
    return lagrangian_x(x1, lambda, mu, m) < p.sleep_power ? x1 : 0.0;
  }
  const double x2 = x2_star(lambda, m, opts);
  return lagrangian_x(x2, lambda, mu, m) < p.sleep_power ? x2 : 0.0;
}

CriticalDensities critical_densities(double mu, double lambda_max, const Model& m,
                                     const OptimalOptions& opts) {
  require_positive(mu, "critical_densities dual variable");
  require_positive(lambda_max, "critical_densities lambda_max");
  const auto& p = m.params();
  CriticalDensities c;
  const auto lagr1 = [&](double l) {
    return lagrangian_x(x1_star(l, mu, m, opts.root), l, mu, m) - p.sleep_power;
  };
  const auto peak1 = [&](double l) {
    return bs_power_x(x1_star(l, mu, m, opts.root), l, m) - p.max_bs_power;
  };
  const auto lagr2 = [&](double l) {
    return lagrangian_x(x2_star(l, m, opts.root), l, mu, m) - p.sleep_power;
  };
  std::tie(c.lambda1, c.flag1) = find_crossing(lagr1, Sign::positive, lambda_max, opts);
  std::tie(c.lambda2, c.flag2) = find_crossing(peak1, Sign::negative, lambda_max, opts);
  std::tie(c.lambda3, c.flag3) = find_crossing(lagr2, Sign::positive, lambda_max, opts);
  c.case_tag = decide_case(c.lambda1, c.lambda2, opts.case_rel_tol);
  return c;
}

double hse_x1(double lambda, double mu, const Model& m) {
  require_positive(lambda, "hse_x1 density");
  require_positive(mu, "hse_x1 dual variable");
  const auto& p = m.params();
  const auto& c = m.constants();
  const double alpha = p.pathloss_exp;
  const double mu_e = mu / p.amp_scaling;
  const double k = 2.0 * c.d3 * kPi * lambda / alpha;
  return lambert_w0(k * std::pow(mu_e / (c.d1 * c.d3), 2.0 / alpha)) / k;
}

double hse_x2(double lambda, const Model& m) {
  require_positive(lambda, "hse_x2 density");
  const auto& p = m.params();
  const auto& c = m.constants();
  const double alpha = p.pathloss_exp;
  const double ptmax = (p.max_bs_power - p.static_power) / p.amp_scaling;
  if (!(ptmax > 0.0)) fail(Errc::infeasible, "max_bs_power does not exceed static_power");
  const double k = 2.0 * c.d3 * kPi * lambda / alpha;
  return lambert_w0(k * std::pow(ptmax / c.d1, 2.0 / alpha)) / k;
}

CriticalDensities hse_critical_densities(double mu, const Model& m, double case_rel_tol) {
  require_positive(mu, "hse_critical_densities dual variable");
  const auto& p = m.params();
  const auto& k = m.constants();
  const double alpha = p.pathloss_exp;
  const double a = p.amp_scaling;
  const double mu_e = mu / a;
  const double pc_e = (p.static_power - p.sleep_power) / a;
  const double pmax_e = (p.max_bs_power - p.sleep_power) / a;
  const double ptmax_e = (p.max_bs_power - p.static_power) / a;
  const double d1 = k.d1;
  const double d3 = k.d3;
  const double scale = std::pow(d1 * d3 / mu_e, 2.0 / alpha);

  const auto flag_of = [](double v) {
    return std::isfinite(v) ? CriticalFlag::finite : CriticalFlag::above_range;
  };
  CriticalDensities c;
  c.lambda1 = (1.0 / (kPi * d3) + pc_e / (mu_e * kPi)) * scale *
              std::exp(2.0 / alpha + 2.0 * d3 * pc_e / (mu_e * alpha));
  c.flag1 = flag_of(c.lambda1);
  const double margin = mu_e - d3 * ptmax_e;
  if (margin > 0.0) {
    c.lambda2 = alpha * ptmax_e / (2.0 * kPi * margin) * scale * std::exp(d3 * ptmax_e / margin);
  } else {
    c.lambda2 = kInf;
  }
  c.flag2 = flag_of(c.lambda2);
  c.lambda3 = pmax_e / (mu_e * kPi) * std::pow(d1 / ptmax_e, 2.0 / alpha) *
              std::exp(2.0 * d3 * pmax_e / (mu_e * alpha));
  c.flag3 = flag_of(c.lambda3);
  c.case_tag = decide_case(c.lambda1, c.lambda2, case_rel_tol);
  return c;
}

double spectral_efficiency(double x, double lambda, const Model& m) {
  return m.constants().d2 * kPi * lambda * x;
}

double structured_x(double lambda, double mu, const CriticalDensities& crit, SolveMode mode,
                    const Model& m, const RootOptions& opts) {
  if (!(lambda > 0.0) || !(mu > 0.0)) return 0.0;
  const bool stationary = crit.case_tag == CaseTag::case_A;
  if (lambda <= crit.cutoff()) return 0.0;
  const bool use_x1 = stationary && lambda <= crit.lambda2;
  if (mode == SolveMode::exact) {
    return use_x1 ? x1_star(lambda, mu, m, opts) : x2_star(lambda, m, opts);
  }
  const double approx = use_x1 ? hse_x1(lambda, mu, m) : hse_x2(lambda, m);
  return std::min(approx, x2_star(lambda, m, opts));
}

RangePolicy make_range_policy(double mu, const CriticalDensities& crit, SolveMode mode,
                              double lambda_max, const Model& m, const RootOptions& opts) {
  return RangePolicy{
      [mu, crit, mode, &m, opts](double l) { return structured_x(l, mu, crit, mode, m, opts); },
      finite_criticals(crit, lambda_max)};
}

TabulatedRange AdaptationPolicy::range() const {
  std::vector<TabulatedRange::Row> rows;
  rows.reserve(table.size());
  for (const auto& r : table) {
    const double x = r.radius_m * r.radius_m;
    rows.push_back({r.lambda, x, x, x});
  }
  for (const auto& j : jumps) {
    auto it = std::lower_bound(rows.begin(), rows.end(), j.lambda,
                               [](const TabulatedRange::Row& r, double l) { return r.lambda < l; });
    if (it != rows.end() && it->lambda == j.lambda) {
      it->x_left = j.x_left;
      it->x_right = j.x_right;
    }
  }
  return TabulatedRange(std::move(rows));
}

std::vector<double> uniform_grid(double lambda_max, int points) {
  require_positive(lambda_max, "grid lambda_max");
  if (points < 2) fail(Errc::invalid_parameter, "grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lambda_max * i / (points - 1);
  g.back() = lambda_max;
  return g;
}

AdaptationPolicy policy_for_mu(double mu, std::span<const double> grid, const Model& m,
                               SolveMode mode, const OptimalOptions& opts) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) fail(Errc::domain_error, "mu must be finite and >= 0");
  if (grid.size() < 2) fail(Errc::invalid_parameter, "policy grid needs at least two points");
  const double lmax = grid.back();
  AdaptationPolicy out;
  out.mu = mu;
  out.mode = mode;
  if (mu == 0.0) {
    out.criticals = never_on();
  } else if (mode == SolveMode::exact) {
    out.criticals = critical_densities(mu, lmax, m, opts);
  } else {
    out.criticals = hse_critical_densities(mu, m, opts.case_rel_tol);
  }
  const auto cuts = finite_criticals(out.criticals, lmax);
  std::vector<double> lambdas(grid.begin(), grid.end());
  lambdas.insert(lambdas.end(), cuts.begin(), cuts.end());
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  const auto x_at = [&](double l) { return structured_x(l, mu, out.criticals, mode, m, opts.root); };
  out.table.reserve(lambdas.size());
  for (double l : lambdas) {
    const double x = x_at(l);
    out.table.push_back({l, std::sqrt(x), bs_power_x(x, l, m), kPi * l * x});
    if (x > 0.0) {
      out.min_spectral_efficiency = std::min(out.min_spectral_efficiency, spectral_efficiency(x, l, m));
    }
  }
  for (double c : cuts) {
    out.jumps.push_back({c, x_at(std::nextafter(c, 0.0)), x_at(std::nextafter(c, kInf))});
  }
  return out;
}

double max_achievable_users(const DensityDistribution& dist, const Model& m,
                            const OptimalOptions& opts) {
  return expect(
      [&](double l) { return l > 0.0 ? kPi * l * x2_star(l, m, opts.root) : 0.0; }, dist, {},
      opts.quad);
}

SolveResult solve(double u_avg, const DensityDistribution& dist, const Model& m, SolveMode mode,
                  const OptimalOptions& opts) {
  if (!(u_avg > 0.0) || !std::isfinite(u_avg)) {
    fail(Errc::invalid_parameter, "u_avg must be finite and > 0");
  }
  const double lmax = dist.lambda_max();
  SolveResult out;
  out.target_users = u_avg;
  out.max_achievable_users = max_achievable_users(dist, m, opts);
  if (out.max_achievable_users < u_avg) {
    std::ostringstream os;
    os << "throughput target " << u_avg << " exceeds the maximum achievable "
       << out.max_achievable_users;
    throw InfeasibleError(os.str(), out.max_achievable_users);
  }

  const auto criticals_for = [&](double mu) {
    return mode == SolveMode::exact ? critical_densities(mu, lmax, m, opts)
                                    : hse_critical_densities(mu, m, opts.case_rel_tol);
  };
  const auto users_at = [&](double mu) {
    const auto policy = make_range_policy(mu, criticals_for(mu), mode, lmax, m, opts.root);
    return expect([&](double l) { return kPi * l * policy.x_of_lambda(l); }, dist,
                  policy.breakpoints, opts.quad);
  };

  const double tol = opts.dual_rel_tol * u_avg;
  double lo = 0.0;
  double hi = 1.0;
  double u_hi = users_at(hi);
  while (u_hi < u_avg - tol) {
    lo = hi;
    hi *= 2.0;
    if (hi > opts.dual_hi_limit) {
      std::ostringstream os;
      os << "throughput target " << u_avg << " not reached for mu up to " << opts.dual_hi_limit
         << "; best " << u_hi;
      throw InfeasibleError(os.str(), u_hi);
    }
    u_hi = users_at(hi);
  }

  double mu = hi;
  int it = 0;
  if (std::abs(u_hi - u_avg) > tol) {
    for (;; ++it) {
      if (it >= opts.dual_max_iter) {
        std::ostringstream os;
        os << "dual bisection did not converge after " << opts.dual_max_iter
           << " iterations, mu in [" << lo << ", " << hi << "]";
        fail(Errc::non_convergence, os.str());
      }
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi) || hi - lo <= 1e-14 * hi) {
        mu = hi;
        out.jump_limited = true;
        break;
      }
      const double u_mid = users_at(mid);
      if (std::abs(u_mid - u_avg) <= tol) {
        mu = mid;
        break;
      }
      if (u_mid < u_avg) {
        lo = mid;
      } else {
        hi = mid;
        u_hi = u_mid;
      }
    }
  }
  out.dual_iterations = it;

  const auto grid = uniform_grid(lmax, opts.grid_points);
  out.policy = policy_for_mu(mu, grid, m, mode, opts);
  out.metrics = evaluate(make_range_policy(mu, out.policy.criticals, mode, lmax, m, opts.root), dist,
                         m, opts.quad);
  return out;
}

}  // namespace greencell
