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

#include "greencell/suboptimal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "greencell/error.hpp"
#include "greencell/expectation.hpp"
#include "greencell/scaling.hpp"

namespace greencell {

namespace {

constexpr double kPi = std::numbers::pi;

// Integral of g f over [c, lambda_max] for many c: pieces between fixed
// nodes are integrated once, so each query costs one partial piece.
class TailIntegral {
 public:
  TailIntegral(RealFn g, const DensityDistribution& dist, int pieces, const QuadOptions& opts)
      : g_(std::move(g)), dist_(dist), opts_(opts) {
    const double lmax = dist.lambda_max();
    for (int i = 0; i <= pieces; ++i) nodes_.push_back(lmax * i / pieces);
    for (double b : dist.breakpoints()) nodes_.push_back(b);
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    suffix_.assign(nodes_.size(), 0.0);
    for (std::size_t i = nodes_.size() - 1; i-- > 0;) {
      suffix_[i] = suffix_[i + 1] + piece(nodes_[i], nodes_[i + 1]);
    }
  }

  double operator()(double c) const {
    if (c <= nodes_.front()) return suffix_.front();
    if (c >= nodes_.back()) return 0.0;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), c);
    const std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
    return piece(c, nodes_[k]) + suffix_[k];
  }

 private:
  double piece(double a, double b) const {
    return integrate([&](double l) { return g_(l) * dist_.pdf(l); }, a, b, {}, opts_);
  }

  RealFn g_;
  const DensityDistribution& dist_;
  QuadOptions opts_;
  std::vector<double> nodes_;
  std::vector<double> suffix_;
};

// Golden-section minimum of f on [a, b].
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, int iters = 60) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-12 * std::max(1.0, std::abs(b)); ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

void check_target(double u_avg) {
  if (!(u_avg > 0.0) || !std::isfinite(u_avg)) {
    fail(Errc::invalid_parameter, "u_avg must be finite and > 0");
  }
}

[[noreturn]] void infeasible(Scheme s, double u_avg, double best) {
  std::ostringstream os;
  os << to_string(s) << ": throughput target " << u_avg << " exceeds the maximum achievable "
     << best;
  throw InfeasibleError(os.str(), best);
}

double ar_x(double lambda, double power, const Model& m, const RootOptions& opts) {
  return lambda > 0.0 ? max_range_x(lambda, power, m, opts) : 0.0;
}

SchemeResult finish(SchemeResult r, const DensityDistribution& dist, const Model& m,
                    const SchemeOptions& opts) {
  const auto policy = scheme_policy(r, m, opts.root);
  r.metrics = evaluate(policy, dist, m, opts.quad);
  auto grid = uniform_grid(dist.lambda_max(), opts.table_points);
  if (r.cutoff > 0.0 && r.cutoff < dist.lambda_max()) {
    grid.push_back(r.cutoff);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }
  r.table.reserve(grid.size());
  for (double l : grid) {
    const double x = policy.x_of_lambda(l);
    r.table.push_back({l, std::sqrt(x), bs_power_x(x, l, m), kPi * l * x});
  }
  return r;
}

// Smallest x with pi x M >= u, M the tail mean density.
double fixed_x(double u_avg, double tail_mean, const RootOptions& opts) {
  const auto gap = [&](double x) { return kPi * x * tail_mean - u_avg; };
  const double hi = grow_until([&](double x) { return gap(x) >= 0.0; }, 1.0);
  const double x = bisect(gap, Bracket{0.0, hi, Sign::negative, Sign::positive}, opts);
  return x + opts.rel_tol * std::max(1.0, x);
}

// Largest t in [0, 1] with g(t * lambda_max) >= 0 for decreasing g, g(0) >= 0.
template <typename G>
double last_nonnegative(G&& g, double lambda_max, const RootOptions& opts) {
  const auto in_t = [&](double t) { return g(t * lambda_max); };
  if (in_t(1.0) >= 0.0) return lambda_max;
  if (!(in_t(0.0) > 0.0)) return 0.0;
  const double t = bisect(in_t, Bracket{0.0, 1.0, Sign::positive, Sign::negative}, opts);
  return std::max(0.0, t - opts.rel_tol) * lambda_max;
}

struct FrSearch {
  double u_avg;
  const DensityDistribution& dist;
  const Model& m;
  const SchemeOptions& opts;
  double x_cap;  // largest x meeting P_max at lambda_max

  double tail_mean(double c) const {
    return conditional_expect([](double l) { return l; }, dist, c, {}, opts.quad);
  }

  // Objective at cut-off c; +inf when the radius needed breaks P_max.
  double objective(double c, double* x_out = nullptr) const {
    const double mean = tail_mean(c);
    if (!(mean > 0.0)) return std::numeric_limits<double>::infinity();
    const double x = fixed_x(u_avg, mean, opts.root);
    if (x > x_cap) return std::numeric_limits<double>::infinity();
    if (x_out) *x_out = x;
    const double on =
        conditional_expect([&](double l) { return bs_power_x(x, l, m); }, dist, c, {}, opts.quad);
    return on + m.params().sleep_power * dist.cdf(c);
  }
};

FrSearch make_fr(double u_avg, const DensityDistribution& dist, const Model& m,
                 const SchemeOptions& opts) {
  return FrSearch{u_avg, dist, m, opts, x2_star(dist.lambda_max(), m, opts.root)};
}

SchemeResult fr_result(Scheme s, const FrSearch& fr, double c) {
  SchemeResult r;
  r.scheme = s;
  r.target_users = fr.u_avg;
  r.cutoff = c;
  double x = 0.0;
  if (!std::isfinite(fr.objective(c, &x))) {
    infeasible(s, fr.u_avg, kPi * fr.x_cap * fr.tail_mean(c));
  }
  r.fixed_radius_m = std::sqrt(x);
  return r;
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::frw_ofc: return "FRwOFC";
    case Scheme::frw_oofc: return "FRwoOFC";
    case Scheme::arw_ofc: return "ARwOFC";
    case Scheme::arw_oofc: return "ARwoOFC";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view s) {
  for (Scheme k : kAllSchemes) {
    const std::string_view tag = to_string(k);
    if (s == tag) return k;
    // "FRw/OFC" style: the tag with a slash after the third character.
    if (s.size() == tag.size() + 1 && s.substr(0, 3) == tag.substr(0, 3) && s[3] == '/' &&
        s.substr(4) == tag.substr(3)) {
      return k;
    }
  }
  return std::nullopt;
}

bool is_fixed_range(Scheme s) { return s == Scheme::frw_ofc || s == Scheme::frw_oofc; }

RangePolicy scheme_policy(const SchemeResult& r, const Model& m, const RootOptions& opts) {
  RangePolicy p;
  const double c = r.cutoff;
  if (c > 0.0) p.breakpoints.push_back(c);
  if (is_fixed_range(r.scheme)) {
    const double x = r.fixed_radius_m * r.fixed_radius_m;
    p.x_of_lambda = [x, c](double l) { return l >= c ? x : 0.0; };
  } else {
    const double power = r.fixed_power_w;
    p.x_of_lambda = [power, c, &m, opts](double l) {
      return l >= c ? ar_x(l, power, m, opts) : 0.0;
    };
  }
  return p;
}

SchemeResult frw_with_cutoff(double u_avg, double cutoff, const DensityDistribution& dist,
                             const Model& m, const SchemeOptions& opts) {
  check_target(u_avg);
  if (!(cutoff >= 0.0) || !(cutoff < dist.lambda_max())) {
    fail(Errc::domain_error, "cutoff must lie in [0, lambda_max)");
  }
  const auto fr = make_fr(u_avg, dist, m, opts);
  return finish(fr_result(cutoff == 0.0 ? Scheme::frw_oofc : Scheme::frw_ofc, fr, cutoff), dist, m,
                opts);
}

SchemeResult frw_oofc(double u_avg, const DensityDistribution& dist, const Model& m,
                      const SchemeOptions& opts) {
  check_target(u_avg);
  const auto fr = make_fr(u_avg, dist, m, opts);
  return finish(fr_result(Scheme::frw_oofc, fr, 0.0), dist, m, opts);
}

SchemeResult frw_ofc(double u_avg, const DensityDistribution& dist, const Model& m,
                     const SchemeOptions& opts) {
  check_target(u_avg);
  const auto fr = make_fr(u_avg, dist, m, opts);
  const double lmax = dist.lambda_max();
  // Tail mean needed for the capped radius; the feasible cut-offs are [0, c_max].
  const double need = u_avg / (kPi * fr.x_cap);
  if (fr.tail_mean(0.0) < need) infeasible(Scheme::frw_ofc, u_avg, kPi * fr.x_cap * fr.tail_mean(0.0));
  const auto slack = [&](double c) { return fr.tail_mean(c) - need; };
  const double c_edge = std::min(last_nonnegative(slack, lmax, opts.root),
                                 std::nextafter(lmax, 0.0));
  const double c_max = c_edge;

  const int n = opts.line_points;
  double best_c = 0.0;
  double best = fr.objective(0.0);
  int best_k = 0;
  for (int k = 1; k < n; ++k) {
    const double c = lmax * k / n;
    if (c > c_max) break;
    const double v = fr.objective(c);
    if (v < best) {
      best = v;
      best_c = c;
      best_k = k;
    }
  }
  if (const double v = fr.objective(c_edge); v < best) {
    best = v;
    best_c = c_edge;
    best_k = -1;
  }
  if (best_k >= 0) {
    const double a = std::max(0.0, lmax * (best_k - 1) / n);
    const double b = std::min(c_edge, lmax * (best_k + 1) / n);
    if (b > a) {
      const auto [c, v] = golden_min([&](double x) { return fr.objective(x); }, a, b);
      if (v < best) {
        best = v;
        best_c = c;
      }
    }
  }
  return finish(fr_result(Scheme::frw_ofc, fr, best_c), dist, m, opts);
}

namespace {

double ar_users(double power, const DensityDistribution& dist, const Model& m,
                const SchemeOptions& opts) {
  return expect([&](double l) { return kPi * l * ar_x(l, power, m, opts.root); }, dist, {},
                opts.quad);
}

// Minimal constant consumption meeting u_avg with the BS always on.
double ar_min_power(double u_avg, const DensityDistribution& dist, const Model& m,
                    const SchemeOptions& opts) {
  const auto& p = m.params();
  const double best = ar_users(p.max_bs_power, dist, m, opts);
  if (best < u_avg) infeasible(Scheme::arw_oofc, u_avg, best);
  if (best == u_avg) return p.max_bs_power;
  const auto gap = [&](double power) {
    return power <= p.static_power ? -u_avg : ar_users(power, dist, m, opts) - u_avg;
  };
  const double power =
      bisect(gap, Bracket{p.static_power, p.max_bs_power, Sign::negative, Sign::positive},
             opts.root);
  return std::min(p.max_bs_power, power + opts.root.rel_tol * std::max(1.0, power));
}

struct ArCut {
  double cutoff;
  double objective;
};

// Largest cut-off keeping E_c[U] >= u_avg at this power, or nullopt.
std::optional<ArCut> ar_cutoff(double u_avg, double power, const DensityDistribution& dist,
                               const Model& m, const SchemeOptions& opts) {
  const TailIntegral tail([&](double l) { return kPi * l * ar_x(l, power, m, opts.root); }, dist,
                          opts.tail_pieces, opts.quad);
  if (tail(0.0) < u_avg) return std::nullopt;
  const auto gap = [&](double c) { return tail(c) - u_avg; };
  const double c = last_nonnegative(gap, dist.lambda_max(), opts.root);
  const double off = dist.cdf(c);
  return ArCut{c, power * (1.0 - off) + m.params().sleep_power * off};
}

SchemeResult ar_result(Scheme s, double u_avg, double power, double c) {
  SchemeResult r;
  r.scheme = s;
  r.target_users = u_avg;
  r.cutoff = c;
  r.fixed_power_w = power;
  return r;
}

}  // namespace

SchemeResult arw_oofc(double u_avg, const DensityDistribution& dist, const Model& m,
                      const SchemeOptions& opts) {
  check_target(u_avg);
  const double power = ar_min_power(u_avg, dist, m, opts);
  return finish(ar_result(Scheme::arw_oofc, u_avg, power, 0.0), dist, m, opts);
}

SchemeResult arw_with_power(double u_avg, double fixed_power, const DensityDistribution& dist,
                            const Model& m, const SchemeOptions& opts) {
  check_target(u_avg);
  const auto& p = m.params();
  if (!(fixed_power > p.static_power) || fixed_power > p.max_bs_power) {
    fail(Errc::domain_error, "fixed power must lie in (static_power, max_bs_power]");
  }
  const auto cut = ar_cutoff(u_avg, fixed_power, dist, m, opts);
  if (!cut) infeasible(Scheme::arw_ofc, u_avg, ar_users(fixed_power, dist, m, opts));
  return finish(ar_result(Scheme::arw_ofc, u_avg, fixed_power, cut->cutoff), dist, m, opts);
}

SchemeResult arw_ofc(double u_avg, const DensityDistribution& dist, const Model& m,
                     const SchemeOptions& opts) {
  check_target(u_avg);
  const auto& p = m.params();
  const double p_min = ar_min_power(u_avg, dist, m, opts);
  const double span = p.max_bs_power - p.static_power;
  const int n = opts.line_points;

  double best_power = p_min;
  ArCut best{0.0, p_min};
  int best_k = -1;
  for (int k = 1; k <= n; ++k) {
    const double power = p.static_power + span * k / n;
    if (power < p_min) continue;
    const auto cut = ar_cutoff(u_avg, power, dist, m, opts);
    if (cut && cut->objective < best.objective) {
      best = *cut;
      best_power = power;
      best_k = k;
    }
  }
  if (best_k > 0) {
    const double a = std::max(p_min, p.static_power + span * (best_k - 1) / n);
    const double b = std::min(p.max_bs_power, p.static_power + span * (best_k + 1) / n);
    const auto f = [&](double power) {
      const auto cut = ar_cutoff(u_avg, power, dist, m, opts);
      return cut ? cut->objective : std::numeric_limits<double>::infinity();
    };
    const auto [power, v] = golden_min(f, a, b);
    if (v < best.objective) {
      best = *ar_cutoff(u_avg, power, dist, m, opts);
      best_power = power;
    }
  }
  return finish(ar_result(Scheme::arw_ofc, u_avg, best_power, best.cutoff), dist, m, opts);
}

SchemeResult run_scheme(Scheme s, double u_avg, const DensityDistribution& dist, const Model& m,
                        const SchemeOptions& opts) {
  switch (s) {
    case Scheme::frw_ofc: return frw_ofc(u_avg, dist, m, opts);
    case Scheme::frw_oofc: return frw_oofc(u_avg, dist, m, opts);
    case Scheme::arw_ofc: return arw_ofc(u_avg, dist, m, opts);
    case Scheme::arw_oofc: return arw_oofc(u_avg, dist, m, opts);
  }
  fail(Errc::invalid_parameter, "unknown scheme");
}

}  // namespace greencell
