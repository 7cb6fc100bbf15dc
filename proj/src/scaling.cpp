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

#include "greencell/scaling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "greencell/error.hpp"

namespace greencell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

void check_state(const CellState& s) {
  if (!(s.radius >= 0.0) || !(s.density >= 0.0) || !std::isfinite(s.radius) ||
      !std::isfinite(s.density)) {
    std::ostringstream os;
    os << "cell state requires finite radius >= 0 and density >= 0, got R=" << s.radius
       << ", lambda=" << s.density;
    fail(Errc::domain_error, os.str());
  }
}

[[noreturn]] void overflow(double bits) {
  std::ostringstream os;
  os << "per-cell load exponent " << bits << " bits exceeds " << kMaxExponentBits;
  fail(Errc::overflow, os.str());
}

// Scaling law in x = R^2 without the overflow check; +inf past the guard.
double transmit_x_saturating(double x, double density, const Model& m) {
  const auto& c = m.constants();
  const double bits = c.d2 * kPi * density * x;
  if (bits > kMaxExponentBits) return std::numeric_limits<double>::infinity();
  return c.d1 * std::pow(x, 0.5 * m.params().pathloss_exp) * std::expm1(kLn2 * bits);
}

}  // namespace

double stpc_power(double r, int n, const Model& m) {
  if (!(r >= 0.0) || n < 1) fail(Errc::domain_error, "stpc_power requires r >= 0 and n >= 1");
  const auto& p = m.params();
  const auto& c = m.constants();
  const double bits = n * c.c2;
  if (bits > kMaxExponentBits) overflow(bits);
  const double scale = p.snr_gap * p.noise_psd * p.bandwidth_w / (p.ref_pathloss * c.c1);
  const double rel = std::max(r / p.ref_distance, 1.0);
  return scale * (std::expm1(kLn2 * bits) / n) * std::pow(rel, p.pathloss_exp);
}

double avg_transmit_power_x(double x, double density, const Model& m) {
  if (!(x >= 0.0) || !(density >= 0.0)) {
    fail(Errc::domain_error, "avg_transmit_power requires x >= 0 and density >= 0");
  }
  if (x == 0.0 || density == 0.0) return 0.0;
  const double bits = m.constants().d2 * kPi * density * x;
  if (bits > kMaxExponentBits) overflow(bits);
  return transmit_x_saturating(x, density, m);
}

double avg_transmit_power(const CellState& s, const Model& m) {
  check_state(s);
  return avg_transmit_power_x(s.radius * s.radius, s.density, m);
}

double avg_transmit_power_exact(const CellState& s, const Model& m) {
  check_state(s);
  if (s.radius == 0.0 || s.density == 0.0) return 0.0;
  const auto& p = m.params();
  const auto& c = m.constants();
  const double alpha = p.pathloss_exp;
  const double r0 = p.ref_distance;
  const double mean_users = kPi * s.density * s.radius * s.radius;
  // E[2^(N C2) - 1] for N ~ Poisson(mean_users).
  const double per_user_gain = std::expm1(kLn2 * c.c2);
  const double nats = per_user_gain * mean_users;
  if (nats / kLn2 > kMaxExponentBits) overflow(nats / kLn2);
  double geometry;
  if (s.radius >= r0) {
    geometry = std::pow(s.radius, alpha) +
               alpha * std::pow(r0, alpha + 2.0) / (2.0 * s.radius * s.radius);
  } else {
    // Every user sits inside the flat near-field zone.
    geometry = 0.5 * (alpha + 2.0) * std::pow(r0, alpha);
  }
  return c.d1 * geometry * std::expm1(nats);
}

double bs_power_x(double x, double density, const Model& m) {
  const auto& p = m.params();
  if (!(x > 0.0)) {
    if (x == 0.0) return p.sleep_power;
    fail(Errc::domain_error, "bs_power requires x >= 0");
  }
  return p.amp_scaling * avg_transmit_power_x(x, density, m) + p.static_power;
}

double bs_power(const CellState& s, const Model& m) {
  check_state(s);
  return bs_power_x(s.radius * s.radius, s.density, m);
}

double max_range_x(double density, double budget, const Model& m, const RootOptions& opts) {
  const auto& p = m.params();
  if (!(budget > p.static_power)) {
    std::ostringstream os;
    os << "power budget " << budget << " W does not exceed static power " << p.static_power << " W";
    fail(Errc::infeasible, os.str());
  }
  if (!(density > 0.0) || !std::isfinite(density)) {
    fail(Errc::domain_error, "max_range requires density > 0");
  }
  const double transmit_budget = (budget - p.static_power) / p.amp_scaling;
  const auto excess = [&](double x) {
    return transmit_x_saturating(x, density, m) - transmit_budget;
  };
  const double hi = grow_until([&](double x) { return excess(x) > 0.0; }, 1.0);
  return bisect(excess, Bracket{0.0, hi, Sign::negative, Sign::positive}, opts);
}

double max_range(double density, double budget, const Model& m, const RootOptions& opts) {
  return std::sqrt(max_range_x(density, budget, m, opts));
}

}  // namespace greencell
