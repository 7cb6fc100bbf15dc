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

#include "greencell/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "greencell/error.hpp"
#include "greencell/expectation.hpp"
#include "greencell/scaling.hpp"

namespace greencell {

PolicyMetrics evaluate(const RangePolicy& policy, const DensityDistribution& dist, const Model& m,
                       const QuadOptions& opts) {
  const auto& x_of = policy.x_of_lambda;
  const auto& cuts = policy.breakpoints;
  PolicyMetrics out;
  out.avg_power_w = expect([&](double l) { return bs_power_x(x_of(l), l, m); }, dist, cuts, opts);
  out.avg_users = expect(
      [&](double l) { return std::numbers::pi * l * x_of(l); }, dist, cuts, opts);
  out.on_probability =
      std::clamp(expect([&](double l) { return x_of(l) > 0.0 ? 1.0 : 0.0; }, dist, cuts, opts),
                 0.0, 1.0);

  std::vector<double> probes;
  const double lmax = dist.lambda_max();
  probes.reserve(kPeakSamples + 3 * cuts.size() + 1);
  for (int i = 0; i <= kPeakSamples; ++i) probes.push_back(lmax * i / kPeakSamples);
  for (double b : cuts) {
    if (!(b >= 0.0 && b <= lmax)) continue;
    probes.push_back(b);
    probes.push_back(std::nextafter(b, 0.0));
    probes.push_back(std::nextafter(b, lmax));
  }
  double peak = 0.0;
  for (double l : probes) {
    if (l < 0.0 || l > lmax) continue;
    const double x = x_of(l);
    peak = std::max(peak, x > 0.0 ? bs_power_x(x, l, m) : m.params().sleep_power);
  }
  out.peak_bs_power_w = peak;
  return out;
}

TabulatedRange::TabulatedRange(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) fail(Errc::invalid_parameter, "policy table is empty");
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (!(rows_[i].lambda > rows_[i - 1].lambda)) {
      std::ostringstream os;
      os << "policy table densities must increase strictly (row " << i << ")";
      fail(Errc::invalid_parameter, os.str());
    }
  }
}

double TabulatedRange::operator()(double lambda) const {
  if (lambda <= rows_.front().lambda) {
    return lambda == rows_.front().lambda ? rows_.front().x : rows_.front().x_left;
  }
  if (lambda >= rows_.back().lambda) {
    return lambda == rows_.back().lambda ? rows_.back().x : rows_.back().x_right;
  }
  auto it = std::lower_bound(rows_.begin(), rows_.end(), lambda,
                             [](const Row& r, double l) { return r.lambda < l; });
  if (it->lambda == lambda) return it->x;
  const Row& hi = *it;
  const Row& lo = *(it - 1);
  const double t = (lambda - lo.lambda) / (hi.lambda - lo.lambda);
  return lo.x_right + t * (hi.x_left - lo.x_right);
}

std::vector<double> TabulatedRange::jumps() const {
  std::vector<double> out;
  for (const auto& r : rows_) {
    if (r.x_left != r.x_right || r.x != r.x_left) out.push_back(r.lambda);
  }
  return out;
}

RangePolicy TabulatedRange::as_policy() const {
  return RangePolicy{[self = *this](double l) { return self(l); }, jumps()};
}

}  // namespace greencell
