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

#ifndef GREENCELL_METRICS_HPP_
#define GREENCELL_METRICS_HPP_

#include <functional>
#include <vector>

#include "greencell/numerics.hpp"
#include "greencell/params.hpp"
#include "greencell/traffic.hpp"

namespace greencell {

struct PolicyMetrics {
  double avg_power_w = 0.0;      // E[P_BS(R(lambda), lambda)]
  double avg_users = 0.0;        // E[pi lambda R(lambda)^2]
  double on_probability = 0.0;   // Pr{R(lambda) > 0}
  double peak_bs_power_w = 0.0;  // max over sampled lambda
};

// A range policy expressed in x = R^2. `breakpoints` lists the densities at
// which x may jump; quadrature and peak sampling split there.
struct RangePolicy {
  std::function<double(double)> x_of_lambda;
  std::vector<double> breakpoints;
};

inline constexpr int kPeakSamples = 2048;

PolicyMetrics evaluate(const RangePolicy& policy, const DensityDistribution& dist, const Model& m,
                       const QuadOptions& opts = {});

// Tabulated x(lambda) with linear interpolation in x between rows. A jump
// row carries separate left and right limits; the row value itself applies
// only at that exact density.
class TabulatedRange {
 public:
  struct Row {
    double lambda;
    double x;
    double x_left;
    double x_right;
  };

  explicit TabulatedRange(std::vector<Row> rows);

  double operator()(double lambda) const;
  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::vector<double> jumps() const;

  RangePolicy as_policy() const;

 private:
  std::vector<Row> rows_;
};

}  // namespace greencell

#endif  // GREENCELL_METRICS_HPP_
