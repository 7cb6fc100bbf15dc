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

#ifndef GREENCELL_TRAFFIC_HPP_
#define GREENCELL_TRAFFIC_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "greencell/rng.hpp"

namespace greencell {

enum class DensityKind { triangular, piecewise_linear, custom_table };

std::string_view to_string(DensityKind kind);

// User density lambda as a random variable on [0, lambda_max]. The PDF is
// piecewise linear between nodes and zero outside [first node, last node];
// CDF and quantile are exact for that representation.
class DensityDistribution {
 public:
  struct Node {
    double lambda;
    double pdf;
  };

  // Symmetric triangle on [0, lambda_max] peaking at lambda_max / 2.
  static DensityDistribution triangular(double lambda_max);
  // Nodes must already integrate to 1 within 1e-9.
  static DensityDistribution piecewise_linear(std::vector<Node> nodes);
  // Relative weights, renormalized by trapezoidal integration.
  static DensityDistribution custom_table(std::vector<Node> nodes);

  DensityKind kind() const noexcept { return kind_; }
  double lambda_max() const noexcept { return nodes_.back().lambda; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  double pdf(double lambda) const;
  double cdf(double lambda) const;
  double quantile(double u) const;
  double mean() const;

  // Interior points where the PDF is not smooth; quadrature splits there.
  std::vector<double> breakpoints() const;

  std::string describe() const;

 private:
  DensityDistribution(DensityKind kind, std::vector<Node> nodes);

  DensityKind kind_;
  std::vector<Node> nodes_;
  std::vector<double> cum_;  // CDF at each node
};

// Inverse-CDF draw.
double sample(const DensityDistribution& dist, Rng& rng);

// Two-column CSV (lambda, relative weight); a non-numeric first row is taken
// as a header.
DensityDistribution load_density_csv(const std::string& path);
DensityDistribution parse_density_csv(std::string_view text, const std::string& origin = "<text>");

}  // namespace greencell

#endif  // GREENCELL_TRAFFIC_HPP_
