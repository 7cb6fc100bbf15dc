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

#include "greencell/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "greencell/error.hpp"
#include "greencell/text.hpp"

namespace greencell {

std::string_view to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::triangular: return "triangular";
    case DensityKind::piecewise_linear: return "piecewise-linear";
    case DensityKind::custom_table: return "custom-table";
  }
  return "unknown";
}

namespace {

double trapezoid_mass(const std::vector<DensityDistribution::Node>& nodes) {
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    mass += 0.5 * (nodes[i].pdf + nodes[i + 1].pdf) * (nodes[i + 1].lambda - nodes[i].lambda);
  }
  return mass;
}

void check_nodes(const std::vector<DensityDistribution::Node>& nodes) {
  if (nodes.size() < 2) fail(Errc::invalid_parameter, "density needs at least two nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (!std::isfinite(n.lambda) || !std::isfinite(n.pdf) || n.lambda < 0.0 || n.pdf < 0.0) {
      std::ostringstream os;
      os << "density node " << i << " must have finite lambda >= 0 and weight >= 0";
      fail(Errc::invalid_parameter, os.str());
    }
    if (i > 0 && !(n.lambda > nodes[i - 1].lambda)) {
      std::ostringstream os;
      os << "density nodes must be strictly increasing in lambda (node " << i << ")";
      fail(Errc::invalid_parameter, os.str());
    }
  }
  if (!(trapezoid_mass(nodes) > 0.0)) fail(Errc::invalid_parameter, "density has zero mass");
}

}  // namespace

DensityDistribution::DensityDistribution(DensityKind kind, std::vector<Node> nodes)
    : kind_(kind), nodes_(std::move(nodes)) {
  cum_.resize(nodes_.size());
  cum_[0] = 0.0;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    cum_[i + 1] = cum_[i] + 0.5 * (nodes_[i].pdf + nodes_[i + 1].pdf) *
                                (nodes_[i + 1].lambda - nodes_[i].lambda);
  }
}

DensityDistribution DensityDistribution::triangular(double lambda_max) {
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    fail(Errc::invalid_parameter, "triangular density requires lambda_max > 0");
  }
  return DensityDistribution(DensityKind::triangular,
                             {{0.0, 0.0}, {0.5 * lambda_max, 2.0 / lambda_max}, {lambda_max, 0.0}});
}

DensityDistribution DensityDistribution::piecewise_linear(std::vector<Node> nodes) {
  check_nodes(nodes);
  const double mass = trapezoid_mass(nodes);
  if (std::abs(mass - 1.0) > 1e-9) {
    std::ostringstream os;
    os.precision(17);
    os << "piecewise-linear density integrates to " << mass << ", expected 1";
    fail(Errc::invalid_parameter, os.str());
  }
  return DensityDistribution(DensityKind::piecewise_linear, std::move(nodes));
}

DensityDistribution DensityDistribution::custom_table(std::vector<Node> nodes) {
  check_nodes(nodes);
  const double mass = trapezoid_mass(nodes);
  for (auto& n : nodes) n.pdf /= mass;
  return DensityDistribution(DensityKind::custom_table, std::move(nodes));
}

double DensityDistribution::pdf(double lambda) const {
  if (!(lambda >= nodes_.front().lambda) || lambda > nodes_.back().lambda) return 0.0;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), lambda,
                             [](double l, const Node& n) { return l < n.lambda; });
  if (it == nodes_.end()) return nodes_.back().pdf;
  const Node& right = *it;
  const Node& left = *(it - 1);
  const double t = (lambda - left.lambda) / (right.lambda - left.lambda);
  return left.pdf + t * (right.pdf - left.pdf);
}

double DensityDistribution::cdf(double lambda) const {
  if (!(lambda > nodes_.front().lambda)) return 0.0;
  if (lambda >= nodes_.back().lambda) return 1.0;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), lambda,
                             [](double l, const Node& n) { return l < n.lambda; });
  const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  const Node& left = nodes_[i];
  const double d = lambda - left.lambda;
  const double slope = (nodes_[i + 1].pdf - left.pdf) / (nodes_[i + 1].lambda - left.lambda);
  return std::min(1.0, cum_[i] + left.pdf * d + 0.5 * slope * d * d);
}

double DensityDistribution::quantile(double u) const {
  if (!(u > 0.0)) return nodes_.front().lambda;
  if (u >= 1.0) return nodes_.back().lambda;
  auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cum_.begin());
  i = std::clamp<std::size_t>(i, 1, nodes_.size() - 1) - 1;
  const Node& left = nodes_[i];
  const Node& right = nodes_[i + 1];
  const double width = right.lambda - left.lambda;
  const double slope = (right.pdf - left.pdf) / width;
  const double target = u - cum_[i];
  // Solve left.pdf*d + slope*d^2/2 = target in the cancellation-free form.
  const double disc = std::max(0.0, left.pdf * left.pdf + 2.0 * slope * target);
  const double denom = left.pdf + std::sqrt(disc);
  const double d = denom > 0.0 ? 2.0 * target / denom : 0.0;
  return std::clamp(left.lambda + d, left.lambda, right.lambda);
}

double DensityDistribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double a = nodes_[i].lambda;
    const double b = nodes_[i + 1].lambda;
    const double pa = nodes_[i].pdf;
    const double pb = nodes_[i + 1].pdf;
    m += (b - a) / 6.0 * (a * (2.0 * pa + pb) + b * (pa + 2.0 * pb));
  }
  return m;
}

std::vector<double> DensityDistribution::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].lambda > 0.0 && i + 1 < nodes_.size()) out.push_back(nodes_[i].lambda);
  }
  return out;
}

std::string DensityDistribution::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(lambda_max=" << format_double(lambda_max())
     << ", nodes=" << nodes_.size() << ")";
  return os.str();
}

double sample(const DensityDistribution& dist, Rng& rng) { return dist.quantile(rng.uniform()); }

DensityDistribution parse_density_csv(std::string_view text, const std::string& origin) {
  std::vector<DensityDistribution::Node> nodes;
  std::size_t line_no = 0;
  bool first_data_row = true;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2) {
      std::ostringstream os;
      os << origin << ":" << line_no << ": expected two columns (lambda, weight)";
      fail(Errc::parse_error, os.str());
    }
    const auto l = parse_double(fields[0]);
    const auto w = parse_double(fields[1]);
    if (!l || !w) {
      if (first_data_row) {
        first_data_row = false;
        continue;  // header
      }
      std::ostringstream os;
      os << origin << ":" << line_no << ": non-numeric value";
      fail(Errc::parse_error, os.str());
    }
    first_data_row = false;
    nodes.push_back({*l, *w});
  }
  return DensityDistribution::custom_table(std::move(nodes));
}

DensityDistribution load_density_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open density file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_density_csv(buf.str(), path);
}

}  // namespace greencell
