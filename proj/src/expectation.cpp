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

#include "greencell/expectation.hpp"

#include <sstream>
#include <vector>

namespace greencell {

double expect(const RealFn& g, const DensityDistribution& dist, std::span<const double> breakpoints,
              const QuadOptions& opts) {
  return conditional_expect(g, dist, 0.0, breakpoints, opts);
}

double conditional_expect(const RealFn& g, const DensityDistribution& dist, double cutoff,
                          std::span<const double> breakpoints, const QuadOptions& opts) {
  const double lmax = dist.lambda_max();
  if (!(cutoff >= 0.0) || cutoff > lmax) {
    std::ostringstream os;
    os << "cutoff " << cutoff << " outside [0, " << lmax << "]";
    fail(Errc::domain_error, os.str());
  }
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  for (double b : dist.breakpoints()) cuts.push_back(b);
  const double lo = std::max(cutoff, dist.nodes().front().lambda);
  if (lo >= lmax) return 0.0;
  return integrate([&](double l) { return g(l) * dist.pdf(l); }, lo, lmax, cuts, opts);
}

}  // namespace greencell
