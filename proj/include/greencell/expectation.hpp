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

#ifndef GREENCELL_EXPECTATION_HPP_
#define GREENCELL_EXPECTATION_HPP_

#include <span>

#include "greencell/numerics.hpp"
#include "greencell/traffic.hpp"

namespace greencell {

// Integral of g(lambda) f(lambda) over the support. `breakpoints` declares
// discontinuities of g (policy cut-offs); the density's own kinks are added.
double expect(const RealFn& g, const DensityDistribution& dist,
              std::span<const double> breakpoints = {}, const QuadOptions& opts = {});

// Integral of g(lambda) f(lambda) over [cutoff, lambda_max]. Not divided by
// the tail probability.
double conditional_expect(const RealFn& g, const DensityDistribution& dist, double cutoff,
                          std::span<const double> breakpoints = {}, const QuadOptions& opts = {});

}  // namespace greencell

#endif  // GREENCELL_EXPECTATION_HPP_
