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

#ifndef GREENCELL_NUMERICS_HPP_
#define GREENCELL_NUMERICS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "greencell/error.hpp"

namespace greencell {

// Principal branch of the Lambert W function on y >= 0.
double lambert_w0(double y);

enum class Sign { negative, positive };

struct Bracket {
  double lo;
  double hi;
  Sign f_lo_sign;
  Sign f_hi_sign;
};

struct RootOptions {
  double rel_tol = 1e-10;
  int max_iter = 200;
};

struct QuadOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
};

inline Sign sign_of(double v) { return v < 0.0 ? Sign::negative : Sign::positive; }

// Evaluates f at both ends and checks for a strict sign change. A zero value
// counts as positive, so a root sitting exactly on an endpoint is allowed on
// the side where the function is negative.
template <typename F>
Bracket make_bracket(F&& f, double lo, double hi) {
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "bracket requires lo < hi, got [" << lo << ", " << hi << "]";
    fail(Errc::no_sign_change, os.str());
  }
  const double flo = f(lo);
  const double fhi = f(hi);
  if (std::isnan(flo) || std::isnan(fhi) || sign_of(flo) == sign_of(fhi)) {
    std::ostringstream os;
    os << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << flo << ", f(hi)=" << fhi;
    fail(Errc::no_sign_change, os.str());
  }
  return Bracket{lo, hi, sign_of(flo), sign_of(fhi)};
}

// Bisection to a bracket width of rel_tol * max(1, |x|). The returned point
// is the midpoint of the final bracket.
template <typename F>
double bisect(F&& f, Bracket b, const RootOptions& opts = {}) {
  if (!(b.lo < b.hi) || b.f_lo_sign == b.f_hi_sign) {
    fail(Errc::no_sign_change, "bisect called with an invalid bracket");
  }
  double lo = b.lo;
  double hi = b.hi;
  for (int it = 0; it < opts.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= opts.rel_tol * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) {
      return mid;
    }
    const double fm = f(mid);
    if (std::isnan(fm)) {
      std::ostringstream os;
      os << "bisect: function is NaN at x=" << mid;
      fail(Errc::non_finite, os.str());
    }
    if (sign_of(fm) == b.f_lo_sign) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  std::ostringstream os;
  os << "bisect did not converge after " << opts.max_iter << " iterations, bracket [" << lo << ", "
     << hi << "]";
  fail(Errc::non_convergence, os.str());
}

template <typename F>
double bisect(F&& f, double lo, double hi, const RootOptions& opts = {}) {
  return bisect(f, make_bracket(f, lo, hi), opts);
}

// Grows hi geometrically from `start` until pred(hi) holds; returns hi.
template <typename Pred>
double grow_until(Pred&& pred, double start, double limit = 1e300) {
  double hi = start;
  while (!pred(hi)) {
    hi *= 2.0;
    if (!(hi < limit)) {
      std::ostringstream os;
      os << "bracket search exceeded " << limit;
      fail(Errc::non_convergence, os.str());
    }
  }
  return hi;
}

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7/15) integration of g over [a, b]. The range is
// split at every breakpoint inside (a, b) up front; each piece is then refined
// globally by largest error estimate.
double integrate(const RealFn& g, double a, double b, std::span<const double> breakpoints = {},
                 const QuadOptions& opts = {});

}  // namespace greencell

#endif  // GREENCELL_NUMERICS_HPP_
