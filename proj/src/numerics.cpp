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

#include "greencell/numerics.hpp"

#include <array>
#include <limits>
#include <queue>

namespace greencell {

double lambert_w0(double y) {
  if (std::isnan(y) || y < 0.0) {
    std::ostringstream os;
    os << "lambert_w0 requires y >= 0, got " << y;
    fail(Errc::domain_error, os.str());
  }
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return y;

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double w = std::log1p(y);
  if (y <= 1e100) {
    // Halley on w*e^w - y; ln(1+y) >= W(y) so the iteration descends.
    for (int it = 0; it < 64; ++it) {
      const double ew = std::exp(w);
      const double f = w * ew - y;
      const double wp1 = w + 1.0;
      const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
      w -= step;
      if (std::abs(step) <= 4.0 * kEps * std::abs(w)) break;
    }
    return w;
  }
  // Newton on w + ln(w) - ln(y), which cannot overflow.
  const double ly = std::log(y);
  for (int it = 0; it < 64; ++it) {
    const double step = (w + std::log(w) - ly) / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 4.0 * kEps * w) break;
  }
  return w;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const RealFn& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand is not finite at x=" << x << " (value " << v << ")";
    fail(Errc::non_finite, os.str());
  }
  return v;
}

// QUADPACK qk15.
Segment gauss_kronrod(const RealFn& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(g, center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(g, center - dx);
    f2[j] = checked(g, center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double ah = std::abs(half);
  resasc *= ah;
  resabs *= ah;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = std::numeric_limits<double>::min();
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return Segment{a, b, resk * half, err};
}

}  // namespace

double integrate(const RealFn& g, double a, double b, std::span<const double> breakpoints,
                 const QuadOptions& opts) {
  if (!(a <= b)) fail(Errc::domain_error, "integrate requires a <= b");
  if (a == b) return 0.0;

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (std::isfinite(p) && p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment s = gauss_kronrod(g, cuts[i], cuts[i + 1]);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }

  int splits = 0;
  while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) &&
         splits < opts.max_subdivisions && !heap.empty()) {
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
    heap.pop();
    const Segment left = gauss_kronrod(g, worst.a, mid);
    const Segment right = gauss_kronrod(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Recompute the sum to shed accumulated update roundoff.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

}  // namespace greencell
