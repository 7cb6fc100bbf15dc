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

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "greencell/error.hpp"
#include "greencell/expectation.hpp"
#include "greencell/metrics.hpp"
#include "greencell/optimal.hpp"
#include "greencell/scaling.hpp"
#include "greencell/suboptimal.hpp"

namespace gc = greencell;

namespace {

constexpr double kLmax = 1e-4;
constexpr double kPi = std::numbers::pi;

gc::SystemParams with_static(double pc) {
  gc::SystemParams p;
  p.static_power = pc;
  return p;
}

const gc::DensityDistribution& tri() {
  static const auto d = gc::DensityDistribution::triangular(kLmax);
  return d;
}

}  // namespace

TEST_SUITE("suboptimal") {
  TEST_CASE("scheme names round-trip") {
    for (auto s : gc::kAllSchemes) CHECK(gc::parse_scheme(gc::to_string(s)) == s);
    CHECK(gc::parse_scheme("FRw/OFC") == gc::Scheme::frw_ofc);
    CHECK(gc::parse_scheme("ARw/oOFC") == gc::Scheme::arw_oofc);
    CHECK_FALSE(gc::parse_scheme("nope").has_value());
    CHECK(gc::is_fixed_range(gc::Scheme::frw_oofc));
    CHECK_FALSE(gc::is_fixed_range(gc::Scheme::arw_ofc));
  }

  TEST_CASE("fixed radius without cut-off has a closed form") {
    const gc::Model m(with_static(60.0));
    for (double u : {10.0, 30.0, 50.0}) {
      const auto r = gc::frw_oofc(u, tri(), m);
      CHECK(r.fixed_radius_m == doctest::Approx(std::sqrt(u / (kPi * tri().mean()))).epsilon(1e-8));
      CHECK(r.metrics.avg_users == doctest::Approx(u).epsilon(1e-6));
      CHECK(r.cutoff == 0.0);
    }
    CHECK(gc::frw_oofc(40.0, tri(), m).fixed_radius_m > gc::frw_oofc(30.0, tri(), m).fixed_radius_m);
  }

  TEST_CASE("zero cut-off reproduces the schemes without cut-off") {
    const gc::Model m(with_static(60.0));
    const auto a = gc::frw_with_cutoff(40.0, 0.0, tri(), m);
    const auto b = gc::frw_oofc(40.0, tri(), m);
    CHECK(a.fixed_radius_m == doctest::Approx(b.fixed_radius_m).epsilon(1e-12));
    CHECK(a.metrics.avg_power_w == doctest::Approx(b.metrics.avg_power_w).epsilon(1e-12));
    const auto c = gc::arw_oofc(40.0, tri(), m);
    const auto d = gc::arw_with_power(40.0, c.fixed_power_w, tri(), m);
    CHECK(c.cutoff == 0.0);
    CHECK(d.metrics.avg_power_w <= c.metrics.avg_power_w * (1.0 + 1e-9));
  }

  TEST_CASE("schemes with cut-off do no worse than without") {
    const gc::Model m(with_static(60.0));
    for (double u : {20.0, 50.0, 80.0}) {
      CAPTURE(u);
      CHECK(gc::frw_ofc(u, tri(), m).metrics.avg_power_w <=
            gc::frw_oofc(u, tri(), m).metrics.avg_power_w * (1.0 + 1e-9));
      CHECK(gc::arw_ofc(u, tri(), m).metrics.avg_power_w <=
            gc::arw_oofc(u, tri(), m).metrics.avg_power_w * (1.0 + 1e-9));
    }
  }

  TEST_CASE("adaptive range without cut-off is always on at constant power") {
    const gc::Model m(with_static(60.0));
    const auto r = gc::arw_oofc(50.0, tri(), m);
    CHECK(r.metrics.avg_users == doctest::Approx(50.0).epsilon(1e-6));
    CHECK(r.metrics.avg_power_w == doctest::Approx(r.fixed_power_w).epsilon(1e-9));
    CHECK(r.fixed_power_w <= 160.0);
    CHECK(r.metrics.on_probability == doctest::Approx(1.0));
  }

  TEST_CASE("adaptive range radius falls with density") {
    const gc::Model m(with_static(60.0));
    const auto r = gc::arw_ofc(50.0, tri(), m);
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& row : r.table) {
      if (row.radius_m <= 0.0) continue;
      CHECK(row.radius_m < prev);
      CHECK(row.bs_power_w == doctest::Approx(r.fixed_power_w).epsilon(1e-8));
      prev = row.radius_m;
    }
  }

  TEST_CASE("every scheme meets its target within tolerance") {
    const gc::Model m(with_static(60.0));
    for (auto s : gc::kAllSchemes) {
      const auto r = gc::run_scheme(s, 50.0, tri(), m);
      CAPTURE(gc::to_string(s));
      CHECK(r.scheme == s);
      CHECK(r.metrics.avg_users >= 50.0 * (1.0 - 1e-6));
      CHECK(r.metrics.avg_users <= 50.0 * (1.0 + 1e-4));
      CHECK(r.metrics.peak_bs_power_w <= 160.0 * (1.0 + 1e-6));
    }
  }

  TEST_CASE("suboptimal schemes cost at least the optimum") {
    const gc::Model m(with_static(60.0));
    for (double u : {50.0, 100.0, 150.0, 200.0}) {
      CAPTURE(u);
      double opt = NAN;
      try {
        opt = gc::solve(u, tri(), m).metrics.avg_power_w;
      } catch (const gc::InfeasibleError& e) {
        FAIL_CHECK("optimal infeasible, max achievable ", e.max_achievable());
      }
      for (auto s : gc::kAllSchemes) {
        CAPTURE(gc::to_string(s));
        try {
          const auto r = gc::run_scheme(s, u, tri(), m);
          if (std::isfinite(opt)) CHECK(r.metrics.avg_power_w >= opt * (1.0 - 1e-4));
          if (s == gc::Scheme::arw_ofc && std::isfinite(opt)) {
            CHECK(std::abs(r.metrics.avg_power_w - opt) <= 0.03 * opt);
          }
        } catch (const gc::InfeasibleError& e) {
          FAIL_CHECK("scheme infeasible, max achievable ", e.max_achievable());
        }
      }
    }
  }

  TEST_CASE("fixed range with cut-off is close to optimal at small load") {
    const gc::Model m(with_static(60.0));
    const double opt = gc::solve(50.0, tri(), m).metrics.avg_power_w;
    const double with = gc::frw_ofc(50.0, tri(), m).metrics.avg_power_w;
    const double without = gc::frw_oofc(50.0, tri(), m).metrics.avg_power_w;
    CHECK(std::abs(with - opt) < std::abs(without - opt));
  }

  TEST_CASE("infeasible targets report the reachable maximum") {
    const gc::Model m(with_static(60.0));
    for (auto s : gc::kAllSchemes) {
      try {
        gc::run_scheme(s, 1e4, tri(), m);
        FAIL("expected infeasible for ", gc::to_string(s));
      } catch (const gc::InfeasibleError& e) {
        CHECK(e.max_achievable() > 0.0);
        CHECK(e.max_achievable() < 1e4);
      }
    }
  }
}

TEST_SUITE("metrics") {
  TEST_CASE("all-off policy evaluates to zero") {
    const gc::Model m(with_static(60.0));
    const gc::RangePolicy off{[](double) { return 0.0; }, {}};
    const auto r = gc::evaluate(off, tri(), m);
    CHECK(r.avg_power_w == 0.0);
    CHECK(r.avg_users == 0.0);
    CHECK(r.on_probability == 0.0);
    CHECK(r.peak_bs_power_w == 0.0);
  }

  TEST_CASE("always-on fixed range is linear in mean density") {
    const gc::Model m(with_static(60.0));
    const double x = 800.0 * 800.0;
    const gc::RangePolicy on{[x](double) { return x; }, {}};
    const auto r = gc::evaluate(on, tri(), m);
    CHECK(r.avg_users == doctest::Approx(kPi * x * tri().mean()).epsilon(1e-8));
    CHECK(r.on_probability == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.avg_power_w ==
          doctest::Approx(gc::expect([&](double l) { return gc::bs_power_x(x, l, m); }, tri()))
              .epsilon(1e-8));
    CHECK(r.peak_bs_power_w == doctest::Approx(gc::bs_power_x(x, kLmax, m)).epsilon(1e-9));
  }

  TEST_CASE("tabulated range interpolates in x and honours jumps") {
    const gc::TabulatedRange t({{0.0, 0.0, 0.0, 0.0},
                                {1.0, 0.0, 0.0, 10.0},
                                {2.0, 20.0, 20.0, 20.0},
                                {3.0, 0.0, 0.0, 0.0}});
    CHECK(t(0.5) == 0.0);
    CHECK(t(1.0) == 0.0);
    CHECK(t(1.5) == doctest::Approx(15.0));
    CHECK(t(2.5) == doctest::Approx(10.0));
    const auto j = t.jumps();
    REQUIRE(j.size() == 1);
    CHECK(j[0] == 1.0);
  }

  TEST_CASE("optimal policy beats fixed range without cut-off") {
    const gc::Model m(with_static(120.0));
    const auto s = gc::solve(50.0, tri(), m);
    REQUIRE(s.policy.criticals.case_tag == gc::CaseTag::case_A);
    CHECK(s.metrics.avg_power_w < gc::frw_oofc(50.0, tri(), m).metrics.avg_power_w);
  }

  TEST_CASE("metrics are invariant to grid refinement") {
    const gc::Model m(with_static(120.0));
    gc::OptimalOptions coarse;
    gc::OptimalOptions fine;
    fine.grid_points = 8192;
    const auto a = gc::solve(50.0, tri(), m, gc::SolveMode::exact, coarse);
    const auto mu = a.policy.mu;
    const auto pa = gc::policy_for_mu(mu, gc::uniform_grid(kLmax, 2048), m);
    const auto pb = gc::policy_for_mu(mu, gc::uniform_grid(kLmax, 8192), m);
    const auto ma = gc::evaluate(pa.range().as_policy(), tri(), m);
    const auto mb = gc::evaluate(pb.range().as_policy(), tri(), m);
    CHECK(std::abs(ma.avg_power_w - mb.avg_power_w) <= 1e-3 * mb.avg_power_w);
    CHECK(std::abs(ma.avg_users - mb.avg_users) <= 1e-3 * mb.avg_users);
    const auto b = gc::solve(50.0, tri(), m, gc::SolveMode::exact, fine);
    CHECK(std::abs(a.metrics.avg_power_w - b.metrics.avg_power_w) <= 1e-3 * b.metrics.avg_power_w);
  }

  TEST_CASE("metric invariants hold across solutions") {
    for (double pc : {60.0, 120.0, 140.0}) {
      const gc::Model m(with_static(pc));
      for (double u : {10.0, 40.0, 70.0}) {
        const auto r = gc::solve(u, tri(), m).metrics;
        CHECK(r.avg_power_w >= 0.0);
        CHECK(r.avg_users >= 0.0);
        CHECK(r.on_probability >= 0.0);
        CHECK(r.on_probability <= 1.0);
        CHECK(r.peak_bs_power_w <= 160.0 * (1.0 + 1e-6));
      }
    }
  }
}
