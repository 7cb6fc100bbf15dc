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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "greencell/io.hpp"
#include "greencell/mcsim.hpp"
#include "greencell/metrics.hpp"
#include "greencell/numerics.hpp"
#include "greencell/optimal.hpp"
#include "greencell/scaling.hpp"
#include "greencell/suboptimal.hpp"
#include "greencell/text.hpp"

namespace gc = greencell;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

gc::SystemParams with_static(double pc) {
  gc::SystemParams p;
  p.static_power = pc;
  return p;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Outcome scaling_law() {
  const auto t0 = std::chrono::steady_clock::now();
  const gc::Model m(gc::SystemParams{});
  gc::McConfig mc;
  mc.trials = 100000;
  mc.seed = 20260101;
  const auto rows = gc::validate_scaling({250, 500, 1000, 2000}, {1e-6, 1e-5, 5e-5}, m, mc);
  int mc_miss = 0;
  int approx_miss = 0;
  double worst_gap = 0.0;
  std::string misses;
  for (const auto& r : rows) {
    if (!r.within_band) ++mc_miss;
    if (r.radius >= 10.0 * m.params().ref_distance) {
      const double gap = std::abs(r.analytic_w - r.exact_w) / r.exact_w;
      worst_gap = std::max(worst_gap, gap);
      if (gap > 0.02) {
        ++approx_miss;
        misses += " (R=" + fmt(r.radius) + ",lambda=" + fmt(r.lambda) + ": " + fmt(100 * gap) + "%)";
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string d = "MC outside 3 s.e.: " + std::to_string(mc_miss) + "/12; approximation beyond 2%: " +
                  std::to_string(approx_miss) + "/12" + misses + "; worst " + fmt(100 * worst_gap) +
                  "%; " + fmt(secs) + " s";
  return {mc_miss == 0 && approx_miss == 0 && secs < 60.0, d};
}

Outcome case_reproduction() {
  const double lmax = 1e-4;
  const gc::Model a(with_static(120));
  const gc::Model b(with_static(140));
  const auto ca = gc::critical_densities(1.05, lmax, a);
  const auto cb = gc::critical_densities(0.8, lmax, b);
  const bool ok_a = ca.lambda2 > ca.lambda1;
  const bool ok_b = cb.lambda3 > cb.lambda1 && cb.lambda1 > cb.lambda2;
  std::string d = "P_c=120, mu=1.05: l1=" + fmt(ca.lambda1) + " l2=" + fmt(ca.lambda2) +
                  " l3=" + fmt(ca.lambda3) + " (" + std::string(gc::to_string(ca.case_tag)) +
                  "); P_c=140, mu=0.8: l1=" + fmt(cb.lambda1) + " l2=" + fmt(cb.lambda2) +
                  " l3=" + fmt(cb.lambda3) + " (" + std::string(gc::to_string(cb.case_tag)) + ")";
  return {ok_a && ok_b, d};
}

Outcome hse_agreement() {
  const auto dist = gc::DensityDistribution::triangular(1e-4);
  const double lmax = dist.lambda_max();
  const auto grid = gc::uniform_grid(lmax, 2048);
  double worst_radius = 0.0;
  double worst_lambda = 0.0;
  double worst_crit = 0.0;
  int compared = 0;
  int off_mismatch = 0;
  std::string notes;
  struct Setting {
    double pc;
    double mu;
  };
  std::vector<Setting> settings = {{120, 1.05}, {140, 0.8}};
  for (double pc : {120.0, 140.0}) {
    const gc::Model m(with_static(pc));
    settings.push_back({pc, gc::solve(50.0, dist, m).policy.mu});
  }
  for (const auto& s : settings) {
    const gc::Model m(with_static(s.pc));
    const auto exact = gc::policy_for_mu(s.mu, grid, m, gc::SolveMode::exact);
    const auto hse = gc::policy_for_mu(s.mu, grid, m, gc::SolveMode::hse);
    for (std::size_t i = 0; i < exact.table.size(); ++i) {
      const auto& e = exact.table[i];
      if (e.lambda < 0.3 * lmax || e.radius_m <= 0.0) continue;
      const double h = hse.range()(e.lambda);
      if (h <= 0.0) {
        ++off_mismatch;
        continue;
      }
      const double gap = std::abs(std::sqrt(h) - e.radius_m) / e.radius_m;
      if (gap > worst_radius) {
        worst_radius = gap;
        worst_lambda = e.lambda;
      }
      ++compared;
    }
    const auto ce = exact.criticals;
    const auto ch = gc::hse_critical_densities(s.mu, m);
    double crit = 0.0;
    for (auto [ex, ap] : {std::pair{ce.lambda1, ch.lambda1}, std::pair{ce.lambda3, ch.lambda3}}) {
      if (std::isfinite(ex) && ex > 0.0) crit = std::max(crit, std::abs(ap - ex) / ex);
    }
    worst_crit = std::max(worst_crit, crit);
    notes += " [P_c=" + fmt(s.pc) + " mu=" + fmt(s.mu) + ": critical gap " + fmt(100 * crit) + "%]";
  }
  std::string d = "worst radius gap " + fmt(100 * worst_radius) + "% at lambda=" +
                  fmt(worst_lambda) + " over " + std::to_string(compared) +
                  " shared on-region samples (" + std::to_string(off_mismatch) +
                  " where only exact is on); worst lambda1/lambda3 gap " + fmt(100 * worst_crit) + "%" +
                  notes;
  return {compared > 0 && worst_radius < 0.02 && worst_crit < 0.10, d};
}

Outcome lambert_identity() {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double y = std::pow(10.0, -12.0 + 24.0 * i / 199.0);
    const double w = gc::lambert_w0(y);
    worst = std::max(worst, std::abs(w * std::exp(w) - y) / std::max(1.0, y));
  }
  return {worst <= 1e-12, "max scaled residual " + fmt(worst)};
}

Outcome monotonicity() {
  const double lmax = 1e-4;
  int violations = 0;
  int checks = 0;
  for (double pc : {60.0, 120.0, 140.0}) {
    const gc::Model m(with_static(pc));
    for (double mu : {0.5, 0.8, 1.05, 1.5}) {
      double px1 = 0, pux1 = 0, pp1 = 0, px2 = 0, pux2 = 0;
      for (int i = 0; i < 64; ++i) {
        const double l = lmax * (i + 1) / 64.0;
        const double x1 = gc::x1_star(l, mu, m);
        const double x2 = gc::x2_star(l, m);
        const double p1 = gc::bs_power_x(x1, l, m);
        if (i > 0) {
          violations += !(x1 < px1) + !(l * x1 > pux1) + !(p1 > pp1) + !(x2 < px2) + !(l * x2 > pux2);
          checks += 5;
        }
        px1 = x1;
        pux1 = l * x1;
        pp1 = p1;
        px2 = x2;
        pux2 = l * x2;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks) +
                               " adjacent-pair checks"};
}

Outcome subproblem_oracle() {
  const double lmax = 1e-4;
  const auto grid = gc::uniform_grid(lmax, 2048);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const double pc = 60.0 + 80.0 * unit(rng);
    const double mu = 0.05 + 3.0 * unit(rng);
    const gc::Model m(with_static(pc));
    const auto policy = gc::policy_for_mu(mu, grid, m);
    const auto& row = policy.table[1 + static_cast<std::size_t>(unit(rng) * (policy.table.size() - 1))];
    const double l = row.lambda;
    const double x_star = row.radius_m * row.radius_m;
    const double l_star = gc::lagrangian_x(x_star, l, mu, m);
    const double x_cap = gc::x2_star(l, m);
    for (int j = 0; j < 100; ++j) {
      const double x = j == 0 ? 0.0 : x_cap * unit(rng);
      worst = std::min(worst, gc::lagrangian_x(x, l, mu, m) - l_star);
    }
  }
  return {worst >= -1e-8, "min L(candidate) - L(x*) = " + fmt(worst)};
}

struct Lattice {
  double opt = NAN, arw = NAN, arwo = NAN, frw = NAN, frwo = NAN;
  double opt_mu = 0.0, opt_slack = 0.0;
  std::string failures;
};

double power_or_inf(const std::function<double()>& f, std::string& why, const char* tag) {
  try {
    return f();
  } catch (const gc::InfeasibleError& e) {
    why += std::string(" ") + tag + " infeasible (max " + fmt(e.max_achievable()) + ")";
    return std::numeric_limits<double>::infinity();
  }
}

Lattice lattice_at(double u, double pc) {
  const auto dist = gc::DensityDistribution::triangular(1e-4);
  const gc::Model m(with_static(pc));
  Lattice r;
  r.opt = power_or_inf(
      [&] {
        const auto s = gc::solve(u, dist, m);
        r.opt_mu = s.policy.mu;
        r.opt_slack = std::abs(s.metrics.avg_users - u);
        return s.metrics.avg_power_w;
      },
      r.failures, "optimal");
  r.arw = power_or_inf([&] { return gc::arw_ofc(u, dist, m).metrics.avg_power_w; }, r.failures,
                       "ARwOFC");
  r.arwo = power_or_inf([&] { return gc::arw_oofc(u, dist, m).metrics.avg_power_w; }, r.failures,
                        "ARwoOFC");
  r.frw = power_or_inf([&] { return gc::frw_ofc(u, dist, m).metrics.avg_power_w; }, r.failures,
                       "FRwOFC");
  r.frwo = power_or_inf([&] { return gc::frw_oofc(u, dist, m).metrics.avg_power_w; }, r.failures,
                        "FRwoOFC");
  return r;
}

Outcome dominance() {
  bool ok = true;
  std::string d;
  for (double u : {50.0, 100.0, 150.0, 200.0}) {
    const auto r = lattice_at(u, 60.0);
    const bool feasible = std::isfinite(r.opt) && std::isfinite(r.arw) && std::isfinite(r.arwo) &&
                          std::isfinite(r.frw) && std::isfinite(r.frwo);
    const double tol = 1e-6 * r.opt + r.opt_mu * r.opt_slack;
    const auto le = [&](double a, double b) { return a <= b + tol; };
    const bool lattice =
        feasible && le(r.opt, r.arw) && le(r.arw, r.arwo) && le(r.opt, r.frw) && le(r.frw, r.frwo);
    const bool near = feasible && std::abs(r.arw - r.opt) <= 0.03 * r.opt;
    ok = ok && lattice && near;
    d += " U=" + fmt(u) + ":";
    if (!feasible) {
      d += r.failures;
    } else {
      d += " opt=" + fmt(r.opt) + " ARwOFC=" + fmt(r.arw) + " ARwoOFC=" + fmt(r.arwo) +
           " FRwOFC=" + fmt(r.frw) + " FRwoOFC=" + fmt(r.frwo) + (lattice ? "" : " lattice broken") +
           (near ? "" : " ARwOFC gap > 3%");
    }
    d += ";";
  }
  return {ok, d};
}

Outcome figure_gap() {
  bool ok = true;
  std::string d;
  for (double pc : {60.0, 100.0}) {
    const auto r = lattice_at(220.0, pc);
    const double adaptive = std::min(r.arw, r.arwo);
    const double fixed = std::min(r.frw, r.frwo);
    const double gap = fixed - adaptive;
    const bool hit = std::isfinite(gap) && std::abs(gap - 45.0) <= 15.0;
    ok = ok && hit;
    d += " P_c=" + fmt(pc) + ": gap=" + fmt(gap) + " W" + r.failures + ";";
  }
  return {ok, d};
}

Outcome throughput_tightness() {
  const auto dist = gc::DensityDistribution::triangular(1e-4);
  int solved = 0;
  int tight = 0;
  int jump = 0;
  int bad = 0;
  for (double pc : {60.0, 100.0, 120.0, 140.0}) {
    const gc::Model m(with_static(pc));
    for (auto mode : {gc::SolveMode::exact, gc::SolveMode::hse}) {
      for (double u : {10.0, 25.0, 50.0, 75.0, 100.0, 125.0}) {
        try {
          const auto s = gc::solve(u, dist, m, mode);
          ++solved;
          if (std::abs(s.metrics.avg_users - u) <= 1e-4 * u) {
            ++tight;
          } else if (s.jump_limited) {
            ++jump;
          } else {
            ++bad;
          }
        } catch (const gc::InfeasibleError&) {
        }
      }
    }
  }
  return {bad == 0 && solved > 0, std::to_string(solved) + " feasible solves: " +
                                      std::to_string(tight) + " tight, " + std::to_string(jump) +
                                      " jump-limited (reported), " + std::to_string(bad) + " violations"};
}

std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

Outcome determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / ("greencell-accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::string bodies[2];
  std::string manifests[2];
  for (int i = 0; i < 2; ++i) {
    const auto out = (dir / ("sweep" + std::to_string(i) + ".csv")).string();
    const std::string cmd = "'" + cli + "' sweep --u-avg 25,50,75 --out '" + out + "' 2>&1";
    run_capture(cmd);
    try {
      bodies[i] = gc::read_file(out);
      manifests[i] = gc::read_file(out + ".manifest.json");
    } catch (const gc::Error& e) {
      fs::remove_all(dir);
      return {false, std::string("could not read sweep output: ") + e.what()};
    }
  }
  fs::remove_all(dir);
  const bool same = !bodies[0].empty() && bodies[0] == bodies[1] && manifests[0] == manifests[1];
  return {same, std::to_string(bodies[0].size()) + " CSV bytes, " +
                    std::to_string(manifests[0].size()) + " manifest bytes, " +
                    (same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "scaling-law validation", scaling_law},
      {2, "case reproduction", case_reproduction},
      {3, "HSE agreement", hse_agreement},
      {4, "Lambert W identity", lambert_identity},
      {5, "monotonicity suites", monotonicity},
      {6, "subproblem optimality oracle", subproblem_oracle},
      {7, "scheme dominance lattice", dominance},
      {8, "fixed vs adaptive range gap at U=220", figure_gap},
      {9, "throughput constraint tightness", throughput_tightness},
      {10, "sweep determinism", [&] {
         return cli.empty() ? Outcome{false, "CLI path not given"} : determinism(cli);
       }},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
              << "): " << o.detail << std::endl;
  }
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
