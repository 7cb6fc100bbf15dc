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

#include "greencell/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "greencell/error.hpp"
#include "greencell/scaling.hpp"

namespace greencell {

namespace {

struct Moments {
  long long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

// Runs `trial(rng)` cfg.trials times in fixed-size blocks. Block b draws from
// stream b of cfg.seed, so the merged result is independent of worker count.
template <typename Trial>
McEstimate run_blocks(const McConfig& cfg, Trial&& trial) {
  if (cfg.trials < 1) fail(Errc::invalid_parameter, "trials must be >= 1");
  const long long blocks = (cfg.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<Moments> partial(static_cast<std::size_t>(blocks));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(blocks));

  const auto run_block = [&](long long b) {
    try {
      Rng rng(cfg.seed, static_cast<std::uint64_t>(b));
      const long long begin = b * kTrialsPerBlock;
      const long long end = std::min(cfg.trials, begin + kTrialsPerBlock);
      Moments acc;
      for (long long t = begin; t < end; ++t) acc.add(trial(rng));
      partial[static_cast<std::size_t>(b)] = acc;
    } catch (...) {
      errors[static_cast<std::size_t>(b)] = std::current_exception();
    }
  };

  unsigned workers = cfg.workers != 0 ? cfg.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<long long>(blocks, 64)));
  if (workers == 1) {
    for (long long b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (long long b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Moments total;
  for (const auto& p : partial) total.merge(p);
  McEstimate est;
  est.trials = total.n;
  est.mean = total.mean;
  est.std_err = total.n >= 2
                    ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n))
                    : std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace

std::vector<double> sample_users(double density, double radius, Rng& rng) {
  if (!(density >= 0.0) || !(radius >= 0.0)) {
    fail(Errc::domain_error, "sample_users requires density >= 0 and radius >= 0");
  }
  std::vector<double> r;
  if (density == 0.0 || radius == 0.0) return r;
  const auto n = rng.poisson(density * std::numbers::pi * radius * radius);
  r.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) r.push_back(radius * std::sqrt(rng.uniform()));
  return r;
}

McEstimate simulate_total_power(double density, double radius, const Model& m,
                                const McConfig& cfg) {
  if (!(density >= 0.0) || !(radius >= 0.0)) {
    fail(Errc::domain_error, "simulate_total_power requires density >= 0 and radius >= 0");
  }
  const auto& p = m.params();
  const double mean_users = density * std::numbers::pi * radius * radius;
  return run_blocks(cfg, [&](Rng& rng) {
    if (mean_users == 0.0) return 0.0;
    const auto n = rng.poisson(mean_users);
    if (n == 0) return 0.0;
    // stpc_power(r, n) = stpc_power(r0, n) * max(r/r0, 1)^alpha.
    const double base = stpc_power(p.ref_distance, static_cast<int>(n), m);
    double geometry = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double r = radius * std::sqrt(rng.uniform());
      geometry += std::pow(std::max(r / p.ref_distance, 1.0), p.pathloss_exp);
    }
    return base * geometry;
  });
}

McEstimate simulate_outage(double r, int n, double per_user_power, const Model& m,
                           const McConfig& cfg) {
  if (!(r >= 0.0) || n < 1 || !(per_user_power >= 0.0)) {
    fail(Errc::domain_error, "simulate_outage requires r >= 0, n >= 1, power >= 0");
  }
  const auto& p = m.params();
  const double gain = p.ref_pathloss * std::pow(std::max(r / p.ref_distance, 1.0), -p.pathloss_exp);
  const double mean_rx = per_user_power * gain;
  const double snr_scale = n / (p.snr_gap * p.noise_psd * p.bandwidth_w);
  const double share = p.bandwidth_w / n;
  const int blocks = p.coding_blocks;
  return run_blocks(cfg, [&](Rng& rng) {
    double rate = 0.0;
    for (int l = 0; l < blocks; ++l) {
      const double rx = mean_rx * rng.exponential();
      rate += share * std::log2(1.0 + snr_scale * rx);
    }
    return rate / blocks < p.user_rate ? 1.0 : 0.0;
  });
}

}  // namespace greencell
