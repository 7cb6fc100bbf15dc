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

#include "greencell/greencell.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "greencell/error.hpp"
#include "greencell/io.hpp"
#include "greencell/mcsim.hpp"
#include "greencell/numerics.hpp"
#include "greencell/optimal.hpp"
#include "greencell/scaling.hpp"
#include "greencell/suboptimal.hpp"

struct gc_config {
  greencell::RunConfig cfg;
};

struct gc_policy {
  greencell::SolveResult result;
};

struct gc_scheme_result {
  greencell::SchemeResult result;
};

struct gc_buffer {
  std::string data;
};

namespace {

thread_local std::string g_last_error;
thread_local double g_last_max = std::numeric_limits<double>::quiet_NaN();

gc_status from_errc(greencell::Errc c) { return static_cast<gc_status>(static_cast<int>(c)); }

template <typename F>
gc_status guarded(F&& body) {
  g_last_error.clear();
  g_last_max = std::numeric_limits<double>::quiet_NaN();
  try {
    body();
    return GC_OK;
  } catch (const greencell::InfeasibleError& e) {
    g_last_error = e.what();
    g_last_max = e.max_achievable();
    return GC_ERR_INFEASIBLE;
  } catch (const greencell::Error& e) {
    g_last_error = e.what();
    return from_errc(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return GC_ERR_INTERNAL;
  }
}

gc_status null_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return GC_ERR_NULL_ARGUMENT;
}

#define GC_REQUIRE(ptr)                        \
  do {                                         \
    if ((ptr) == nullptr) return null_argument(#ptr); \
  } while (0)

greencell::SolveMode to_mode(gc_mode m) {
  if (m != GC_MODE_EXACT && m != GC_MODE_HSE) {
    greencell::fail(greencell::Errc::invalid_parameter, "unknown solve mode");
  }
  return m == GC_MODE_HSE ? greencell::SolveMode::hse : greencell::SolveMode::exact;
}

gc_metrics to_c(const greencell::PolicyMetrics& m) {
  return gc_metrics{m.avg_power_w, m.avg_users, m.on_probability, m.peak_bs_power_w};
}

gc_buffer* make_buffer(std::string s) { return new gc_buffer{std::move(s)}; }

void check_format(gc_format fmt) {
  if (fmt != GC_FORMAT_CSV && fmt != GC_FORMAT_JSON && fmt != GC_FORMAT_SUMMARY) {
    greencell::fail(greencell::Errc::invalid_parameter, "unknown output format");
  }
}

greencell::CellState cell(double radius, double lambda) { return {radius, lambda}; }

}  // namespace

extern "C" {

const char* gc_version(void) { return GREENCELL_VERSION; }

const char* gc_rng_algorithm(void) { return greencell::Rng::kAlgorithm.data(); }

const char* gc_status_string(gc_status status) {
  switch (status) {
    case GC_OK: return "ok";
    case GC_ERR_NULL_ARGUMENT: return "null argument";
    case GC_ERR_INTERNAL: return "internal error";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= 9) {
    return greencell::to_string(static_cast<greencell::Errc>(code)).data();
  }
  return "unknown status";
}

const char* gc_last_error(void) { return g_last_error.c_str(); }

double gc_last_max_achievable(void) { return g_last_max; }

const char* gc_buffer_data(const gc_buffer* buf) { return buf ? buf->data.c_str() : ""; }

size_t gc_buffer_size(const gc_buffer* buf) { return buf ? buf->data.size() : 0; }

void gc_buffer_free(gc_buffer* buf) { delete buf; }

gc_status gc_config_new(gc_config** out) {
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new gc_config{}; });
}

gc_status gc_config_load(const char* path, gc_config** out) {
  GC_REQUIRE(path);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new gc_config{greencell::load_config(path)}; });
}

gc_status gc_config_parse(const char* text, gc_config** out) {
  GC_REQUIRE(text);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new gc_config{greencell::parse_config(text)}; });
}

gc_status gc_config_set(gc_config* cfg, const char* key, const char* value) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(key);
  GC_REQUIRE(value);
  return guarded([&] { greencell::apply_setting(cfg->cfg, key, value); });
}

gc_status gc_config_get(const gc_config* cfg, const char* key, double* out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(key);
  GC_REQUIRE(out);
  return guarded([&] {
    const auto v = greencell::get_setting(cfg->cfg, key);
    if (!v) greencell::fail(greencell::Errc::parse_error, std::string("unknown numeric key '") + key + "'");
    *out = *v;
  });
}

gc_status gc_config_validate(const gc_config* cfg) {
  GC_REQUIRE(cfg);
  return guarded([&] {
    greencell::validate(cfg->cfg.params);
    (void)cfg->cfg.distribution();
  });
}

void gc_config_free(gc_config* cfg) { delete cfg; }

gc_status gc_lambert_w0(double y, double* out) {
  GC_REQUIRE(out);
  return guarded([&] { *out = greencell::lambert_w0(y); });
}

gc_status gc_stpc_power(const gc_config* cfg, double r, int n, double* out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  return guarded([&] { *out = greencell::stpc_power(r, n, greencell::Model(cfg->cfg.params)); });
}

gc_status gc_avg_transmit_power(const gc_config* cfg, double radius, double lambda, double* out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  return guarded([&] {
    *out = greencell::avg_transmit_power(cell(radius, lambda), greencell::Model(cfg->cfg.params));
  });
}

gc_status gc_avg_transmit_power_exact(const gc_config* cfg, double radius, double lambda,
                                      double* out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  return guarded([&] {
    *out = greencell::avg_transmit_power_exact(cell(radius, lambda),
                                               greencell::Model(cfg->cfg.params));
  });
}

gc_status gc_bs_power(const gc_config* cfg, double radius, double lambda, double* out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  return guarded(
      [&] { *out = greencell::bs_power(cell(radius, lambda), greencell::Model(cfg->cfg.params)); });
}

gc_status gc_max_range(const gc_config* cfg, double lambda, double budget, double* out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  return guarded([&] {
    *out = greencell::max_range(lambda, budget, greencell::Model(cfg->cfg.params),
                                cfg->cfg.optimal.root);
  });
}

gc_status gc_simulate_total_power(const gc_config* cfg, double lambda, double radius,
                                  long long trials, uint64_t seed, double* mean, double* std_err) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(mean);
  GC_REQUIRE(std_err);
  return guarded([&] {
    greencell::McConfig mc;
    mc.trials = trials;
    mc.seed = seed;
    const auto est =
        greencell::simulate_total_power(lambda, radius, greencell::Model(cfg->cfg.params), mc);
    *mean = est.mean;
    *std_err = est.std_err;
  });
}

gc_status gc_max_achievable_users(const gc_config* cfg, double* out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  return guarded([&] {
    *out = greencell::max_achievable_users(cfg->cfg.distribution(),
                                           greencell::Model(cfg->cfg.params), cfg->cfg.optimal);
  });
}

gc_status gc_solve(const gc_config* cfg, double u_avg, gc_mode mode, gc_policy** out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const greencell::Model model(cfg->cfg.params);
    auto r = greencell::solve(u_avg, cfg->cfg.distribution(), model, to_mode(mode), cfg->cfg.optimal);
    *out = new gc_policy{std::move(r)};
  });
}

gc_status gc_policy_for_mu(const gc_config* cfg, double mu, gc_mode mode, gc_policy** out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const greencell::Model model(cfg->cfg.params);
    const auto dist = cfg->cfg.distribution();
    const auto& opts = cfg->cfg.optimal;
    const auto m = to_mode(mode);
    greencell::SolveResult r;
    const auto grid = greencell::uniform_grid(dist.lambda_max(), opts.grid_points);
    r.policy = greencell::policy_for_mu(mu, grid, model, m, opts);
    r.metrics = greencell::evaluate(
        greencell::make_range_policy(mu, r.policy.criticals, m, dist.lambda_max(), model, opts.root),
        dist, model, opts.quad);
    r.target_users = std::numeric_limits<double>::quiet_NaN();
    r.max_achievable_users = greencell::max_achievable_users(dist, model, opts);
    *out = new gc_policy{std::move(r)};
  });
}

gc_status gc_policy_summary_get(const gc_policy* p, gc_policy_summary* out) {
  GC_REQUIRE(p);
  GC_REQUIRE(out);
  return guarded([&] {
    const auto& r = p->result;
    const auto& c = r.policy.criticals;
    *out = gc_policy_summary{};
    out->mu = r.policy.mu;
    out->lambda1 = c.lambda1;
    out->lambda2 = c.lambda2;
    out->lambda3 = c.lambda3;
    out->case_tag = c.case_tag == greencell::CaseTag::case_A ? GC_CASE_A : GC_CASE_B;
    out->mode = r.policy.mode == greencell::SolveMode::hse ? GC_MODE_HSE : GC_MODE_EXACT;
    out->metrics = to_c(r.metrics);
    out->target_users = r.target_users;
    out->max_achievable_users = r.max_achievable_users;
    out->jump_limited = r.jump_limited ? 1 : 0;
    out->min_spectral_efficiency = r.policy.min_spectral_efficiency;
    out->rows = r.policy.table.size();
  });
}

gc_status gc_policy_row(const gc_policy* p, size_t i, double out[4]) {
  GC_REQUIRE(p);
  GC_REQUIRE(out);
  return guarded([&] {
    const auto& t = p->result.policy.table;
    if (i >= t.size()) greencell::fail(greencell::Errc::domain_error, "row index out of range");
    out[0] = t[i].lambda;
    out[1] = t[i].radius_m;
    out[2] = t[i].bs_power_w;
    out[3] = t[i].users;
  });
}

gc_status gc_policy_serialize(const gc_policy* p, gc_format fmt, gc_buffer** out) {
  GC_REQUIRE(p);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    check_format(fmt);
    switch (fmt) {
      case GC_FORMAT_CSV: *out = make_buffer(greencell::policy_csv(p->result.policy)); break;
      case GC_FORMAT_JSON: *out = make_buffer(greencell::solve_json(p->result)); break;
      case GC_FORMAT_SUMMARY: *out = make_buffer(greencell::solve_summary_json(p->result)); break;
    }
  });
}

void gc_policy_free(gc_policy* p) { delete p; }

gc_status gc_run_scheme(const gc_config* cfg, const char* scheme, double u_avg,
                        gc_scheme_result** out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(scheme);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto s = greencell::parse_scheme(scheme);
    if (!s) {
      greencell::fail(greencell::Errc::invalid_parameter, std::string("unknown scheme '") + scheme + "'");
    }
    const greencell::Model model(cfg->cfg.params);
    auto r = greencell::run_scheme(*s, u_avg, cfg->cfg.distribution(), model, cfg->cfg.schemes);
    *out = new gc_scheme_result{std::move(r)};
  });
}

gc_status gc_scheme_summary_get(const gc_scheme_result* r, gc_scheme_summary* out) {
  GC_REQUIRE(r);
  GC_REQUIRE(out);
  return guarded([&] {
    const auto& s = r->result;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    *out = gc_scheme_summary{};
    const auto tag = greencell::to_string(s.scheme);
    std::memcpy(out->scheme, tag.data(), std::min(tag.size(), sizeof(out->scheme) - 1));
    out->target_users = s.target_users;
    out->cutoff = s.cutoff;
    const bool fr = greencell::is_fixed_range(s.scheme);
    out->fixed_radius_m = fr ? s.fixed_radius_m : nan;
    out->fixed_power_w = fr ? nan : s.fixed_power_w;
    out->metrics = to_c(s.metrics);
  });
}

gc_status gc_scheme_serialize(const gc_scheme_result* const* results, size_t count, gc_format fmt,
                              gc_buffer** out) {
  GC_REQUIRE(out);
  *out = nullptr;
  if (count > 0) GC_REQUIRE(results);
  return guarded([&] {
    check_format(fmt);
    std::vector<greencell::SchemeResult> all;
    for (size_t i = 0; i < count; ++i) {
      if (results[i] == nullptr) greencell::fail(greencell::Errc::invalid_parameter, "null scheme result");
      all.push_back(results[i]->result);
    }
    switch (fmt) {
      case GC_FORMAT_CSV: *out = make_buffer(greencell::scheme_csv(all)); break;
      case GC_FORMAT_JSON: *out = make_buffer(greencell::scheme_json(all)); break;
      case GC_FORMAT_SUMMARY: {
        std::string s = "[";
        for (size_t i = 0; i < all.size(); ++i) {
          if (i) s += ",";
          s += greencell::scheme_summary_json(all[i]);
        }
        *out = make_buffer(s + "]");
        break;
      }
    }
  });
}

void gc_scheme_result_free(gc_scheme_result* r) { delete r; }

gc_status gc_validate_scaling(const gc_config* cfg, const double* radii, size_t n_radii,
                              const double* lambdas, size_t n_lambdas, long long trials,
                              uint64_t seed, gc_format fmt, gc_buffer** out, int* all_within) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  *out = nullptr;
  if (n_radii > 0) GC_REQUIRE(radii);
  if (n_lambdas > 0) GC_REQUIRE(lambdas);
  return guarded([&] {
    check_format(fmt);
    if (n_radii == 0 || n_lambdas == 0) {
      greencell::fail(greencell::Errc::invalid_parameter, "radius and density lists must be non-empty");
    }
    greencell::McConfig mc;
    mc.trials = trials;
    mc.seed = seed;
    const auto rows = greencell::validate_scaling(std::vector<double>(radii, radii + n_radii),
                                                  std::vector<double>(lambdas, lambdas + n_lambdas),
                                                  greencell::Model(cfg->cfg.params), mc);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.within_band;
    if (all_within) *all_within = ok ? 1 : 0;
    *out = make_buffer(fmt == GC_FORMAT_CSV ? greencell::scaling_csv(rows)
                                            : greencell::scaling_json(rows));
  });
}

gc_status gc_sweep(const gc_config* cfg, const double* u_avgs, size_t n_u,
                   const char* const* schemes, size_t n_schemes, gc_format fmt, gc_buffer** out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(out);
  *out = nullptr;
  if (n_u > 0) GC_REQUIRE(u_avgs);
  if (n_schemes > 0) GC_REQUIRE(schemes);
  return guarded([&] {
    check_format(fmt);
    std::vector<std::string> names;
    for (size_t i = 0; i < n_schemes; ++i) {
      if (schemes[i] == nullptr) greencell::fail(greencell::Errc::invalid_parameter, "null scheme name");
      names.emplace_back(schemes[i]);
    }
    const auto rows = greencell::sweep(std::vector<double>(u_avgs, u_avgs + n_u), names, cfg->cfg);
    *out = make_buffer(fmt == GC_FORMAT_CSV ? greencell::sweep_csv(rows)
                                            : greencell::sweep_json(rows));
  });
}

gc_status gc_manifest(const gc_config* cfg, const char* command, uint64_t seed, long long trials,
                      const char* extra_json, gc_buffer** out) {
  GC_REQUIRE(cfg);
  GC_REQUIRE(command);
  GC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    greencell::Manifest m;
    m.command = command;
    m.config = cfg->cfg;
    m.seed = seed;
    m.trials = trials;
    if (extra_json) m.extra_json = extra_json;
    *out = make_buffer(greencell::manifest_json(m));
  });
}

}  // extern "C"
