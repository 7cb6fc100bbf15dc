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

// Command-line front end. Talks to the library only through the C API.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "greencell/greencell.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kValidationFailed = 3 };

using Json = nlohmann::ordered_json;

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string format = "csv";
  std::string out;
  std::string manifest;
};

struct BufferDeleter {
  void operator()(gc_buffer* b) const { gc_buffer_free(b); }
};
struct ConfigDeleter {
  void operator()(gc_config* c) const { gc_config_free(c); }
};
struct PolicyDeleter {
  void operator()(gc_policy* p) const { gc_policy_free(p); }
};
struct SchemeDeleter {
  void operator()(gc_scheme_result* r) const { gc_scheme_result_free(r); }
};

using Buffer = std::unique_ptr<gc_buffer, BufferDeleter>;
using Config = std::unique_ptr<gc_config, ConfigDeleter>;
using Policy = std::unique_ptr<gc_policy, PolicyDeleter>;
using SchemeResult = std::unique_ptr<gc_scheme_result, SchemeDeleter>;

// Failure already reported to stderr; carries the exit code.
struct Abort {
  int code;
};

void check(gc_status s, const std::string& context) {
  if (s == GC_OK) return;
  std::cerr << "greencell: " << context << ": " << gc_last_error() << "\n";
  if (s == GC_ERR_INFEASIBLE) {
    const double best = gc_last_max_achievable();
    if (!std::isnan(best)) std::cerr << "greencell: max achievable average users: " << best << "\n";
    throw Abort{kInfeasible};
  }
  throw Abort{kUsage};
}

std::string text(const Buffer& b) { return std::string(gc_buffer_data(b.get()), gc_buffer_size(b.get())); }

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Parameter file of key = value lines");
  cmd->add_option("--set", c.sets, "Override one parameter, key=value (repeatable)");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Output file (stdout when omitted)");
  cmd->add_option("--manifest", c.manifest,
                  "Manifest file (default: <out>.manifest.json, or stderr for stdout output)");
}

Config load(const Common& c) {
  gc_config* raw = nullptr;
  if (c.config.empty()) {
    check(gc_config_new(&raw), "config");
  } else {
    check(gc_config_load(c.config.c_str(), &raw), "config");
  }
  Config cfg(raw);
  for (const auto& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "greencell: --set expects key=value, got '" << kv << "'\n";
      throw Abort{kUsage};
    }
    check(gc_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()), "--set");
  }
  check(gc_config_validate(cfg.get()), "config");
  return cfg;
}

gc_format format_of(const Common& c) { return c.format == "json" ? GC_FORMAT_JSON : GC_FORMAT_CSV; }

void write_to(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << data;
  if (!f) {
    std::cerr << "greencell: cannot write '" << path << "'\n";
    throw Abort{kUsage};
  }
}

// Writes the result and its manifest. On stdout a JSON result is wrapped
// together with the manifest; a CSV result leaves the manifest on stderr.
void emit(const Common& c, const gc_config* cfg, const std::string& command, uint64_t seed,
          long long trials, const Json& extra, const std::string& body) {
  gc_buffer* raw = nullptr;
  check(gc_manifest(cfg, command.c_str(), seed, trials, extra.dump().c_str(), &raw), "manifest");
  const Buffer manifest(raw);
  const std::string m = text(manifest);
  if (!c.out.empty()) {
    write_to(c.out, body);
    write_to(c.manifest.empty() ? c.out + ".manifest.json" : c.manifest, m);
    return;
  }
  if (!c.manifest.empty()) {
    write_to(c.manifest, m);
    std::cout << body;
  } else if (c.format == "json") {
    Json wrapped;
    wrapped["manifest"] = Json::parse(m);
    wrapped["result"] = Json::parse(body);
    std::cout << wrapped.dump(2) << "\n";
  } else {
    std::cout << body;
    std::cerr << m;
  }
  std::cout.flush();
}

// Comma-separated numbers; empty lists and bad entries are usage errors.
std::vector<double> number_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    item = item.substr(first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      std::cerr << "greencell: " << flag << ": not a number: " << item << "\n";
      throw Abort{kUsage};
    }
    out.push_back(v);
  }
  if (out.empty()) {
    std::cerr << "greencell: " << flag << " must list at least one value\n";
    throw Abort{kUsage};
  }
  return out;
}

Json array_of(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

int run_validate(const Common& c, std::vector<double> radii, std::vector<double> lambdas,
                 long long trials, uint64_t seed) {
  const auto cfg = load(c);
  int all_within = 0;
  gc_buffer* raw = nullptr;
  check(gc_validate_scaling(cfg.get(), radii.data(), radii.size(), lambdas.data(), lambdas.size(),
                            trials, seed, format_of(c), &raw, &all_within),
        "validate-scaling");
  const Buffer out(raw);
  Json extra;
  extra["radii"] = array_of(radii);
  extra["lambdas"] = array_of(lambdas);
  extra["all_within_3se"] = all_within == 1;
  emit(c, cfg.get(), "validate-scaling", seed, trials, extra, text(out));
  if (!all_within) {
    std::cerr << "greencell: some points fall outside the 3-standard-error band\n";
    return kValidationFailed;
  }
  return kOk;
}

int run_solve(const Common& c, double u_avg, const std::string& mode) {
  const auto cfg = load(c);
  gc_policy* raw = nullptr;
  check(gc_solve(cfg.get(), u_avg, mode == "hse" ? GC_MODE_HSE : GC_MODE_EXACT, &raw), "solve");
  const Policy policy(raw);
  gc_buffer* body_raw = nullptr;
  check(gc_policy_serialize(policy.get(), format_of(c), &body_raw), "serialize");
  const Buffer body(body_raw);
  gc_buffer* sum_raw = nullptr;
  check(gc_policy_serialize(policy.get(), GC_FORMAT_SUMMARY, &sum_raw), "serialize");
  const Buffer summary(sum_raw);
  Json extra;
  extra["u_avg"] = u_avg;
  extra["mode"] = mode;
  extra["result"] = Json::parse(text(summary));
  emit(c, cfg.get(), "solve", 0, 0, extra, text(body));
  if (mode == "hse") {
    gc_policy_summary s{};
    check(gc_policy_summary_get(policy.get(), &s), "summary");
    std::cerr << "greencell: smallest spectral efficiency on the on-region: "
              << s.min_spectral_efficiency << " bps/Hz\n";
  }
  return kOk;
}

int run_schemes(const Common& c, double u_avg, const std::vector<std::string>& names) {
  const auto cfg = load(c);
  std::vector<SchemeResult> results;
  std::vector<const gc_scheme_result*> view;
  for (const auto& n : names) {
    gc_scheme_result* raw = nullptr;
    check(gc_run_scheme(cfg.get(), n.c_str(), u_avg, &raw), n);
    results.emplace_back(raw);
    view.push_back(raw);
  }
  gc_buffer* body_raw = nullptr;
  check(gc_scheme_serialize(view.data(), view.size(), format_of(c), &body_raw), "serialize");
  const Buffer body(body_raw);
  gc_buffer* sum_raw = nullptr;
  check(gc_scheme_serialize(view.data(), view.size(), GC_FORMAT_SUMMARY, &sum_raw), "serialize");
  const Buffer summary(sum_raw);
  Json extra;
  extra["u_avg"] = u_avg;
  extra["schemes"] = names;
  extra["results"] = Json::parse(text(summary));
  emit(c, cfg.get(), "schemes", 0, 0, extra, text(body));
  return kOk;
}

int run_sweep(const Common& c, const std::vector<double>& u_avgs,
              const std::vector<std::string>& names) {
  const auto cfg = load(c);
  std::vector<const char*> ptrs;
  for (const auto& n : names) ptrs.push_back(n.c_str());
  gc_buffer* raw = nullptr;
  check(gc_sweep(cfg.get(), u_avgs.data(), u_avgs.size(), ptrs.data(), ptrs.size(), format_of(c),
                 &raw),
        "sweep");
  const Buffer out(raw);
  Json extra;
  extra["u_avg"] = array_of(u_avgs);
  extra["schemes"] = names;
  emit(c, cfg.get(), "sweep", 0, 0, extra, text(out));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-optimal base-station range and power adaptation"};
  app.set_version_flag("--version", std::string(gc_version()));
  app.require_subcommand(1);

  Common common;

  auto* validate = app.add_subcommand("validate-scaling", "Monte Carlo check of the power scaling law");
  add_common(validate, common);
  std::string radii_text = "250,500,1000,2000";
  std::string lambdas_text = "1e-6,1e-5,5e-5";
  long long trials = 100000;
  uint64_t seed = 1;
  validate->add_option("--radii", radii_text, "Comma-separated cell radii in meters")
      ->capture_default_str();
  validate->add_option("--lambdas", lambdas_text, "Comma-separated user densities per square meter")
      ->capture_default_str();
  validate->add_option("--trials", trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
  validate->add_option("--seed", seed, "Random seed");

  auto* solve = app.add_subcommand("solve", "Optimal range adaptation policy for a throughput target");
  add_common(solve, common);
  double u_single = 0.0;
  std::string mode = "exact";
  solve->add_option("--u-avg", u_single, "Long-term average number of users")->required();
  solve->add_option("--mode", mode, "exact or hse")->check(CLI::IsMember({"exact", "hse"}));

  auto* sweep = app.add_subcommand("sweep", "Average power of each scheme over throughput targets");
  add_common(sweep, common);
  std::vector<double> u_list;
  std::vector<std::string> sweep_schemes{"optimal", "FRwOFC", "FRwoOFC", "ARwOFC", "ARwoOFC"};
  sweep->add_option("--u-avg", u_list, "Throughput targets")->delimiter(',')->required();
  sweep->add_option("--schemes", sweep_schemes, "optimal and/or scheme tags")->delimiter(',');

  auto* schemes = app.add_subcommand("schemes", "Suboptimal scheme policies for a throughput target");
  add_common(schemes, common);
  double u_scheme = 0.0;
  bool list = false;
  std::vector<std::string> scheme_names{"FRwOFC", "FRwoOFC", "ARwOFC", "ARwoOFC"};
  auto* u_opt = schemes->add_option("--u-avg", u_scheme, "Long-term average number of users");
  schemes->add_option("--scheme", scheme_names, "Scheme tags")->delimiter(',');
  schemes->add_flag("--list", list, "Print the scheme tags and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) {
      const auto radii = number_list(radii_text, "--radii");
      const auto lambdas = number_list(lambdas_text, "--lambdas");
      return run_validate(common, radii, lambdas, trials, seed);
    }
    if (solve->parsed()) return run_solve(common, u_single, mode);
    if (sweep->parsed()) return run_sweep(common, u_list, sweep_schemes);
    if (schemes->parsed()) {
      if (list) {
        for (const char* s : {"FRwOFC", "FRwoOFC", "ARwOFC", "ARwoOFC"}) std::cout << s << "\n";
        return kOk;
      }
      if (u_opt->count() == 0) {
        std::cerr << "greencell: schemes requires --u-avg (or --list)\n";
        return kUsage;
      }
      return run_schemes(common, u_scheme, scheme_names);
    }
  } catch (const Abort& a) {
    return a.code;
  } catch (const std::exception& e) {
    std::cerr << "greencell: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
