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

#include "greencell/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "greencell/error.hpp"
#include "greencell/scaling.hpp"
#include "greencell/text.hpp"

namespace greencell {

namespace {

using nlohmann::ordered_json;

constexpr const char* kEol = "\r\n";

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* why) {
  std::ostringstream os;
  os << "config key '" << key << "': " << why << " (got '" << value << "')";
  fail(Errc::parse_error, os.str());
}

double need_double(std::string_view key, std::string_view value) {
  const auto v = parse_double(value);
  if (!v || !std::isfinite(*v)) bad_value(key, value, "expected a finite number");
  return *v;
}

struct Field {
  double SystemParams::*member;
  bool db;     // value given in dB (or dBm for noise)
  bool dbm;
};

const std::map<std::string, Field, std::less<>>& double_fields() {
  static const std::map<std::string, Field, std::less<>> fields = {
      {"bandwidth_w", {&SystemParams::bandwidth_w, false, false}},
      {"user_rate", {&SystemParams::user_rate, false, false}},
      {"pathloss_exp", {&SystemParams::pathloss_exp, false, false}},
      {"snr_gap", {&SystemParams::snr_gap, false, false}},
      {"noise_psd", {&SystemParams::noise_psd, false, false}},
      {"noise_psd_dbm", {&SystemParams::noise_psd, false, true}},
      {"ref_distance", {&SystemParams::ref_distance, false, false}},
      {"ref_pathloss", {&SystemParams::ref_pathloss, false, false}},
      {"ref_pathloss_db", {&SystemParams::ref_pathloss, true, false}},
      {"outage_target", {&SystemParams::outage_target, false, false}},
      {"static_power", {&SystemParams::static_power, false, false}},
      {"max_bs_power", {&SystemParams::max_bs_power, false, false}},
      {"sleep_power", {&SystemParams::sleep_power, false, false}},
      {"amp_scaling", {&SystemParams::amp_scaling, false, false}},
  };
  return fields;
}

// Keys that set the same quantity; a config may use only one of each group.
std::string_view canonical_key(std::string_view key) {
  if (key == "noise_psd_dbm") return "noise_psd";
  if (key == "ref_pathloss_db") return "ref_pathloss";
  return key;
}

ordered_json params_json(const SystemParams& p) {
  ordered_json j;
  j["bandwidth_w"] = p.bandwidth_w;
  j["user_rate"] = p.user_rate;
  j["pathloss_exp"] = p.pathloss_exp;
  j["snr_gap"] = p.snr_gap;
  j["noise_psd"] = p.noise_psd;
  j["ref_distance"] = p.ref_distance;
  j["ref_pathloss"] = p.ref_pathloss;
  j["outage_target"] = p.outage_target;
  j["coding_blocks"] = p.coding_blocks;
  j["static_power"] = p.static_power;
  j["max_bs_power"] = p.max_bs_power;
  j["sleep_power"] = p.sleep_power;
  j["amp_scaling"] = p.amp_scaling;
  return j;
}

ordered_json metrics_json(const PolicyMetrics& m) {
  ordered_json j;
  j["avg_power_w"] = num(m.avg_power_w);
  j["avg_users"] = num(m.avg_users);
  j["on_probability"] = num(m.on_probability);
  j["peak_bs_power_w"] = num(m.peak_bs_power_w);
  return j;
}

ordered_json criticals_json(const CriticalDensities& c) {
  ordered_json j;
  j["lambda1"] = num(c.lambda1);
  j["lambda1_flag"] = to_string(c.flag1);
  j["lambda2"] = num(c.lambda2);
  j["lambda2_flag"] = to_string(c.flag2);
  j["lambda3"] = num(c.lambda3);
  j["lambda3_flag"] = to_string(c.flag3);
  return j;
}

ordered_json table_json(const std::vector<PolicyRow>& rows) {
  ordered_json t = ordered_json::array();
  for (const auto& r : rows) {
    t.push_back({{"lambda", num(r.lambda)},
                 {"radius_m", num(r.radius_m)},
                 {"bs_power_w", num(r.bs_power_w)},
                 {"users", num(r.users)}});
  }
  return t;
}

void table_rows_csv(std::string& out, const std::vector<PolicyRow>& rows, std::string_view prefix) {
  for (const auto& r : rows) {
    out += prefix;
    out += format_double(r.lambda);
    out += ',';
    out += format_double(r.radius_m);
    out += ',';
    out += format_double(r.bs_power_w);
    out += ',';
    out += format_double(r.users);
    out += kEol;
  }
}

ordered_json solve_summary(const SolveResult& r) {
  ordered_json j;
  j["mode"] = to_string(r.policy.mode);
  j["mu"] = num(r.policy.mu);
  j["case_tag"] = to_string(r.policy.criticals.case_tag);
  j["criticals"] = criticals_json(r.policy.criticals);
  j["target_users"] = num(r.target_users);
  j["max_achievable_users"] = num(r.max_achievable_users);
  j["jump_limited"] = r.jump_limited;
  j["dual_iterations"] = r.dual_iterations;
  j["min_spectral_efficiency"] = num(r.policy.min_spectral_efficiency);
  j["metrics"] = metrics_json(r.metrics);
  return j;
}

ordered_json scheme_summary(const SchemeResult& r) {
  ordered_json j;
  j["scheme"] = to_string(r.scheme);
  j["target_users"] = num(r.target_users);
  j["cutoff"] = num(r.cutoff);
  if (is_fixed_range(r.scheme)) {
    j["fixed_radius_m"] = num(r.fixed_radius_m);
  } else {
    j["fixed_power_w"] = num(r.fixed_power_w);
  }
  j["metrics"] = metrics_json(r.metrics);
  return j;
}

}  // namespace

DensityDistribution RunConfig::distribution() const {
  if (!density_csv.empty()) return load_density_csv(density_csv);
  return DensityDistribution::triangular(lambda_max);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, field] : double_fields()) k.push_back(name);
    k.push_back("coding_blocks");
    k.push_back("lambda_max");
    k.push_back("density_csv");
    std::sort(k.begin(), k.end());
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (auto it = double_fields().find(key); it != double_fields().end()) {
    const double v = need_double(key, value);
    const Field& f = it->second;
    cfg.params.*(f.member) = f.dbm ? dbm_to_watts(v) : f.db ? db_to_linear(v) : v;
    return;
  }
  if (key == "coding_blocks") {
    const auto v = parse_int(value);
    if (!v || *v < 1 || *v > 1000000) bad_value(key, value, "expected an integer >= 1");
    cfg.params.coding_blocks = static_cast<int>(*v);
    return;
  }
  if (key == "lambda_max") {
    const double v = need_double(key, value);
    if (!(v > 0.0)) bad_value(key, value, "expected a positive density");
    cfg.lambda_max = v;
    return;
  }
  if (key == "density_csv") {
    cfg.density_csv = std::string(value);
    return;
  }
  std::ostringstream os;
  os << "unknown config key '" << key << "'";
  fail(Errc::parse_error, os.str());
}

std::optional<double> get_setting(const RunConfig& cfg, std::string_view key) {
  if (auto it = double_fields().find(key); it != double_fields().end()) {
    const Field& f = it->second;
    const double v = cfg.params.*(f.member);
    if (f.dbm) return watts_to_dbm(v);
    if (f.db) return 10.0 * std::log10(v);
    return v;
  }
  if (key == "coding_blocks") return cfg.params.coding_blocks;
  if (key == "lambda_max") return cfg.lambda_max;
  return std::nullopt;
}

RunConfig parse_config(std::string_view text, const std::string& origin,
                       const std::string& base_dir) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto where = [&] {
      std::ostringstream os;
      os << origin << ":" << line_no << ": ";
      return os.str();
    };
    if (eq == std::string_view::npos) {
      fail(Errc::parse_error, where() + "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(canonical_key(key))).second) {
      fail(Errc::parse_error, where() + "duplicate setting for '" + std::string(key) + "'");
    }
    try {
      apply_setting(cfg, key, value);
    } catch (const Error& e) {
      fail(e.code(), where() + e.what());
    }
  }
  if (!cfg.density_csv.empty() && !base_dir.empty()) {
    std::filesystem::path p(cfg.density_csv);
    if (p.is_relative()) cfg.density_csv = (std::filesystem::path(base_dir) / p).string();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path().string();
  return parse_config(read_file(path), path, parent);
}

std::string manifest_json(const Manifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["tool_version"] = GREENCELL_VERSION;
  j["rng_algorithm"] = std::string(Rng::kAlgorithm);
  j["seed"] = m.seed;
  j["trials"] = m.trials;
  j["params"] = params_json(m.config.params);
  const auto dist = m.config.distribution();
  ordered_json d;
  d["kind"] = to_string(dist.kind());
  d["lambda_max"] = dist.lambda_max();
  d["source"] = m.config.density_csv.empty() ? "builtin" : m.config.density_csv;
  ordered_json nodes = ordered_json::array();
  for (const auto& n : dist.nodes()) nodes.push_back({n.lambda, n.pdf});
  d["nodes"] = nodes;
  j["distribution"] = d;
  const auto& o = m.config.optimal;
  const auto& s = m.config.schemes;
  ordered_json t;
  t["root_rel_tol"] = o.root.rel_tol;
  t["root_max_iter"] = o.root.max_iter;
  t["quad_rel_tol"] = o.quad.rel_tol;
  t["quad_abs_tol"] = o.quad.abs_tol;
  t["quad_max_subdivisions"] = o.quad.max_subdivisions;
  t["policy_grid_points"] = o.grid_points;
  t["critical_scan_ceiling"] = o.scan_ceiling;
  t["critical_scan_floor"] = o.scan_floor;
  t["dual_rel_tol"] = o.dual_rel_tol;
  t["dual_hi_limit"] = o.dual_hi_limit;
  t["dual_max_iter"] = o.dual_max_iter;
  t["case_rel_tol"] = o.case_rel_tol;
  t["scheme_line_points"] = s.line_points;
  t["scheme_table_points"] = s.table_points;
  j["tolerances"] = t;
  auto extra = ordered_json::parse(m.extra_json.empty() ? "{}" : m.extra_json, nullptr, false);
  if (extra.is_discarded() || !extra.is_object()) {
    fail(Errc::parse_error, "manifest extra data must be a JSON object");
  }
  j["extra"] = std::move(extra);
  return j.dump(2) + "\n";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string policy_csv(const AdaptationPolicy& p) {
  std::string out = "lambda,radius_m,bs_power_w,users";
  out += kEol;
  table_rows_csv(out, p.table, "");
  return out;
}

std::string solve_summary_json(const SolveResult& r) { return solve_summary(r).dump(); }

std::string solve_json(const SolveResult& r) {
  auto j = solve_summary(r);
  j["table"] = table_json(r.policy.table);
  return j.dump(2) + "\n";
}

std::string scheme_csv(const std::vector<SchemeResult>& results) {
  std::string out = "scheme,lambda,radius_m,bs_power_w,users";
  out += kEol;
  for (const auto& r : results) {
    table_rows_csv(out, r.table, csv_field(to_string(r.scheme)) + ",");
  }
  return out;
}

std::string scheme_summary_json(const SchemeResult& r) { return scheme_summary(r).dump(); }

std::string scheme_json(const std::vector<SchemeResult>& results) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {
    auto j = scheme_summary(r);
    j["table"] = table_json(r.table);
    arr.push_back(std::move(j));
  }
  ordered_json root;
  root["results"] = std::move(arr);
  return root.dump(2) + "\n";
}

std::vector<ScalingRow> validate_scaling(const std::vector<double>& radii,
                                         const std::vector<double>& lambdas, const Model& m,
                                         const McConfig& mc) {
  std::vector<ScalingRow> rows;
  rows.reserve(radii.size() * lambdas.size());
  std::uint64_t point = 0;
  for (double r : radii) {
    for (double l : lambdas) {
      ScalingRow row{};
      row.radius = r;
      row.lambda = l;
      row.analytic_w = avg_transmit_power(CellState{r, l}, m);
      row.exact_w = avg_transmit_power_exact(CellState{r, l}, m);
      McConfig local = mc;
      // Distinct, reproducible seed per grid point.
      local.seed = mc.seed + 0x9E3779B97F4A7C15ULL * (++point);
      row.mc = simulate_total_power(l, r, m, local);
      const double band = 3.0 * row.mc.std_err;
      row.within_band = std::abs(row.mc.mean - row.exact_w) <= band;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::string out = "R,lambda,analytic_w,exact_w,mc_mean_w,mc_stderr_w,within_3se";
  out += kEol;
  for (const auto& r : rows) {
    out += format_double(r.radius) + "," + format_double(r.lambda) + "," +
           format_double(r.analytic_w) + "," + format_double(r.exact_w) + "," +
           format_double(r.mc.mean) + "," + format_double(r.mc.std_err) + "," +
           (r.within_band ? "true" : "false") + kEol;
  }
  return out;
}

std::string scaling_json(const std::vector<ScalingRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"R", num(r.radius)},
                   {"lambda", num(r.lambda)},
                   {"analytic_w", num(r.analytic_w)},
                   {"exact_w", num(r.exact_w)},
                   {"mc_mean_w", num(r.mc.mean)},
                   {"mc_stderr_w", num(r.mc.std_err)},
                   {"mc_trials", r.mc.trials},
                   {"within_3se", r.within_band}});
  }
  ordered_json root;
  root["rows"] = std::move(arr);
  return root.dump(2) + "\n";
}

std::vector<SweepRow> sweep(const std::vector<double>& u_avgs, const std::vector<std::string>& schemes,
                            const RunConfig& cfg) {
  const Model model(cfg.params);
  const auto dist = cfg.distribution();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SweepRow> rows;
  for (const auto& name : schemes) {
    std::optional<Scheme> scheme;
    if (name != "optimal") {
      scheme = parse_scheme(name);
      if (!scheme) fail(Errc::invalid_parameter, "unknown scheme '" + name + "'");
    }
    const std::string tag = scheme ? std::string(to_string(*scheme)) : name;
    for (double u : u_avgs) {
      SweepRow row{tag, u, nan, nan, nan, "ok", nan};
      try {
        if (scheme) {
          const auto r = run_scheme(*scheme, u, dist, model, cfg.schemes);
          row.avg_power_w = r.metrics.avg_power_w;
          row.on_probability = r.metrics.on_probability;
          row.avg_users = r.metrics.avg_users;
        } else {
          const auto r = solve(u, dist, model, SolveMode::exact, cfg.optimal);
          row.avg_power_w = r.metrics.avg_power_w;
          row.on_probability = r.metrics.on_probability;
          row.avg_users = r.metrics.avg_users;
          row.max_achievable = r.max_achievable_users;
          if (r.jump_limited) row.status = "jump_limited";
        }
      } catch (const InfeasibleError& e) {
        row.status = "infeasible";
        row.max_achievable = e.max_achievable();
      } catch (const Error&) {
        row.status = "error";
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "scheme,u_avg,avg_power_w,on_probability,avg_users,status,max_achievable";
  out += kEol;
  for (const auto& r : rows) {
    out += csv_field(r.scheme) + "," + format_double(r.u_avg) + "," + format_double(r.avg_power_w) +
           "," + format_double(r.on_probability) + "," + format_double(r.avg_users) + "," +
           csv_field(r.status) + "," + format_double(r.max_achievable) + kEol;
  }
  return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"scheme", r.scheme},
                   {"u_avg", num(r.u_avg)},
                   {"avg_power_w", num(r.avg_power_w)},
                   {"on_probability", num(r.on_probability)},
                   {"avg_users", num(r.avg_users)},
                   {"status", r.status},
                   {"max_achievable", num(r.max_achievable)}});
  }
  ordered_json root;
  root["rows"] = std::move(arr);
  return root.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) fail(Errc::io_error, "error reading '" + path + "'");
  return os.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) fail(Errc::io_error, "error writing '" + path + "'");
}

}  // namespace greencell
