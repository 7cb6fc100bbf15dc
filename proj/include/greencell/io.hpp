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

#ifndef GREENCELL_IO_HPP_
#define GREENCELL_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greencell/mcsim.hpp"
#include "greencell/optimal.hpp"
#include "greencell/params.hpp"
#include "greencell/suboptimal.hpp"
#include "greencell/traffic.hpp"

namespace greencell {

// Everything a run needs besides the command-specific flags.
struct RunConfig {
  SystemParams params;
  double lambda_max = 1e-4;
  // Two-column CSV of (lambda, weight); the triangular density when empty.
  std::string density_csv;
  OptimalOptions optimal;
  SchemeOptions schemes;

  DensityDistribution distribution() const;
};

// Flat "key = value" lines; '#' starts a comment. Keys are the SystemParams
// field names plus noise_psd_dbm, ref_pathloss_db, lambda_max and
// density_csv. A relative density_csv path is resolved against `base_dir`.
RunConfig parse_config(std::string_view text, const std::string& origin = "<text>",
                       const std::string& base_dir = "");
RunConfig load_config(const std::string& path);

// Sets one key, converting dB forms. Throws parse_error naming the key.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
std::optional<double> get_setting(const RunConfig& cfg, std::string_view key);
const std::vector<std::string>& config_keys();

struct Manifest {
  std::string command;
  RunConfig config;
  std::uint64_t seed = 0;
  long long trials = 0;
  // JSON object text with command-specific inputs and a result summary.
  std::string extra_json = "{}";
};

std::string manifest_json(const Manifest& m);

enum class Format { csv, json };

std::string csv_field(std::string_view s);

std::string policy_csv(const AdaptationPolicy& p);
std::string solve_json(const SolveResult& r);
std::string solve_summary_json(const SolveResult& r);

std::string scheme_csv(const std::vector<SchemeResult>& results);
std::string scheme_json(const std::vector<SchemeResult>& results);
std::string scheme_summary_json(const SchemeResult& r);

struct ScalingRow {
  double radius;
  double lambda;
  double analytic_w;
  double exact_w;
  McEstimate mc;
  bool within_band;
};

// Validates the scaling law against Monte Carlo over radii x lambdas.
std::vector<ScalingRow> validate_scaling(const std::vector<double>& radii,
                                         const std::vector<double>& lambdas, const Model& m,
                                         const McConfig& mc);
std::string scaling_csv(const std::vector<ScalingRow>& rows);
std::string scaling_json(const std::vector<ScalingRow>& rows);

struct SweepRow {
  std::string scheme;  // "optimal" or a scheme tag
  double u_avg;
  double avg_power_w;
  double on_probability;
  double avg_users;
  std::string status;  // ok, infeasible, jump_limited, error
  double max_achievable;
};

// Every scheme at every target; infeasible points become flagged rows.
// `schemes` holds "optimal" and/or scheme tags. Rows are ordered by scheme
// as given, then by u_avg as given.
std::vector<SweepRow> sweep(const std::vector<double>& u_avgs, const std::vector<std::string>& schemes,
                            const RunConfig& cfg);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace greencell

#endif  // GREENCELL_IO_HPP_
