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

#include "greencell/params.hpp"

#include <numbers>
#include <string>

#include "greencell/error.hpp"

namespace greencell {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_parameter: return "invalid parameter";
    case Errc::domain_error: return "domain error";
    case Errc::no_sign_change: return "no sign change";
    case Errc::non_convergence: return "non-convergence";
    case Errc::overflow: return "overflow";
    case Errc::infeasible: return "infeasible";
    case Errc::non_finite: return "non-finite value";
    case Errc::io_error: return "i/o error";
    case Errc::parse_error: return "parse error";
  }
  return "unknown error";
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(Errc::invalid_parameter, std::string("invalid parameters: ") + what);
}

bool finite_all(const SystemParams& p) {
  for (double v : {p.bandwidth_w, p.user_rate, p.pathloss_exp, p.snr_gap, p.noise_psd,
                   p.ref_distance, p.ref_pathloss, p.outage_target, p.static_power,
                   p.max_bs_power, p.sleep_power, p.amp_scaling}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

void validate(const SystemParams& p) {
  require(finite_all(p), "all parameters must be finite");
  require(p.pathloss_exp > 2.0, "pathloss_exp must exceed 2");
  require(p.outage_target > 0.0 && p.outage_target < 1.0, "outage_target must lie in (0, 1)");
  require(p.coding_blocks >= 1, "coding_blocks must be >= 1");
  require(p.bandwidth_w > 0.0, "bandwidth_w must be positive");
  require(p.user_rate > 0.0, "user_rate must be positive");
  require(p.snr_gap >= 1.0, "snr_gap must be >= 1");
  require(p.noise_psd > 0.0, "noise_psd must be positive");
  require(p.ref_pathloss > 0.0, "ref_pathloss must be positive");
  require(p.ref_distance > 0.0, "ref_distance must be positive");
  require(p.amp_scaling >= 1.0, "amp_scaling must be >= 1");
  require(p.sleep_power >= 0.0, "sleep_power must be >= 0");
  require(p.static_power >= p.sleep_power, "static_power must be >= sleep_power");
  require(p.max_bs_power > p.static_power, "max_bs_power must exceed static_power");
}

DerivedConstants derive_constants(const SystemParams& p) {
  validate(p);
  DerivedConstants c{};
  const double per_block = std::pow(p.outage_target, 1.0 / p.coding_blocks);
  c.c1 = -std::log1p(-per_block);
  c.c2 = p.user_rate / p.bandwidth_w;
  c.d1 = 2.0 * p.snr_gap * p.noise_psd * p.bandwidth_w /
         (p.ref_pathloss * c.c1 * (p.pathloss_exp + 2.0) *
          std::pow(p.ref_distance, p.pathloss_exp));
  c.d2 = c.c2;
  c.d3 = std::numbers::ln2 * c.d2;
  if (!(c.c1 > 0.0 && std::isfinite(c.c1) && c.d1 > 0.0 && std::isfinite(c.d1))) {
    fail(Errc::invalid_parameter, "invalid parameters: derived constants are not finite and positive");
  }
  return c;
}

Model::Model(const SystemParams& params)
    : params_(params), constants_(derive_constants(params)) {}

}  // namespace greencell
