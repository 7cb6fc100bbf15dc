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

#ifndef GREENCELL_PARAMS_HPP_
#define GREENCELL_PARAMS_HPP_

#include <cmath>

namespace greencell {

// Physical and radio constants of the single-cell downlink. Every power is in
// watts and every gain is linear; decibel forms are converted at the edges.
struct SystemParams {
  double bandwidth_w = 5e6;             // W, hertz
  double user_rate = 150e3;             // target rate per user, bit/s
  double pathloss_exp = 3.0;            // alpha, must exceed 2
  double snr_gap = 1.0;                 // Gamma >= 1
  double noise_psd = 3.981071705534973e-21;  // N0, W/Hz (-174 dBm/Hz)
  double ref_distance = 10.0;           // r0, meters
  double ref_pathloss = 1e-6;           // K at r0 (-60 dB)
  double outage_target = 1e-3;          // per-user outage bound
  int coding_blocks = 1;                // L, resource blocks per codeword
  double static_power = 60.0;           // P_c, watts
  double max_bs_power = 160.0;          // P_max, watts
  double sleep_power = 0.0;             // P_sleep, watts
  double amp_scaling = 1.0;             // a >= 1
};

struct DerivedConstants {
  double c1;  // -ln(1 - Pout^(1/L))
  double c2;  // per-user spectral efficiency v/W
  double d1;  // scaling-law prefactor, W * m^-alpha
  double d2;  // equals c2
  double d3;  // ln(2) * d2
};

// Throws Error(invalid_parameter) naming the first violated invariant.
void validate(const SystemParams& p);

DerivedConstants derive_constants(const SystemParams& p);

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Validated parameters bundled with their derived constants. Immutable.
class Model {
 public:
  explicit Model(const SystemParams& params);

  const SystemParams& params() const noexcept { return params_; }
  const DerivedConstants& constants() const noexcept { return constants_; }

 private:
  SystemParams params_;
  DerivedConstants constants_;
};

}  // namespace greencell

#endif  // GREENCELL_PARAMS_HPP_
