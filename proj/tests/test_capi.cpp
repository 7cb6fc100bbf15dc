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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "greencell/greencell.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string buffer_text(gc_buffer* b) {
  std::string s(gc_buffer_data(b), gc_buffer_size(b));
  gc_buffer_free(b);
  return s;
}

struct Config {
  gc_config* p = nullptr;
  explicit Config(const char* text) { REQUIRE(gc_config_parse(text, &p) == GC_OK); }
  ~Config() { gc_config_free(p); }
};

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + GREENCELL_CLI + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("greencell-cli-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("library identity") {
    CHECK(std::strlen(gc_version()) > 0);
    CHECK(std::string(gc_rng_algorithm()).rfind("mt19937_64", 0) == 0);
    CHECK(std::string(gc_status_string(GC_OK)) != std::string(gc_status_string(GC_ERR_INFEASIBLE)));
  }

  TEST_CASE("null arguments are rejected") {
    double v = 0.0;
    CHECK(gc_lambert_w0(1.0, nullptr) == GC_ERR_NULL_ARGUMENT);
    CHECK(gc_stpc_power(nullptr, 10.0, 1, &v) == GC_ERR_NULL_ARGUMENT);
    CHECK(gc_config_parse(nullptr, nullptr) == GC_ERR_NULL_ARGUMENT);
    CHECK(gc_solve(nullptr, 50.0, GC_MODE_EXACT, nullptr) == GC_ERR_NULL_ARGUMENT);
    CHECK(std::strlen(gc_last_error()) > 0);
    gc_config_free(nullptr);
    gc_policy_free(nullptr);
    gc_buffer_free(nullptr);
    gc_scheme_result_free(nullptr);
  }

  TEST_CASE("errors map to status codes") {
    double v = 0.0;
    CHECK(gc_lambert_w0(-1.0, &v) == GC_ERR_DOMAIN);
    gc_config* cfg = nullptr;
    CHECK(gc_config_parse("no_such_key = 1\n", &cfg) == GC_ERR_PARSE);
    CHECK(cfg == nullptr);
    CHECK(std::string(gc_last_error()).find("no_such_key") != std::string::npos);
    CHECK(gc_config_load("/nonexistent/x.cfg", &cfg) == GC_ERR_IO);
    Config c("static_power = 170\n");
    CHECK(gc_config_validate(c.p) == GC_ERR_INVALID_PARAMETER);
    Config ok("");
    CHECK(gc_config_set(ok.p, "static_power", "abc") == GC_ERR_PARSE);
    CHECK(gc_lambert_w0(1.0, &v) == GC_OK);
    CHECK(std::string(gc_last_error()).empty());
    gc_buffer* b = nullptr;
    CHECK(gc_manifest(ok.p, "x", 0, 0, "not json", &b) == GC_ERR_PARSE);
  }

  TEST_CASE("scalar wrappers match the model") {
    Config c("static_power = 120\n");
    double v = 0.0;
    REQUIRE(gc_lambert_w0(1.0, &v) == GC_OK);
    CHECK(v == doctest::Approx(0.5671432904097838));
    REQUIRE(gc_avg_transmit_power(c.p, 1000.0, 1e-5, &v) == GC_OK);
    CHECK(v == doctest::Approx(7.336).epsilon(1e-3));
    REQUIRE(gc_bs_power(c.p, 1000.0, 1e-5, &v) == GC_OK);
    CHECK(v == doctest::Approx(127.336).epsilon(1e-4));
    double r = 0.0;
    REQUIRE(gc_max_range(c.p, 5e-5, 160.0, &r) == GC_OK);
    REQUIRE(gc_bs_power(c.p, r, 5e-5, &v) == GC_OK);
    CHECK(v == doctest::Approx(160.0).epsilon(1e-8));
    double mean = 0.0, se = 0.0, exact = 0.0;
    REQUIRE(gc_simulate_total_power(c.p, 1e-5, 1000.0, 20000, 3, &mean, &se) == GC_OK);
    REQUIRE(gc_avg_transmit_power_exact(c.p, 1000.0, 1e-5, &exact) == GC_OK);
    CHECK(std::abs(mean - exact) <= 4.0 * se);
  }

  TEST_CASE("solve through the handle api") {
    Config c("static_power = 140\n");
    gc_policy* p = nullptr;
    REQUIRE(gc_solve(c.p, 50.0, GC_MODE_EXACT, &p) == GC_OK);
    gc_policy_summary s{};
    REQUIRE(gc_policy_summary_get(p, &s) == GC_OK);
    CHECK(s.case_tag == GC_CASE_B);
    CHECK(s.metrics.avg_users == doctest::Approx(50.0).epsilon(1e-4));
    REQUIRE(s.rows > 0);
    double row[4];
    REQUIRE(gc_policy_row(p, s.rows - 1, row) == GC_OK);
    CHECK(row[0] == doctest::Approx(1e-4));
    CHECK(gc_policy_row(p, s.rows, row) == GC_ERR_DOMAIN);
    gc_buffer* b = nullptr;
    REQUIRE(gc_policy_serialize(p, GC_FORMAT_JSON, &b) == GC_OK);
    const auto j = json::parse(buffer_text(b));
    CHECK(j["case_tag"] == "case_B");
    gc_policy_free(p);
  }

  TEST_CASE("infeasible solves report the achievable maximum") {
    Config c("");
    gc_policy* p = nullptr;
    double cap = 0.0;
    REQUIRE(gc_max_achievable_users(c.p, &cap) == GC_OK);
    CHECK(gc_solve(c.p, 2.0 * cap, GC_MODE_EXACT, &p) == GC_ERR_INFEASIBLE);
    CHECK(p == nullptr);
    CHECK(gc_last_max_achievable() == doctest::Approx(cap));
  }

  TEST_CASE("schemes through the handle api") {
    Config c("");
    gc_scheme_result* r[2] = {nullptr, nullptr};
    REQUIRE(gc_run_scheme(c.p, "ARw/OFC", 50.0, &r[0]) == GC_OK);
    REQUIRE(gc_run_scheme(c.p, "FRwoOFC", 50.0, &r[1]) == GC_OK);
    gc_scheme_summary s{};
    REQUIRE(gc_scheme_summary_get(r[0], &s) == GC_OK);
    CHECK(std::string(s.scheme) == "ARwOFC");
    CHECK(std::isnan(s.fixed_radius_m));
    CHECK(s.fixed_power_w > 60.0);
    gc_buffer* b = nullptr;
    REQUIRE(gc_scheme_serialize(r, 2, GC_FORMAT_CSV, &b) == GC_OK);
    const auto csv = buffer_text(b);
    CHECK(csv.rfind("scheme,lambda,radius_m,bs_power_w,users\r\n", 0) == 0);
    CHECK(gc_run_scheme(c.p, "bogus", 50.0, &r[0]) == GC_ERR_INVALID_PARAMETER);
    gc_scheme_result_free(r[0]);
    gc_scheme_result_free(r[1]);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("").code == 1);
    CHECK(run_cli("solve").code == 1);
    CHECK(run_cli("solve --u-avg 50 --mode nope").code == 1);
    CHECK(run_cli("solve --u-avg 50 --format xml").code == 1);
    CHECK(run_cli("validate-scaling --radii ''").code == 1);
    CHECK(run_cli("solve --u-avg 50 --config /nonexistent.cfg").code == 1);
    CHECK(run_cli("solve --u-avg 50").code == 0);
    CHECK(run_cli("solve --u-avg 1000").code == 2);
    CHECK(run_cli("schemes --u-avg 1000 --scheme ARwOFC").code == 2);
    CHECK(run_cli("validate-scaling --radii 250 --lambdas 1e-6 --trials 2 --seed 1").code == 3);
  }

  TEST_CASE("validate-scaling default grid passes") {
    const auto r = run_cli("validate-scaling --trials 100000 --seed 1");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("R,lambda,analytic_w,exact_w,mc_mean_w,mc_stderr_w,within_3se\r\n", 0) == 0);
  }

  TEST_CASE("a single trial still emits rows") {
    const auto r = run_cli("validate-scaling --radii 1000 --lambdas 1e-5 --trials 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("inf") != std::string::npos);
  }

  TEST_CASE("solve reports the case tag from a config file") {
    TempDir dir;
    for (auto [pc, tag] : {std::pair{"120", "case_A"}, std::pair{"140", "case_B"}}) {
      const auto cfg = dir.path / (std::string("pc") + pc + ".cfg");
      std::ofstream(cfg) << "static_power = " << pc << "\n";
      const auto r = run_cli("solve --config '" + cfg.string() + "' --u-avg 50 --format json");
      REQUIRE(r.code == 0);
      const auto j = json::parse(r.out);
      CHECK(j["result"]["case_tag"] == tag);
      CHECK(j["manifest"]["params"]["static_power"].get<double>() == std::stod(pc));
    }
  }

  TEST_CASE("hse and exact solves agree on the shared on-region") {
    const auto e = json::parse(run_cli("solve --set static_power=120 --u-avg 50 --format json").out);
    const auto h =
        json::parse(run_cli("solve --set static_power=120 --u-avg 50 --mode hse --format json").out);
    const auto& te = e["result"]["table"];
    const auto& th = h["result"]["table"];
    double worst = 0.0;
    int compared = 0;
    for (std::size_t i = 0, k = 0; i < te.size(); ++i) {
      const double l = te[i]["lambda"].get<double>();
      while (k < th.size() && th[k]["lambda"].get<double>() < l) ++k;
      if (k >= th.size() || th[k]["lambda"].get<double>() != l) continue;
      const double re = te[i]["radius_m"].get<double>();
      const double rh = th[k]["radius_m"].get<double>();
      if (re <= 0.0 || rh <= 0.0) continue;
      worst = std::max(worst, std::abs(rh - re) / re);
      ++compared;
    }
    CHECK(compared > 100);
    CHECK(worst < 0.02);
  }

  TEST_CASE("output files carry a manifest and are reproducible") {
    TempDir dir;
    const auto a = dir.path / "a.csv";
    const auto b = dir.path / "b.csv";
    REQUIRE(run_cli("sweep --u-avg 30,60 --schemes optimal,ARwOFC --out '" + a.string() + "'").code == 0);
    REQUIRE(run_cli("sweep --u-avg 30,60 --schemes optimal,ARwOFC --out '" + b.string() + "'").code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a.string() + ".manifest.json") == slurp(b.string() + ".manifest.json"));
    const auto m = json::parse(slurp(a.string() + ".manifest.json"));
    CHECK(m["command"] == "sweep");
    CHECK(m["extra"]["schemes"].size() == 2);
  }

  TEST_CASE("sweep keeps going past infeasible points") {
    const auto r = run_cli("sweep --u-avg 50,1000 --schemes optimal");
    CHECK(r.code == 0);
    CHECK(r.out.find("optimal,1000,nan,nan,nan,infeasible,") != std::string::npos);
  }

  TEST_CASE("small targets favour the fixed range with cut-off") {
    const auto j = json::parse(run_cli("sweep --u-avg 50 --format json").out);
    double opt = 0, with = 0, without = 0;
    for (const auto& row : j["result"]["rows"]) {
      if (row["scheme"] == "optimal") opt = row["avg_power_w"];
      if (row["scheme"] == "FRwOFC") with = row["avg_power_w"];
      if (row["scheme"] == "FRwoOFC") without = row["avg_power_w"];
    }
    CHECK(std::abs(with - opt) < std::abs(without - opt));
  }
}
