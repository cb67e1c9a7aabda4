// Copyright 2026 The qrl Authors
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

#pragma once

#include "qrl/generate.hpp"
#include "qrl/lln.hpp"

namespace qrl {

// One seed drives every draw; `instance_count` scales each check family
// around its reference size (count = 20 reproduces the reference sizes:
// 10x approximation instances, 25x counting projectors and Markov pairs,
// 5x convexity checks).
struct RunConfig {
  std::uint64_t seed = 42;
  int n_max = 8;
  int instance_count = 20;
  double delta = 0.5;
  std::string suite = "all";
  std::string out_dir;
  std::string format = "json";
  Tolerances tol;
};

struct CheckRecord {
  std::string instance;
  std::string inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  int pass_count = 0;
  int fail_count = 0;
  double wall_seconds = 0.0;  // recorded in a side file, never in the report
  std::vector<std::pair<std::string, std::string>> artifacts;  // filename -> csv body
};

SuiteReport run_approx_suite(const RunConfig& cfg);
SuiteReport run_convert_suite(const RunConfig& cfg);
SuiteReport run_measures_suite(const RunConfig& cfg);
SuiteReport run_lln_suite(const RunConfig& cfg);

// Dispatches on cfg.suite ("approx", "convert", "measures", "lln", "all") and
// writes report files into cfg.out_dir when set.
std::vector<SuiteReport> run_suite(const RunConfig& cfg);

void write_suite_report(const SuiteReport& report, const std::string& out_dir);

std::string report_to_csv(const SuiteReport& report);
std::string report_to_json_text(const SuiteReport& report);

int total_failures(const std::vector<SuiteReport>& reports);

}  // namespace qrl
