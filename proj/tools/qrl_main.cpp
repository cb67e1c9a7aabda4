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

#include <iostream>

#include <CLI11.hpp>

#include "qrl/serialize.hpp"
#include "qrl/suites.hpp"

namespace {

using namespace qrl;

void apply_config_file(RunConfig& cfg, const std::string& path) {
  const json j = read_json_file(path);
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("suite")) cfg.suite = j.at("suite").get<std::string>();
  if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
  if (j.contains("count")) cfg.instance_count = j.at("count").get<int>();
  if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  if (j.contains("tol"))
    for (const auto& [key, value] : j.at("tol").items()) cfg.tol.field(key) = value.get<double>();
}

void apply_tol_overrides(Tolerances& tol, const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--tol expects KEY=VAL, got '" + kv + "'");
    tol.field(kv.substr(0, eq)) = std::stod(kv.substr(eq + 1));
  }
}

int command_run(RunConfig cfg) {
  const std::vector<SuiteReport> reports = run_suite(cfg);
  for (const SuiteReport& r : reports) {
    std::cout << r.suite << ": " << r.pass_count << " passed, " << r.fail_count << " failed ("
              << r.checks.size() << " checks)\n";
    if (cfg.format == "json" && cfg.out_dir.empty()) std::cout << report_to_json_text(r);
    if (cfg.format == "csv" && cfg.out_dir.empty()) std::cout << report_to_csv(r);
  }
  return total_failures(reports) == 0 ? 0 : 1;
}

int command_eval(const std::string& state_path, const std::string& test_path, double delta,
                 int count) {
  const StatePrefix rho = state_from_json(read_json_file(state_path));
  const QuantumTest test = test_from_json(read_json_file(test_path));
  std::cout << "state depth " << rho.depth << ", test discipline "
            << discipline_name(test.discipline) << " with " << member_count(test)
            << " members\n";
  double inf = 1.0;
  int above = 0;
  int evaluated = 0;
  for (int k = 0; k < member_count(test); ++k) {
    if (test.discipline != Discipline::qmlt && test.discipline != Discipline::qsolovay &&
        test.proj_members[static_cast<std::size_t>(k)].qubits > rho.depth) {
      std::cout << "  member " << test.first_index + k << ": skipped (deeper than state)\n";
      continue;
    }
    const double value = member_value(rho, test, k);
    ++evaluated;
    inf = std::min(inf, value);
    if (value > delta) ++above;
    std::cout << "  member " << test.first_index + k << ": rho(S) = " << format_double(value)
              << (value > delta ? "  (> delta)" : "") << '\n';
  }
  if (evaluated == 0) {
    std::cout << "no members evaluable at this depth\n";
    return 0;
  }
  std::cout << "inf over members: " << format_double(inf) << '\n';
  std::cout << "members above delta=" << format_double(delta) << ": " << above << '\n';
  if (test.discipline == Discipline::qmlt) {
    const bool fails = inf >= delta;
    std::cout << "qMLT verdict at order delta: " << (fails ? "FAILS" : "passes") << '\n';
  } else {
    const bool fails = above >= count;
    std::cout << "Solovay-style verdict (count=" << count << "): " << (fails ? "FAILS" : "passes")
              << '\n';
  }
  return 0;
}

int command_gen_state(const std::string& kind, int depth, double p, const std::string& bits,
                      std::uint64_t seed, const std::string& out) {
  StatePrefix s;
  if (kind == "tau") {
    s = make_tau(depth);
  } else if (kind == "bernoulli") {
    s = make_bernoulli(p, depth);
  } else if (kind == "classical") {
    std::string use = bits;
    if (use.empty()) {
      Rng rng(seed);
      for (int i = 0; i < depth; ++i) use.push_back(rng.uniform() < 0.5 ? '0' : '1');
    }
    s = make_classical(use, depth);
  } else if (kind == "dense") {
    Rng rng(seed);
    s = random_dense_state(rng, depth);
  } else if (kind == "diagonal") {
    Rng rng(seed);
    s = make_diagonal(depth, random_weight_map(rng, depth, std::min<int>(16, 1 << depth)));
  } else {
    throw CLI::ValidationError("unknown state kind '" + kind + "'");
  }
  write_json_file(out, state_to_json(s));
  std::cout << "wrote " << out << '\n';
  return 0;
}

int command_gen_test(const std::string& family, int depth, int members, std::uint64_t seed,
                     const std::string& out) {
  Rng rng(seed);
  QuantumTest t;
  if (family == "random-qmlt") {
    t = random_qmlt(rng, depth, members);
  } else if (family == "zero-branch") {
    // Member m is the cylinder over 0^m: zero below level m, all extensions
    // of 0^m from level m on. Mass is exactly 2^-m.
    std::vector<QSigmaPrefix> ms;
    for (int m = 1; m <= std::min(members, depth); ++m) {
      QSigmaPrefix g;
      g.depth = depth;
      std::vector<std::string> level_set{std::string(static_cast<std::size_t>(m), '0')};
      for (int n = 1; n <= depth; ++n) {
        if (n < m) {
          g.projs.push_back(zero_projector(n));
          continue;
        }
        if (n > m) {
          std::vector<std::string> next;
          for (const std::string& s : level_set) {
            next.push_back(s + "0");
            next.push_back(s + "1");
          }
          level_set = std::move(next);
        }
        g.projs.push_back(projector_from_strings(n, level_set));
      }
      ms.push_back(std::move(g));
    }
    t = make_qmlt(std::move(ms));
  } else {
    throw CLI::ValidationError("unknown test family '" + family + "'");
  }
  write_json_file(out, test_to_json(t));
  std::cout << "wrote " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-depth quantum randomness laboratory"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::vector<std::string> tol_overrides;

  CLI::App* run = app.add_subcommand("run", "run a verification suite and write reports");
  run->add_option("--config", config_path, "JSON config file (flags override it)");
  run->add_option("--suite", cfg.suite, "approx|convert|measures|lln|all");
  run->add_option("--seed", cfg.seed, "PRNG seed");
  run->add_option("--n-max", cfg.n_max, "depth cap");
  run->add_option("--count", cfg.instance_count, "instance count knob (20 = reference sizes)");
  run->add_option("--delta", cfg.delta, "default test order");
  run->add_option("--out", cfg.out_dir, "report output directory");
  run->add_option("--tol", tol_overrides, "tolerance override KEY=VAL (repeatable)");
  run->add_option("--format", cfg.format, "json|csv (stdout echo when --out is unset)");

  std::string state_path, test_path;
  double eval_delta = 0.5;
  int eval_count = 3;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a state file against a test file");
  eval->add_option("state", state_path, "state JSON file")->required();
  eval->add_option("test", test_path, "test JSON file")->required();
  eval->add_option("--delta", eval_delta, "test order");
  eval->add_option("--count", eval_count, "members required for Solovay-style failing");

  CLI::App* gen = app.add_subcommand("gen", "generate states and tests");
  gen->require_subcommand(1);
  std::string gs_kind = "tau", gs_bits, gs_out = "state.json";
  int gs_depth = 6;
  double gs_p = 0.5;
  std::uint64_t gs_seed = 42;
  CLI::App* gen_state = gen->add_subcommand("state", "write a state JSON file");
  gen_state->add_option("--kind", gs_kind, "tau|bernoulli|classical|dense|diagonal");
  gen_state->add_option("--depth", gs_depth, "prefix depth");
  gen_state->add_option("--p", gs_p, "bernoulli parameter");
  gen_state->add_option("--bits", gs_bits, "classical bits (random when omitted)");
  gen_state->add_option("--seed", gs_seed, "PRNG seed");
  gen_state->add_option("--out", gs_out, "output path");

  std::string gt_family = "random-qmlt", gt_out = "test.json";
  int gt_depth = 5, gt_members = 3;
  std::uint64_t gt_seed = 42;
  CLI::App* gen_test = gen->add_subcommand("test", "write a test JSON file");
  gen_test->add_option("--family", gt_family, "random-qmlt|zero-branch");
  gen_test->add_option("--depth", gt_depth, "prefix depth");
  gen_test->add_option("--members", gt_members, "member count");
  gen_test->add_option("--seed", gt_seed, "PRNG seed");
  gen_test->add_option("--out", gt_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      if (!config_path.empty()) {
        RunConfig from_file;
        apply_config_file(from_file, config_path);
        // Flags beat the config file; start from the file and re-apply flags.
        if (run->count("--suite") == 0) cfg.suite = from_file.suite;
        if (run->count("--seed") == 0) cfg.seed = from_file.seed;
        if (run->count("--n-max") == 0) cfg.n_max = from_file.n_max;
        if (run->count("--count") == 0) cfg.instance_count = from_file.instance_count;
        if (run->count("--delta") == 0) cfg.delta = from_file.delta;
        if (run->count("--out") == 0) cfg.out_dir = from_file.out_dir;
        if (run->count("--format") == 0) cfg.format = from_file.format;
        cfg.tol = from_file.tol;
      }
      apply_tol_overrides(cfg.tol, tol_overrides);
      return command_run(cfg);
    }
    if (eval->parsed()) return command_eval(state_path, test_path, eval_delta, eval_count);
    if (gen_state->parsed())
      return command_gen_state(gs_kind, gs_depth, gs_p, gs_bits, gs_seed, gs_out);
    if (gen_test->parsed())
      return command_gen_test(gt_family, gt_depth, gt_members, gt_seed, gt_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
