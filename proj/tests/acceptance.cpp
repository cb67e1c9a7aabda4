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

// End-to-end verification: every numbered criterion below re-derives its
// inputs from a fixed seed, checks the stated inequality at the stated
// tolerance, and prints a single pass/fail line.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qrl/serialize.hpp"
#include "qrl/suites.hpp"

using namespace qrl;

namespace {

int g_failures = 0;

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

void run_criterion(int number, const std::string& name, double budget_seconds,
                   const std::function<CriterionResult()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result;
  try {
    result = body();
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_budget = elapsed <= budget_seconds;
  const bool pass = result.pass && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %2d: %s (%.1fs of %.0fs budget)%s%s\n", pass ? "PASS" : "FAIL",
              number, name.c_str(), elapsed, budget_seconds,
              result.detail.empty() ? "" : " -- ", result.detail.c_str());
  std::fflush(stdout);
}

struct ApproxFixture {
  std::vector<ApproxInstance> instances;
  std::vector<GreedyResult> results;
};

ApproxFixture g_approx;

CriterionResult criterion_approx_bounds() {
  Rng rng(0xC0FFEE01ull);
  const std::vector<double> deltas{0.2, 0.4, 0.8};
  int violations = 0;
  double worst_margin = 1e300;
  for (int i = 0; i < 200; ++i) {
    ApproxInstance inst = random_approx_instance(rng, 6, 8, deltas, 4);
    GreedyResult greedy = approximate_density_class(inst);
    const double cap = 4.0 * inst.d / (inst.delta * inst.m) + 1e-7;
    worst_margin = std::min(worst_margin, cap - greedy.trace);
    if (!(greedy.trace < cap)) ++violations;
    g_approx.instances.push_back(std::move(inst));
    g_approx.results.push_back(std::move(greedy));
  }
  std::ostringstream detail;
  detail << violations << " violations over 200 instances, smallest slack " << worst_margin;
  return {violations == 0, detail.str()};
}

CriterionResult criterion_approx_transfer() {
  Rng rng(0xC0FFEE02ull);
  int violations = 0;
  int sampled = 0;
  double worst = 1e300;
  for (std::size_t i = 0; i < g_approx.instances.size(); ++i) {
    const ApproxInstance& inst = g_approx.instances[i];
    const GreedyResult& greedy = g_approx.results[i];
    for (int s = 0; s < 50; ++s) {
      const auto rho = sample_q_member(rng, inst, 100000);
      if (!rho) return {false, "rejection sampling exhausted its attempt budget"};
      ++sampled;
      const double overlap = trace_with(*rho, greedy.projector);
      const double floor = inst.delta / 4.0 - 1e-7;
      worst = std::min(worst, overlap - floor);
      if (!(overlap > floor)) ++violations;
    }
  }
  std::ostringstream detail;
  detail << violations << " violations over " << sampled << " members of Q, smallest slack "
         << worst;
  return {violations == 0, detail.str()};
}

CriterionResult criterion_solovay_to_mlt() {
  Rng rng(0xC0FFEE03ull);
  const std::vector<Rational> deltas{{1, 2}, {2, 5}, {1, 3}};
  int mass_violations = 0, transfer_violations = 0, missing_hypothesis = 0;
  for (int i = 0; i < 20; ++i) {
    const Rational delta = deltas[static_cast<std::size_t>(i) % deltas.size()];
    const PlantedSolovay planted = planted_solovay_instance(rng, 8, 8, delta);
    const ConvertResult converted = solovay_to_mlt(planted.instance, 3);
    for (int m = 1; m <= 3; ++m) {
      const double mass = tau_value(converted.test.prefix_members[static_cast<std::size_t>(m - 1)]);
      if (!(mass < 4.0 / delta.value() * pow2(-m) + 1e-7)) ++mass_violations;
      const TransferReport rep =
          verify_failure_transfer(planted.rho, planted.instance, converted.test, m);
      if (!rep.hypothesis_met) {
        ++missing_hypothesis;
        continue;
      }
      if (!(rep.g_value > delta.value() / 4.0 - 1e-7)) ++transfer_violations;
    }
  }
  std::ostringstream detail;
  detail << mass_violations << " mass / " << transfer_violations << " transfer violations, "
         << missing_hypothesis << " instances without the planted hypothesis";
  return {mass_violations == 0 && transfer_violations == 0 && missing_hypothesis == 0,
          detail.str()};
}

CriterionResult criterion_nesting() {
  Rng rng(0xC0FFEE04ull);
  int rank_violations = 0, inclusion_violations = 0, monotones = 0;
  const Tolerances tol;
  for (int i = 0; i < 20; ++i) {
    const int depth = rng.uniform_int(3, 6);
    const QuantumTest qmlt = random_qmlt(rng, depth, rng.uniform_int(2, 4));
    const QuantumTest nested = build_nested(qmlt);
    const StatePrefix rho = random_dense_state(rng, depth);
    for (int j = 0; j < member_count(nested); ++j) {
      const int m = nested.first_index + j;
      const QSigmaPrefix& q = nested.prefix_members[static_cast<std::size_t>(j)];
      double prev = 0.0;
      for (int n = 1; n <= depth; ++n) {
        const Projector& p = q.projs[static_cast<std::size_t>(n - 1)];
        if (!(rank_of(p) < pow2(n - m + 1))) ++rank_violations;
        if (n > 1) {
          const CMatrix lifted = dense_matrix(lift(q.projs[static_cast<std::size_t>(n - 2)]));
          if (max_abs(dense_matrix(p) * lifted - lifted) > tol.nest) ++inclusion_violations;
        }
        const double val = trace_with(rho, n, p);
        if (val < prev - 1e-8) ++monotones;
        prev = val;
      }
    }
  }
  std::ostringstream detail;
  detail << rank_violations << " rank / " << inclusion_violations << " inclusion / " << monotones
         << " monotonicity violations";
  return {rank_violations == 0 && inclusion_violations == 0 && monotones == 0, detail.str()};
}

CriterionResult criterion_counting() {
  Rng rng(0xC0FFEE05ull);
  int violations = 0;
  for (int i = 0; i < 500; ++i) {
    const int qubits = rng.uniform_int(1, 6);
    const std::int64_t dim = qubit_dim(qubits);
    const Projector f = random_projector(rng, qubits, rng.uniform_int(0, static_cast<int>(dim)));
    const double delta = rng.uniform(0.05, 0.95);
    const std::vector<std::string> set = threshold_basis_set(qubits, f, delta);
    // Integer-exact left side against the counting cap.
    if (!(static_cast<double>(set.size()) < static_cast<double>(rank_of(f)) / delta + 1e-9))
      ++violations;
  }
  return {violations == 0, std::to_string(violations) + " violations over 500 projections"};
}

CriterionResult criterion_diagonal_conversions() {
  Rng rng(0xC0FFEE06ull);
  const std::vector<double> deltas{0.3, 0.4, 0.5};
  int thm30_violations = 0, thm2_violations = 0, witnesses = 0;
  for (int i = 0; i < 20; ++i) {
    const double delta = deltas[static_cast<std::size_t>(i) % deltas.size()];
    const int depth = (i % 2 == 0) ? 6 : 12;
    const PlantedDiagonalQmlt planted = planted_diagonal_qmlt(rng, depth, 3, delta);
    const ClassicalTestPrefix classical = qmlt_to_classical(planted.qmlt, delta);
    for (int m = 1; m <= member_count(planted.qmlt); ++m) {
      const QSigmaPrefix& g = planted.qmlt.prefix_members[static_cast<std::size_t>(m - 1)];
      for (int n = 1; n <= depth; ++n) {
        if (trace_with(planted.rho, n, g.projs[static_cast<std::size_t>(n - 1)]) > delta) {
          ++witnesses;
          if (!(member_measure_at(planted.rho, classical, m - 1, n) >=
                3.0 * delta / 4.0 - 1e-9))
            ++thm30_violations;
        }
      }
    }

    const PlantedClassicalSolovay planted2 = planted_classical_solovay(rng, 12, 8, delta);
    const ClassicalTestPrefix mlt = classical_solovay_to_mlt(planted2.test, delta, 3);
    for (int m = 1; m <= 3; ++m)
      if (!(member_measure(planted2.rho, mlt, m - 1) > delta / 2.0 - 1e-9)) ++thm2_violations;
  }
  std::ostringstream detail;
  detail << thm30_violations << " transfer violations over " << witnesses
         << " witnessing levels, " << thm2_violations << " Solovay-route violations";
  return {thm30_violations == 0 && thm2_violations == 0 && witnesses > 0, detail.str()};
}

CriterionResult criterion_lln_exact() {
  const StatePrefix tau = make_tau(20);
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n)
    worst = std::max(worst, std::abs(lln_average(tau, n, 0.0, 1.0) - 0.5));
  const std::vector<double> ps{0.25, 1.0 / 3.0, 0.8};
  const std::vector<std::pair<double, double>> obs{{0.0, 1.0}, {-0.5, 0.5}, {0.2, 0.9}};
  for (double p : ps)
    for (const auto& [a, b] : obs) {
      const StatePrefix bp = make_bernoulli(p, 20);
      const double expect = a * p + b * (1.0 - p);
      for (int n = 1; n <= 20; ++n)
        worst = std::max(worst, std::abs(lln_average(bp, n, a, b) - expect));
    }
  std::ostringstream detail;
  detail << "largest deviation " << worst;
  return {worst <= 1e-12, detail.str()};
}

CriterionResult criterion_chernoff() {
  int mass_violations = 0, margin_violations = 0, witness_total = 0;
  for (const Rational& p : {Rational(1, 2), Rational(1, 3)})
    for (double delta : {0.1, 0.2}) {
      const ChernoffTest test = chernoff_test(p, 0.0, 1.0, delta, 1, 40);
      for (const ChernoffLevel& lvl : test.levels)
        if (!(lvl.mass <= lvl.bound)) ++mass_violations;

      // The 0.8-ones plant deviates wherever its average clears M + delta;
      // at grid points whose threshold sits above 0.8 a stronger plant keeps
      // the capture check non-vacuous.
      const StatePrefix deviant = make_bernoulli(0.2, kMaxDiagQubits);  // ones rate 0.8
      const LlnFailureReport rep = verify_lln_failure(deviant, test);
      witness_total += rep.witness_count;
      const bool deviates = 0.8 > test.big_m + delta + 1e-9;
      if (deviates && rep.witness_count == 0) ++margin_violations;
      if (rep.witness_count > 0 && rep.min_margin < 0.0) ++margin_violations;

      const double strong_rate = std::min(0.95, test.big_m + delta + 0.05);
      const StatePrefix strong = make_bernoulli(1.0 - strong_rate, kMaxDiagQubits);
      const LlnFailureReport rep2 = verify_lln_failure(strong, test);
      witness_total += rep2.witness_count;
      if (rep2.witness_count == 0 || rep2.min_margin < 0.0) ++margin_violations;
    }
  std::ostringstream detail;
  detail << mass_violations << " mass violations, " << margin_violations
         << " capture-margin violations over " << witness_total << " witnessing levels";
  return {mass_violations == 0 && margin_violations == 0, detail.str()};
}

CriterionResult criterion_trace_markov() {
  Rng rng(0xC0FFEE09ull);
  int violations = 0;
  int checked = 0;
  while (checked < 500) {
    const int qubits = rng.uniform_int(1, 6);
    const std::int64_t dim = qubit_dim(qubits);
    CMatrix g = random_gaussian_matrix(rng, dim, dim);
    CMatrix a = (g + g.adjoint()) / 2.0;
    a /= std::max(1.0, max_abs(a));
    const DensityMatrix rho = random_density(rng, qubits);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
    const double expectation = (a * rho.mat).trace().real();
    const double bottom = es.eigenvalues().minCoeff();
    if (expectation - bottom < 1e-6) continue;  // filtered
    const double m_lb = expectation - rng.uniform(0.0, 0.15) * (expectation - bottom);
    const double mu = m_lb - rng.uniform(0.05, 0.7) * (expectation - bottom);
    const TraceMarkovResult res = trace_markov(a, rho, mu, m_lb, es.eigenvalues().maxCoeff());
    if (!(res.trace_value >= res.bound - 1e-8)) ++violations;
    ++checked;
  }
  return {violations == 0, std::to_string(violations) + " violations over 500 filtered pairs"};
}

CriterionResult criterion_convexity() {
  Rng rng(0xC0FFEE0Aull);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int depth = rng.uniform_int(2, 5);
    const int parts = rng.uniform_int(2, 4);
    std::vector<StatePrefix> states;
    std::vector<double> weights;
    double total = 0.0;
    for (int s = 0; s < parts; ++s) {
      states.push_back(random_dense_state(rng, depth, rng.uniform_int(1, 4)));
      weights.push_back(rng.uniform(0.1, 1.0));
      total += weights.back();
    }
    for (double& w : weights) w /= total;
    const StatePrefix mixed = mix_states(states, weights);
    const QuantumTest source = random_qmlt(rng, depth, 2);
    for (const QSigmaPrefix& g : source.prefix_members)
      for (int n = 1; n <= depth; ++n) {
        const Projector& p = g.projs[static_cast<std::size_t>(n - 1)];
        double split = 0.0;
        for (int s = 0; s < parts; ++s)
          split += weights[static_cast<std::size_t>(s)] *
                   trace_with(states[static_cast<std::size_t>(s)], n, p);
        worst = std::max(worst, std::abs(trace_with(mixed, n, p) - split));
      }
  }
  std::ostringstream detail;
  detail << "largest linearity defect " << worst;
  return {worst <= 1e-10, detail.str()};
}

CriterionResult criterion_determinism() {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "qrl_acceptance_determinism";
  fs::remove_all(base);
  for (const char* suite : {"approx", "convert", "measures", "lln"}) {
    RunConfig cfg;
    cfg.seed = 1234567;
    cfg.instance_count = 2;
    cfg.n_max = 6;
    cfg.suite = suite;
    cfg.out_dir = (base / (std::string(suite) + "_a")).string();
    run_suite(cfg);
    cfg.out_dir = (base / (std::string(suite) + "_b")).string();
    run_suite(cfg);
    for (const auto& entry : fs::directory_iterator(base / (std::string(suite) + "_a"))) {
      const fs::path name = entry.path().filename();
      if (name.string().find("timing") != std::string::npos) continue;  // side file
      std::ifstream fa(entry.path(), std::ios::binary);
      std::ifstream fb(base / (std::string(suite) + "_b") / name, std::ios::binary);
      std::stringstream sa, sb;
      sa << fa.rdbuf();
      sb << fb.rdbuf();
      if (sa.str() != sb.str() || sa.str().empty())
        return {false, "byte mismatch in " + name.string() + " for suite " + suite};
    }
  }
  return {true, "all reports byte-identical across re-runs"};
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  run_criterion(1, "subspace approximation trace bound (200 instances)", 60.0,
                criterion_approx_bounds);
  run_criterion(2, "delta/4 transfer for sampled members of Q", 300.0, criterion_approx_transfer);
  run_criterion(3, "Solovay-to-MLT masses and failure transfer", 600.0, criterion_solovay_to_mlt);
  run_criterion(4, "nesting construction rank/inclusion/monotonicity", 120.0, criterion_nesting);
  run_criterion(5, "basis counting bound, exhaustive scan", 60.0, criterion_counting);
  run_criterion(6, "diagonal conversions at 3delta/4 and delta/2", 60.0,
                criterion_diagonal_conversions);
  run_criterion(7, "law-of-large-numbers exactness on product states", 30.0, criterion_lln_exact);
  run_criterion(8, "exact binomial Chernoff masses and deviant capture", 60.0, criterion_chernoff);
  run_criterion(9, "operator Markov inequality (500 filtered pairs)", 60.0,
                criterion_trace_markov);
  run_criterion(10, "mixture linearity against test members", 30.0, criterion_convexity);
  run_criterion(11, "byte-identical reports under a fixed seed", 300.0, criterion_determinism);
  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
