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

#include "qrl/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qrl/serialize.hpp"

namespace qrl {

namespace {

std::string tag(const char* family, int index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s-%03d", family, index);
  return buf;
}

// Row direction: `below` rows pass when lhs stays under rhs, `above` rows
// when lhs stays over. The margin is the distance from violation, positive
// on the passing side.
enum class Dir { below, above };

void add_check(SuiteReport& report, std::string instance, std::string inequality, double lhs,
               double rhs, bool pass, Dir dir) {
  CheckRecord rec;
  rec.instance = std::move(instance);
  rec.inequality = std::move(inequality);
  rec.lhs = lhs;
  rec.rhs = rhs;
  rec.margin = dir == Dir::below ? rhs - lhs : lhs - rhs;
  rec.pass = pass;
  if (pass)
    ++report.pass_count;
  else
    ++report.fail_count;
  report.checks.push_back(std::move(rec));
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

int scaled(int count, int num, int den = 20) { return std::max(1, count * num / den); }

}  // namespace

SuiteReport run_approx_suite(const RunConfig& cfg) {
  Stopwatch watch;
  SuiteReport report;
  report.suite = "approx";
  report.seed = cfg.seed;
  Rng rng(cfg.seed * 1000003ull + 1);
  const int instances = scaled(cfg.instance_count, 200);
  const int samples_per_instance = 50;
  const std::vector<double> deltas{0.2, 0.4, 0.8};
  const int max_qubits = std::min(6, cfg.n_max);

  std::ostringstream eigenlog;
  eigenlog << "instance,iteration,theta,accepted\n";

  for (int i = 0; i < instances; ++i) {
    const std::string id = tag("approx", i);
    ApproxInstance inst;
    std::optional<DensityMatrix> first;
    int regen = 0;
    do {
      inst = random_approx_instance(rng, max_qubits, 8, deltas, 4);
      first = sample_q_member(rng, inst, 2000);
    } while (!first && ++regen < 50);
    if (!first) {
      add_check(report, id, "approx_sampling", 0.0, 1.0, false,
            Dir::above);
      continue;
    }

    const double lambda = inst.m * inst.delta / 4.0;
    const GreedyResult greedy = approximate_density_class(inst, cfg.tol);
    for (const EigenLogEntry& e : greedy.eigen_log)
      eigenlog << id << ',' << e.iteration << ',' << format_double(e.theta) << ','
               << (e.accepted ? 1 : 0) << '\n';

    const double trace_cap = 4.0 * inst.d / (inst.delta * inst.m) + 1e-7;
    add_check(report, id, "approx_trace_bound", greedy.trace, trace_cap,
              greedy.trace < trace_cap,
            Dir::below);
    const double residual = greedy.eigen_log.back().theta;
    add_check(report, id, "approx_maximality", residual, lambda + 1e-8,
              residual <= lambda + 1e-8,
            Dir::below);

    bool lemma_done = false;
    for (int s = 0; s < samples_per_instance; ++s) {
      std::optional<DensityMatrix> rho = s == 0 ? first : sample_q_member(rng, inst, 2000);
      if (!rho) {
        add_check(report, id + "/s" + std::to_string(s), "approx_sampling", 0.0, 1.0, false,
            Dir::above);
        continue;
      }
      const double overlap = trace_with(*rho, greedy.projector);
      const double floor = inst.delta / 4.0 - 1e-7;
      add_check(report, id + "/s" + std::to_string(s), "approx_transfer", overlap, floor,
                overlap > floor,
            Dir::above);

      if (!lemma_done) {
        // One explicit W <= V certificate per instance: the first m subspaces
        // the sample is delta-close to.
        std::vector<int> hits;
        for (std::size_t k = 0; k < inst.subspaces.size(); ++k)
          if (trace_with(*rho, inst.subspaces[k]) > inst.delta) hits.push_back(static_cast<int>(k));
        if (static_cast<int>(hits.size()) >= inst.m) {
          const std::int64_t dim = qubit_dim(inst.qubits);
          CMatrix v = CMatrix::Zero(dim, dim);
          for (const Projector& p : inst.subspaces) v += dense_matrix(p);
          CMatrix w = CMatrix::Zero(dim, dim);
          for (int h = 0; h < inst.m; ++h)
            w += dense_matrix(inst.subspaces[static_cast<std::size_t>(hits[static_cast<std::size_t>(h)])]);
          const LemmaReviewReport lemma = lemma_review_check(
              v, static_cast<double>(inst.m), inst.delta, w, *rho, greedy, cfg.tol);
          add_check(report, id, "lemma_preconditions", lemma.preconditions_ok ? 1.0 : 0.0, 1.0,
                    lemma.preconditions_ok,
            Dir::above);
          if (lemma.preconditions_ok) {
            add_check(report, id, "lemma_trace_bound", lemma.trace_m, lemma.trace_bound + 1e-7,
                      lemma.trace_m < lemma.trace_bound + 1e-7,
            Dir::below);
            add_check(report, id, "lemma_transfer", lemma.overlap, lemma.overlap_floor - 1e-7,
                      lemma.overlap > lemma.overlap_floor - 1e-7,
            Dir::above);
          }
          lemma_done = true;
        }
      }
    }
  }
  report.artifacts.emplace_back("approx_eigenlog.csv", eigenlog.str());
  report.wall_seconds = watch.seconds();
  return report;
}

SuiteReport run_convert_suite(const RunConfig& cfg) {
  Stopwatch watch;
  SuiteReport report;
  report.suite = "convert";
  report.seed = cfg.seed;
  Rng rng(cfg.seed * 1000003ull + 2);
  const int instances = scaled(cfg.instance_count, 20);
  const int depth = std::clamp(cfg.n_max, 5, 8);  // planted instances need depth >= 5
  const int num_members = std::min(8, depth);
  // The transfer hypothesis needs 2^m failing members.
  int m_max = 1;
  while (pow2_i64(m_max + 1) <= num_members && m_max < 3) ++m_max;
  const std::vector<Rational> deltas{{1, 2}, {2, 5}, {1, 3}};

  std::ostringstream trace_csv;
  trace_csv << "instance,m,n,basis_size,accepted,tau_partial,min_seed_margin,min_lift_drop\n";

  for (int i = 0; i < instances; ++i) {
    const std::string id = tag("convert", i);
    const Rational delta = deltas[static_cast<std::size_t>(i) % deltas.size()];
    const PlantedSolovay planted = planted_solovay_instance(rng, depth, num_members, delta);
    const ConvertResult converted = solovay_to_mlt(planted.instance, m_max, cfg.tol);

    double min_lift = 0.0;
    for (const ConvertTraceRow& row : converted.trace) {
      trace_csv << id << ',' << row.m << ',' << row.n << ',' << row.basis_size << ','
                << row.accepted << ',' << format_double(row.tau_partial) << ','
                << format_double(row.min_seed_margin) << ',' << format_double(row.min_lift_drop)
                << '\n';
      min_lift = std::min(min_lift, row.min_lift_drop);
    }
    add_check(report, id, "convert_lift", min_lift, -1e-9, min_lift >= -1e-9,
            Dir::above);

    const double dval = delta.value();
    for (int m = 1; m <= m_max; ++m) {
      const std::string mid = id + "/m" + std::to_string(m);
      const double mass = tau_value(converted.test.prefix_members[static_cast<std::size_t>(m - 1)]);
      const double cap = 4.0 / dval * pow2(-m) + 1e-7;
      add_check(report, mid, "convert_mass", mass, cap, mass < cap,
            Dir::below);

      const TransferReport transfer =
          verify_failure_transfer(planted.rho, planted.instance, converted.test, m);
      add_check(report, mid, "convert_hypothesis", transfer.hypothesis_met ? 1.0 : 0.0, 1.0,
                transfer.hypothesis_met,
            Dir::above);
      if (transfer.hypothesis_met)
        add_check(report, mid, "convert_transfer", transfer.g_value, transfer.floor - 1e-7,
                  transfer.g_value > transfer.floor - 1e-7,
            Dir::above);
    }
  }

  // Nesting construction on random q-MLTs.
  const int nest_instances = scaled(cfg.instance_count, 20);
  const int nest_depth = std::clamp(cfg.n_max, 3, 6);
  for (int i = 0; i < nest_instances; ++i) {
    const std::string id = tag("nest", i);
    const QuantumTest qmlt = random_qmlt(rng, nest_depth, rng.uniform_int(2, 4));
    const QuantumTest nested = build_nested(qmlt, cfg.tol);
    const StatePrefix rho = random_dense_state(rng, nest_depth);
    for (int j = 0; j < member_count(nested); ++j) {
      const int m = nested.first_index + j;
      const std::string mid = id + "/m" + std::to_string(m);
      const QSigmaPrefix& q = nested.prefix_members[static_cast<std::size_t>(j)];

      double worst_rank = -1e300;
      for (int n = 1; n <= q.depth; ++n)
        worst_rank = std::max(worst_rank, static_cast<double>(rank_of(q.projs[static_cast<std::size_t>(n - 1)])) -
                                              pow2(n - m + 1));
      add_check(report, mid, "nest_rank", worst_rank, 0.0, worst_rank < 0.0,
            Dir::below);

      double worst_incl = 0.0;
      for (int n = 1; n < q.depth; ++n) {
        const CMatrix lifted = dense_matrix(lift(q.projs[static_cast<std::size_t>(n - 1)]));
        const CMatrix next = dense_matrix(q.projs[static_cast<std::size_t>(n)]);
        worst_incl = std::max(worst_incl, max_abs(next * lifted - lifted));
      }
      add_check(report, mid, "nest_inclusion", worst_incl, cfg.tol.nest,
                worst_incl <= cfg.tol.nest,
            Dir::below);

      double worst_drop = 0.0;
      double prev = 0.0;
      for (int n = 1; n <= q.depth; ++n) {
        const double val = trace_with(rho, n, q.projs[static_cast<std::size_t>(n - 1)]);
        if (n > 1) worst_drop = std::min(worst_drop, val - prev);
        prev = val;
      }
      add_check(report, mid, "nest_monotone", worst_drop, -1e-8, worst_drop >= -1e-8,
            Dir::above);

      const double mass = tau_value(q);
      add_check(report, mid, "nest_mass", mass, pow2(-m + 1) + cfg.tol.mass,
                mass < pow2(-m + 1) + cfg.tol.mass,
            Dir::below);
    }
  }

  // Convex mixtures evaluate linearly against test members.
  const int convex_instances = scaled(cfg.instance_count, 100);
  const int mix_depth = std::clamp(cfg.n_max, 2, 5);
  for (int i = 0; i < convex_instances; ++i) {
    const std::string id = tag("convex", i);
    const int parts = rng.uniform_int(2, 4);
    std::vector<StatePrefix> states;
    std::vector<double> weights;
    double total = 0.0;
    for (int s = 0; s < parts; ++s) {
      states.push_back(random_dense_state(rng, mix_depth, rng.uniform_int(1, 4)));
      const double w = rng.uniform(0.1, 1.0);
      weights.push_back(w);
      total += w;
    }
    for (double& w : weights) w /= total;
    const StatePrefix mixed = mix_states(states, weights, cfg.tol);
    const QuantumTest member_source = random_qmlt(rng, mix_depth, 2);
    const QSigmaPrefix& g = member_source.prefix_members.front();
    double worst = 0.0;
    for (int n = 1; n <= mix_depth; ++n) {
      const Projector& p = g.projs[static_cast<std::size_t>(n - 1)];
      const double mixed_val = trace_with(mixed, n, p);
      double split_val = 0.0;
      for (int s = 0; s < parts; ++s)
        split_val += weights[static_cast<std::size_t>(s)] *
                     trace_with(states[static_cast<std::size_t>(s)], n, p);
      worst = std::max(worst, std::abs(mixed_val - split_val));
    }
    add_check(report, id, "convexity", worst, 1e-10, worst <= 1e-10,
            Dir::below);
  }

  report.artifacts.emplace_back("convert_trace.csv", trace_csv.str());
  report.wall_seconds = watch.seconds();
  return report;
}

SuiteReport run_measures_suite(const RunConfig& cfg) {
  Stopwatch watch;
  SuiteReport report;
  report.suite = "measures";
  report.seed = cfg.seed;
  Rng rng(cfg.seed * 1000003ull + 3);

  // Counting bound over random projections, exhaustive over the basis.
  const int projector_count = scaled(cfg.instance_count, 500);
  const int max_qubits = std::min(6, cfg.n_max);
  for (int i = 0; i < projector_count; ++i) {
    const std::string id = tag("count", i);
    const int qubits = rng.uniform_int(1, max_qubits);
    const std::int64_t dim = qubit_dim(qubits);
    const int rank = rng.uniform_int(0, static_cast<int>(dim));
    const Projector f = random_projector(rng, qubits, rank);
    const double delta = rng.uniform(0.05, 0.95);
    const std::vector<std::string> set = threshold_basis_set(qubits, f, delta);
    const double cap = static_cast<double>(rank_of(f)) / delta + 1e-9;
    add_check(report, id, "counting", static_cast<double>(set.size()), cap,
              static_cast<double>(set.size()) < cap,
            Dir::below);
  }

  // Diagonal state vs q-MLT: the classical trace keeps at least 3 delta / 4
  // at witnessing levels and delta/2 overall.
  const int diag_instances = scaled(cfg.instance_count, 20);
  const std::vector<double> deltas{0.3, 0.4, 0.5};
  for (int i = 0; i < diag_instances; ++i) {
    const std::string id = tag("diag", i);
    const int depth = (i % 2 == 0) ? std::clamp(cfg.n_max, 2, 6)
                                   : std::clamp(cfg.n_max, 4, 12);
    const double delta = deltas[static_cast<std::size_t>(i) % deltas.size()];
    const PlantedDiagonalQmlt planted = planted_diagonal_qmlt(rng, depth, 3, delta);
    const ClassicalTestPrefix classical = qmlt_to_classical(planted.qmlt, delta);
    for (int m = 1; m <= member_count(planted.qmlt); ++m) {
      const std::string mid = id + "/m" + std::to_string(m);
      const QSigmaPrefix& g = planted.qmlt.prefix_members[static_cast<std::size_t>(m - 1)];
      double min_witness_mass = 1e300;
      bool witnessed = false;
      for (int n = 1; n <= depth; ++n) {
        const double captured = trace_with(planted.rho, n, g.projs[static_cast<std::size_t>(n - 1)]);
        if (captured > delta) {
          witnessed = true;
          min_witness_mass = std::min(
              min_witness_mass, member_measure_at(planted.rho, classical, m - 1, n));
        }
      }
      add_check(report, mid, "diag_mlt_witness", witnessed ? 1.0 : 0.0, 1.0, witnessed,
            Dir::above);
      if (witnessed) {
        add_check(report, mid, "diag_mlt_transfer", min_witness_mass, 3.0 * delta / 4.0 - 1e-9,
                  min_witness_mass >= 3.0 * delta / 4.0 - 1e-9,
            Dir::above);
        const double deepest = member_measure(planted.rho, classical, m - 1);
        add_check(report, mid, "diag_mlt_global", deepest, delta / 2.0 - 1e-9,
                  deepest > delta / 2.0 - 1e-9,
            Dir::above);
      }
      const double mass = classical.masses[static_cast<std::size_t>(m - 1)];
      const double cap = 4.0 / delta * pow2(-m) + 1e-7;
      add_check(report, mid, "diag_mlt_mass", mass, cap, mass < cap,
            Dir::below);
    }
  }

  // Classical Solovay to MLT conversion.
  for (int i = 0; i < diag_instances; ++i) {
    const std::string id = tag("csol", i);
    const int depth = std::clamp(cfg.n_max, 4, 12);
    const double delta = deltas[static_cast<std::size_t>(i) % deltas.size()];
    const PlantedClassicalSolovay planted = planted_classical_solovay(rng, depth, 8, delta);
    const int m_max = 3;
    const ClassicalTestPrefix mlt = classical_solovay_to_mlt(planted.test, delta, m_max);
    for (int m = 1; m <= m_max; ++m) {
      const std::string mid = id + "/m" + std::to_string(m);
      const double mass = mlt.masses[static_cast<std::size_t>(m - 1)];
      const double cap = pow2(-m + 1) / delta + 1e-7;
      add_check(report, mid, "diag_solovay_mass", mass, cap, mass < cap,
            Dir::below);
      const double captured = member_measure(planted.rho, mlt, m - 1);
      add_check(report, mid, "diag_solovay_transfer", captured, delta / 2.0 - 1e-9,
                captured > delta / 2.0 - 1e-9,
            Dir::above);
    }
  }

  // Quantum Schnorr tests against classical threshold sets.
  for (int i = 0; i < diag_instances; ++i) {
    const std::string id = tag("schnorr", i);
    const int member_qubit_cap = std::clamp(cfg.n_max, 2, 6);
    std::string x;
    for (int b = 0; b < member_qubit_cap; ++b) x.push_back(rng.uniform() < 0.5 ? '0' : '1');
    const double delta = deltas[static_cast<std::size_t>(i) % deltas.size()];
    std::vector<Projector> members;
    const int member_total = 4;
    for (int r = 0; r < member_total; ++r) {
      const int qubits = rng.uniform_int(2, member_qubit_cap);
      const std::int64_t dim = qubit_dim(qubits);
      if (r % 2 == 0) {
        // Plant the branch vector inside the member's range.
        CMatrix seed = CMatrix::Zero(dim, 1);
        seed(static_cast<Eigen::Index>(
                 index_of_bits(std::string_view(x).substr(0, static_cast<std::size_t>(qubits)))),
             0) = 1.0;
        const int extra = rng.uniform_int(0, static_cast<int>(std::min<std::int64_t>(dim / 2, 3)) - 1);
        members.push_back(projector_from_columns(qubits, extend_orthonormal(rng, seed, extra)));
      } else {
        members.push_back(random_projector(rng, qubits, rng.uniform_int(1, static_cast<int>(dim / 2))));
      }
    }
    double limit = 0.0;
    for (const Projector& q : members) limit += pow2(-q.qubits) * rank_of(q);
    const QuantumTest qtest = make_qschnorr(std::move(members), limit, cfg.tol);
    const ClassicalTestPrefix classical = schnorr_to_classical(qtest, delta);

    const StatePrefix rho_x = make_classical(x, member_qubit_cap);
    for (int r = 0; r < member_total; ++r) {
      const std::string rid = id + "/r" + std::to_string(r);
      const Projector& q = qtest.proj_members[static_cast<std::size_t>(r)];
      const double member_bound = pow2(-q.qubits) * rank_of(q) / delta + 1e-9;
      const double t_mass = classical.masses[static_cast<std::size_t>(r)];
      add_check(report, rid, "schnorr_member_mass", t_mass, member_bound, t_mass <= member_bound,
            Dir::below);
      const double captured = trace_with(rho_x, q.qubits, q);
      if (captured > delta) {
        const auto& level_set = classical.members[static_cast<std::size_t>(r)].back();
        const bool in_set = std::binary_search(
            level_set.begin(), level_set.end(),
            x.substr(0, static_cast<std::size_t>(q.qubits)));
        add_check(report, rid, "schnorr_x_member", in_set ? 1.0 : 0.0, 1.0, in_set,
            Dir::above);
      }
    }
    const double sum_cap = limit / delta + 1e-9;
    const double sum_val = classical.partial_sums.back();
    add_check(report, id, "schnorr_sum", sum_val, sum_cap, sum_val <= sum_cap,
            Dir::below);
  }

  report.wall_seconds = watch.seconds();
  return report;
}

SuiteReport run_lln_suite(const RunConfig& cfg) {
  Stopwatch watch;
  SuiteReport report;
  report.suite = "lln";
  report.seed = cfg.seed;
  Rng rng(cfg.seed * 1000003ull + 4);

  // Exactness of the diagonal averages.
  {
    const StatePrefix tau = make_tau(20);
    double worst = 0.0;
    for (int n = 1; n <= 20; ++n) worst = std::max(worst, std::abs(lln_average(tau, n, 0.0, 1.0) - 0.5));
    add_check(report, "exact-tau", "lln_tau_exact", worst, 1e-12, worst <= 1e-12,
            Dir::below);

    const std::vector<double> ps{0.3, 1.0 / 3.0, 0.77};
    const std::vector<std::pair<double, double>> abs{{0.0, 1.0}, {-0.5, 0.5}, {0.2, 0.9}};
    double worst_bp = 0.0;
    for (double p : ps)
      for (const auto& [a, b] : abs) {
        const StatePrefix bp = make_bernoulli(p, 20);
        const double expect = a * p + b * (1.0 - p);
        for (int n = 1; n <= 20; ++n)
          worst_bp = std::max(worst_bp, std::abs(lln_average(bp, n, a, b) - expect));
      }
    add_check(report, "exact-bp", "lln_bp_exact", worst_bp, 1e-12, worst_bp <= 1e-12,
            Dir::below);
  }

  // Chernoff masses and deviant capture.
  {
    const std::vector<Rational> ps{{1, 2}, {1, 3}};
    const std::vector<double> deltas{0.1, 0.2};
    int idx = 0;
    for (const Rational& p : ps)
      for (double delta : deltas) {
        const std::string id = tag("chernoff", idx++);
        const ChernoffTest test = chernoff_test(p, 0.0, 1.0, delta, 1, 40);
        double worst = -1e300;
        for (const ChernoffLevel& lvl : test.levels)
          worst = std::max(worst, lvl.mass - lvl.bound);
        add_check(report, id, "chernoff_mass", worst, 0.0, worst <= 0.0,
            Dir::below);

        // The 0.8-ones plant only deviates when its average clears M + delta;
        // a plant tied to the grid point keeps every row non-vacuous.
        const StatePrefix deviant = make_bernoulli(0.2, kMaxDiagQubits);  // ones rate 0.8
        const LlnFailureReport fail = verify_lln_failure(deviant, test);
        if (0.8 > test.big_m + delta + 1e-9)
          add_check(report, id, "lln_witness", static_cast<double>(fail.witness_count), 1.0,
                    fail.witness_count >= 1,
            Dir::above);
        if (fail.witness_count >= 1)
          add_check(report, id, "lln_margin", fail.min_margin, 0.0, fail.min_margin >= 0.0,
            Dir::above);

        const double strong_rate = std::min(0.95, test.big_m + delta + 0.05);
        const StatePrefix strong = make_bernoulli(1.0 - strong_rate, kMaxDiagQubits);
        const LlnFailureReport fail_strong = verify_lln_failure(strong, test);
        add_check(report, id, "lln_strong_witness", static_cast<double>(fail_strong.witness_count),
                  1.0, fail_strong.witness_count >= 1,
            Dir::above);
        if (fail_strong.witness_count >= 1)
          add_check(report, id, "lln_strong_margin", fail_strong.min_margin, 0.0,
                    fail_strong.min_margin >= 0.0,
            Dir::above);

        const StatePrefix ones = make_classical(std::string(kMaxDiagQubits, '1'), kMaxDiagQubits);
        const LlnFailureReport fail_ones = verify_lln_failure(ones, test);
        add_check(report, id, "lln_ones_witness", static_cast<double>(fail_ones.witness_count),
                  1.0, fail_ones.witness_count >= 1,
            Dir::above);
      }

    // Report artifact from the last deviant run of each grid point.
    std::ostringstream lln_csv;
    lln_csv << "p_num,p_den,delta,n,average,threshold,mass,bound,trace,required,margin\n";
    for (const Rational& p : ps)
      for (double delta : deltas) {
        const ChernoffTest test = chernoff_test(p, 0.0, 1.0, delta, 1, 40);
        const StatePrefix deviant = make_bernoulli(0.2, kMaxDiagQubits);
        const LlnFailureReport fail = verify_lln_failure(deviant, test);
        for (const LlnFailureRow& row : fail.rows) {
          const ChernoffLevel& lvl = test.levels[static_cast<std::size_t>(row.n - test.n_min)];
          lln_csv << p.num << ',' << p.den << ',' << format_double(delta) << ',' << row.n << ','
                  << format_double(row.average) << ',' << format_double(row.threshold) << ','
                  << format_double(lvl.mass) << ',' << format_double(lvl.bound) << ','
                  << format_double(row.trace_value) << ',' << format_double(row.required) << ','
                  << format_double(row.margin) << '\n';
        }
      }
    report.artifacts.emplace_back("lln_chernoff.csv", lln_csv.str());
  }

  // Operator Markov inequality over filtered random pairs.
  const int markov_pairs = scaled(cfg.instance_count, 500);
  const int max_qubits = std::min(6, cfg.n_max);
  for (int i = 0; i < markov_pairs; ++i) {
    const std::string id = tag("markov", i);
    const int qubits = rng.uniform_int(1, max_qubits);
    const std::int64_t dim = qubit_dim(qubits);
    CMatrix g = random_gaussian_matrix(rng, dim, dim);
    CMatrix a = (g + g.adjoint()) / 2.0;
    a /= std::max(1.0, max_abs(a));
    const DensityMatrix rho = random_density(rng, qubits);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    const double bottom = es.eigenvalues().minCoeff();
    const double expectation = (a * rho.mat).trace().real();
    const double spread = std::max(1e-6, expectation - bottom);
    const double m_lb = expectation - rng.uniform(0.0, 0.2) * spread;
    const double mu = m_lb - std::max(1e-9, rng.uniform(0.05, 0.6) * spread);
    const TraceMarkovResult res = trace_markov(a, rho, mu, m_lb, top, cfg.tol);
    add_check(report, id, "trace_markov", res.trace_value, res.bound - 1e-8,
              res.trace_value >= res.bound - 1e-8,
            Dir::above);
  }

  // Scalar Markov bound on random finite distributions.
  const int dist_count = scaled(cfg.instance_count, 100);
  for (int i = 0; i < dist_count; ++i) {
    const std::string id = tag("dist", i);
    const int support = rng.uniform_int(2, 8);
    std::vector<std::pair<double, double>> dist;
    double total = 0.0;
    double vmax = -1e300;
    for (int s = 0; s < support; ++s) {
      const double v = rng.uniform(-1.0, 1.0);
      const double pr = rng.uniform(0.05, 1.0);
      dist.emplace_back(v, pr);
      total += pr;
      vmax = std::max(vmax, v);
    }
    double ev = 0.0;
    for (auto& [v, pr] : dist) {
      pr /= total;
      ev += v * pr;
    }
    double vmin = 1e300;
    for (const auto& [v, pr] : dist) vmin = std::min(vmin, v);
    if (ev - vmin < 1e-9) {
      add_check(report, id, "markov_skip", 0.0, 1.0, true,
            Dir::above);
      continue;
    }
    const double mu = ev - rng.uniform(0.1, 0.9) * (ev - vmin);
    const double bound = markov_bound(vmax, mu, ev, dist);
    double tail = 0.0;
    for (const auto& [v, pr] : dist)
      if (v >= mu) tail += pr;
    add_check(report, id, "markov", tail, bound - 1e-12, tail >= bound - 1e-12,
            Dir::above);
  }

  report.wall_seconds = watch.seconds();
  return report;
}

std::vector<SuiteReport> run_suite(const RunConfig& cfg) {
  if (cfg.instance_count < 1) throw std::invalid_argument("run_suite: instance_count must be >= 1");
  if (cfg.n_max < 1 || cfg.n_max > kMaxDiagQubits)
    throw std::invalid_argument("run_suite: n_max out of range");
  std::vector<SuiteReport> reports;
  if (cfg.suite == "approx" || cfg.suite == "all") reports.push_back(run_approx_suite(cfg));
  if (cfg.suite == "convert" || cfg.suite == "all") reports.push_back(run_convert_suite(cfg));
  if (cfg.suite == "measures" || cfg.suite == "all") reports.push_back(run_measures_suite(cfg));
  if (cfg.suite == "lln" || cfg.suite == "all") reports.push_back(run_lln_suite(cfg));
  if (reports.empty()) throw std::invalid_argument("run_suite: unknown suite " + cfg.suite);
  if (!cfg.out_dir.empty())
    for (const SuiteReport& r : reports) write_suite_report(r, cfg.out_dir);
  return reports;
}

std::string report_to_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "instance,inequality,lhs,rhs,margin,pass\n";
  for (const CheckRecord& c : report.checks)
    out << csv_escape(c.instance) << ',' << csv_escape(c.inequality) << ','
        << format_double(c.lhs) << ',' << format_double(c.rhs) << ',' << format_double(c.margin)
        << ',' << (c.pass ? 1 : 0) << '\n';
  return out.str();
}

std::string report_to_json_text(const SuiteReport& report) {
  json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["summary"] = {{"pass", report.pass_count},
                  {"fail", report.fail_count},
                  {"total", report.pass_count + report.fail_count}};
  json checks = json::array();
  for (const CheckRecord& c : report.checks) {
    json cj;
    cj["instance"] = c.instance;
    cj["inequality"] = c.inequality;
    cj["lhs"] = c.lhs;
    cj["rhs"] = c.rhs;
    cj["margin"] = c.margin;
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

void write_suite_report(const SuiteReport& report, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / (report.suite + "_report.json"), std::ios::binary);
    out << report_to_json_text(report);
  }
  {
    std::ofstream out(dir / (report.suite + "_report.csv"), std::ios::binary);
    out << report_to_csv(report);
  }
  for (const auto& [name, body] : report.artifacts) {
    std::ofstream out(dir / name, std::ios::binary);
    out << body;
  }
  {
    // Wall time lives in a side file so the reports stay byte-identical.
    std::ofstream out(dir / (report.suite + "_timing.txt"), std::ios::binary);
    out << format_double(report.wall_seconds) << "\n";
  }
}

int total_failures(const std::vector<SuiteReport>& reports) {
  int total = 0;
  for (const SuiteReport& r : reports) total += r.fail_count;
  return total;
}

}  // namespace qrl
