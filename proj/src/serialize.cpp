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

#include "qrl/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace qrl {

namespace {

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw std::invalid_argument("matrix_from_json: wrong row count");
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix_from_json: wrong column count");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& entry = row[static_cast<std::size_t>(c)];
      if (!entry.is_array() || entry.size() != 2)
        throw std::invalid_argument("matrix_from_json: entry must be [re, im]");
      m(i, c) = cx(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

json columns_to_json(const CMatrix& cols) {
  json out = json::array();
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    json col = json::array();
    for (Eigen::Index i = 0; i < cols.rows(); ++i)
      col.push_back(json::array({cols(i, j).real(), cols(i, j).imag()}));
    out.push_back(std::move(col));
  }
  return out;
}

CMatrix columns_from_json(const json& j, Eigen::Index dim) {
  const auto count = static_cast<Eigen::Index>(j.size());
  CMatrix cols(dim, count);
  for (Eigen::Index c = 0; c < count; ++c) {
    const json& col = j[static_cast<std::size_t>(c)];
    if (!col.is_array() || static_cast<Eigen::Index>(col.size()) != dim)
      throw std::invalid_argument("columns_from_json: wrong vector length");
    for (Eigen::Index i = 0; i < dim; ++i) {
      const json& entry = col[static_cast<std::size_t>(i)];
      cols(i, c) = cx(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return cols;
}

std::string kind_name(StateKind k) {
  switch (k) {
    case StateKind::dense: return "dense";
    case StateKind::diagonal: return "diagonal";
    case StateKind::classical: return "classical";
    case StateKind::bernoulli: return "bernoulli";
  }
  throw std::logic_error("kind_name: bad kind");
}

}  // namespace

json state_to_json(const StatePrefix& s) {
  json j;
  j["kind"] = kind_name(s.kind);
  j["depth"] = s.depth;
  if (s.kind == StateKind::dense) {
    json levels = json::array();
    for (const DensityMatrix& rho : s.dense_levels) levels.push_back(matrix_to_json(rho.mat));
    j["levels"] = std::move(levels);
  } else if (s.kind == StateKind::diagonal) {
    json levels = json::array();
    for (const DiagonalLevel& lvl : s.diag_levels) {
      json m = json::object();
      for (const auto& [sigma, w] : lvl.weights) m[sigma] = w;
      levels.push_back(std::move(m));
    }
    j["levels"] = std::move(levels);
  } else if (s.kind == StateKind::classical) {
    j["bits"] = s.bits;
  } else {
    j["p"] = s.p;
  }
  return j;
}

StatePrefix state_from_json(const json& j, const Tolerances& tol) {
  const std::string kind = j.at("kind").get<std::string>();
  const int depth = j.at("depth").get<int>();
  if (kind == "classical") return make_classical(j.at("bits").get<std::string>(), depth);
  if (kind == "bernoulli") return make_bernoulli(j.at("p").get<double>(), depth);
  if (kind == "diagonal") {
    const json& levels = j.at("levels");
    if (static_cast<int>(levels.size()) != depth)
      throw std::invalid_argument("state_from_json: level count mismatch");
    StatePrefix s;
    s.kind = StateKind::diagonal;
    s.depth = depth;
    for (int k = 1; k <= depth; ++k) {
      DiagonalLevel lvl;
      lvl.qubits = k;
      for (const auto& [sigma, w] : levels[static_cast<std::size_t>(k - 1)].items()) {
        if (static_cast<int>(sigma.size()) != k || !is_bitstring(sigma))
          throw std::invalid_argument("state_from_json: bad weight key");
        lvl.weights[sigma] = w.get<double>();
      }
      s.diag_levels.push_back(std::move(lvl));
    }
    check_coherence(s, tol);
    return s;
  }
  if (kind == "dense") {
    const json& levels = j.at("levels");
    if (static_cast<int>(levels.size()) != depth)
      throw std::invalid_argument("state_from_json: level count mismatch");
    std::vector<DensityMatrix> mats;
    for (int k = 1; k <= depth; ++k) {
      const std::int64_t dim = qubit_dim(k);
      mats.push_back(
          DensityMatrix{k, matrix_from_json(levels[static_cast<std::size_t>(k - 1)], dim, dim)});
    }
    return make_dense(std::move(mats), tol);
  }
  throw std::invalid_argument("state_from_json: unknown kind " + kind);
}

json projector_to_json(const Projector& p) {
  json j;
  j["qubits"] = p.qubits;
  if (p.strings)
    j["strings"] = *p.strings;
  else
    j["columns"] = columns_to_json(p.basis);
  return j;
}

Projector projector_from_json(const json& j, const Tolerances& tol) {
  const int qubits = j.at("qubits").get<int>();
  if (j.contains("strings"))
    return projector_from_strings(qubits, j.at("strings").get<std::vector<std::string>>());
  return projector_from_columns(qubits, columns_from_json(j.at("columns"), qubit_dim(qubits)),
                                tol);
}

json qsigma_to_json(const QSigmaPrefix& g) {
  json j;
  j["depth"] = g.depth;
  json projs = json::array();
  for (const Projector& p : g.projs) projs.push_back(projector_to_json(p));
  j["projectors"] = std::move(projs);
  return j;
}

QSigmaPrefix qsigma_from_json(const json& j, const Tolerances& tol) {
  QSigmaPrefix g;
  g.depth = j.at("depth").get<int>();
  for (const json& pj : j.at("projectors")) g.projs.push_back(projector_from_json(pj, tol));
  check_qsigma(g, tol);
  return g;
}

json test_to_json(const QuantumTest& t) {
  json j;
  j["discipline"] = discipline_name(t.discipline);
  j["first_index"] = t.first_index;
  json members = json::array();
  if (t.discipline == Discipline::qmlt || t.discipline == Discipline::qsolovay) {
    for (const QSigmaPrefix& g : t.prefix_members) members.push_back(qsigma_to_json(g));
  } else {
    for (const Projector& p : t.proj_members) members.push_back(projector_to_json(p));
  }
  j["members"] = std::move(members);
  if (!t.mass_bounds.empty()) j["mass_bounds"] = t.mass_bounds;
  if (!t.partial_sums.empty()) j["partial_sums"] = t.partial_sums;
  if (t.declared_limit) j["declared_limit"] = *t.declared_limit;
  if (t.discipline == Discipline::p_schnorr) j["p"] = t.p;
  return j;
}

QuantumTest test_from_json(const json& j, const Tolerances& tol) {
  QuantumTest t;
  t.discipline = discipline_from_name(j.at("discipline").get<std::string>());
  t.first_index = j.value("first_index", 1);
  if (j.contains("mass_bounds")) t.mass_bounds = j.at("mass_bounds").get<std::vector<double>>();
  if (j.contains("partial_sums")) t.partial_sums = j.at("partial_sums").get<std::vector<double>>();
  if (j.contains("declared_limit")) t.declared_limit = j.at("declared_limit").get<double>();
  if (j.contains("p")) t.p = j.at("p").get<double>();
  if (t.discipline == Discipline::qmlt || t.discipline == Discipline::qsolovay) {
    for (const json& gj : j.at("members")) t.prefix_members.push_back(qsigma_from_json(gj, tol));
    if (t.discipline == Discipline::qmlt && t.mass_bounds.empty())
      for (std::size_t i = 0; i < t.prefix_members.size(); ++i)
        t.mass_bounds.push_back(pow2(-(t.first_index + static_cast<int>(i))));
    if (t.discipline == Discipline::qsolovay && t.partial_sums.empty()) {
      double acc = 0.0;
      for (const QSigmaPrefix& g : t.prefix_members) {
        acc += tau_value(g);
        t.partial_sums.push_back(acc);
      }
    }
  } else {
    for (const json& pj : j.at("members")) t.proj_members.push_back(projector_from_json(pj, tol));
    if (t.partial_sums.empty()) {
      double acc = 0.0;
      for (int k = 0; k < member_count(t); ++k) {
        acc += member_mass(t, k);
        t.partial_sums.push_back(acc);
      }
    }
  }
  check_test(t, tol);
  return t;
}

json classical_to_json(const ClassicalTestPrefix& t) {
  json j;
  j["discipline"] = classical_discipline_name(t.discipline);
  j["members"] = t.members;
  j["masses"] = t.masses;
  if (!t.mass_bounds.empty()) j["mass_bounds"] = t.mass_bounds;
  if (!t.partial_sums.empty()) j["partial_sums"] = t.partial_sums;
  if (t.declared_limit) j["declared_limit"] = *t.declared_limit;
  return j;
}

ClassicalTestPrefix classical_from_json(const json& j) {
  ClassicalTestPrefix t;
  t.discipline = classical_discipline_from_name(j.at("discipline").get<std::string>());
  t.members = j.at("members").get<std::vector<std::vector<std::vector<std::string>>>>();
  t.masses = j.at("masses").get<std::vector<double>>();
  if (j.contains("mass_bounds")) t.mass_bounds = j.at("mass_bounds").get<std::vector<double>>();
  if (j.contains("partial_sums")) t.partial_sums = j.at("partial_sums").get<std::vector<double>>();
  if (j.contains("declared_limit")) t.declared_limit = j.at("declared_limit").get<double>();
  check_classical(t);
  return t;
}

json measure_to_json(const DyadicMeasure& mu) {
  json mass = json::object();
  for (const auto& level : mu.by_len)
    for (const auto& [sigma, w] : level) mass[sigma] = w;
  json j;
  j["depth"] = mu.depth;
  j["mass"] = std::move(mass);
  return j;
}

DyadicMeasure measure_from_json(const json& j) {
  DyadicMeasure mu;
  mu.depth = j.at("depth").get<int>();
  mu.by_len.resize(static_cast<std::size_t>(mu.depth) + 1);
  for (const auto& [sigma, w] : j.at("mass").items()) {
    if (static_cast<int>(sigma.size()) > mu.depth)
      throw std::invalid_argument("measure_from_json: string longer than depth");
    if (!sigma.empty() && !is_bitstring(sigma))
      throw std::invalid_argument("measure_from_json: bad key");
    mu.by_len[sigma.size()][sigma] = w.get<double>();
  }
  check_measure(mu);
  return mu;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace qrl
