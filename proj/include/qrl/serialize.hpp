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

#include <filesystem>

#include <json.hpp>

#include "qrl/measures.hpp"

namespace qrl {

using json = nlohmann::json;

// States: { "kind": ..., "depth": N, then "levels" (dense: nested [re,im]
// arrays; diagonal: {bitstring: weight} maps), "bits" (classical) or "p"
// (bernoulli) }. Diagonal weights round-trip bit-exactly.
json state_to_json(const StatePrefix& s);
StatePrefix state_from_json(const json& j, const Tolerances& tol = {});

// Projectors: orthonormal column lists { "qubits": n, "columns": [...] } or
// the diagonal form { "qubits": n, "strings": [...] }.
json projector_to_json(const Projector& p);
Projector projector_from_json(const json& j, const Tolerances& tol = {});

json qsigma_to_json(const QSigmaPrefix& g);
QSigmaPrefix qsigma_from_json(const json& j, const Tolerances& tol = {});

json test_to_json(const QuantumTest& t);
QuantumTest test_from_json(const json& j, const Tolerances& tol = {});

json classical_to_json(const ClassicalTestPrefix& t);
ClassicalTestPrefix classical_from_json(const json& j);

json measure_to_json(const DyadicMeasure& mu);
DyadicMeasure measure_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

// Deterministic CSV writing: fixed column order, %.17g doubles, LF endings.
std::string csv_escape(const std::string& field);
std::string format_double(double value);

}  // namespace qrl
