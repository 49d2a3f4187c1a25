// Copyright 2026 The bqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <json.hpp>

#include "bqc/qsim/circuit.hpp"

namespace bqc::qsim {

/// {"n_qubits":int,"n_clbits":int,"ops":[{"g":...,"q":[...],"k":int,"c":int}]}
nlohmann::json circuit_to_json(const Circuit& circuit);

/// Validates the closed gate set, operand counts and index ranges; throws
/// std::invalid_argument on any violation.
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace bqc::qsim
