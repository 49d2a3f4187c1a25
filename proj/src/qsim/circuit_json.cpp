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

#include "bqc/qsim/circuit_json.hpp"

#include <stdexcept>
#include <string>

namespace bqc::qsim {

using nlohmann::json;

json circuit_to_json(const Circuit& circuit) {
  json ops = json::array();
  for (const auto& inst : circuit.instructions()) {
    json op;
    op["g"] = std::string(gate_name(inst.kind));
    json q = json::array();
    for (int v : inst.operands()) q.push_back(v);
    op["q"] = std::move(q);
    if (inst.kind == GateKind::RZ) op["k"] = inst.angle.k();
    if (inst.kind == GateKind::MEASURE) op["c"] = inst.clbit;
    ops.push_back(std::move(op));
  }
  return json{{"n_qubits", circuit.num_qubits()}, {"n_clbits", circuit.num_clbits()}, {"ops", std::move(ops)}};
}

namespace {

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw std::invalid_argument(std::string("circuit json: missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

Circuit parse_circuit(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("circuit json: expected an object");
  const int nq = require_int(j, "n_qubits");
  const int nc = require_int(j, "n_clbits");
  if (nq < 0 || nc < 0) throw std::invalid_argument("circuit json: negative register size");
  if (!j.contains("ops") || !j.at("ops").is_array()) {
    throw std::invalid_argument("circuit json: missing 'ops' array");
  }
  Circuit c(nq, nc);
  for (const auto& op : j.at("ops")) {
    if (!op.is_object() || !op.contains("g") || !op.at("g").is_string()) {
      throw std::invalid_argument("circuit json: op without gate name");
    }
    Instruction inst;
    inst.kind = gate_from_name(op.at("g").get<std::string>());
    if (!op.contains("q") || !op.at("q").is_array()) {
      throw std::invalid_argument("circuit json: op without qubit list");
    }
    const auto& q = op.at("q");
    if (static_cast<int>(q.size()) != inst.arity()) {
      throw std::invalid_argument("circuit json: wrong operand count for " + op.at("g").get<std::string>());
    }
    for (int i = 0; i < inst.arity(); ++i) {
      if (!q[i].is_number_integer()) throw std::invalid_argument("circuit json: non-integer qubit");
      inst.qubits[i] = q[i].get<int>();
    }
    if (inst.kind == GateKind::RZ) {
      inst.angle = Angle8::from_k(require_int(op, "k"));
    } else if (op.contains("k")) {
      throw std::invalid_argument("circuit json: 'k' only allowed on rz");
    }
    if (inst.kind == GateKind::MEASURE) {
      inst.clbit = require_int(op, "c");
    } else if (op.contains("c")) {
      throw std::invalid_argument("circuit json: 'c' only allowed on measure");
    }
    c.push(inst);
  }
  return c;
}

}  // namespace

Circuit circuit_from_json(const json& j) {
  try {
    return parse_circuit(j);
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(std::string("circuit json: ") + e.what());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("circuit json: ") + e.what());
  }
}

}  // namespace bqc::qsim
