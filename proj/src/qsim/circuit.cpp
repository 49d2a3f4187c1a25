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

#include "bqc/qsim/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bqc::qsim {

namespace {
constexpr std::array<std::string_view, 9> kNames = {"h",  "x",   "z",    "rz",     "cz",
                                                     "cx", "ccx", "swap", "measure"};
}  // namespace

std::string_view gate_name(GateKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

GateKind gate_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<GateKind>(i);
  }
  throw std::invalid_argument("unsupported gate: " + std::string(name));
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CZ:
    case GateKind::CX:
    case GateKind::SWAP:
      return 2;
    case GateKind::CCX:
      return 3;
    default:
      return 1;
  }
}

Circuit::Circuit(int num_qubits, int num_clbits) : num_qubits_(num_qubits), num_clbits_(num_clbits) {
  if (num_qubits < 0 || num_clbits < 0) throw std::invalid_argument("negative register size");
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_) {
    throw std::out_of_range("qubit index " + std::to_string(q) + " out of range [0, " +
                            std::to_string(num_qubits_) + ")");
  }
}

Circuit& Circuit::push(const Instruction& inst) {
  const int n = inst.arity();
  for (int i = 0; i < n; ++i) {
    check_qubit(inst.qubits[i]);
    for (int j = 0; j < i; ++j) {
      if (inst.qubits[i] == inst.qubits[j]) {
        throw std::invalid_argument(std::string(gate_name(inst.kind)) + " with repeated qubit operand");
      }
    }
  }
  Instruction stored = inst;
  for (int i = n; i < 3; ++i) stored.qubits[i] = -1;
  if (inst.kind == GateKind::MEASURE) {
    if (inst.clbit < 0 || inst.clbit >= num_clbits_) {
      throw std::out_of_range("clbit index " + std::to_string(inst.clbit) + " out of range");
    }
  } else {
    stored.clbit = -1;
  }
  if (inst.kind != GateKind::RZ) stored.angle = Angle8::zero();
  ops_.push_back(stored);
  return *this;
}

Circuit& Circuit::h(int q) { return push({GateKind::H, {q, -1, -1}}); }
Circuit& Circuit::x(int q) { return push({GateKind::X, {q, -1, -1}}); }
Circuit& Circuit::z(int q) { return push({GateKind::Z, {q, -1, -1}}); }
Circuit& Circuit::rz(int q, Angle8 angle) { return push({GateKind::RZ, {q, -1, -1}, angle}); }
Circuit& Circuit::cz(int a, int b) { return push({GateKind::CZ, {a, b, -1}}); }
Circuit& Circuit::cx(int c, int t) { return push({GateKind::CX, {c, t, -1}}); }
Circuit& Circuit::ccx(int c0, int c1, int t) { return push({GateKind::CCX, {c0, c1, t}}); }
Circuit& Circuit::swap(int a, int b) { return push({GateKind::SWAP, {a, b, -1}}); }
Circuit& Circuit::measure(int q, int c) { return push({GateKind::MEASURE, {q, -1, -1}, {}, c}); }

Circuit& Circuit::append(const Circuit& fragment, std::span<const int> qubit_map,
                         std::span<const int> clbit_map) {
  if (qubit_map.size() != static_cast<std::size_t>(fragment.num_qubits())) {
    throw std::invalid_argument("qubit map size does not match fragment register");
  }
  for (Instruction inst : fragment.instructions()) {
    for (int i = 0; i < inst.arity(); ++i) inst.qubits[i] = qubit_map[inst.qubits[i]];
    if (inst.kind == GateKind::MEASURE) {
      if (static_cast<std::size_t>(inst.clbit) >= clbit_map.size()) {
        throw std::invalid_argument("fragment measures a clbit missing from the clbit map");
      }
      inst.clbit = clbit_map[inst.clbit];
    }
    push(inst);
  }
  return *this;
}

std::vector<int> Circuit::measured_qubits() const {
  std::vector<int> out;
  for (const auto& inst : ops_) {
    if (inst.kind == GateKind::MEASURE) out.push_back(inst.qubits[0]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Circuit::measurements_are_terminal() const {
  std::vector<char> measured(num_qubits_, 0);
  std::vector<char> written(num_clbits_, 0);
  for (const auto& inst : ops_) {
    for (int q : inst.operands()) {
      if (measured[q]) return false;
    }
    if (inst.kind == GateKind::MEASURE) {
      if (written[inst.clbit]) return false;
      measured[inst.qubits[0]] = 1;
      written[inst.clbit] = 1;
    }
  }
  return true;
}

}  // namespace bqc::qsim
