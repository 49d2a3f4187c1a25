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

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "bqc/angle8.hpp"

namespace bqc::qsim {

enum class GateKind { H, X, Z, RZ, CZ, CX, CCX, SWAP, MEASURE };

std::string_view gate_name(GateKind kind);
GateKind gate_from_name(std::string_view name);
int gate_arity(GateKind kind);

/// One gate-level instruction. Unused operand slots are -1.
struct Instruction {
  GateKind kind = GateKind::H;
  std::array<int, 3> qubits{-1, -1, -1};
  Angle8 angle{};   // RZ only
  int clbit = -1;   // MEASURE only

  int arity() const { return gate_arity(kind); }
  std::span<const int> operands() const {
    return {qubits.data(), static_cast<std::size_t>(arity())};
  }
  bool is_unitary() const { return kind != GateKind::MEASURE; }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Gate-level program over a fixed register. Every index is range-checked
/// on insertion, so a constructed Circuit is always well formed.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int num_qubits, int num_clbits);

  int num_qubits() const { return num_qubits_; }
  int num_clbits() const { return num_clbits_; }
  const std::vector<Instruction>& instructions() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

  Circuit& h(int q);
  Circuit& x(int q);
  Circuit& z(int q);
  Circuit& rz(int q, Angle8 angle);
  Circuit& cz(int a, int b);
  Circuit& cx(int control, int target);
  Circuit& ccx(int c0, int c1, int target);
  Circuit& swap(int a, int b);
  Circuit& measure(int q, int c);

  Circuit& push(const Instruction& inst);

  /// Appends `fragment`, relabelling its qubit i to qubit_map[i] and its
  /// clbit j to clbit_map[j].
  Circuit& append(const Circuit& fragment, std::span<const int> qubit_map,
                  std::span<const int> clbit_map = {});

  /// Qubits that are measured at least once.
  std::vector<int> measured_qubits() const;

  /// True when every measured qubit is measured exactly once, nothing acts
  /// on it afterwards, and each clbit is written at most once. Such circuits
  /// can defer all measurement to the end.
  bool measurements_are_terminal() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_qubit(int q) const;
  int num_qubits_ = 0;
  int num_clbits_ = 0;
  std::vector<Instruction> ops_;
};

}  // namespace bqc::qsim
