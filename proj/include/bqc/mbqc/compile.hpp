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

#include <vector>

#include "bqc/mbqc/pattern.hpp"
#include "bqc/qsim/circuit.hpp"

namespace bqc::mbqc {

/// Compiles a single-wire word over {H, X, Z, RZ}. The pattern's zero branch
/// realizes the word's unitary on the wire's input state.
Pattern compile_1q(const std::vector<qsim::Instruction>& gates);

/// Compiles a circuit over {H, X, Z, RZ, CZ, CX} into per-wire chains joined
/// by CZ bridges. Wire w of the pattern is qubit w of the circuit. Throws
/// std::invalid_argument on CCX, SWAP, MEASURE or any other gate.
Pattern compile_circuit(const qsim::Circuit& circuit);

/// Prepends H on every qubit, turning a circuit written against |0...0>
/// into one that starts from |+...+>, the compiler's input convention.
qsim::Circuit from_zero_inputs(const qsim::Circuit& circuit);

}  // namespace bqc::mbqc
