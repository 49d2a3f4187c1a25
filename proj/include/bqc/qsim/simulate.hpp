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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bqc/qsim/circuit.hpp"
#include "bqc/qsim/statevector.hpp"

namespace bqc::qsim {

/// Outcome histogram keyed by clbit string; clbit 0 is the rightmost char.
using Counts = std::map<std::string, std::uint64_t>;

/// Exact outcome distribution keyed the same way as Counts.
using Distribution = std::map<std::string, double>;

struct Branch {
  std::string bits;
  double probability = 0;
  /// Normalized state of the never-measured qubits, in increasing qubit
  /// order. Empty (zero qubits, amplitude 0) when the branch is impossible.
  Statevector residual;
  bool zero_probability = false;
};

/// Upper bound on measurements enumerate_branches() will expand.
inline constexpr int kMaxEnumeratedMeasurements = 22;

/// Runs every unitary instruction on |0...0>, skipping MEASURE.
Statevector evolve_unitary(const Circuit& circuit);

/// Samples `shots` executions under the Born rule. Shot i draws from its
/// own generator seeded from (seed, i), so the result does not depend on
/// thread scheduling.
Counts run_shots(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed);

/// Every measurement branch with its exact probability and the residual of
/// the unmeasured qubits. Branches come out in increasing clbit-string order
/// of their bits (reading clbit 0 as least significant).
std::vector<Branch> enumerate_branches(const Circuit& circuit);

/// Exact probability for every clbit string with nonzero weight.
Distribution outcome_distribution(const Circuit& circuit);

/// Renders a clbit assignment; `bits[c]` is clbit c.
std::string format_bits(const std::vector<std::uint8_t>& bits);
std::string format_bits(std::uint64_t mask, int width);

/// Reads clbit c out of a formatted outcome string.
int bit_at(const std::string& bits, int clbit);

}  // namespace bqc::qsim
