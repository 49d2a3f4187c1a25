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
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "bqc/angle8.hpp"
#include "bqc/mbqc/pattern.hpp"

namespace bqc::ubqc {

inline constexpr double kFidelityTolerance = 1e-9;
inline constexpr double kProbabilityTolerance = 1e-12;

struct BranchComparison {
  std::string bits;
  double p_blind = 0;
  double p_plain = 0;
  double fidelity = 1;
  bool ok = false;
};

struct EquivalenceReport {
  std::map<int, Angle8> theta;
  std::vector<BranchComparison> branches;
  double min_fidelity = 1;
  double max_probability_gap = 0;
  bool passed = false;
};

/// Compares, branch by branch, the blinded circuit (|+_theta> inputs,
/// RZ(delta) measurements) with the plain lowering of the same pattern.
/// Output qubits stay unmeasured so residual states can be compared.
EquivalenceReport verify_blinding_equivalence(const mbqc::Pattern& pattern, const std::map<int, Angle8>& theta);

/// The one-wire chain in -> body -> out measured at (phi1, phi2).
mbqc::Pattern two_node_chain(Angle8 phi1, Angle8 phi2);

/// Closed-form branch-00 amplitudes of the chain on |+>, unnormalized:
/// index 0 is the |0> coefficient, index 1 the |1> coefficient.
std::array<std::complex<double>, 2> chain_branch00_coefficients(Angle8 phi1, Angle8 phi2);

struct RCase {
  int r1 = 0;
  int r2 = 0;
  /// Normalized branch-00 residual of the blinded run.
  std::array<std::complex<double>, 2> residual{};
  /// Fidelity with the reference, before and after an output bit flip.
  double fidelity = 0;
  double flipped_fidelity = 0;
  bool exact = false;
  bool after_flip = false;
  std::string classification() const;
};

struct RCaseReport {
  Angle8 phi1, phi2;
  std::array<Angle8, 2> theta{};
  /// Normalized branch-00 residual of the unblinded chain.
  std::array<std::complex<double>, 2> reference{};
  /// Ordered (0,0), (0,1), (1,0), (1,1).
  std::array<RCase, 4> cases{};
};

/// Runs the blinded chain with delta_i = phi_i - theta_i + r_i pi for each r
/// pair and classifies the branch-00 output against the r = (0,0) reference.
RCaseReport verify_r_cases(Angle8 phi1, Angle8 phi2, std::array<Angle8, 2> theta = {});

}  // namespace bqc::ubqc
