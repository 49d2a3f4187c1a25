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
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "bqc/qfactory/rsp.hpp"

namespace bqc::qfactory {

struct BranchCertificate {
  RspOutcome outcome;
  double probability = 0;
  /// Empty when inversion failed for this branch.
  std::optional<Angle8> theta;
  double fidelity = 0;
  std::string error;
  bool ok = false;
};

struct CertifyReport {
  std::array<Angle8, 2> alpha{};
  std::vector<BranchCertificate> branches;
  /// Total branch probability per theta value.
  std::array<double, 8> theta_weight{};
  double total_probability = 0;
  bool passed = false;
};

inline constexpr double kCertifyTolerance = 1e-9;

/// Enumerates every (y, b) branch of the standalone gadget and checks the
/// state qubit against |+_theta> with theta from compute_theta. A branch
/// with zero probability is reported but cannot fail.
CertifyReport certify(const RspInstance& inst);

/// Report without trapdoor fields: alpha, per-branch outcome, probability,
/// theta, fidelity, and the pass flag.
nlohmann::json report_to_json(const CertifyReport& r);

/// Every readout in the search space: squeezed pair x image source x ordered
/// claw positions x sign choice.
std::vector<RspReadout> readout_candidates();

/// Candidates that certify for both valid keys, every alpha in Z_8^2 and
/// every branch.
std::vector<RspReadout> calibrate_readout();

/// Theta values some outcome can certify to, for the instance's alpha.
std::vector<Angle8> reachable_thetas(const RspInstance& inst);

}  // namespace bqc::qfactory
