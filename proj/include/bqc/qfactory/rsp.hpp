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
#include <string>
#include <vector>

#include "bqc/angle8.hpp"
#include "bqc/qfactory/trapdoor.hpp"
#include "bqc/qsim/circuit.hpp"

namespace bqc::qfactory {

/// Which qubit pair is measured in the rotated X-Y basis.
enum class SqueezedPair { Controls, Targets };
/// Which measured pair carries the oracle image y; the other pair is b.
enum class ImageSource { ComputationalPair, SqueezedPair };

/// How shot bits and the claw combine into theta:
///   theta = s * sum_i (x[p_i] - x'[p_i]) * (4 b_i + alpha_i)  mod 8
/// with p = positions (0-based into x) and s = (-1)^(sign bit), where sign
/// 0 is +1, 1..3 is x_sign and 4..6 is x'_(sign-3).
struct RspReadout {
  SqueezedPair squeezed = SqueezedPair::Controls;
  ImageSource image = ImageSource::ComputationalPair;
  std::array<int, 2> positions{0, 1};
  int sign = 3;

  std::string describe() const;
  friend bool operator==(const RspReadout&, const RspReadout&) = default;
};

/// The only readout that certifies for every key, alpha and branch; see
/// calibrate_readout() and the test that re-derives it.
inline constexpr RspReadout kCalibratedReadout{SqueezedPair::Controls, ImageSource::ComputationalPair, {0, 1}, 3};

/// Logical-to-physical placement of one gadget. controls[i] carries x_{i+1};
/// controls[2] is where the prepared state ends up.
struct RspLayout {
  std::array<int, 3> controls{0, 1, 2};
  std::array<int, 2> targets{3, 4};
  std::array<int, 2> y_clbits{0, 1};
  std::array<int, 2> b_clbits{2, 3};

  int state_qubit() const { return controls[2]; }
  friend bool operator==(const RspLayout&, const RspLayout&) = default;
};

/// Controls at base..base+2, targets at base+3, base+4, clbits y1 y2 b1 b2
/// at clbit_base..clbit_base+3.
RspLayout standard_layout(int qubit_base = 0, int clbit_base = 0);

/// Standard block whose logical labels of the first two controls (and the
/// clbits tied to them) are exchanged when e = 1. The physical oracle is
/// then the same gate list for both keys.
RspLayout key_oblivious_layout(const TrapdoorKey& key, int qubit_base, int clbit_base,
                               const RspReadout& readout = kCalibratedReadout);

struct RspInstance {
  TrapdoorKey key;
  PublicMatrices pub;
  /// One angle per squeezed qubit.
  std::array<Angle8, 2> alpha{};
  RspLayout layout;
  RspReadout readout = kCalibratedReadout;
};

RspInstance make_instance(const TrapdoorKey& key, std::array<Angle8, 2> alpha, RspLayout layout = standard_layout());

/// Appends the gadget to `c`: H on the controls, the oracle, RZ(-alpha_i), H,
/// MEASURE on the squeezed pair, MEASURE on the other pair. Within each stage
/// operations go in increasing physical-qubit order. Throws
/// std::invalid_argument on overlapping or out-of-range layout indices.
void emit_rsp(qsim::Circuit& c, const RspInstance& inst);

/// Standalone gadget sized to its layout; the state qubit stays unmeasured.
qsim::Circuit build_rsp_circuit(const RspInstance& inst);

struct RspOutcome {
  Bits2 y{};
  Bits2 b{};
  /// "y1y2b1b2".
  std::string substring() const;
  friend bool operator==(const RspOutcome&, const RspOutcome&) = default;
};

/// Reads y and b out of a full shot string laid out by `inst.layout`.
RspOutcome read_outcome(const RspInstance& inst, const std::string& bits);

Angle8 compute_theta(const RspInstance& inst, const Claw& claw, const Bits2& b);

/// invert() followed by compute_theta(); throws like invert().
Angle8 theta_for_outcome(const RspInstance& inst, const RspOutcome& outcome);

/// All 16 (y, b) outcomes in increasing substring order.
std::vector<RspOutcome> all_outcomes();

/// Outcomes whose computed theta equals `target`, in increasing substring order.
std::vector<RspOutcome> outcomes_for_theta(const RspInstance& inst, Angle8 target);

/// Server-visible description: matrices, alpha and the physical qubit and
/// clbit sets. The key and the logical labelling are not included.
nlohmann::json rsp_public_json(const RspInstance& inst);

}  // namespace bqc::qfactory
