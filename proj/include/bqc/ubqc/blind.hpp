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
#include <json.hpp>
#include <map>
#include <vector>

#include "bqc/mbqc/frame.hpp"
#include "bqc/mbqc/lower.hpp"
#include "bqc/mbqc/pattern.hpp"
#include "bqc/qsim/circuit.hpp"

namespace bqc::ubqc {

/// Per-node pi offsets added to the published angle. The protocol keeps all
/// of them at zero; nonzero values exist only for analysis.
class RFlags {
 public:
  static RFlags protocol() { return RFlags(false, {}); }
  /// Protocol mode with explicit values; throws std::invalid_argument if any r is 1.
  static RFlags protocol(const std::map<int, int>& r);
  static RFlags test(std::map<int, int> r);

  bool test_mode() const { return test_; }
  int r(int node) const;

 private:
  RFlags(bool test, std::map<int, int> r) : test_(test), r_(std::move(r)) {}
  bool test_;
  std::map<int, int> r_;
};

/// Client-side blinding of a pattern: secret theta per measured node and the
/// published delta = phi - theta (+ r pi in test mode).
class BlindedPattern {
 public:
  BlindedPattern(mbqc::Pattern pattern, std::map<int, Angle8> theta, RFlags rflags = RFlags::protocol());

  const mbqc::Pattern& pattern() const { return pattern_; }
  const std::map<int, Angle8>& theta() const { return theta_; }
  const std::map<int, Angle8>& delta() const { return delta_; }
  const RFlags& rflags() const { return rflags_; }

  /// The graph with delta in place of every measured angle.
  mbqc::Pattern server_pattern() const;

 private:
  mbqc::Pattern pattern_;
  std::map<int, Angle8> theta_;
  std::map<int, Angle8> delta_;
  RFlags rflags_;
};

/// Uniform theta per measured node, deterministic in the seed.
BlindedPattern blind(const mbqc::Pattern& pattern, std::uint64_t seed);
BlindedPattern blind_with(const mbqc::Pattern& pattern, std::map<int, Angle8> theta, RFlags rflags = RFlags::protocol());

/// Graph structure and {"delta":{node:k}}; no theta, no phi.
nlohmann::json server_view_json(const BlindedPattern& b);

/// One-qubit fragment taking |0> to |+_theta>: H then RZ(theta).
qsim::Circuit blinded_input_prep(Angle8 theta);

/// Server circuit with ideal |+_theta> preparation: every node starts in
/// |+>, measured nodes get RZ(theta), then CZ edges and RZ(delta), H,
/// MEASURE, with the same clbit order as mbqc::lower_to_circuit.
qsim::Circuit lower_blinded(const BlindedPattern& b, const mbqc::LowerOptions& options = {});

/// Flips output j iff the outcomes in frame.x_deps[j] have odd parity.
/// `branch_bits[i]` belongs to frame.measured_nodes[i]; `outputs[j]` to
/// frame.output_nodes[j]. Throws std::invalid_argument on size mismatch.
std::vector<std::uint8_t> decode_output(const std::vector<std::uint8_t>& outputs,
                                        const std::vector<std::uint8_t>& branch_bits, const mbqc::PauliFrame& frame);

}  // namespace bqc::ubqc
