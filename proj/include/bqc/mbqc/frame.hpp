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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bqc/mbqc/pattern.hpp"

namespace bqc::mbqc {

/// Byproduct map of a pattern: output j carries X^{xor of x_deps[j]}
/// Z^{xor of z_deps[j]}, with the xor taken over measured-node outcomes.
struct PauliFrame {
  std::vector<int> measured_nodes;
  std::vector<int> output_nodes;
  std::vector<std::vector<int>> x_deps;
  std::vector<std::vector<int>> z_deps;
  /// True when the frame was pinned on a set of fiducial inputs that fixes
  /// it for every input; false when only the |+> input was available, in
  /// which case each dependency set is a canonical representative modulo
  /// the Paulis that stabilize the reference output.
  bool input_independent = false;

  /// Output-bit flip mask (bit j = output j) for a branch; `bits[i]` is the
  /// outcome of measured_nodes[i].
  std::uint64_t x_mask(std::span<const std::uint8_t> bits) const;
  std::uint64_t z_mask(std::span<const std::uint8_t> bits) const;

  friend bool operator==(const PauliFrame&, const PauliFrame&) = default;
};

class FrameError : public std::runtime_error {
 public:
  FrameError(const std::string& what, std::string branch)
      : std::runtime_error(what + " (branch " + branch + ")"), branch_(std::move(branch)) {}
  const std::string& branch() const { return branch_; }

 private:
  std::string branch_;
};

/// Derives the frame by enumerating every branch of the lowered pattern and
/// matching each residual to the all-zero branch with a Pauli on the
/// outputs. Throws FrameError when some branch admits no Pauli, or when the
/// branch-to-Pauli map is not XOR-linear in the outcomes.
PauliFrame calibrate_frame(const Pattern& p);

}  // namespace bqc::mbqc
