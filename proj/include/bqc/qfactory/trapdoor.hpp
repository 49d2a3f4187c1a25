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

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <utility>

#include "bqc/qsim/circuit.hpp"

namespace bqc::qfactory {

/// x = (x1, x2, x3); x[0] is x1. Printed in that order, so "101" is x1=1, x3=1.
using Bits3 = std::array<std::uint8_t, 3>;
using Bits2 = std::array<std::uint8_t, 2>;

std::string to_string(const Bits3& x);
std::string to_string(const Bits2& y);

/// Trapdoor (d0, e). Only d0 = 1 keys can be inverted: with d0 = 0 the two
/// preimages always agree on x3.
///
/// Deliberately has no JSON conversion. The only persistence path is the
/// client-local key file below.
class TrapdoorKey {
 public:
  TrapdoorKey() = default;
  /// Throws std::invalid_argument unless d0 = 1 and e is a bit.
  static TrapdoorKey make(int d0, int e);
  /// Any bit pair, for exercising the failure path.
  static TrapdoorKey unchecked(int d0, int e);

  int d0() const { return d0_; }
  int e() const { return e_; }
  bool valid() const { return d0_ == 1; }

  friend bool operator==(const TrapdoorKey&, const TrapdoorKey&) = default;

 private:
  TrapdoorKey(int d0, int e) : d0_(d0), e_(e) {}
  int d0_ = 1;
  int e_ = 0;
};

using BitMatrix3 = Eigen::Matrix<std::uint8_t, 3, 3>;

struct PublicMatrices {
  BitMatrix3 A = BitMatrix3::Zero();
  BitMatrix3 B = BitMatrix3::Zero();
  friend bool operator==(const PublicMatrices& a, const PublicMatrices& b) { return a.A == b.A && a.B == b.B; }
};

PublicMatrices public_matrices(const TrapdoorKey& key);

/// Uniform e with d0 = 1; zero-d0 draws are resampled.
std::pair<TrapdoorKey, PublicMatrices> keygen(std::uint64_t seed);

/// f1 = xor over A_ij = 1 of x_i x_j, f2 likewise over B.
Bits2 eval_f(const PublicMatrices& pub, const Bits3& x);

struct Claw {
  Bits3 x{};
  Bits3 x_prime{};
};

/// The two preimages of y. Throws std::runtime_error when they agree on x3,
/// which happens exactly for d0 = 0 keys.
Claw invert(const TrapdoorKey& key, const Bits2& y);

/// Oracle on 5 qubits: 0..2 carry x1..x3, 3 and 4 receive f1 and f2. One
/// CX (diagonal entry) or CCX per set matrix entry, in increasing
/// (target, controls) order.
qsim::Circuit build_oracle(const PublicMatrices& pub);

nlohmann::json public_to_json(const PublicMatrices& pub);
PublicMatrices public_from_json(const nlohmann::json& j);

/// Client-local key file {"d0":1,"e":bit}. Never used on the wire.
void save_key_file(const std::filesystem::path& path, const TrapdoorKey& key);
TrapdoorKey load_key_file(const std::filesystem::path& path);

}  // namespace bqc::qfactory
