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

#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bqc {

/// An angle k*pi/4 with k in Z_8. All blinding arithmetic happens on k.
class Angle8 {
 public:
  constexpr Angle8() = default;

  /// Strict constructor: k must already be in [0, 8).
  static constexpr Angle8 from_k(int k) {
    if (k < 0 || k >= 8) {
      throw std::out_of_range("angle index not in Z_8: " + std::to_string(k));
    }
    return Angle8(static_cast<std::uint8_t>(k));
  }

  /// Reduces any integer multiple of pi/4 into Z_8.
  static constexpr Angle8 wrap(long long k) {
    return Angle8(static_cast<std::uint8_t>(((k % 8) + 8) % 8));
  }

  static constexpr Angle8 zero() { return Angle8(); }
  static constexpr Angle8 pi() { return Angle8(4); }

  constexpr int k() const { return k_; }
  constexpr bool is_zero() const { return k_ == 0; }
  /// Multiples of pi/2 keep Pauli byproducts Pauli.
  constexpr bool is_clifford() const { return (k_ & 1) == 0; }

  double radians() const { return k_ * std::numbers::pi / 4.0; }

  /// e^{i k pi/4}. Tabulated so that multiples of pi/2 are exact.
  template <typename Scalar = double>
  std::complex<Scalar> phase() const {
    constexpr Scalar h = static_cast<Scalar>(0.70710678118654752440084436210485L);
    switch (k_) {
      case 0: return {1, 0};
      case 1: return {h, h};
      case 2: return {0, 1};
      case 3: return {-h, h};
      case 4: return {-1, 0};
      case 5: return {-h, -h};
      case 6: return {0, -1};
      default: return {h, -h};
    }
  }

  constexpr Angle8 operator-() const { return wrap(-static_cast<int>(k_)); }
  constexpr Angle8& operator+=(Angle8 o) { k_ = (k_ + o.k_) & 7; return *this; }
  constexpr Angle8& operator-=(Angle8 o) { k_ = (k_ + 8 - o.k_) & 7; return *this; }
  friend constexpr Angle8 operator+(Angle8 a, Angle8 b) { return a += b; }
  friend constexpr Angle8 operator-(Angle8 a, Angle8 b) { return a -= b; }
  friend constexpr bool operator==(Angle8, Angle8) = default;
  friend constexpr auto operator<=>(Angle8, Angle8) = default;

  friend std::ostream& operator<<(std::ostream& os, Angle8 a) {
    return os << static_cast<int>(a.k_) << "pi/4";
  }

 private:
  constexpr explicit Angle8(std::uint8_t k) : k_(k) {}
  std::uint8_t k_ = 0;
};

}  // namespace bqc
