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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "bqc/angle8.hpp"
#include "bqc/qsim/circuit.hpp"

namespace bqc::qsim {

template <typename Scalar>
using Amplitudes = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using Gate2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// Dense pure state over `num_qubits` qubits. Qubit q is bit q of the basis
/// index (little endian).
template <typename Scalar>
class BasicStatevector {
 public:
  using Complex = std::complex<Scalar>;

  BasicStatevector() : BasicStatevector(0) {}
  explicit BasicStatevector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
      throw std::invalid_argument("statevector size out of range: " + std::to_string(num_qubits));
    }
    amps_ = Amplitudes<Scalar>::Zero(Eigen::Index{1} << num_qubits);
    amps_(0) = 1;
  }

  static BasicStatevector basis(int num_qubits, std::uint64_t index) {
    BasicStatevector s(num_qubits);
    s.amps_(0) = 0;
    s.amps_(static_cast<Eigen::Index>(index)) = 1;
    return s;
  }

  /// Takes ownership of raw amplitudes; the length must be a power of two.
  static BasicStatevector from_amplitudes(Amplitudes<Scalar> amps) {
    int n = 0;
    while ((Eigen::Index{1} << n) < amps.size()) ++n;
    if ((Eigen::Index{1} << n) != amps.size()) {
      throw std::invalid_argument("amplitude count is not a power of two");
    }
    BasicStatevector s(n);
    s.amps_ = std::move(amps);
    return s;
  }

  /// (|0> + e^{i angle}|1>)/sqrt(2).
  static BasicStatevector plus(Angle8 angle = Angle8::zero()) {
    Amplitudes<Scalar> a(2);
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    a << Complex(r, 0), angle.template phase<Scalar>() * r;
    return from_amplitudes(std::move(a));
  }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dimension() const { return amps_.size(); }
  const Amplitudes<Scalar>& amplitudes() const { return amps_; }
  Amplitudes<Scalar>& amplitudes() { return amps_; }
  Complex operator[](Eigen::Index i) const { return amps_(i); }

  Scalar norm_squared() const { return amps_.squaredNorm(); }
  void normalize() {
    const Scalar n = amps_.norm();
    if (n == Scalar(0)) throw std::domain_error("cannot normalize the zero vector");
    amps_ /= n;
  }

  static constexpr int kMaxQubits = 26;

 private:
  int num_qubits_;
  Amplitudes<Scalar> amps_;
};

using Statevector = BasicStatevector<double>;

// ---------------------------------------------------------------------------
// Gate kernels.

template <typename Scalar>
Gate2<Scalar> hadamard() {
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  Gate2<Scalar> m;
  m << r, r, r, -r;
  return m;
}

template <typename Scalar>
Gate2<Scalar> pauli_x() {
  Gate2<Scalar> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar>
Gate2<Scalar> pauli_z() {
  Gate2<Scalar> m;
  m << 1, 0, 0, -1;
  return m;
}

/// diag(1, e^{i angle}).
template <typename Scalar>
Gate2<Scalar> rz(Angle8 angle) {
  Gate2<Scalar> m;
  m << 1, 0, 0, angle.template phase<Scalar>();
  return m;
}

template <typename Scalar>
void apply_1q(BasicStatevector<Scalar>& s, int q, const Gate2<Scalar>& u) {
  auto& a = s.amplitudes();
  const Eigen::Index mask = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i & mask) continue;
    const auto a0 = a(i);
    const auto a1 = a(i | mask);
    a(i) = u(0, 0) * a0 + u(0, 1) * a1;
    a(i | mask) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

template <typename Scalar>
void apply_phase(BasicStatevector<Scalar>& s, int q, std::complex<Scalar> phase) {
  auto& a = s.amplitudes();
  const Eigen::Index mask = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i & mask) a(i) *= phase;
  }
}

template <typename Scalar>
void apply_cz(BasicStatevector<Scalar>& s, int q0, int q1) {
  auto& a = s.amplitudes();
  const Eigen::Index m = (Eigen::Index{1} << q0) | (Eigen::Index{1} << q1);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if ((i & m) == m) a(i) = -a(i);
  }
}

/// Flips `target` wherever every qubit in `control_mask` is set.
template <typename Scalar>
void apply_controlled_x(BasicStatevector<Scalar>& s, Eigen::Index control_mask, int target) {
  auto& a = s.amplitudes();
  const Eigen::Index t = Eigen::Index{1} << target;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if ((i & t) == 0 && (i & control_mask) == control_mask) std::swap(a(i), a(i | t));
  }
}

template <typename Scalar>
void apply_swap(BasicStatevector<Scalar>& s, int q0, int q1) {
  auto& a = s.amplitudes();
  const Eigen::Index m0 = Eigen::Index{1} << q0;
  const Eigen::Index m1 = Eigen::Index{1} << q1;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if ((i & m0) && !(i & m1)) std::swap(a(i), a((i & ~m0) | m1));
  }
}

/// Applies a unitary instruction in place. MEASURE is rejected: collapse
/// lives in the sampling and enumeration paths.
template <typename Scalar>
void apply(BasicStatevector<Scalar>& s, const Instruction& inst) {
  for (int q : inst.operands()) {
    if (q < 0 || q >= s.num_qubits()) throw std::out_of_range("instruction qubit out of range");
  }
  const auto& q = inst.qubits;
  switch (inst.kind) {
    case GateKind::H: apply_1q(s, q[0], hadamard<Scalar>()); break;
    case GateKind::X: apply_controlled_x(s, 0, q[0]); break;
    case GateKind::Z: apply_phase(s, q[0], std::complex<Scalar>(-1, 0)); break;
    case GateKind::RZ: apply_phase(s, q[0], inst.angle.template phase<Scalar>()); break;
    case GateKind::CZ: apply_cz(s, q[0], q[1]); break;
    case GateKind::CX: apply_controlled_x(s, Eigen::Index{1} << q[0], q[1]); break;
    case GateKind::CCX:
      apply_controlled_x(s, (Eigen::Index{1} << q[0]) | (Eigen::Index{1} << q[1]), q[2]);
      break;
    case GateKind::SWAP: apply_swap(s, q[0], q[1]); break;
    case GateKind::MEASURE:
      throw std::invalid_argument("MEASURE is not a unitary instruction");
  }
}

/// By-value form of apply().
template <typename Scalar>
BasicStatevector<Scalar> apply_gate(BasicStatevector<Scalar> s, const Instruction& inst) {
  apply(s, inst);
  return s;
}

/// Probability that measuring qubit q yields 1.
template <typename Scalar>
Scalar probability_one(const BasicStatevector<Scalar>& s, int q) {
  const auto& a = s.amplitudes();
  const Eigen::Index mask = Eigen::Index{1} << q;
  Scalar p = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i & mask) p += std::norm(a(i));
  }
  return p;
}

/// Projects qubit q onto |bit> and renormalizes by sqrt(p), the branch
/// probability supplied by the caller.
template <typename Scalar>
void collapse(BasicStatevector<Scalar>& s, int q, int bit, Scalar p) {
  auto& a = s.amplitudes();
  const Eigen::Index mask = Eigen::Index{1} << q;
  const Scalar scale = Scalar(1) / std::sqrt(p);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (((i & mask) != 0) == (bit != 0)) {
      a(i) *= scale;
    } else {
      a(i) = 0;
    }
  }
}

/// |<a|b>|^2 for normalized inputs; insensitive to global phase.
template <typename Scalar>
Scalar fidelity(const BasicStatevector<Scalar>& a, const BasicStatevector<Scalar>& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("fidelity of states with different qubit counts");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace bqc::qsim
