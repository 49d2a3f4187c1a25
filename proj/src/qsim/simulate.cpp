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

#include "bqc/qsim/simulate.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

namespace bqc::qsim {

namespace {

constexpr double kZeroProbability = 1e-13;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 shot_generator(std::uint64_t seed, std::uint64_t shot) {
  return std::mt19937_64(mix64(mix64(seed) + 0x9e3779b97f4a7c15ULL * (shot + 1)));
}

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

int count_measurements(const Circuit& c) {
  return static_cast<int>(std::count_if(c.instructions().begin(), c.instructions().end(),
                                        [](const Instruction& i) { return !i.is_unitary(); }));
}

/// Clbit written by each qubit when measurements are terminal; -1 otherwise.
std::vector<int> terminal_clbit_of_qubit(const Circuit& c) {
  std::vector<int> clbit(c.num_qubits(), -1);
  for (const auto& inst : c.instructions()) {
    if (inst.kind == GateKind::MEASURE) clbit[inst.qubits[0]] = inst.clbit;
  }
  return clbit;
}

std::uint64_t clbit_mask_of_index(std::uint64_t index, const std::vector<int>& clbit_of_qubit) {
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < clbit_of_qubit.size(); ++q) {
    if (clbit_of_qubit[q] >= 0 && ((index >> q) & 1)) mask |= std::uint64_t{1} << clbit_of_qubit[q];
  }
  return mask;
}

template <typename Fn>
void parallel_chunks(std::uint64_t n, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers = std::min<std::uint64_t>(hw, std::max<std::uint64_t>(1, n / 256));
  if (workers <= 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t step = (n + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * step;
    const std::uint64_t end = std::min(n, begin + step);
    if (begin >= end) break;
    pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& t : pool) t.join();
}

Counts to_counts(const std::map<std::uint64_t, std::uint64_t>& raw, int width) {
  Counts out;
  for (const auto& [mask, n] : raw) out[format_bits(mask, width)] += n;
  return out;
}

struct Leaf {
  std::uint64_t mask;
  double probability;
  std::optional<Statevector> state;
};

/// Depth-first expansion of every measurement outcome, for circuits whose
/// measured qubits are reused.
void expand(const Circuit& c, std::size_t pc, std::optional<Statevector> state, double prob,
            std::uint64_t mask, std::vector<Leaf>& leaves) {
  const auto& ops = c.instructions();
  for (; pc < ops.size(); ++pc) {
    const auto& inst = ops[pc];
    if (inst.is_unitary()) {
      if (state) apply(*state, inst);
      continue;
    }
    const int q = inst.qubits[0];
    const std::uint64_t bit = std::uint64_t{1} << inst.clbit;
    if (!state) {
      expand(c, pc + 1, std::nullopt, 0.0, mask & ~bit, leaves);
      expand(c, pc + 1, std::nullopt, 0.0, mask | bit, leaves);
      return;
    }
    const double p1 = probability_one(*state, q);
    const double p0 = std::max(0.0, 1.0 - p1);
    std::optional<Statevector> one;
    if (p1 * prob > kZeroProbability) {
      one = *state;
      collapse(*one, q, 1, p1);
    }
    if (p0 * prob > kZeroProbability) {
      collapse(*state, q, 0, p0);
    } else {
      state.reset();
    }
    expand(c, pc + 1, std::move(state), prob * p0, mask & ~bit, leaves);
    expand(c, pc + 1, std::move(one), prob * p1, mask | bit, leaves);
    return;
  }
  leaves.push_back({mask, prob, std::move(state)});
}

/// Extracts the never-measured qubits from a state whose measured qubits
/// are in a definite basis state.
Statevector extract_residual(const Statevector& s, const std::vector<int>& free_qubits) {
  const auto& a = s.amplitudes();
  Eigen::Index anchor = 0;
  a.cwiseAbs2().maxCoeff(&anchor);
  std::uint64_t free_mask = 0;
  for (int q : free_qubits) free_mask |= std::uint64_t{1} << q;
  const std::uint64_t fixed = static_cast<std::uint64_t>(anchor) & ~free_mask;
  Amplitudes<double> r(Eigen::Index{1} << free_qubits.size());
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    std::uint64_t idx = fixed;
    for (std::size_t k = 0; k < free_qubits.size(); ++k) {
      if ((j >> k) & 1) idx |= std::uint64_t{1} << free_qubits[k];
    }
    r(j) = a(static_cast<Eigen::Index>(idx));
  }
  if (std::abs(r.squaredNorm() - 1.0) > 1e-9) {
    throw std::runtime_error("measured qubits are left entangled with the residual register");
  }
  r.normalize();
  return Statevector::from_amplitudes(std::move(r));
}

std::vector<int> unmeasured_qubits(const Circuit& c) {
  std::vector<char> measured(c.num_qubits(), 0);
  for (int q : c.measured_qubits()) measured[q] = 1;
  std::vector<int> out;
  for (int q = 0; q < c.num_qubits(); ++q) {
    if (!measured[q]) out.push_back(q);
  }
  return out;
}

}  // namespace

std::string format_bits(std::uint64_t mask, int width) {
  std::string s(width, '0');
  for (int c = 0; c < width; ++c) {
    if ((mask >> c) & 1) s[width - 1 - c] = '1';
  }
  return s;
}

std::string format_bits(const std::vector<std::uint8_t>& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t c = 0; c < bits.size(); ++c) {
    if (bits[c]) s[bits.size() - 1 - c] = '1';
  }
  return s;
}

int bit_at(const std::string& bits, int clbit) {
  if (clbit < 0 || static_cast<std::size_t>(clbit) >= bits.size()) {
    throw std::out_of_range("clbit outside outcome string");
  }
  return bits[bits.size() - 1 - clbit] == '1' ? 1 : 0;
}

Statevector evolve_unitary(const Circuit& circuit) {
  Statevector s(circuit.num_qubits());
  for (const auto& inst : circuit.instructions()) {
    if (inst.is_unitary()) apply(s, inst);
  }
  return s;
}

Counts run_shots(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("run_shots needs at least one shot");
  if (circuit.num_clbits() == 0 || count_measurements(circuit) == 0) {
    throw std::invalid_argument("circuit measures no clbits");
  }
  const int width = circuit.num_clbits();

  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(
      std::max(1u, std::thread::hardware_concurrency()));

  if (circuit.measurements_are_terminal()) {
    // One evolution, then sample the joint distribution of the clbits.
    const Statevector psi = evolve_unitary(circuit);
    const auto clbit_of_qubit = terminal_clbit_of_qubit(circuit);
    std::map<std::uint64_t, double> weights;
    const auto& a = psi.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double p = std::norm(a(i));
      if (p > 0) weights[clbit_mask_of_index(static_cast<std::uint64_t>(i), clbit_of_qubit)] += p;
    }
    std::vector<std::uint64_t> masks;
    std::vector<double> cdf;
    double acc = 0;
    for (const auto& [m, p] : weights) {
      acc += p;
      masks.push_back(m);
      cdf.push_back(acc);
    }
    parallel_chunks(shots, [&](std::uint64_t w, std::uint64_t begin, std::uint64_t end) {
      auto& local = partial[w];
      for (std::uint64_t s = begin; s < end; ++s) {
        auto gen = shot_generator(seed, s);
        const double u = uniform01(gen) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        ++local[masks[static_cast<std::size_t>(it - cdf.begin())]];
      }
    });
  } else {
    parallel_chunks(shots, [&](std::uint64_t w, std::uint64_t begin, std::uint64_t end) {
      auto& local = partial[w];
      for (std::uint64_t s = begin; s < end; ++s) {
        auto gen = shot_generator(seed, s);
        Statevector psi(circuit.num_qubits());
        std::uint64_t mask = 0;
        for (const auto& inst : circuit.instructions()) {
          if (inst.is_unitary()) {
            apply(psi, inst);
            continue;
          }
          const int q = inst.qubits[0];
          const double p1 = probability_one(psi, q);
          const int bit = uniform01(gen) < p1 ? 1 : 0;
          collapse(psi, q, bit, bit ? p1 : 1.0 - p1);
          const std::uint64_t b = std::uint64_t{1} << inst.clbit;
          mask = bit ? (mask | b) : (mask & ~b);
        }
        ++local[mask];
      }
    });
  }

  std::map<std::uint64_t, std::uint64_t> merged;
  for (const auto& part : partial) {
    for (const auto& [m, n] : part) merged[m] += n;
  }
  return to_counts(merged, width);
}

std::vector<Branch> enumerate_branches(const Circuit& circuit) {
  const int measures = count_measurements(circuit);
  if (measures > kMaxEnumeratedMeasurements) {
    throw std::length_error("too many measurements to enumerate: " + std::to_string(measures));
  }
  const int width = circuit.num_clbits();
  const auto free_qubits = unmeasured_qubits(circuit);
  std::vector<Branch> out;

  if (circuit.measurements_are_terminal()) {
    const Statevector psi = evolve_unitary(circuit);
    const auto measured = circuit.measured_qubits();
    const auto clbit_of_qubit = terminal_clbit_of_qubit(circuit);
    const Eigen::Index free_dim = Eigen::Index{1} << free_qubits.size();
    const std::size_t num_assignments = std::size_t{1} << measured.size();
    std::vector<Amplitudes<double>> residuals(num_assignments, Amplitudes<double>::Zero(free_dim));
    const auto& a = psi.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      std::size_t assignment = 0;
      for (std::size_t k = 0; k < measured.size(); ++k) {
        if ((i >> measured[k]) & 1) assignment |= std::size_t{1} << k;
      }
      Eigen::Index j = 0;
      for (std::size_t k = 0; k < free_qubits.size(); ++k) {
        if ((i >> free_qubits[k]) & 1) j |= Eigen::Index{1} << k;
      }
      residuals[assignment](j) = a(i);
    }
    for (std::size_t assignment = 0; assignment < num_assignments; ++assignment) {
      std::uint64_t index = 0;
      for (std::size_t k = 0; k < measured.size(); ++k) {
        if ((assignment >> k) & 1) index |= std::uint64_t{1} << measured[k];
      }
      Branch b;
      b.bits = format_bits(clbit_mask_of_index(index, clbit_of_qubit), width);
      b.probability = residuals[assignment].squaredNorm();
      b.zero_probability = b.probability <= kZeroProbability;
      if (!b.zero_probability) {
        residuals[assignment] /= std::sqrt(b.probability);
        b.residual = Statevector::from_amplitudes(std::move(residuals[assignment]));
      } else {
        b.residual = Statevector::from_amplitudes(Amplitudes<double>::Zero(free_dim));
      }
      out.push_back(std::move(b));
    }
  } else {
    std::vector<Leaf> leaves;
    expand(circuit, 0, Statevector(circuit.num_qubits()), 1.0, 0, leaves);
    const Eigen::Index free_dim = Eigen::Index{1} << free_qubits.size();
    for (auto& leaf : leaves) {
      Branch b;
      b.bits = format_bits(leaf.mask, width);
      b.probability = leaf.probability;
      b.zero_probability = !leaf.state.has_value();
      b.residual = b.zero_probability ? Statevector::from_amplitudes(Amplitudes<double>::Zero(free_dim))
                                      : extract_residual(*leaf.state, free_qubits);
      out.push_back(std::move(b));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Branch& x, const Branch& y) { return x.bits < y.bits; });
  return out;
}

Distribution outcome_distribution(const Circuit& circuit) {
  Distribution out;
  if (circuit.measurements_are_terminal()) {
    const Statevector psi = evolve_unitary(circuit);
    const auto clbit_of_qubit = terminal_clbit_of_qubit(circuit);
    std::map<std::uint64_t, double> weights;
    const auto& a = psi.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double p = std::norm(a(i));
      if (p > 0) weights[clbit_mask_of_index(static_cast<std::uint64_t>(i), clbit_of_qubit)] += p;
    }
    for (const auto& [m, p] : weights) {
      if (p > kZeroProbability) out[format_bits(m, circuit.num_clbits())] += p;
    }
    return out;
  }
  for (const auto& b : enumerate_branches(circuit)) {
    if (!b.zero_probability) out[b.bits] += b.probability;
  }
  return out;
}

}  // namespace bqc::qsim
