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

#include "bqc/ubqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bqc/mbqc/lower.hpp"
#include "bqc/qsim/simulate.hpp"
#include "bqc/ubqc/blind.hpp"

namespace bqc::ubqc {

using mbqc::NodeRole;
using mbqc::Pattern;

namespace {

mbqc::LowerOptions unmeasured_outputs() {
  mbqc::LowerOptions o;
  o.measure_outputs = false;
  return o;
}

qsim::Statevector flip_all(const qsim::Statevector& s) {
  qsim::Statevector out = s;
  const Eigen::Index mask = s.dimension() - 1;
  for (Eigen::Index i = 0; i < s.dimension(); ++i) out.amplitudes()(i) = s[i ^ mask];
  return out;
}

const qsim::Branch& branch00(const std::vector<qsim::Branch>& branches) {
  auto it = std::find_if(branches.begin(), branches.end(), [](const qsim::Branch& b) {
    return b.bits.find('1') == std::string::npos;
  });
  if (it == branches.end() || it->zero_probability) throw std::logic_error("chain lost its all-zero branch");
  return *it;
}

}  // namespace

EquivalenceReport verify_blinding_equivalence(const Pattern& pattern, const std::map<int, Angle8>& theta) {
  const auto plain = qsim::enumerate_branches(
      mbqc::lower_to_circuit(pattern, mbqc::plus_inputs(pattern), unmeasured_outputs()));
  const auto blinded = qsim::enumerate_branches(lower_blinded(blind_with(pattern, theta), unmeasured_outputs()));
  if (plain.size() != blinded.size()) throw std::logic_error("branch sets differ in size");

  EquivalenceReport r;
  r.theta = theta;
  r.passed = true;
  for (std::size_t i = 0; i < plain.size(); ++i) {
    const auto& a = plain[i];
    const auto& b = blinded[i];
    BranchComparison c{a.bits, b.probability, a.probability, 1.0, false};
    if (a.bits != b.bits) throw std::logic_error("branch order differs");
    const double gap = std::abs(a.probability - b.probability);
    if (!a.zero_probability && !b.zero_probability) {
      c.fidelity = qsim::fidelity(a.residual, b.residual);
    } else if (a.zero_probability != b.zero_probability) {
      c.fidelity = 0;
    }
    c.ok = gap <= kProbabilityTolerance && c.fidelity >= 1 - kFidelityTolerance;
    r.min_fidelity = std::min(r.min_fidelity, c.fidelity);
    r.max_probability_gap = std::max(r.max_probability_gap, gap);
    r.passed = r.passed && c.ok;
    r.branches.push_back(std::move(c));
  }
  return r;
}

Pattern two_node_chain(Angle8 phi1, Angle8 phi2) {
  return Pattern({{0, 0, NodeRole::Input, phi1}, {1, 0, NodeRole::Body, phi2}, {2, 0, NodeRole::Output, std::nullopt}},
                 {{0, 1}, {1, 2}});
}

std::array<std::complex<double>, 2> chain_branch00_coefficients(Angle8 phi1, Angle8 phi2) {
  const auto e1 = phi1.phase(), e2 = phi2.phase(), e12 = (phi1 + phi2).phase();
  return {1.0 + e1 + e2 - e12, 1.0 + e1 - e2 + e12};
}

std::string RCase::classification() const {
  if (exact && after_flip) return "match, flip irrelevant";
  if (exact) return "match, no flip";
  if (after_flip) return "match after flip";
  return "no bitflip correction works";
}

RCaseReport verify_r_cases(Angle8 phi1, Angle8 phi2, std::array<Angle8, 2> theta) {
  const Pattern chain = two_node_chain(phi1, phi2);
  RCaseReport rep;
  rep.phi1 = phi1;
  rep.phi2 = phi2;
  rep.theta = theta;

  const auto ref_branches =
      qsim::enumerate_branches(mbqc::lower_to_circuit(chain, mbqc::plus_inputs(chain), unmeasured_outputs()));
  const qsim::Statevector& ref = branch00(ref_branches).residual;
  rep.reference = {ref[0], ref[1]};

  for (int r = 0; r < 4; ++r) {
    RCase& c = rep.cases[r];
    c.r1 = r >> 1;
    c.r2 = r & 1;
    const auto b = blind_with(chain, {{0, theta[0]}, {1, theta[1]}}, RFlags::test({{0, c.r1}, {1, c.r2}}));
    const auto branches = qsim::enumerate_branches(lower_blinded(b, unmeasured_outputs()));
    const qsim::Statevector& out = branch00(branches).residual;
    c.residual = {out[0], out[1]};
    c.fidelity = qsim::fidelity(ref, out);
    c.flipped_fidelity = qsim::fidelity(ref, flip_all(out));
    c.exact = c.fidelity >= 1 - kFidelityTolerance;
    c.after_flip = c.flipped_fidelity >= 1 - kFidelityTolerance;
  }
  return rep;
}

}  // namespace bqc::ubqc
