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

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <random>
#include <set>

#include "bqc/mbqc/compile.hpp"
#include "bqc/mbqc/frame.hpp"
#include "bqc/qsim/simulate.hpp"
#include "bqc/ubqc/blind.hpp"
#include "bqc/ubqc/verify.hpp"

using namespace bqc;
using namespace bqc::ubqc;
using mbqc::Pattern;
using qsim::Circuit;
using qsim::Statevector;

namespace {

Angle8 A(int k) { return Angle8::from_k(k); }

Circuit random_circuit(int wires, int length, std::mt19937_64& rng, bool clifford_only) {
  Circuit c(wires, 0);
  std::uniform_int_distribution<int> kind(0, wires == 1 ? 3 : 5);
  std::uniform_int_distribution<int> wire(0, wires - 1);
  std::uniform_int_distribution<int> k8(0, 7);
  for (int i = 0; i < length; ++i) {
    const int q = wire(rng);
    switch (kind(rng)) {
      case 0: c.h(q); break;
      case 1: c.x(q); break;
      case 2: c.z(q); break;
      case 3: c.rz(q, A(clifford_only ? 2 * (k8(rng) % 4) : k8(rng))); break;
      case 4: c.cz(0, 1); break;
      default: c.cx(q, 1 - q); break;
    }
  }
  return c;
}

// Compiled patterns with between one and six measured nodes.
std::vector<std::pair<Circuit, Pattern>> small_patterns(int count, bool clifford_only, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Circuit, Pattern>> out;
  while (static_cast<int>(out.size()) < count) {
    const int wires = 1 + static_cast<int>(rng() % 2);
    Circuit c = random_circuit(wires, 1 + static_cast<int>(rng() % 4), rng, clifford_only);
    Pattern p = mbqc::compile_circuit(c);
    const auto m = p.measured_nodes().size();
    if (m >= 1 && m <= 6) out.emplace_back(std::move(c), std::move(p));
  }
  return out;
}

std::map<int, Angle8> random_theta(const Pattern& p, std::mt19937_64& rng) {
  std::map<int, Angle8> t;
  for (int id : p.measured_nodes()) t[id] = A(static_cast<int>(rng() % 8));
  return t;
}

std::map<int, Angle8> zero_theta(const Pattern& p) {
  std::map<int, Angle8> t;
  for (int id : p.measured_nodes()) t[id] = Angle8::zero();
  return t;
}

// Independent 2x2 oracle: branch-00 output of the chain measured at
// (a1, a2), i.e. H RZ(a2) H RZ(a1) |+>.
Eigen::Vector2cd chain_oracle(Angle8 a1, Angle8 a2) {
  const double r = 1 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << r, r, r, -r;
  auto rz = [](Angle8 a) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = 1;
    m(1, 1) = std::polar(1.0, a.radians());
    return m;
  };
  Eigen::Vector2cd v(r, r);
  v = h * rz(a2) * h * rz(a1) * v;
  return v.normalized();
}

double fid(const Eigen::Vector2cd& a, const std::array<std::complex<double>, 2>& b) {
  return std::norm(std::conj(a(0)) * b[0] + std::conj(a(1)) * b[1]);
}

}  // namespace

TEST(Blind, DeltaArithmetic) {
  const Pattern chain = two_node_chain(A(2), A(5));
  const auto b = blind_with(chain, {{0, A(3)}, {1, A(0)}});
  EXPECT_EQ(b.delta().at(0), A(7));
  EXPECT_EQ(b.delta().at(1), A(5));
  EXPECT_EQ(b.server_pattern().node(0).angle, A(7));
  EXPECT_EQ(b.server_pattern().node(2).angle, std::nullopt);
}

TEST(Blind, MissingOrExtraThetaRejected) {
  const Pattern chain = two_node_chain(A(1), A(1));
  EXPECT_THROW(blind_with(chain, {{0, A(1)}}), std::invalid_argument);
  EXPECT_THROW(blind_with(chain, {{0, A(1)}, {2, A(1)}}), std::invalid_argument);
}

TEST(Blind, DeterministicInSeed) {
  const Pattern chain = two_node_chain(A(1), A(6));
  EXPECT_EQ(blind(chain, 99).theta(), blind(chain, 99).theta());
  bool differs = false;
  for (std::uint64_t s = 0; s < 20 && !differs; ++s) differs = blind(chain, s).theta() != blind(chain, 99).theta();
  EXPECT_TRUE(differs);
}

TEST(Blind, DeltaIsBijectiveInTheta) {
  for (int phi = 0; phi < 8; ++phi) {
    std::set<int> seen;
    for (int t = 0; t < 8; ++t) seen.insert((A(phi) - A(t)).k());
    EXPECT_EQ(seen.size(), 8u);
  }
}

TEST(Blind, DeltaUniformOverSeeds) {
  const Pattern chain = two_node_chain(A(3), A(6));
  std::array<int, 8> hist{};
  constexpr int kSeeds = 8000;
  for (int s = 0; s < kSeeds; ++s) ++hist[blind(chain, static_cast<std::uint64_t>(s)).delta().at(0).k()];
  double stat = 0;
  for (int h : hist) stat += (h - 1000.0) * (h - 1000.0) / 1000.0;
  boost::math::chi_squared dist(7);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 0.001);
}

TEST(Blind, ProtocolModeRejectsNonzeroR) {
  EXPECT_THROW(RFlags::protocol({{0, 1}}), std::invalid_argument);
  EXPECT_NO_THROW(RFlags::protocol({{0, 0}}));
  EXPECT_FALSE(RFlags::protocol().test_mode());
  const auto t = RFlags::test({{0, 1}});
  EXPECT_TRUE(t.test_mode());
  EXPECT_EQ(t.r(0), 1);
  EXPECT_EQ(t.r(5), 0);
  EXPECT_THROW(RFlags::test({{0, 2}}), std::invalid_argument);
  const auto b = blind_with(two_node_chain(A(2), A(2)), {{0, A(0)}, {1, A(0)}}, t);
  EXPECT_EQ(b.delta().at(0), A(6));
}

TEST(Blind, ServerViewCarriesOnlyDeltaAndGraph) {
  const auto b = blind_with(two_node_chain(A(2), A(5)), {{0, A(3)}, {1, A(1)}});
  const auto j = server_view_json(b);
  EXPECT_EQ(j.at("delta").at("0"), 7);
  EXPECT_EQ(j.at("delta").at("1"), 4);
  for (const auto& n : j.at("nodes")) EXPECT_FALSE(n.contains("k"));
  const std::string text = j.dump();
  EXPECT_EQ(text.find("theta"), std::string::npos);
  EXPECT_EQ(text.find("phi"), std::string::npos);
}

TEST(Blind, InputPrep) {
  auto state = [](int k) { return qsim::evolve_unitary(blinded_input_prep(A(k))); };
  EXPECT_NEAR(qsim::fidelity(state(0), Statevector::plus()), 1.0, 1e-12);
  const auto minus = state(4);
  EXPECT_NEAR(minus[0].real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(minus[1].real(), -1 / std::sqrt(2.0), 1e-12);
  const auto s1 = state(1);
  EXPECT_NEAR(std::abs(s1[1] / s1[0] - std::polar(1.0, M_PI / 4)), 0.0, 1e-12);
}

TEST(Decode, Examples) {
  const auto frame = mbqc::calibrate_frame(two_node_chain(A(0), A(0)));
  EXPECT_EQ(decode_output({0}, {0, 0}, frame), (std::vector<std::uint8_t>{0}));
  EXPECT_EQ(decode_output({1}, {0, 0}, frame), (std::vector<std::uint8_t>{1}));
  EXPECT_EQ(decode_output({0}, {0, 1}, frame), (std::vector<std::uint8_t>{1}));
  EXPECT_EQ(decode_output({0}, {1, 0}, frame), (std::vector<std::uint8_t>{0}));

  mbqc::PauliFrame empty{{3, 4}, {7}, {{}}, {{3}}, true};
  for (std::uint8_t a = 0; a < 2; ++a) {
    for (std::uint8_t b = 0; b < 2; ++b) EXPECT_EQ(decode_output({1}, {a, b}, empty), (std::vector<std::uint8_t>{1}));
  }
  EXPECT_THROW(decode_output({0, 1}, {0, 0}, frame), std::invalid_argument);
  EXPECT_THROW(decode_output({0}, {0}, frame), std::invalid_argument);
}

TEST(Equivalence, ZeroThetaIsIdentical) {
  const Pattern chain = two_node_chain(A(3), A(5));
  const auto b = blind_with(chain, zero_theta(chain));
  EXPECT_EQ(b.server_pattern(), chain);
  const auto r = verify_blinding_equivalence(chain, zero_theta(chain));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_probability_gap, 0.0);
}

TEST(Equivalence, ChainAllThetaPairs) {
  for (int phi1 = 0; phi1 < 8; phi1 += 3) {
    for (int phi2 = 0; phi2 < 8; phi2 += 5) {
      const Pattern chain = two_node_chain(A(phi1), A(phi2));
      for (int t1 = 0; t1 < 8; ++t1) {
        for (int t2 = 0; t2 < 8; ++t2) {
          const auto r = verify_blinding_equivalence(chain, {{0, A(t1)}, {1, A(t2)}});
          ASSERT_TRUE(r.passed) << phi1 << phi2 << t1 << t2;
          ASSERT_EQ(r.branches.size(), 4u);
        }
      }
    }
  }
}

TEST(Equivalence, ChainBranch00MatchesClosedForm) {
  std::mt19937_64 rng(4);
  for (int phi1 = 0; phi1 < 8; ++phi1) {
    for (int phi2 = 0; phi2 < 8; ++phi2) {
      const auto c = chain_branch00_coefficients(A(phi1), A(phi2));
      const double n = std::sqrt(std::norm(c[0]) + std::norm(c[1]));
      const std::array<Angle8, 2> theta{A(static_cast<int>(rng() % 8)), A(static_cast<int>(rng() % 8))};
      const auto rep = verify_r_cases(A(phi1), A(phi2), theta);
      const Eigen::Vector2cd got(rep.cases[0].residual[0], rep.cases[0].residual[1]);
      EXPECT_NEAR(fid(got, {c[0] / n, c[1] / n}), 1.0, 1e-9);
    }
  }
}

TEST(Equivalence, CompiledPatternsRandomTheta) {
  std::mt19937_64 rng(11);
  for (const auto& [circuit, p] : small_patterns(12, false, 5)) {
    ASSERT_TRUE(verify_blinding_equivalence(p, zero_theta(p)).passed);
    for (int i = 0; i < 100; ++i) {
      const auto r = verify_blinding_equivalence(p, random_theta(p, rng));
      ASSERT_TRUE(r.passed) << "min fidelity " << r.min_fidelity;
    }
  }
}

TEST(Decode, FrameDecodeReproducesReference) {
  int checked = 0;
  std::mt19937_64 rng(21);
  for (const auto& [circuit, p] : small_patterns(24, true, 8)) {
    const auto frame = mbqc::calibrate_frame(p);
    const int m = static_cast<int>(frame.measured_nodes.size());
    const int w = static_cast<int>(frame.output_nodes.size());

    Circuit ref = mbqc::from_zero_inputs(circuit);
    Circuit measured(ref.num_qubits(), ref.num_qubits());
    for (const auto& g : ref.instructions()) measured.push(g);
    for (int q = 0; q < ref.num_qubits(); ++q) measured.measure(q, q);
    const auto expected = qsim::outcome_distribution(measured);

    const auto blinded = lower_blinded(blind_with(p, random_theta(p, rng)));
    std::map<std::string, std::map<std::string, double>> by_branch;
    for (const auto& [bits, prob] : qsim::outcome_distribution(blinded)) {
      std::vector<std::uint8_t> branch(m), out(w);
      for (int i = 0; i < m; ++i) branch[i] = static_cast<std::uint8_t>(qsim::bit_at(bits, i));
      for (int j = 0; j < w; ++j) out[j] = static_cast<std::uint8_t>(qsim::bit_at(bits, m + j));
      by_branch[qsim::format_bits(branch)][qsim::format_bits(decode_output(out, branch, frame))] += prob;
    }
    EXPECT_EQ(by_branch.size(), std::size_t{1} << m);
    for (auto& [branch, dist] : by_branch) {
      double total = 0;
      for (const auto& [o, v] : dist) total += v;
      double tvd = 0;
      std::set<std::string> keys;
      for (const auto& [o, v] : dist) keys.insert(o);
      for (const auto& [o, v] : expected) keys.insert(o);
      for (const auto& k : keys) {
        const double a = dist.count(k) ? dist[k] / total : 0.0;
        const double e = expected.count(k) ? expected.at(k) : 0.0;
        tvd += std::abs(a - e) / 2;
      }
      EXPECT_LE(tvd, 1e-9) << branch;
    }
    ++checked;
  }
  EXPECT_EQ(checked, 24);
}

TEST(RCases, MatchesIndependentOracle) {
  for (int phi1 = 0; phi1 < 8; ++phi1) {
    for (int phi2 = 0; phi2 < 8; ++phi2) {
      const auto rep = verify_r_cases(A(phi1), A(phi2), {A(phi2), A(7 - phi1)});
      const Eigen::Vector2cd ref = chain_oracle(A(phi1), A(phi2));
      EXPECT_NEAR(fid(ref, rep.reference), 1.0, 1e-9);
      for (const auto& c : rep.cases) {
        const Eigen::Vector2cd want = chain_oracle(A(phi1) + (c.r1 ? Angle8::pi() : Angle8::zero()),
                                                   A(phi2) + (c.r2 ? Angle8::pi() : Angle8::zero()));
        const Eigen::Vector2cd flipped(want(1), want(0));
        EXPECT_NEAR(fid(want, c.residual), 1.0, 1e-9);
        EXPECT_EQ(c.exact, std::norm(ref.dot(want)) >= 1 - 1e-9);
        EXPECT_EQ(c.after_flip, std::norm(ref.dot(flipped)) >= 1 - 1e-9);
      }
    }
  }
}

TEST(RCases, Classification) {
  for (int phi1 = 0; phi1 < 8; ++phi1) {
    for (int phi2 = 0; phi2 < 8; ++phi2) {
      const auto rep = verify_r_cases(A(phi1), A(phi2), {A(5), A(2)});
      EXPECT_TRUE(rep.cases[0].exact);
      EXPECT_TRUE(rep.cases[1].after_flip);
      // r1 = 1 leaves a Z on the body qubit that an output flip can undo
      // only when phi1 is +-pi/2.
      const bool exception = phi1 == 2 || phi1 == 6;
      EXPECT_EQ(rep.cases[2].exact || rep.cases[2].after_flip, exception) << phi1 << phi2;
    }
  }
}

TEST(RCases, FlipSwapsCoefficients) {
  const auto rep = verify_r_cases(A(1), A(3));
  const auto c = chain_branch00_coefficients(A(1), A(3));
  const double n = std::sqrt(std::norm(c[0]) + std::norm(c[1]));
  const Eigen::Vector2cd swapped(c[1] / n, c[0] / n);
  EXPECT_NEAR(fid(swapped, rep.cases[1].residual), 1.0, 1e-9);
  EXPECT_EQ(rep.cases[1].classification(), "match after flip");
  EXPECT_EQ(rep.cases[0].classification(), "match, no flip");
  EXPECT_EQ(rep.cases[2].classification(), "no bitflip correction works");
}
