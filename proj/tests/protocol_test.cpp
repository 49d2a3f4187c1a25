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

#include <cmath>
#include <random>
#include <set>
#include <type_traits>

#include "bqc/mbqc/compile.hpp"
#include "bqc/protocol/audit.hpp"
#include "bqc/protocol/client.hpp"
#include "bqc/protocol/compose.hpp"
#include "bqc/protocol/demos.hpp"
#include "bqc/protocol/filter.hpp"
#include "bqc/qfactory/certify.hpp"

using namespace bqc;
using namespace bqc::protocol;
using qsim::Circuit;
using qsim::GateKind;

namespace {

Angle8 A(int k) { return Angle8::from_k(k); }

const Circuit& demo(const char* name) { return find_demo(name)->source; }

ClientOptions opts(std::uint64_t seed, FilterMode f = FilterMode::ExactSubstring,
                   BranchMode b = BranchMode::FrameDecode, bool swap = false, std::uint64_t shots = 0) {
  ClientOptions o;
  o.seed = seed;
  o.filter = f;
  o.branch = b;
  o.swap_reuse = swap;
  o.shots = shots;
  return o;
}

int count_kind(const Circuit& c, GateKind k) {
  int n = 0;
  for (const auto& g : c.instructions()) n += g.kind == k;
  return n;
}

// Instance with a theta the given alpha can reach.
std::pair<qfactory::RspInstance, Angle8> reachable_instance(int e, std::array<Angle8, 2> alpha) {
  const auto key = qfactory::TrapdoorKey::make(1, e);
  auto inst = qfactory::make_instance(key, alpha, qfactory::key_oblivious_layout(key, 0, 0));
  return {inst, qfactory::reachable_thetas(inst).front()};
}

// One-wire word as a |+>-convention circuit.
Circuit word(const std::vector<std::pair<GateKind, int>>& gates) {
  Circuit c(1, 0);
  for (auto [g, k] : gates) {
    if (g == GateKind::H) c.h(0);
    if (g == GateKind::X) c.x(0);
    if (g == GateKind::Z) c.z(0);
    if (g == GateKind::RZ) c.rz(0, A(k));
  }
  return c;
}

std::vector<std::pair<GateKind, int>> alphabet() {
  std::vector<std::pair<GateKind, int>> a{{GateKind::H, 0}, {GateKind::X, 0}, {GateKind::Z, 0}};
  for (int k = 0; k < 8; ++k) a.emplace_back(GateKind::RZ, k);
  return a;
}

}  // namespace

static_assert(!std::is_constructible_v<nlohmann::json, const ClientSecrets&>);
static_assert(!std::is_constructible_v<nlohmann::json, const NodeSecret&>);
static_assert(!std::is_constructible_v<nlohmann::json, const ubqc::BlindedPattern&>);
static_assert(!std::is_constructible_v<nlohmann::json, const qfactory::TrapdoorKey&>);
static_assert(!std::is_constructible_v<WireMessage, ClientSecrets>);

TEST(Compose, OneNodePatternShape) {
  Circuit src(1, 0);
  src.h(0);
  const auto p = mbqc::compile_circuit(src);
  ASSERT_EQ(p.measured_nodes().size(), 1u);
  auto [inst, theta] = reachable_instance(0, {A(1), A(2)});
  const auto b = ubqc::blind_with(p, {{0, theta}});
  const auto job = compose(b, {inst}, false, 10);
  EXPECT_EQ(job.circuit.num_qubits(), 6);
  EXPECT_EQ(job.circuit.num_clbits(), 6);
  EXPECT_EQ(job.clbits.rsp.size(), 1u);
  EXPECT_EQ(job.clbits.pattern, (std::vector<int>{4}));
  EXPECT_EQ(job.clbits.outputs, (std::vector<int>{5}));
  EXPECT_EQ(count_kind(job.circuit, GateKind::MEASURE), 6);
  EXPECT_EQ(job.shots, 10u);
}

TEST(Compose, ClbitPartitionIsDisjointAndTotal) {
  for (const auto& d : demos()) {
    for (bool swap : {false, true}) {
      const auto prep = prepare_job(d.source, opts(5, FilterMode::ExactSubstring, BranchMode::FrameDecode, swap));
      const auto& m = prep.job.clbits;
      std::multiset<int> all;
      for (const auto& r : m.rsp) all.insert(r.record.begin(), r.record.end());
      all.insert(m.pattern.begin(), m.pattern.end());
      all.insert(m.outputs.begin(), m.outputs.end());
      EXPECT_EQ(static_cast<int>(all.size()), m.width);
      EXPECT_EQ(std::set<int>(all.begin(), all.end()).size(), all.size());
      EXPECT_EQ(*all.begin(), 0);
      EXPECT_EQ(*all.rbegin(), m.width - 1);
      EXPECT_EQ(m.width, prep.job.circuit.num_clbits());
    }
  }
}

TEST(Compose, OnlyDeltaAndAlphaRotations) {
  for (const auto& d : demos()) {
    for (bool swap : {false, true}) {
      const auto prep = prepare_job(d.source, opts(9, FilterMode::ExactSubstring, BranchMode::FrameDecode, swap));
      const auto& c = prep.job.circuit;
      std::set<std::size_t> slots(prep.job.delta_ops.begin(), prep.job.delta_ops.end());
      slots.insert(prep.job.alpha_ops.begin(), prep.job.alpha_ops.end());
      for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_EQ(c.instructions()[i].kind == GateKind::RZ, slots.count(i) == 1) << d.name << " op " << i;
      }
      const auto measured = prep.secrets.blinded.pattern().measured_nodes();
      for (std::size_t k = 0; k < measured.size(); ++k) {
        EXPECT_EQ(c.instructions()[prep.job.delta_ops[k]].angle, prep.secrets.blinded.delta().at(measured[k]));
      }
      EXPECT_EQ(prep.job.alpha_ops.size(), 2 * measured.size());
    }
  }
}

TEST(Compose, OutputOnlyPatternHasNoGadget) {
  const auto p = mbqc::compile_circuit(Circuit(2, 0));
  ASSERT_TRUE(p.measured_nodes().empty());
  const auto job = compose(ubqc::blind_with(p, {}), {}, false, 4);
  EXPECT_EQ(job.circuit.num_qubits(), 2);
  EXPECT_EQ(job.circuit.num_clbits(), 2);
  EXPECT_EQ(count_kind(job.circuit, GateKind::H), 2);
  EXPECT_EQ(count_kind(job.circuit, GateKind::MEASURE), 2);
  EXPECT_EQ(job.circuit.size(), 4u);
}

TEST(Compose, BellFeedsOneGadgetIntoTwoWires) {
  const auto prep = prepare_job(demo("bell"), opts(2));
  const auto& p = prep.secrets.blinded.pattern();
  EXPECT_EQ(p.num_wires(), 2);
  EXPECT_EQ(prep.job.clbits.rsp.size(), p.measured_nodes().size());
  EXPECT_EQ(prep.job.circuit.num_qubits(), 5 * static_cast<int>(p.measured_nodes().size()) + 2);
  EXPECT_EQ(count_kind(prep.job.circuit, GateKind::CZ), static_cast<int>(p.edges().size()));
  EXPECT_EQ(count_kind(prep.job.circuit, GateKind::SWAP), 0);
}

TEST(Compose, SwapReuseSharesOneWorkspace) {
  const auto prep = prepare_job(demo("ghz"), opts(4, FilterMode::ExactSubstring, BranchMode::FrameDecode, true));
  const int n = static_cast<int>(prep.secrets.nodes.size());
  ASSERT_EQ(n, 2);
  EXPECT_EQ(prep.job.circuit.num_qubits(), 5 + n + 3);
  EXPECT_EQ(count_kind(prep.job.circuit, GateKind::SWAP), n);
  for (int k : prep.job.clbits.rsp[0].prior) EXPECT_EQ(k, -1);
  for (int k = 0; k < 4; ++k) EXPECT_GE(prep.job.clbits.rsp[1].prior[k], 0);
}

TEST(Compose, Rejections) {
  const auto p = mbqc::compile_circuit(demo("chain"));
  const auto b = ubqc::blind(p, 1);
  EXPECT_THROW(compose(b, {}, false, 1), std::invalid_argument);
  // alpha = (0, 0) reaches only 0 and 4.
  const auto key = qfactory::TrapdoorKey::make(1, 0);
  const auto zero_alpha = qfactory::make_instance(key, {A(0), A(0)});
  std::map<int, Angle8> theta;
  for (int id : p.measured_nodes()) theta[id] = A(1);
  EXPECT_THROW(compose(ubqc::blind_with(p, theta), {zero_alpha}, false, 1), std::invalid_argument);
  auto far = zero_alpha;
  far.layout = qfactory::standard_layout(5, 0);
  for (int id : p.measured_nodes()) theta[id] = A(0);
  EXPECT_THROW(compose(ubqc::blind_with(p, theta), {far}, false, 1), std::invalid_argument);
}

TEST(Client, PrepareIsDeterministic) {
  const auto a = prepare_job(demo("ghz"), opts(77));
  const auto b = prepare_job(demo("ghz"), opts(77));
  const auto c = prepare_job(demo("ghz"), opts(78));
  EXPECT_EQ(a.job.circuit, b.job.circuit);
  EXPECT_EQ(a.job_id, b.job_id);
  EXPECT_NE(a.job_id, c.job_id);
}

TEST(Client, TargetSubstringIsSmallestCertifying) {
  const auto prep = prepare_job(demo("ghz"), opts(12));
  for (const auto& n : prep.secrets.nodes) {
    const auto cert = qfactory::certify(n.rsp);
    ASSERT_TRUE(cert.passed);
    std::string best = "~";
    for (const auto& br : cert.branches) {
      if (br.theta && *br.theta == n.target_theta) best = std::min(best, br.outcome.substring());
    }
    EXPECT_EQ(n.target_substring.substring(), best);
  }
}

TEST(Filter, EmptyAndMalformedInput) {
  const auto prep = prepare_job(demo("bell"), opts(3));
  const auto r = filter({}, prep.secrets);
  EXPECT_EQ(r.total, 0u);
  EXPECT_EQ(r.accepted, 0u);
  EXPECT_EQ(r.rate, 0.0);
  EXPECT_TRUE(r.counts.empty());
  EXPECT_THROW(filter({{"0101", 3}}, prep.secrets), std::invalid_argument);

  auto no_frame = prep.secrets;
  no_frame.frame.reset();
  EXPECT_THROW(filter({}, no_frame), std::invalid_argument);
  no_frame.branch = BranchMode::ZeroBranch;
  EXPECT_NO_THROW(filter({}, no_frame));
}

TEST(Filter, ReportJsonShape) {
  FilterReport r{100, 7, 0.07, {{"00", 3}, {"11", 4}}};
  const auto j = report_to_json(r);
  EXPECT_EQ(j.dump(), R"({"accepted":7,"counts":{"00":3,"11":4},"rate":0.07,"total":100})");
  EXPECT_EQ(report_from_json(j), r);
}

TEST(Filter, ExactAcceptanceLaw) {
  for (const auto& d : demos()) {
    const auto prep = prepare_job(d.source, opts(6));
    const int n = static_cast<int>(prep.secrets.nodes.size());
    const auto r = client_run_exact(d.source, opts(6));
    EXPECT_NEAR(r.acceptance, std::pow(1.0 / 16, n), 1e-12) << d.name;

    // Theta matching accepts every branch certifying to the target.
    double theta_rate = 1;
    for (const auto& node : prep.secrets.nodes) {
      theta_rate *= qfactory::certify(node.rsp).theta_weight[node.target_theta.k()];
    }
    EXPECT_NEAR(client_run_exact(d.source, opts(6, FilterMode::ThetaMatch)).acceptance, theta_rate, 1e-12);
    EXPECT_GE(theta_rate, std::pow(1.0 / 16, n));

    // Zero-branch postselection additionally keeps 2^-m of the rest.
    const auto z = client_run_exact(d.source, opts(6, FilterMode::ExactSubstring, BranchMode::ZeroBranch));
    EXPECT_NEAR(z.acceptance, std::pow(1.0 / 16, n) * std::pow(0.5, n), 1e-12);
  }
}

TEST(Filter, SampledAcceptanceLaw) {
  Server server;
  InProcessTransport t(server);
  for (const char* name : {"bell", "ghz"}) {
    const auto o = opts(31, FilterMode::ExactSubstring, BranchMode::FrameDecode, false, 200000);
    const auto r = client_run(demo(name), o, t);
    const int n = static_cast<int>(prepare_job(demo(name), o).secrets.nodes.size());
    const double p = std::pow(1.0 / 16, n);
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(r.total));
    EXPECT_LE(std::abs(r.rate - p), 3 * sigma) << name;
  }
}

TEST(EndToEnd, ModesAgreeExactly) {
  for (const auto& d : demos()) {
    const auto ref = reference_distribution(d.source);
    for (bool swap : {false, true}) {
      for (auto f : {FilterMode::ExactSubstring, FilterMode::ThetaMatch}) {
        for (auto b : {BranchMode::ZeroBranch, BranchMode::FrameDecode}) {
          const auto r = client_run_exact(d.source, opts(8, f, b, swap));
          EXPECT_LE(total_variation(r.distribution, ref), 1e-9) << d.name;
        }
      }
    }
  }
}

TEST(EndToEnd, ShortWordsMatchDirectSimulation) {
  std::vector<std::vector<std::pair<GateKind, int>>> words{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<std::pair<GateKind, int>>> next;
    for (const auto& w : words) {
      if (static_cast<int>(w.size()) != len - 1) continue;
      for (const auto& g : alphabet()) {
        auto v = w;
        v.push_back(g);
        next.push_back(v);
      }
    }
    words.insert(words.end(), next.begin(), next.end());
  }
  ASSERT_EQ(words.size(), 1u + 11 + 121 + 1331);
  std::mt19937_64 rng(3);
  std::shuffle(words.begin() + 133, words.end(), rng);
  words.resize(133 + 12);

  int decoded = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Circuit c = word(words[i]);
    const auto ref = reference_distribution(c);
    const auto prep = prepare_job(c, opts(i + 1));
    const auto z = client_run_exact(c, opts(i + 1, FilterMode::ThetaMatch, BranchMode::ZeroBranch));
    EXPECT_LE(total_variation(z.distribution, ref), 1e-9) << "word " << i;
    if (prep.secrets.frame) {
      ++decoded;
      const auto f = client_run_exact(c, opts(i + 1, FilterMode::ThetaMatch, BranchMode::FrameDecode));
      EXPECT_LE(total_variation(f.distribution, ref), 1e-9) << "word " << i;
    }
  }
  EXPECT_GT(decoded, 100);
}

TEST(EndToEnd, SampledBellAndGhz) {
  Server server;
  InProcessTransport t(server);
  const std::map<std::string, std::set<std::string>> support{{"bell", {"00", "11"}}, {"ghz", {"000", "111"}}};
  for (const auto& [name, keys] : support) {
    const auto r = client_run(demo(name.c_str()), opts(5, FilterMode::ExactSubstring, BranchMode::FrameDecode, false,
                                                        name == "bell" ? 32000 : 512000),
                              t);
    ASSERT_GE(r.accepted, 1000u) << name;
    std::set<std::string> got;
    for (const auto& [k, v] : r.counts) got.insert(k);
    EXPECT_EQ(got, keys);
    const double sigma = std::sqrt(0.25 / static_cast<double>(r.accepted));
    for (const auto& [k, v] : r.counts) {
      EXPECT_LE(std::abs(static_cast<double>(v) / static_cast<double>(r.accepted) - 0.5), 3 * sigma) << name << k;
    }
    EXPECT_LE(total_variation(normalized(r.counts), reference_distribution(demo(name.c_str()))), kSampledTvdTolerance);
  }
}

TEST(EndToEnd, SwapReuseSampledMatches) {
  Server server;
  InProcessTransport t(server);
  const auto r = client_run(demo("ghz"), opts(5, FilterMode::ThetaMatch, BranchMode::FrameDecode, true, 40000), t);
  EXPECT_LE(total_variation(normalized(r.counts), reference_distribution(demo("ghz"))), kSampledTvdTolerance);
}

TEST(Client, ErrorsSurface) {
  Server tiny(ServerLimits{3});
  InProcessTransport t(tiny);
  EXPECT_THROW(client_run(demo("bell"), opts(1, FilterMode::ExactSubstring, BranchMode::FrameDecode, false, 64), t),
               ClientError);

  Server server;
  InProcessTransport ok(server);
  int zero = 0;
  for (std::uint64_t s = 1; s <= 8; ++s) {
    try {
      client_run(demo("bell"), opts(s, FilterMode::ExactSubstring, BranchMode::FrameDecode, false, 1), ok);
    } catch (const ClientError&) {
      ++zero;
    }
  }
  EXPECT_GT(zero, 0);
}

TEST(Client, TransportCarriesOnlyWireMessages) {
  Server server;
  InProcessTransport t(server);
  client_run(demo("ghz"), opts(2, FilterMode::ThetaMatch, BranchMode::FrameDecode, false, 4096), t);
  ASSERT_EQ(t.log().size(), 2u);
  EXPECT_TRUE(std::holds_alternative<SubmitMessage>(decode(t.log()[0])));
  EXPECT_TRUE(std::holds_alternative<ResultMessage>(decode(t.log()[1])));
  const auto j = nlohmann::json::parse(t.log()[0]);
  std::set<std::string> top;
  for (const auto& [k, v] : j.items()) top.insert(k);
  EXPECT_EQ(top, (std::set<std::string>{"circuit", "job_id", "kind", "shots"}));
  std::set<std::string> circuit_keys;
  for (const auto& [k, v] : j["circuit"].items()) circuit_keys.insert(k);
  EXPECT_EQ(circuit_keys, (std::set<std::string>{"n_clbits", "n_qubits", "ops"}));
}

TEST(Audit, TwoSeedsDifferOnlyInDeltaAndAlpha) {
  Server server;
  InProcessTransport t(server);
  std::vector<ClientSecrets> secrets;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto prep = prepare_job(demo("ghz"), opts(seed, FilterMode::ExactSubstring, BranchMode::FrameDecode, false, 1));
    t.exchange(submit_message(prep));
    secrets.push_back(prep.secrets);
  }
  const auto log = server.audit_log();
  const auto r = blindness_audit(log, secrets);
  EXPECT_TRUE(r.structure_identical);
  EXPECT_TRUE(r.angles_accounted);
  EXPECT_TRUE(r.no_secret_fields);
  EXPECT_EQ(r.delta_samples, 800u);
  EXPECT_GT(r.delta_p_value, 0.001);
  EXPECT_TRUE(r.passed) << (r.findings.empty() ? "" : r.findings.front());

  // The two-run form: structure holds, the sample is too small for the
  // uniformity clause.
  const auto pair = blindness_audit({log[0], log[1]}, {secrets[0], secrets[1]});
  EXPECT_TRUE(pair.structure_identical);
  EXPECT_FALSE(pair.delta_uniform);

  auto tampered = log;
  auto ops = tampered[1].circuit.instructions();
  Circuit c(tampered[1].circuit.num_qubits(), tampered[1].circuit.num_clbits());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i == 0) c.rz(ops[0].qubits[0], A(3));
    c.push(ops[i]);
  }
  tampered[1].circuit = c;
  EXPECT_FALSE(blindness_audit(tampered, secrets).passed);
}
