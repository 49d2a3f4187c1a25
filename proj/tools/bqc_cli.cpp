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

// Command-line front end for the blind delegation stack.
//
// Exit codes: 0 pass, 1 tolerance or certification failure, 2 usage or
// transport error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>

#include "bqc/protocol/client.hpp"
#include "bqc/protocol/demos.hpp"
#include "bqc/protocol/server.hpp"
#include "bqc/protocol/transport.hpp"
#include "bqc/qfactory/certify.hpp"
#include "bqc/qfactory/trapdoor.hpp"

using namespace bqc;
using namespace bqc::protocol;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::string demo;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::string filter = "exact";
  std::string branch = "decode";
  std::string listen;
  std::string connect;
  std::string out;
  bool swap_reuse = false;
  bool exact = false;
  bool test_d0_zero = false;
};

ClientOptions client_options(const RunConfig& cfg) {
  ClientOptions o;
  o.shots = cfg.shots;
  o.seed = cfg.seed;
  o.filter = cfg.filter == "theta" ? FilterMode::ThetaMatch : FilterMode::ExactSubstring;
  o.branch = cfg.branch == "zero" ? BranchMode::ZeroBranch : BranchMode::FrameDecode;
  o.swap_reuse = cfg.swap_reuse;
  return o;
}

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << "\n";
}

json distribution_json(const qsim::Distribution& d) {
  json j = json::object();
  for (const auto& [k, v] : d) j[k] = v;
  return j;
}

void print_table(const qsim::Distribution& reference, const qsim::Distribution& observed) {
  std::set<std::string> keys;
  for (const auto& [k, v] : reference) keys.insert(k);
  for (const auto& [k, v] : observed) keys.insert(k);
  std::printf("  %-10s %10s %10s\n", "outcome", "direct", "blinded");
  for (const auto& k : keys) {
    auto get = [&](const qsim::Distribution& d) { auto it = d.find(k); return it == d.end() ? 0.0 : it->second; };
    std::printf("  %-10s %10.5f %10.5f\n", k.c_str(), get(reference), get(observed));
  }
}

int cmd_demo(const RunConfig& cfg, bool over_tcp) {
  const Demo* demo = find_demo(cfg.demo);
  const auto reference = reference_distribution(demo->source);
  const ClientOptions opts = client_options(cfg);
  json out{{"demo", demo->name},     {"seed", cfg.seed},       {"filter", cfg.filter},
           {"branch", cfg.branch},   {"swap_reuse", cfg.swap_reuse}, {"reference", distribution_json(reference)}};
  std::printf("%s: %s\n", demo->name.c_str(), demo->summary.c_str());

  double tvd = 0;
  double tolerance = kSampledTvdTolerance;
  if (cfg.exact) {
    tolerance = kExactTvdTolerance;
    const auto r = client_run_exact(demo->source, opts);
    tvd = total_variation(r.distribution, reference);
    print_table(reference, r.distribution);
    std::printf("  acceptance probability %.6g (exact enumeration)\n", r.acceptance);
    out["mode"] = "exact";
    out["acceptance"] = r.acceptance;
    out["distribution"] = distribution_json(r.distribution);
  } else {
    Server server;
    std::unique_ptr<Transport> transport;
    if (over_tcp) {
      transport = std::make_unique<TcpTransport>(cfg.connect);
    } else {
      transport = std::make_unique<InProcessTransport>(server);
    }
    const FilterReport r = client_run(demo->source, opts, *transport);
    const auto observed = normalized(r.counts);
    tvd = total_variation(observed, reference);
    print_table(reference, observed);
    std::printf("  accepted %llu of %llu shots (rate %.6g)\n", static_cast<unsigned long long>(r.accepted),
                static_cast<unsigned long long>(r.total), r.rate);
    out["mode"] = "sampled";
    out["report"] = report_to_json(r);
  }
  const bool passed = tvd <= tolerance;
  std::printf("  TVD %.3g (tolerance %g): %s\n", tvd, tolerance, passed ? "PASS" : "FAIL");
  out["tvd"] = tvd;
  out["passed"] = passed;
  write_json(cfg.out, out);
  return passed ? kPass : kFail;
}

int cmd_certify(const RunConfig& cfg) {
  std::vector<qfactory::TrapdoorKey> keys;
  if (cfg.test_d0_zero) {
    keys = {qfactory::TrapdoorKey::unchecked(0, 0), qfactory::TrapdoorKey::unchecked(0, 1)};
  } else {
    keys = {qfactory::TrapdoorKey::make(1, 0), qfactory::TrapdoorKey::make(1, 1)};
  }
  json instances = json::array();
  bool all = true;
  int failed = 0;
  for (const auto& key : keys) {
    for (int a = 0; a < 64; ++a) {
      const std::array<Angle8, 2> alpha{Angle8::from_k(a >> 3), Angle8::from_k(a & 7)};
      const auto report = qfactory::certify(qfactory::make_instance(key, alpha));
      all = all && report.passed;
      failed += report.passed ? 0 : 1;
      instances.push_back(qfactory::report_to_json(report));
    }
  }
  std::printf("certified %zu instances%s: %d failed\n", instances.size(),
              cfg.test_d0_zero ? " with forced d0 = 0 keys" : "", failed);
  std::printf("%s\n", all ? "PASS" : "FAIL");
  write_json(cfg.out, {{"instances", instances}, {"passed", all}});
  return all ? kPass : kFail;
}

int cmd_serve(const RunConfig& cfg) {
  const auto [host, port] = parse_address(cfg.listen);
  Server server;
  TcpServer tcp(server, host, port);
  std::printf("listening on %s:%u\n", host.c_str(), tcp.port());
  std::fflush(stdout);
  tcp.run();
  return kPass;
}

int cmd_keygen(const RunConfig& cfg) {
  const auto [key, pub] = qfactory::keygen(cfg.seed);
  std::printf("%s\n", qfactory::public_to_json(pub).dump().c_str());
  if (!cfg.out.empty()) {
    qfactory::save_key_file(cfg.out, key);
    std::printf("trapdoor written to %s\n", cfg.out.c_str());
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind delegated quantum computation on a desk-scale simulator"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::vector<std::string> names;
  for (const auto& d : demos()) names.push_back(d.name);

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("name", cfg.demo, "demo circuit")->required()->check(CLI::IsMember(names));
    sub->add_option("--shots", cfg.shots, "shot count (default 4^(4n))")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "client seed");
    sub->add_option("--filter", cfg.filter, "exact | theta")->check(CLI::IsMember({"exact", "theta"}));
    sub->add_option("--branch", cfg.branch, "zero | decode")->check(CLI::IsMember({"zero", "decode"}));
    sub->add_option("--out", cfg.out, "JSON report path");
    sub->add_flag("--swap-reuse", cfg.swap_reuse, "recycle gadget ancillas through SWAP");
  };

  auto* demo = app.add_subcommand("demo", "run a demo blinded and directly, and compare");
  add_run_flags(demo);
  demo->add_flag("--exact", cfg.exact, "exact enumeration instead of sampling");
  demo->add_option("--connect", cfg.connect, "server address host:port (default in-process)");

  auto* submit = app.add_subcommand("submit", "run a demo against a remote server");
  add_run_flags(submit);
  submit->add_option("--connect", cfg.connect, "server address host:port")->required();

  auto* certify = app.add_subcommand("certify", "certify every RSP instance of the key x alpha grid");
  certify->add_option("--out", cfg.out, "JSON report path");
  certify->add_flag("--test-d0-zero", cfg.test_d0_zero, "use the invalid d0 = 0 keys");

  auto* serve = app.add_subcommand("serve", "execute submitted circuits");
  serve->add_option("--listen", cfg.listen, "host:port")->required();

  auto* keygen = app.add_subcommand("keygen", "draw a trapdoor key");
  keygen->add_option("--seed", cfg.seed, "seed");
  keygen->add_option("--out", cfg.out, "client-side key file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*demo) return cmd_demo(cfg, !cfg.connect.empty());
    if (*submit) return cmd_demo(cfg, true);
    if (*certify) return cmd_certify(cfg);
    if (*serve) return cmd_serve(cfg);
    if (*keygen) return cmd_keygen(cfg);
  } catch (const TransportError& e) {
    std::fprintf(stderr, "transport error: %s\n", e.what());
    return kUsage;
  } catch (const ClientError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kFail;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  }
  return kUsage;
}
