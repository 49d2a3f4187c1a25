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

#include <boost/asio.hpp>
#include <json.hpp>
#include <thread>

#include "bqc/protocol/client.hpp"
#include "bqc/protocol/demos.hpp"
#include "bqc/protocol/server.hpp"
#include "bqc/protocol/transport.hpp"
#include "bqc/protocol/wire.hpp"

using namespace bqc;
using namespace bqc::protocol;
using nlohmann::json;
namespace asio = boost::asio;
using asio::ip::tcp;

namespace {

qsim::Circuit every_gate() {
  qsim::Circuit c(3, 3);
  c.h(0).x(1).z(2).rz(0, Angle8::from_k(5)).cz(0, 1).cx(1, 2).ccx(0, 1, 2).swap(0, 2);
  c.measure(0, 2).measure(1, 0).measure(2, 1);
  return c;
}

std::vector<WireMessage> corpus() {
  return {
      SubmitMessage{"0123456789abcdef", every_gate(), 1000},
      SubmitMessage{"", qsim::Circuit(0, 0), 1},
      ResultMessage{"job", {{"000", 12}, {"101", 0}, {"111", 18446744073709551615ull}}},
      ResultMessage{"empty", {}},
      ErrorMessage{"job", "quote \" backslash \\ newline \n tab \t unicode \xc3\xa9"},
      ErrorMessage{"", ""},
  };
}

std::string submit_line(std::uint64_t shots, const qsim::Circuit& c = every_gate()) {
  return encode(SubmitMessage{"j", c, shots});
}

// Line-oriented raw socket for poking the server with arbitrary bytes.
class RawClient {
 public:
  explicit RawClient(std::uint16_t port) : socket_(io_) {
    socket_.connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), port));
  }
  std::string ask(const std::string& line) {
    asio::write(socket_, asio::buffer(line));
    asio::read_until(socket_, buf_, '\n');
    std::istream is(&buf_);
    std::string reply;
    std::getline(is, reply);
    return reply + "\n";
  }

 private:
  asio::io_context io_;
  tcp::socket socket_;
  asio::streambuf buf_;
};

struct Loopback {
  Server server;
  TcpServer tcp{server, "127.0.0.1", 0};
  std::thread thread{[this] { tcp.run(); }};
  ~Loopback() {
    tcp.stop();
    thread.join();
  }
  std::string address() const { return "127.0.0.1:" + std::to_string(tcp.port()); }
};

}  // namespace

TEST(Codec, RoundTripIsByteExact) {
  for (const auto& m : corpus()) {
    const std::string line = encode(m);
    ASSERT_EQ(line.back(), '\n');
    EXPECT_EQ(std::count(line.begin(), line.end(), '\n'), 1);
    const WireMessage back = decode(line);
    EXPECT_EQ(back, m);
    EXPECT_EQ(encode(back), line);
  }
}

TEST(Codec, KeysAreSorted) {
  const std::string line = encode(corpus()[0]);
  EXPECT_LT(line.find("\"circuit\""), line.find("\"job_id\""));
  EXPECT_LT(line.find("\"job_id\""), line.find("\"kind\""));
  EXPECT_LT(line.find("\"kind\""), line.find("\"shots\""));
}

TEST(Codec, RejectsMalformed) {
  const json good = json::parse(submit_line(4));
  auto with = [&](const char* key, json value) {
    json j = good;
    j[key] = std::move(value);
    return j.dump();
  };
  auto without = [&](const char* key) {
    json j = good;
    j.erase(key);
    return j.dump();
  };
  const std::vector<std::string> bad{
      "",
      "{",
      "[]",
      "42",
      "{\"kind\":7}",
      "{\"kind\":\"launch\",\"job_id\":\"x\"}",
      "{\"kind\":\"error\",\"job_id\":\"x\"}",
      "{\"kind\":\"result\",\"job_id\":\"x\",\"counts\":{\"0\":-1}}",
      "{\"kind\":\"result\",\"job_id\":\"x\",\"counts\":{\"0\":1.5}}",
      with("shots", -3),
      with("shots", 2.5),
      with("shots", "10"),
      with("job_id", 3),
      with("theta", 1),
      without("circuit"),
      with("circuit", json{{"n_qubits", 1}, {"n_clbits", 0}, {"ops", {{{"g", "t"}, {"q", {0}}}}}}),
      with("circuit", json{{"n_qubits", 1}, {"n_clbits", 0}, {"ops", {{{"g", "h"}, {"q", {3}}}}}}),
      good.dump() + "\n" + good.dump(),
  };
  for (const auto& line : bad) EXPECT_THROW(decode(line), WireError) << line;
}

TEST(ServerHandler, ErrorsNeverThrow) {
  Server server;
  for (const std::string line : {"garbage", "{}", "{\"kind\":\"nope\"}"}) {
    const auto reply = decode(server.handle_line(line));
    EXPECT_TRUE(std::holds_alternative<ErrorMessage>(reply)) << line;
  }
  EXPECT_TRUE(server.audit_log().empty());
}

TEST(ServerHandler, RejectsNonSubmitAndLimits) {
  ServerLimits limits;
  limits.max_qubits = 2;
  limits.max_shots = 100;
  limits.max_line_bytes = 4096;
  Server server(limits);
  auto error_of = [&](const std::string& line) {
    const auto reply = decode(server.handle_line(line));
    return std::holds_alternative<ErrorMessage>(reply);
  };
  EXPECT_TRUE(error_of(encode(ResultMessage{"j", {}})));
  EXPECT_TRUE(error_of(encode(ErrorMessage{"j", "hello"})));
  EXPECT_TRUE(error_of(submit_line(10)));  // three qubits
  qsim::Circuit small(1, 1);
  small.h(0).measure(0, 0);
  EXPECT_TRUE(error_of(submit_line(0, small)));
  EXPECT_TRUE(error_of(submit_line(101, small)));
  EXPECT_TRUE(error_of(std::string(5000, ' ')));
  EXPECT_TRUE(server.audit_log().empty());

  const auto ok = decode(server.handle_line(submit_line(100, small)));
  const auto& result = std::get<ResultMessage>(ok);
  EXPECT_EQ(result.job_id, "j");
  std::uint64_t total = 0;
  for (const auto& [bits, n] : result.counts) total += n;
  EXPECT_EQ(total, 100u);
  EXPECT_EQ(server.audit_log().size(), 1u);
}

TEST(ServerHandler, SeedFollowsJobId) {
  EXPECT_EQ(job_seed(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(job_seed("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_NE(job_seed("ab"), job_seed("ba"));
  Server a, b;
  qsim::Circuit c(2, 2);
  c.h(0).h(1).measure(0, 0).measure(1, 1);
  EXPECT_EQ(a.handle_line(submit_line(500, c)), b.handle_line(submit_line(500, c)));
}

TEST(Address, Parse) {
  EXPECT_EQ(parse_address("127.0.0.1:8080"), (std::pair<std::string, std::uint16_t>{"127.0.0.1", 8080}));
  EXPECT_EQ(parse_address("::1:9").first, "::1");
  for (const char* bad : {"", "host", ":80", "h:", "h:x", "h:65536", "h:80x", "h:-1"}) {
    EXPECT_THROW(parse_address(bad), std::invalid_argument) << bad;
  }
}

TEST(Tcp, MalformedLineLeavesConnectionUsable) {
  Loopback lb;
  RawClient raw(lb.tcp.port());
  const auto first = decode(raw.ask("this is not json\n"));
  EXPECT_TRUE(std::holds_alternative<ErrorMessage>(first));
  qsim::Circuit c(1, 1);
  c.x(0).measure(0, 0);
  const auto second = decode(raw.ask(submit_line(7, c)));
  EXPECT_EQ(std::get<ResultMessage>(second).counts, (qsim::Counts{{"1", 7}}));
}

TEST(Tcp, ConcurrentClients) {
  Loopback lb;
  const auto& source = find_demo("bell")->source;
  std::vector<FilterReport> reports(4);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&, i] {
      TcpTransport t(lb.address());
      ClientOptions o;
      o.seed = 100 + i;
      o.shots = 4000;
      reports[i] = client_run(source, o, t);
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(lb.server.audit_log().size(), 4u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.total, 4000u);
    EXPECT_GT(r.accepted, 0u);
  }
}

TEST(Tcp, LoopbackMatchesInProcess) {
  Loopback lb;
  for (const char* name : {"bell", "chain"}) {
    ClientOptions o;
    o.seed = 31;
    o.shots = 20000;
    Server local;
    InProcessTransport in(local);
    TcpTransport net(lb.address());
    const auto a = client_run(find_demo(name)->source, o, in);
    const auto b = client_run(find_demo(name)->source, o, net);
    EXPECT_EQ(report_to_json(a), report_to_json(b)) << name;
    EXPECT_EQ(in.log(), net.log()) << name;
  }
}

TEST(Tcp, ClosedPortRaisesTransportError) {
  std::uint16_t port = 0;
  {
    Server s;
    TcpServer closed(s, "127.0.0.1", 0);
    port = closed.port();
  }
  EXPECT_THROW(TcpTransport("127.0.0.1:" + std::to_string(port)), TransportError);
  EXPECT_THROW(TcpTransport("not-an-address"), TransportError);
}
