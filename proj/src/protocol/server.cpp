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

#include "bqc/protocol/server.hpp"

#include <boost/asio.hpp>
#include <charconv>
#include <list>

#include "bqc/qsim/simulate.hpp"

namespace bqc::protocol {

namespace asio = boost::asio;
using tcp = asio::ip::tcp;

std::uint64_t job_seed(std::string_view job_id) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : job_id) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string Server::handle_line(std::string_view line) {
  if (line.size() > limits_.max_line_bytes) return encode(ErrorMessage{"", "message too large"});
  WireMessage m;
  try {
    m = decode(line);
  } catch (const WireError& e) {
    return encode(ErrorMessage{"", e.what()});
  }
  auto* submit = std::get_if<SubmitMessage>(&m);
  if (!submit) return encode(ErrorMessage{"", "server accepts submit messages only"});

  const auto& c = submit->circuit;
  if (c.num_qubits() > limits_.max_qubits || c.size() > limits_.max_instructions) {
    return encode(ErrorMessage{submit->job_id, "circuit exceeds server limits"});
  }
  if (submit->shots == 0 || submit->shots > limits_.max_shots) {
    return encode(ErrorMessage{submit->job_id, "shot count out of range"});
  }
  {
    std::lock_guard lock(mu_);
    log_.push_back(*submit);
  }
  try {
    return encode(ResultMessage{submit->job_id, qsim::run_shots(c, submit->shots, job_seed(submit->job_id))});
  } catch (const std::exception& e) {
    return encode(ErrorMessage{submit->job_id, e.what()});
  }
}

std::vector<SubmitMessage> Server::audit_log() const {
  std::lock_guard lock(mu_);
  return log_;
}

std::pair<std::string, std::uint16_t> parse_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0) throw std::invalid_argument("address must be host:port");
  unsigned port = 0;
  const char* first = address.data() + colon + 1;
  const char* last = address.data() + address.size();
  auto [ptr, ec] = std::from_chars(first, last, port);
  if (ec != std::errc() || ptr != last || first == last || port > 65535) {
    throw std::invalid_argument("bad port in address " + address);
  }
  return {address.substr(0, colon), static_cast<std::uint16_t>(port)};
}

struct TcpServer::Impl {
  Server& server;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::atomic<bool> stopping{false};
  std::mutex mu;
  std::list<std::shared_ptr<tcp::socket>> live;
  std::vector<std::thread> workers;

  explicit Impl(Server& s) : server(s) {}

  void serve(std::shared_ptr<tcp::socket> sock) {
    asio::streambuf buf(server.limits().max_line_bytes + 1);
    boost::system::error_code ec;
    for (;;) {
      const std::size_t n = asio::read_until(*sock, buf, '\n', ec);
      if (ec == asio::error::not_found) {
        asio::write(*sock, asio::buffer(encode(ErrorMessage{"", "message too large"})), ec);
        break;
      }
      if (ec) break;
      std::string line(asio::buffers_begin(buf.data()), asio::buffers_begin(buf.data()) + static_cast<std::ptrdiff_t>(n));
      buf.consume(n);
      const std::string reply = server.handle_line(line);
      asio::write(*sock, asio::buffer(reply), ec);
      if (ec) break;
    }
    sock->shutdown(tcp::socket::shutdown_both, ec);
    std::lock_guard lock(mu);
    live.remove(sock);
  }
};

TcpServer::TcpServer(Server& server, const std::string& host, std::uint16_t port) : impl_(std::make_unique<Impl>(server)) {
  const tcp::endpoint ep(asio::ip::make_address(host), port);
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(tcp::acceptor::reuse_address(true));
  impl_->acceptor.bind(ep);
  impl_->acceptor.listen();
}

TcpServer::~TcpServer() {
  stop();
  for (auto& t : impl_->workers) {
    if (t.joinable()) t.join();
  }
}

std::uint16_t TcpServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void TcpServer::run() {
  while (!impl_->stopping) {
    auto sock = std::make_shared<tcp::socket>(impl_->io);
    boost::system::error_code ec;
    impl_->acceptor.accept(*sock, ec);
    if (impl_->stopping) break;
    if (ec) continue;
    std::lock_guard lock(impl_->mu);
    impl_->live.push_back(sock);
    impl_->workers.emplace_back([this, sock] { impl_->serve(sock); });
  }
  for (auto& t : impl_->workers) {
    if (t.joinable()) t.join();
  }
  impl_->workers.clear();
}

void TcpServer::stop() {
  if (impl_->stopping.exchange(true)) return;
  boost::system::error_code ec;
  {
    std::lock_guard lock(impl_->mu);
    for (auto& s : impl_->live) s->shutdown(tcp::socket::shutdown_both, ec);
  }
  // Wake a blocking accept().
  auto ep = impl_->acceptor.local_endpoint(ec);
  if (!ec) {
    tcp::socket wake(impl_->io);
    const auto addr = ep.address().is_unspecified() ? asio::ip::address(asio::ip::address_v4::loopback()) : ep.address();
    wake.connect(tcp::endpoint(addr, ep.port()), ec);
  }
}

}  // namespace bqc::protocol
