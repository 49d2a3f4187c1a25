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

#include "bqc/protocol/transport.hpp"

#include <boost/asio.hpp>

namespace bqc::protocol {

namespace asio = boost::asio;
using tcp = asio::ip::tcp;

WireMessage Transport::exchange(const WireMessage& request) {
  const std::string line = encode(request);
  log_.push_back(line);
  std::string reply = round_trip(line);
  log_.push_back(reply);
  try {
    return decode(reply);
  } catch (const WireError& e) {
    throw TransportError(std::string("unreadable reply: ") + e.what());
  }
}

struct TcpTransport::Impl {
  asio::io_context io;
  tcp::socket socket{io};
  asio::streambuf buf;
};

TcpTransport::TcpTransport(const std::string& address) : impl_(std::make_unique<Impl>()) {
  std::pair<std::string, std::uint16_t> hp;
  try {
    hp = parse_address(address);
  } catch (const std::invalid_argument& e) {
    throw TransportError(e.what());
  }
  boost::system::error_code ec;
  tcp::resolver resolver(impl_->io);
  const auto endpoints = resolver.resolve(hp.first, std::to_string(hp.second), ec);
  if (!ec) asio::connect(impl_->socket, endpoints, ec);
  if (ec) throw TransportError("cannot connect to " + address + ": " + ec.message());
}

TcpTransport::~TcpTransport() {
  boost::system::error_code ec;
  impl_->socket.shutdown(tcp::socket::shutdown_both, ec);
}

std::string TcpTransport::round_trip(const std::string& line) {
  boost::system::error_code ec;
  asio::write(impl_->socket, asio::buffer(line), ec);
  if (ec) throw TransportError("send failed: " + ec.message());
  const std::size_t n = asio::read_until(impl_->socket, impl_->buf, '\n', ec);
  if (ec) throw TransportError("receive failed: " + ec.message());
  std::string reply(asio::buffers_begin(impl_->buf.data()),
                    asio::buffers_begin(impl_->buf.data()) + static_cast<std::ptrdiff_t>(n));
  impl_->buf.consume(n);
  return reply;
}

}  // namespace bqc::protocol
