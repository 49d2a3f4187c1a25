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

#include "bqc/qfactory/trapdoor.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace bqc::qfactory {

std::string to_string(const Bits3& x) { return {char('0' + x[0]), char('0' + x[1]), char('0' + x[2])}; }
std::string to_string(const Bits2& y) { return {char('0' + y[0]), char('0' + y[1])}; }

TrapdoorKey TrapdoorKey::make(int d0, int e) {
  if (d0 != 1 || (e != 0 && e != 1)) {
    throw std::invalid_argument("trapdoor key needs d0 = 1 and e in {0,1}");
  }
  return TrapdoorKey(d0, e);
}

TrapdoorKey TrapdoorKey::unchecked(int d0, int e) {
  if ((d0 != 0 && d0 != 1) || (e != 0 && e != 1)) throw std::invalid_argument("trapdoor bits must be 0 or 1");
  return TrapdoorKey(d0, e);
}

PublicMatrices public_matrices(const TrapdoorKey& key) {
  // 1-based entries A[e+1,e+1], A[2-e,3], B[3,3], B[2-e,2-e] = d0.
  const int e = key.e();
  PublicMatrices m;
  m.A(e, e) = 1;
  m.A(1 - e, 2) = 1;
  m.B(2, 2) = 1;
  m.B(1 - e, 1 - e) = static_cast<std::uint8_t>(key.d0());
  return m;
}

std::pair<TrapdoorKey, PublicMatrices> keygen(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bit(0.5);
  for (;;) {
    const int d0 = bit(rng);
    const int e = bit(rng);
    if (d0 == 0) continue;
    auto key = TrapdoorKey::make(d0, e);
    return {key, public_matrices(key)};
  }
}

Bits2 eval_f(const PublicMatrices& pub, const Bits3& x) {
  Bits2 y{0, 0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const std::uint8_t term = x[i] & x[j];
      if (pub.A(i, j)) y[0] ^= term;
      if (pub.B(i, j)) y[1] ^= term;
    }
  }
  return y;
}

Claw invert(const TrapdoorKey& key, const Bits2& y) {
  const int e = key.e();
  const auto d0 = static_cast<std::uint8_t>(key.d0());
  Claw c;
  c.x[1 - e] = 0;
  c.x[e] = y[0];
  c.x[2] = y[1];
  c.x_prime[1 - e] = 1;
  c.x_prime[e] = y[0] ^ y[1] ^ d0;
  c.x_prime[2] = y[1] ^ d0;
  if (c.x[2] == c.x_prime[2]) {
    throw std::runtime_error("state preparation failed, use a different trapdoor");
  }
  return c;
}

qsim::Circuit build_oracle(const PublicMatrices& pub) {
  // (target, controls) with controls sorted; a diagonal entry is a CX.
  std::vector<std::tuple<int, int, int>> gates;
  for (int t = 0; t < 2; ++t) {
    const BitMatrix3& m = t == 0 ? pub.A : pub.B;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (m(i, j)) gates.emplace_back(3 + t, std::min(i, j), std::max(i, j));
      }
    }
  }
  std::sort(gates.begin(), gates.end());
  qsim::Circuit c(5, 0);
  for (auto [t, a, b] : gates) {
    if (a == b) {
      c.cx(a, t);
    } else {
      c.ccx(a, b, t);
    }
  }
  return c;
}

nlohmann::json public_to_json(const PublicMatrices& pub) {
  auto rows = [](const BitMatrix3& m) {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) j.push_back({int(m(i, 0)), int(m(i, 1)), int(m(i, 2))});
    return j;
  };
  return {{"A", rows(pub.A)}, {"B", rows(pub.B)}};
}

PublicMatrices public_from_json(const nlohmann::json& j) {
  auto read = [](const nlohmann::json& rows) {
    BitMatrix3 m;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        const int v = rows.at(i).at(k).get<int>();
        if (v != 0 && v != 1) throw std::invalid_argument("matrix entries must be bits");
        m(i, k) = static_cast<std::uint8_t>(v);
      }
    }
    return m;
  };
  try {
    return {read(j.at("A")), read(j.at("B"))};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("public matrices: ") + e.what());
  }
}

void save_key_file(const std::filesystem::path& path, const TrapdoorKey& key) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write key file " + path.string());
  out << nlohmann::json{{"d0", key.d0()}, {"e", key.e()}}.dump() << "\n";
}

TrapdoorKey load_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read key file " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    return TrapdoorKey::make(j.at("d0").get<int>(), j.at("e").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("key file: ") + e.what());
  }
}

}  // namespace bqc::qfactory
