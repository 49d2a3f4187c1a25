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

#include "bqc/protocol/filter.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace bqc::protocol {

const char* filter_mode_name(FilterMode m) { return m == FilterMode::ExactSubstring ? "exact" : "theta"; }
const char* branch_mode_name(BranchMode m) { return m == BranchMode::ZeroBranch ? "zero" : "decode"; }

nlohmann::json report_to_json(const FilterReport& r) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [bits, n] : r.counts) counts[bits] = n;
  return {{"total", r.total}, {"accepted", r.accepted}, {"rate", r.rate}, {"counts", counts}};
}

FilterReport report_from_json(const nlohmann::json& j) {
  FilterReport r;
  r.total = j.at("total").get<std::uint64_t>();
  r.accepted = j.at("accepted").get<std::uint64_t>();
  r.rate = j.at("rate").get<double>();
  for (const auto& [bits, n] : j.at("counts").items()) r.counts[bits] = n.get<std::uint64_t>();
  return r;
}

namespace {

int outcome_index(const qfactory::RspOutcome& o) { return o.y[0] << 3 | o.y[1] << 2 | o.b[0] << 1 | o.b[1]; }

// Per-shot accept-and-decode, shared by sampled and exact filtering.
class Filter {
 public:
  explicit Filter(const ClientSecrets& s) : s_(s) {
    if (s.nodes.size() != s.clbits.rsp.size() || s.clbits.pattern.size() != s.blinded.pattern().measured_nodes().size()) {
      throw std::invalid_argument("secrets do not match the clbit map");
    }
    if (s.branch == BranchMode::FrameDecode && !s.frame) {
      throw std::invalid_argument("frame decoding needs a calibrated frame");
    }
    for (const auto& n : s.nodes) tables_.push_back(acceptance_table(n, s.filter));
  }

  /// The decoded output string, or nullopt if the shot is rejected.
  std::optional<std::string> apply(const std::string& shot) const {
    if (static_cast<int>(shot.size()) != s_.clbits.width) throw std::invalid_argument("shot width does not match the job");
    for (std::size_t i = 0; i < tables_.size(); ++i) {
      if (!tables_[i][outcome_index(read_rsp(s_.clbits.rsp[i], shot))]) return std::nullopt;
    }
    std::vector<std::uint8_t> branch, out;
    for (int c : s_.clbits.pattern) branch.push_back(static_cast<std::uint8_t>(qsim::bit_at(shot, c)));
    for (int c : s_.clbits.outputs) out.push_back(static_cast<std::uint8_t>(qsim::bit_at(shot, c)));
    if (s_.branch == BranchMode::ZeroBranch) {
      for (auto b : branch) {
        if (b) return std::nullopt;
      }
    } else {
      out = ubqc::decode_output(out, branch, *s_.frame);
    }
    return qsim::format_bits(out);
  }

 private:
  const ClientSecrets& s_;
  std::vector<std::array<bool, 16>> tables_;
};

}  // namespace

std::array<bool, 16> acceptance_table(const NodeSecret& node, FilterMode mode) {
  std::array<bool, 16> t{};
  if (mode == FilterMode::ExactSubstring) {
    t[outcome_index(node.target_substring)] = true;
    return t;
  }
  for (const auto& o : qfactory::outcomes_for_theta(node.rsp, node.target_theta)) t[outcome_index(o)] = true;
  return t;
}

FilterReport filter(const qsim::Counts& shots, const ClientSecrets& secrets) {
  const Filter f(secrets);
  FilterReport r;
  for (const auto& [shot, n] : shots) {
    r.total += n;
    if (auto out = f.apply(shot)) {
      r.accepted += n;
      r.counts[*out] += n;
    }
  }
  r.rate = r.total ? static_cast<double>(r.accepted) / static_cast<double>(r.total) : 0.0;
  return r;
}

ExactFilterResult filter_exact(const qsim::Distribution& outcomes, const ClientSecrets& secrets) {
  const Filter f(secrets);
  ExactFilterResult r;
  for (const auto& [shot, p] : outcomes) {
    if (auto out = f.apply(shot)) {
      r.acceptance += p;
      r.distribution[*out] += p;
    }
  }
  if (r.acceptance > 0) {
    for (auto& [k, v] : r.distribution) v /= r.acceptance;
  }
  return r;
}

double total_variation(const qsim::Distribution& a, const qsim::Distribution& b) {
  std::set<std::string> keys;
  for (const auto& [k, v] : a) keys.insert(k);
  for (const auto& [k, v] : b) keys.insert(k);
  double tvd = 0;
  for (const auto& k : keys) {
    const auto ia = a.find(k);
    const auto ib = b.find(k);
    tvd += std::abs((ia == a.end() ? 0.0 : ia->second) - (ib == b.end() ? 0.0 : ib->second));
  }
  return tvd / 2;
}

qsim::Distribution normalized(const std::map<std::string, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (const auto& [k, n] : counts) total += n;
  qsim::Distribution d;
  if (total == 0) return d;
  for (const auto& [k, n] : counts) d[k] = static_cast<double>(n) / static_cast<double>(total);
  return d;
}

}  // namespace bqc::protocol
