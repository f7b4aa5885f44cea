/**************************************************************************
 * m_layer.cpp
 *
 * Copyright 2026 The rmrc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#include "rmrc/m_layer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "rmrc/errors.hpp"

namespace rmrc {

namespace {

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

void check_m(int m) {
  if (m < 1 || m > 30) throw InvalidParameters(fmt::format("layer count m = {} out of range", m));
}

void enumerate(int remaining, int parts, int min_part, std::vector<int>& prefix,
               std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (remaining == 0) out.push_back(prefix);
    return;
  }
  for (int v = min_part; v * parts <= remaining; v += 2) {
    prefix.push_back(v);
    enumerate(remaining - v, parts - 1, v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<int> correction_capability(int n, std::span<const int> d_list) {
  std::vector<int> t;
  t.reserve(d_list.size());
  int prev = 0;
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    const int layer = static_cast<int>(i) + 1;
    const int d = d_list[i];
    if (d < 1 || d >= n)
      throw InfeasibleLayering(layer, fmt::format("layer {}: d = {} must lie in [1, n) for n = {}", layer, d, n));
    if (i > 0 && d < d_list[i - 1])
      throw InfeasibleLayering(layer, fmt::format("layer {}: degrees must be nondecreasing", layer));
    const int slack = n - d - 1;
    if (slack < prev)
      throw InfeasibleLayering(
          layer, fmt::format("layer {}: n - d - 1 = {} is below the {} nodes already corrected", layer, slack, prev));
    prev = (slack - prev) / 2 + prev;
    t.push_back(prev);
  }
  return t;
}

std::vector<int> parity_slack(int n, std::span<const int> d_list) {
  auto t = correction_capability(n, d_list);
  std::vector<int> eps;
  for (std::size_t i = 0; i < d_list.size(); ++i) eps.push_back((n - d_list[i] - 1 - (i ? t[i - 1] : 0)) % 2);
  return eps;
}

std::vector<int> correction_capability_closed_form(int n, std::span<const int> d_list) {
  const auto eps = parity_slack(n, d_list);
  std::vector<int> t;
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    acc += pow2(static_cast<int>(i)) * (n - d_list[i] - eps[i]);
    const std::int64_t scale = pow2(static_cast<int>(i) + 1);
    t.push_back(static_cast<int>((acc - (scale - 1)) / scale));
  }
  return t;
}

int rounded_split(int d0, int m) {
  check_m(m);
  return (2 * d0 + m) / (2 * m);
}

Rational worst_case_capability(int n, int m, int d) {
  check_m(m);
  return Rational((pow2(m) - 1) * (n - d) - pow2(m + 1) + 2, pow2(m));
}

bool MLayerPlan::encodable() const {
  return std::all_of(d_list.begin(), d_list.end(), [](int d) { return d % 2 == 0; });
}

MLayerPlan optimize_layers(int n, int m, int d0) {
  check_m(m);
  if (d0 < m) throw InvalidParameters(fmt::format("budget d0 = {} is below m = {}", d0, m));
  MLayerPlan plan;
  plan.n = n;
  plan.m = m;
  plan.d0 = d0;
  plan.d_tilde = rounded_split(d0, m);
  const int base = d0 / m;
  const int extra = d0 % m;
  for (int i = 0; i < m; ++i) plan.d_list.push_back(base + (i >= m - extra ? 1 : 0));
  plan.t_list = correction_capability(n, plan.d_list);
  plan.eps_list = parity_slack(n, plan.d_list);

  const Rational bound = worst_case_capability(n, m, plan.d_list.back());
  if (Rational(plan.t_list.back()) < bound)
    throw std::logic_error(fmt::format("t_m = {} below the worst-case bound", plan.t_list.back()));
  return plan;
}

DualResult dual_max_rate(int n, int m, int t0) {
  check_m(m);
  if (t0 < 0) throw InvalidParameters("t0 must be nonnegative");
  DualResult r;
  for (int d = n - 1; d >= 1; --d) {
    std::vector<int> ds(m, d);
    auto t = correction_capability(n, ds);
    if (t.back() >= t0) {
      r.d_tilde = d;
      r.t_list = std::move(t);
      break;
    }
  }
  if (r.d_tilde == 0)
    throw InvalidParameters(fmt::format("no degree corrects {} nodes with n = {}, m = {}", t0, n, m));
  r.bound = Rational(n) - Rational(pow2(m) * t0 + pow2(m + 1) - 2, pow2(m) - 1);
  r.at_least_bound = Rational(r.d_tilde) >= r.bound;
  return r;
}

Rational error_correction_efficiency(int n, int m, int d) {
  check_m(m);
  return Rational((pow2(m) - 1) * (n - d) - pow2(m + 1) + 2, pow2(m) * n);
}

Rational baseline_correction_efficiency(int n, int d) { return Rational(n - d - 1, 2 * n); }

Rational correction_efficiency_limit(int n, int d) { return Rational(n - d - 2, n); }

std::int64_t storage_capacity(std::span<const int> d_list) {
  std::int64_t total = 0;
  for (int d : d_list) {
    if (d < 0 || d % 2 != 0) throw InvalidParameters(fmt::format("d = {} must be even", d));
    const std::int64_t a = d / 2;
    total += a * (a + 1);
  }
  return total;
}

CapacityAudit audit_storage_capacity(int d0, int m) {
  check_m(m);
  std::vector<std::vector<int>> comps;
  std::vector<int> prefix;
  enumerate(d0, m, 2, prefix, comps);
  if (comps.empty()) throw InvalidParameters(fmt::format("no even composition of {} into {} parts", d0, m));

  CapacityAudit audit;
  for (auto& c : comps) audit.compositions.emplace_back(c, storage_capacity(c));
  auto [lo, hi] = std::minmax_element(audit.compositions.begin(), audit.compositions.end(),
                                      [](auto& a, auto& b) { return a.second < b.second; });
  audit.min_value = lo->second;
  audit.max_value = hi->second;
  for (auto& [c, v] : audit.compositions) {
    if (v == audit.max_value) audit.maximizers.push_back(c);
    if (v == audit.min_value) audit.minimizers.push_back(c);
  }
  return audit;
}

std::optional<std::size_t> Lattice::block_at(int layer, int column) const {
  const std::size_t j = static_cast<std::size_t>(layer) * rho + column;
  if (j >= blocks) return std::nullopt;
  return j;
}

Lattice plan_lattice(std::size_t blocks, int m, std::optional<int> rho) {
  check_m(m);
  if (blocks == 0) throw InvalidParameters("lattice needs at least one block");
  const int want = static_cast<int>((blocks + m - 1) / m);
  const int r = rho.value_or(want);
  if (r < 1 || static_cast<std::size_t>(m) * r < blocks)
    throw InvalidParameters(fmt::format("m * rho = {} * {} cannot hold {} blocks", m, r, blocks));
  return Lattice{m, r, blocks};
}

std::size_t block_count(std::size_t symbols, int d) {
  const std::size_t b = block_size(BlockKind::full(), d);
  return std::max<std::size_t>(1, (symbols + b - 1) / b);
}

ShareStore encode_layered(const Encoder& enc, std::span<const Element> data) {
  const std::size_t b = block_size(BlockKind::full(), enc.d());
  const std::size_t blocks = block_count(data.size(), enc.d());
  ShareStore shares(enc.n(), enc.alpha(), blocks);
  std::vector<Element> chunk;
  for (std::size_t j = 0; j < blocks; ++j) {
    chunk.assign(b, 0);
    for (std::size_t i = 0; i < b && j * b + i < data.size(); ++i) chunk[i] = data[j * b + i];
    shares.set_block(j, enc.encode(pack_block(BlockKind::full(), enc.d(), chunk)));
  }
  return shares;
}

LayeredRepair regenerate_layered(const Encoder& enc, const Lattice& lattice, const Matrix& help,
                                 const NodeSet& erasures, int failed) {
  if (static_cast<int>(help.rows()) != enc.n() || help.cols() != lattice.blocks)
    throw std::invalid_argument("help symbols must be n x blocks");
  const int a = enc.alpha();
  LayeredRepair out;
  out.share.assign(a * lattice.blocks, 0);
  out.column_flags.resize(lattice.rho);
  std::vector<Element> column(enc.n());

  for (int layer = 0; layer < lattice.m; ++layer) {
    NodeSet erased = erasures;
    erased.insert(out.flagged.begin(), out.flagged.end());
    erased.erase(failed);
    NodeSet found;
    for (int c = 0; c < lattice.rho; ++c) {
      auto j = lattice.block_at(layer, c);
      if (!j) continue;
      for (int i = 0; i < enc.n(); ++i) column[i] = help(i, *j);
      auto r = enc.regenerate(BlockKind::full(), column, erased, failed);
      std::copy(r.row.begin(), r.row.end(), out.share.begin() + *j * a);
      out.column_flags[c].insert(r.flagged.begin(), r.flagged.end());
      found.insert(r.flagged.begin(), r.flagged.end());
    }
    out.flagged.insert(found.begin(), found.end());
  }
  return out;
}

LayeredRead reconstruct_layered(const Encoder& enc, const Lattice& lattice, const ShareStore& received,
                                const NodeSet& erasures, std::size_t data_symbols) {
  if (received.n() != enc.n() || received.alpha() != enc.alpha() || received.blocks() != lattice.blocks)
    throw std::invalid_argument("received shares do not match the lattice");
  const std::size_t b = block_size(BlockKind::full(), enc.d());
  if (data_symbols > b * lattice.blocks) throw std::invalid_argument("data length exceeds the stored blocks");
  LayeredRead out;
  out.data.assign(b * lattice.blocks, 0);
  out.column_flags.resize(lattice.rho);

  for (int layer = 0; layer < lattice.m; ++layer) {
    NodeSet erased = erasures;
    erased.insert(out.flagged.begin(), out.flagged.end());
    NodeSet found;
    for (int c = 0; c < lattice.rho; ++c) {
      auto j = lattice.block_at(layer, c);
      if (!j) continue;
      auto r = enc.reconstruct(BlockKind::full(), received.block(*j), erased);
      auto syms = unpack_block(r.block, enc.d());
      std::copy(syms.begin(), syms.end(), out.data.begin() + *j * b);
      out.column_flags[c].insert(r.flagged.begin(), r.flagged.end());
      found.insert(r.flagged.begin(), r.flagged.end());
    }
    out.flagged.insert(found.begin(), found.end());
  }
  out.data.resize(data_symbols);
  return out;
}

}  // namespace rmrc
