/**************************************************************************
 * two_layer.cpp
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

#include "rmrc/two_layer.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "rmrc/bytes.hpp"
#include "rmrc/errors.hpp"
#include "rmrc/random.hpp"

namespace rmrc {

namespace {

constexpr std::string_view kRecordMagic = "RMPR";
constexpr std::uint16_t kRecordVersion = 1;

void check_encoder(const Encoder& enc, const TwoLayerPlan& plan) {
  if (enc.n() != plan.n || enc.d() != plan.d)
    throw InvalidParameters(fmt::format("encoder (n={}, d={}) does not match plan (n={}, d={})", enc.n(),
                                        enc.d(), plan.n, plan.d));
}

}  // namespace

RateMatch rate_match(int n, int max_malicious) {
  if (max_malicious < 0 || n <= 2 * max_malicious + 1)
    throw InvalidParameters(fmt::format("need n > 2M + 1, got n = {}, M = {}", n, max_malicious));
  return {n - max_malicious - 1, n - 2 * max_malicious - 1};
}

double detection_probability(double p, std::int64_t theta_l, int max_malicious) {
  if (max_malicious <= 0) return 1.0;
  if (theta_l <= 0) return 0.0;
  // 1 - (1-p)^theta computed as -expm1(theta log1p(-p)) to keep precision near 1.
  const double per_node = p >= 1.0 ? 1.0 : -std::expm1(static_cast<double>(theta_l) * std::log1p(-p));
  return std::pow(per_node, max_malicious);
}

std::int64_t fractional_block_count(double p, double target, int max_malicious) {
  if (!(p > 0 && p < 1) || !(target > 0 && target < 1))
    throw InvalidParameters("tamper and detection probabilities must lie in (0, 1)");
  if (max_malicious < 1) throw InvalidParameters("need M >= 1");
  const double per_node = -std::expm1(std::log(target) / max_malicious);  // 1 - P_det^(1/M)
  double est = std::ceil(std::log(per_node) / std::log1p(-p));
  std::int64_t theta = std::max<std::int64_t>(1, static_cast<std::int64_t>(est));
  // Guard against rounding in the closed form.
  while (theta > 1 && detection_probability(p, theta - 1, max_malicious) >= target) --theta;
  while (detection_probability(p, theta, max_malicious) < target) ++theta;
  return theta;
}

double TwoLayerPlan::storage_efficiency() const {
  return static_cast<double>(file_size) /
         (static_cast<double>(total_blocks()) * static_cast<double>(n) * static_cast<double>(alpha()));
}

double TwoLayerPlan::baseline_efficiency() const { return (xd / 2.0 + 1.0) / n; }

TwoLayerPlan plan_parameters(int n, int max_malicious, double p, double target, std::uint64_t file_size) {
  if (max_malicious < 1) throw InvalidParameters("need M >= 1");
  const auto rm = rate_match(n, max_malicious);
  if (rm.d % 2 != 0)
    throw InvalidParameters(fmt::format("d = n - M - 1 = {} is odd; the product-matrix code needs even d", rm.d));

  TwoLayerPlan plan;
  plan.n = n;
  plan.max_malicious = max_malicious;
  plan.tamper_probability = p;
  plan.detection_target = target;
  plan.file_size = file_size;
  plan.d = rm.d;
  plan.xd = rm.xd;
  plan.theta_l = fractional_block_count(p, target, max_malicious);

  const auto low = static_cast<std::uint64_t>(plan.theta_l) * plan.fractional_block_size();
  if (file_size <= low)
    throw InvalidParameters(
        fmt::format("file of {} symbols does not exceed theta_L * B_L = {}", file_size, low));
  const std::uint64_t bh = plan.full_block_size();
  plan.theta_h = static_cast<std::int64_t>((file_size - low + bh - 1) / bh);
  return plan;
}

PermutationRecord::PermutationRecord(TwoLayerPlan plan, std::uint64_t seed)
    : plan_(std::move(plan)), seed_(seed), order_(plan_.total_blocks()) {
  std::iota(order_.begin(), order_.end(), 0);
  Rng rng(seed);
  rng.shuffle(order_);
}

PermutationRecord PermutationRecord::generate(const TwoLayerPlan& plan, std::uint64_t seed) {
  return PermutationRecord(plan, seed);
}

std::vector<std::uint8_t> PermutationRecord::serialize() const {
  ByteWriter w;
  w.raw(kRecordMagic);
  w.put(kRecordVersion);
  w.put(static_cast<std::uint32_t>(plan_.n));
  w.put(static_cast<std::uint32_t>(plan_.max_malicious));
  w.put_f64(plan_.tamper_probability);
  w.put_f64(plan_.detection_target);
  w.put(static_cast<std::uint64_t>(plan_.file_size));
  w.put(seed_);
  w.put(static_cast<std::uint64_t>(plan_.theta_l));
  w.put(static_cast<std::uint64_t>(plan_.theta_h));
  return w.take();
}

PermutationRecord PermutationRecord::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (!r.expect(kRecordMagic)) throw std::runtime_error("not a permutation record");
  if (r.get<std::uint16_t>() != kRecordVersion) throw std::runtime_error("unsupported record version");
  const int n = static_cast<int>(r.get<std::uint32_t>());
  const int m = static_cast<int>(r.get<std::uint32_t>());
  const double p = r.get_f64();
  const double target = r.get_f64();
  const auto file_size = r.get<std::uint64_t>();
  const auto seed = r.get<std::uint64_t>();
  const auto theta_l = static_cast<std::int64_t>(r.get<std::uint64_t>());
  const auto theta_h = static_cast<std::int64_t>(r.get<std::uint64_t>());
  if (r.remaining() != 0) throw std::runtime_error("trailing bytes after record");

  auto plan = plan_parameters(n, m, p, target, file_size);
  if (plan.theta_l != theta_l || plan.theta_h != theta_h)
    throw std::runtime_error("record block counts disagree with its plan");
  return PermutationRecord(plan, seed);
}

const PermutationRecord& RecordLease::get() const {
  if (!record_) throw std::logic_error("permutation record already dropped");
  return *record_;
}

TwoLayerEncoding encode_file(const Encoder& enc, const TwoLayerPlan& plan, std::span<const Element> data,
                             std::uint64_t seed) {
  check_encoder(enc, plan);
  if (data.size() != plan.file_size)
    throw std::invalid_argument(fmt::format("expected {} data symbols, got {}", plan.file_size, data.size()));

  auto record = PermutationRecord::generate(plan, seed);
  ShareStore shares(plan.n, plan.alpha(), plan.total_blocks());
  const auto frac = plan.fractional_kind();
  const std::size_t bl = plan.fractional_block_size();
  const std::size_t bh = plan.full_block_size();

  std::vector<Element> chunk;
  for (std::size_t pos = 0; pos < shares.blocks(); ++pos) {
    const auto logical = static_cast<std::size_t>(record.logical_at(pos));
    const bool fractional = logical < static_cast<std::size_t>(plan.theta_l);
    const std::size_t size = fractional ? bl : bh;
    const std::size_t offset =
        fractional ? logical * bl : plan.theta_l * bl + (logical - plan.theta_l) * bh;
    chunk.assign(size, 0);
    for (std::size_t i = 0; i < size && offset + i < data.size(); ++i) chunk[i] = data[offset + i];
    shares.set_block(pos, enc.encode(pack_block(fractional ? frac : BlockKind::full(), plan.d, chunk)));
  }
  return {std::move(shares), std::move(record)};
}

NodeRepair regenerate_node(const Encoder& enc, const PermutationRecord& record, const Matrix& help,
                           const NodeSet& erasures, int failed) {
  const auto& plan = record.plan();
  check_encoder(enc, plan);
  const std::size_t blocks = plan.total_blocks();
  if (static_cast<int>(help.rows()) != plan.n || help.cols() != blocks)
    throw std::invalid_argument("help symbols must be n x blocks");

  const int a = plan.alpha();
  NodeRepair out;
  out.share.assign(a * blocks, 0);
  std::vector<Element> column(plan.n);
  auto column_at = [&](std::size_t pos) {
    for (int i = 0; i < plan.n; ++i) column[i] = help(i, pos);
    return std::span<const Element>(column);
  };
  auto store = [&](std::size_t pos, const Regeneration& r) {
    std::copy(r.row.begin(), r.row.end(), out.share.begin() + pos * a);
  };

  // Step 1: fractional blocks, a-priori erasures only.
  const auto frac = plan.fractional_kind();
  for (std::size_t pos = 0; pos < blocks; ++pos) {
    if (!record.is_fractional_at(pos)) continue;
    auto r = enc.regenerate(frac, column_at(pos), erasures, failed);
    out.flagged.insert(r.flagged.begin(), r.flagged.end());
    store(pos, r);
  }

  NodeSet erased = erasures;
  erased.insert(out.flagged.begin(), out.flagged.end());
  erased.erase(failed);
  const int budget = plan.n - 1 - plan.d;
  if (static_cast<int>(erased.size()) > budget)
    throw DecodeFailure(fmt::format("{} flagged or erased nodes exceed the erasure budget {}", erased.size(),
                                    budget));

  // Step 2: full-rate blocks with every known bad node erased.
  for (std::size_t pos = 0; pos < blocks; ++pos) {
    if (record.is_fractional_at(pos)) continue;
    auto r = enc.regenerate(BlockKind::full(), column_at(pos), erased, failed);
    out.flagged.insert(r.flagged.begin(), r.flagged.end());
    store(pos, r);
  }
  return out;
}

FileRead reconstruct_file(const Encoder& enc, const PermutationRecord& record, const ShareStore& received,
                          const NodeSet& erasures) {
  const auto& plan = record.plan();
  check_encoder(enc, plan);
  const std::size_t blocks = plan.total_blocks();
  if (received.n() != plan.n || received.alpha() != plan.alpha() || received.blocks() != blocks)
    throw std::invalid_argument("received shares do not match the plan");

  const std::size_t bl = plan.fractional_block_size();
  const std::size_t bh = plan.full_block_size();
  std::vector<Element> padded(plan.theta_l * bl + plan.theta_h * bh, 0);
  FileRead out;
  auto place = [&](std::size_t pos, const MessageBlock& block) {
    const auto logical = static_cast<std::size_t>(record.logical_at(pos));
    const std::size_t offset =
        logical < static_cast<std::size_t>(plan.theta_l) ? logical * bl
                                                          : plan.theta_l * bl + (logical - plan.theta_l) * bh;
    auto syms = unpack_block(block, plan.d);
    std::copy(syms.begin(), syms.end(), padded.begin() + offset);
  };

  const auto frac = plan.fractional_kind();
  for (std::size_t pos = 0; pos < blocks; ++pos) {
    if (!record.is_fractional_at(pos)) continue;
    auto r = enc.reconstruct(frac, received.block(pos), erasures);
    out.flagged.insert(r.flagged.begin(), r.flagged.end());
    place(pos, r.block);
  }

  NodeSet erased = erasures;
  erased.insert(out.flagged.begin(), out.flagged.end());
  for (std::size_t pos = 0; pos < blocks; ++pos) {
    if (record.is_fractional_at(pos)) continue;
    auto r = enc.reconstruct(BlockKind::full(), received.block(pos), erased);
    out.flagged.insert(r.flagged.begin(), r.flagged.end());
    place(pos, r.block);
  }
  padded.resize(plan.file_size);
  out.data = std::move(padded);
  return out;
}

}  // namespace rmrc
