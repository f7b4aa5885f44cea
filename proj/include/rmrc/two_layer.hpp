/**************************************************************************
 * two_layer.hpp
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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rmrc/component_codes.hpp"
#include "rmrc/share_store.hpp"

namespace rmrc {

/// Repair degree and fractional repair dimension for n nodes of which at
/// most M misbehave: d = n - M - 1, xd = n - 2M - 1.
struct RateMatch {
  int d = 0;
  int xd = 0;
};

/// Requires M >= 0 and n > 2M + 1. d may be odd; plan_parameters rejects it.
RateMatch rate_match(int n, int max_malicious);

/// (1 - (1 - P)^theta_L)^M.
double detection_probability(double tamper_probability, std::int64_t theta_l, int max_malicious);

/// Smallest theta_L >= 1 whose detection probability reaches `target`.
std::int64_t fractional_block_count(double tamper_probability, double target, int max_malicious);

struct TwoLayerPlan {
  int n = 0;
  int max_malicious = 0;
  double tamper_probability = 0;
  double detection_target = 0;
  std::uint64_t file_size = 0;  // symbols

  int d = 0;
  int xd = 0;
  std::int64_t theta_l = 0;
  std::int64_t theta_h = 0;

  int alpha() const noexcept { return d / 2; }
  Rational match_factor() const { return Rational(xd, d); }
  BlockKind fractional_kind() const { return BlockKind::fractional(xd); }
  int full_block_size() const { return block_size(BlockKind::full(), d); }
  int fractional_block_size() const { return block_size(fractional_kind(), d); }
  std::int64_t total_blocks() const noexcept { return theta_l + theta_h; }

  /// B_F / ((theta_H + theta_L) n alpha).
  double storage_efficiency() const;
  /// (xd/2 + 1) / n for a code correcting M errors in every block.
  double baseline_efficiency() const;
  double efficiency_ratio() const { return storage_efficiency() / baseline_efficiency(); }
};

/// Closed-form plan with ceilings on theta_L and theta_H. Throws
/// InvalidParameters for n <= 2M + 1, odd d, probabilities outside (0, 1)
/// or B_F <= theta_L B_L.
TwoLayerPlan plan_parameters(int n, int max_malicious, double tamper_probability, double detection_target,
                             std::uint64_t file_size);

/// Logical block ids: [0, theta_L) are fractional, [theta_L, total) full rate.
class PermutationRecord {
 public:
  static PermutationRecord generate(const TwoLayerPlan& plan, std::uint64_t seed);

  const TwoLayerPlan& plan() const noexcept { return plan_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Logical block stored at position `pos`.
  std::int64_t logical_at(std::size_t pos) const { return order_.at(pos); }
  bool is_fractional_at(std::size_t pos) const { return order_.at(pos) < plan_.theta_l; }
  const std::vector<std::int64_t>& order() const noexcept { return order_; }

  std::vector<std::uint8_t> serialize() const;
  /// Rebuilds the plan from the stored inputs and regenerates the order from
  /// the seed; throws std::runtime_error on a malformed or inconsistent header.
  static PermutationRecord deserialize(std::span<const std::uint8_t> bytes);

  friend bool operator==(const PermutationRecord& a, const PermutationRecord& b) {
    return a.seed_ == b.seed_ && a.order_ == b.order_ && a.plan_.theta_l == b.plan_.theta_l &&
           a.plan_.theta_h == b.plan_.theta_h;
  }

 private:
  PermutationRecord(TwoLayerPlan plan, std::uint64_t seed);

  TwoLayerPlan plan_;
  std::uint64_t seed_;
  std::vector<std::int64_t> order_;
};

/// A replacement node's temporary copy of the record, dropped after repair.
class RecordLease {
 public:
  explicit RecordLease(PermutationRecord record) : record_(std::move(record)) {}

  bool held() const noexcept { return record_.has_value(); }
  /// Throws std::logic_error once dropped.
  const PermutationRecord& get() const;
  void drop() noexcept { record_.reset(); }

 private:
  std::optional<PermutationRecord> record_;
};

struct TwoLayerEncoding {
  ShareStore shares;
  PermutationRecord record;
};

/// Splits `data` (exactly plan.file_size symbols) into theta_L fractional
/// blocks followed by theta_H full-rate blocks, zero-padding the tail, and
/// stores them in the record's permuted order.
TwoLayerEncoding encode_file(const Encoder& enc, const TwoLayerPlan& plan, std::span<const Element> data,
                             std::uint64_t seed);

/// Regenerates node `failed` from help symbols help(i, pos). Fractional
/// blocks are decoded first and every node they expose is erased while the
/// full-rate blocks are decoded. Throws DecodeFailure when more than
/// n - d - 1 nodes are flagged or erased, or a block cannot be decoded.
NodeRepair regenerate_node(const Encoder& enc, const PermutationRecord& record, const Matrix& help,
                           const NodeSet& erasures, int failed);

/// Reads the file from all n share streams, flagging through the fractional
/// blocks before decoding the full-rate ones.
FileRead reconstruct_file(const Encoder& enc, const PermutationRecord& record, const ShareStore& received,
                          const NodeSet& erasures);

}  // namespace rmrc
