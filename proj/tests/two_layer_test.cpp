/**************************************************************************
 * two_layer_test.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmrc/errors.hpp"
#include "rmrc/two_layer.hpp"
#include "test_support.hpp"

using namespace rmrc;
using rmrc::testing::random_nonzero;
using rmrc::testing::random_subset;
using rmrc::testing::random_symbols;

namespace {

// Independent scan: smallest theta with (1 - 0.8^theta)^M >= target, by
// repeated multiplication rather than the closed form.
std::int64_t scan_theta(double p, double target, int m) {
  double miss = 1.0;
  for (std::int64_t theta = 1;; ++theta) {
    miss *= 1.0 - p;
    if (std::pow(1.0 - miss, m) >= target) return theta;
  }
}

struct Instance {
  Field f = Field::make(23);
  TwoLayerPlan plan = plan_parameters(10, 3, 0.2, 0.99, 600);
  Encoder enc{f, 10, 6};
};

Matrix help_for(const Encoder& enc, const ShareStore& shares, int z) {
  Matrix h(enc.n(), shares.blocks());
  for (std::size_t pos = 0; pos < shares.blocks(); ++pos)
    for (int i = 0; i < enc.n(); ++i)
      if (i != z) h(i, pos) = enc.help_symbol(shares.slot(i, pos), z);
  return h;
}

}  // namespace

TEST_CASE("rate matching holds for every feasible (n, M)") {
  for (int n = 4; n <= 80; ++n)
    for (int m = 1; 2 * m + 1 < n; ++m) {
      auto rm = rate_match(n, m);
      CHECK(rm.d == n - m - 1);
      CHECK((n - rm.xd - 1) / 2 == m);
      CHECK((n - rm.xd - 1) / 2 == n - rm.d - 1);
    }
  CHECK_THROWS_AS(rate_match(10, 5), InvalidParameters);
  CHECK_THROWS_AS(rate_match(7, 3), InvalidParameters);
}

TEST_CASE("plan for n = 30, M = 11") {
  auto plan = plan_parameters(30, 11, 0.2, 0.999999, 14000000000ULL);
  CHECK(plan.d == 18);
  CHECK(plan.xd == 7);
  CHECK(plan.match_factor() == Rational(7, 18));
  CHECK(plan.alpha() == 9);
  CHECK(plan.full_block_size() == 90);
  CHECK(plan.fractional_block_size() == 28);
  CHECK(plan.theta_l == 73);
  CHECK(plan.theta_l == scan_theta(0.2, 0.999999, 11));
  CHECK(detection_probability(0.2, 73, 11) >= 0.999999);
  CHECK(detection_probability(0.2, 72, 11) < 0.999999);
  CHECK(plan.baseline_efficiency() == doctest::Approx(0.15));
  // theta_H B_H >= B_F - theta_L B_L with theta_H minimal.
  const std::int64_t rest = 14000000000LL - 73 * 28;
  CHECK(plan.theta_h * 90 >= rest);
  CHECK((plan.theta_h - 1) * 90 < rest);
}

TEST_CASE("theta_L clamps and is minimal across a grid") {
  CHECK(fractional_block_count(0.2, 1e-12, 11) == 1);
  for (double p : {0.05, 0.2, 0.5, 0.9})
    for (double target : {0.3, 0.9, 0.99, 0.9999, 0.999999})
      for (int m : {1, 3, 11, 20}) {
        const auto theta = fractional_block_count(p, target, m);
        CHECK(theta == scan_theta(p, target, m));
        CHECK(detection_probability(p, theta, m) >= target);
        if (theta > 1) CHECK(detection_probability(p, theta - 1, m) < target);
      }
}

TEST_CASE("detection probability edge cases") {
  CHECK(detection_probability(1.0, 1, 5) == 1.0);
  CHECK(detection_probability(0.3, 4, 0) == 1.0);
  CHECK(detection_probability(0.3, 0, 2) == 0.0);
  CHECK(detection_probability(0.5, 1, 2) == doctest::Approx(0.25));
}

TEST_CASE("plan rejections") {
  CHECK_THROWS_AS(plan_parameters(10, 5, 0.2, 0.9, 1000), InvalidParameters);   // n <= 2M + 1
  CHECK_THROWS_AS(plan_parameters(10, 2, 0.2, 0.9, 1000), InvalidParameters);   // d = 7 odd
  CHECK_THROWS_AS(plan_parameters(10, 3, 0.0, 0.9, 1000), InvalidParameters);
  CHECK_THROWS_AS(plan_parameters(10, 3, 0.2, 1.0, 1000), InvalidParameters);
  CHECK_THROWS_AS(plan_parameters(10, 3, 0.2, 0.99, 156), InvalidParameters);  // B_F <= 26 * 6
  CHECK_NOTHROW(plan_parameters(10, 3, 0.2, 0.99, 157));
}

TEST_CASE("storage efficiency") {
  auto plan = plan_parameters(30, 11, 0.2, 0.999999, 14000000000ULL);
  const double expect = 14000000000.0 / ((plan.theta_h + plan.theta_l) * 30.0 * 9.0);
  CHECK(plan.storage_efficiency() == doctest::Approx(expect));
  CHECK(plan.efficiency_ratio() == doctest::Approx(expect / 0.15));
  // With theta_L = 0 the efficiency would be (alpha + 1) / n.
  TwoLayerPlan full = plan;
  full.theta_l = 0;
  full.file_size = 90 * 1000;
  full.theta_h = 1000;
  CHECK(full.storage_efficiency() == doctest::Approx(10.0 / 30.0));

  double prev = 1e9;
  for (double target : {0.5, 0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999, 0.9999999}) {
    auto p = plan_parameters(30, 11, 0.2, target, 14000000000ULL);
    CHECK(p.storage_efficiency() <= prev);
    prev = p.storage_efficiency();
  }
}

TEST_CASE("permutation record is a seeded bijection and round-trips") {
  Instance s;
  auto a = PermutationRecord::generate(s.plan, 42);
  auto b = PermutationRecord::generate(s.plan, 42);
  auto c = PermutationRecord::generate(s.plan, 43);
  CHECK(a == b);
  CHECK(!(a == c));
  std::vector<std::int64_t> sorted = a.order();
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == static_cast<std::int64_t>(i));
  int fractional = 0;
  for (std::size_t pos = 0; pos < sorted.size(); ++pos) fractional += a.is_fractional_at(pos);
  CHECK(fractional == s.plan.theta_l);

  auto bytes = a.serialize();
  auto back = PermutationRecord::deserialize(bytes);
  CHECK(back == a);
  CHECK(back.serialize() == bytes);
  CHECK(back.plan().detection_target == s.plan.detection_target);

  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS(PermutationRecord::deserialize(bad));
  bytes.pop_back();
  CHECK_THROWS(PermutationRecord::deserialize(bytes));
}

TEST_CASE("record lease drops") {
  Instance s;
  RecordLease lease(PermutationRecord::generate(s.plan, 1));
  CHECK(lease.held());
  CHECK_NOTHROW(lease.get());
  lease.drop();
  CHECK(!lease.held());
  CHECK_THROWS_AS(lease.get(), std::logic_error);
}

TEST_CASE("encode layout, determinism and zero data") {
  Instance s;
  Rng rng(3);
  auto data = random_symbols(s.f, rng, s.plan.file_size);
  auto e1 = encode_file(s.enc, s.plan, data, 9);
  auto e2 = encode_file(s.enc, s.plan, data, 9);
  CHECK(e1.shares == e2.shares);
  CHECK(e1.shares.node(0).size() == static_cast<std::size_t>(s.plan.alpha() * s.plan.total_blocks()));

  std::vector<Element> zero(s.plan.file_size, 0);
  auto ez = encode_file(s.enc, s.plan, zero, 9);
  for (int i = 0; i < 10; ++i)
    for (Element x : ez.shares.node(i)) CHECK(x == 0);

  // The block at each position encodes the expected slice of the data.
  for (std::size_t pos = 0; pos < e1.shares.blocks(); ++pos) {
    const auto logical = e1.record.logical_at(pos);
    const bool frac = logical < s.plan.theta_l;
    const std::size_t size = frac ? 6 : 12;
    const std::size_t off = frac ? logical * 6 : s.plan.theta_l * 6 + (logical - s.plan.theta_l) * 12;
    std::vector<Element> chunk(size, 0);
    for (std::size_t i = 0; i < size && off + i < data.size(); ++i) chunk[i] = data[off + i];
    auto expect = s.enc.encode(pack_block(frac ? s.plan.fractional_kind() : BlockKind::full(), 6, chunk));
    CHECK(e1.shares.block(pos) == expect);
  }
  CHECK_THROWS_AS(encode_file(s.enc, s.plan, std::vector<Element>(10, 0), 1), std::invalid_argument);
}

TEST_CASE("regeneration and reconstruction without adversary") {
  Instance s;
  Rng rng(4);
  auto data = random_symbols(s.f, rng, s.plan.file_size);
  auto e = encode_file(s.enc, s.plan, data, 5);
  for (int z = 0; z < 10; ++z) {
    auto r = regenerate_node(s.enc, e.record, help_for(s.enc, e.shares, z), {}, z);
    CHECK(std::equal(r.share.begin(), r.share.end(), e.shares.node(z).begin()));
    CHECK(r.flagged.empty());
  }
  auto read = reconstruct_file(s.enc, e.record, e.shares, {});
  CHECK(read.data == data);
  CHECK(read.flagged.empty());
}

TEST_CASE("M nodes corrupting every symbol are flagged and erased") {
  Instance s;
  Rng rng(5);
  auto data = random_symbols(s.f, rng, s.plan.file_size);
  auto e = encode_file(s.enc, s.plan, data, 6);
  for (int trial = 0; trial < 30; ++trial) {
    const int z = static_cast<int>(rng.below(10));
    auto bad = random_subset(rng, 10, 3, {z});
    auto help = help_for(s.enc, e.shares, z);
    for (int i : bad)
      for (std::size_t pos = 0; pos < e.shares.blocks(); ++pos) help(i, pos) = s.f.add(help(i, pos), random_nonzero(s.f, rng));
    auto r = regenerate_node(s.enc, e.record, help, {}, z);
    CHECK(std::equal(r.share.begin(), r.share.end(), e.shares.node(z).begin()));
    CHECK(r.flagged == NodeSet(bad.begin(), bad.end()));

    ShareStore recv = e.shares;
    for (int i : bad)
      for (auto& x : recv.node_mut(i)) x = s.f.add(x, random_nonzero(s.f, rng));
    auto read = reconstruct_file(s.enc, e.record, recv, {});
    CHECK(read.data == data);
    CHECK(read.flagged == NodeSet(bad.begin(), bad.end()));
  }
}

TEST_CASE("corruption confined to full-rate blocks exceeds the erasure-free radius") {
  Instance s;
  Rng rng(6);
  auto data = random_symbols(s.f, rng, s.plan.file_size);
  auto e = encode_file(s.enc, s.plan, data, 7);
  const int z = 0;
  auto help = help_for(s.enc, e.shares, z);
  // floor((n - d - 1)/2) = 1: one undetected node is still corrected.
  auto one = help;
  for (std::size_t pos = 0; pos < e.shares.blocks(); ++pos)
    if (!e.record.is_fractional_at(pos)) one(4, pos) = s.f.add(one(4, pos), 1);
  auto r = regenerate_node(s.enc, e.record, one, {}, z);
  CHECK(std::equal(r.share.begin(), r.share.end(), e.shares.node(z).begin()));
  CHECK(r.flagged == NodeSet{4});
  // Three undetected nodes are not.
  for (int i : {3, 5, 7})
    for (std::size_t pos = 0; pos < e.shares.blocks(); ++pos)
      if (!e.record.is_fractional_at(pos)) help(i, pos) = s.f.add(help(i, pos), random_nonzero(s.f, rng));
  CHECK_THROWS_AS(regenerate_node(s.enc, e.record, help, {}, z), DecodeFailure);
}

TEST_CASE("flags plus erasures beyond n - d - 1 abort before the full-rate step") {
  Instance s;
  Rng rng(7);
  auto data = random_symbols(s.f, rng, s.plan.file_size);
  auto e = encode_file(s.enc, s.plan, data, 8);
  auto help = help_for(s.enc, e.shares, 0);
  // Fractional blocks still decode with 4 erasures (9 - 3 >= 4), the budget is 3.
  CHECK_THROWS_AS(regenerate_node(s.enc, e.record, help, {4, 5, 6, 7}, 0), DecodeFailure);
  for (std::size_t pos = 0; pos < e.shares.blocks(); ++pos) help(1, pos) = s.f.add(help(1, pos), 1);
  CHECK_THROWS_AS(regenerate_node(s.enc, e.record, help, {5, 6, 7}, 0), DecodeFailure);
  CHECK_NOTHROW(regenerate_node(s.enc, e.record, help, {5, 6}, 0));
}

TEST_CASE("fractional reconstruction with x <= 0.5 tolerates floor((n - xd)/2) nodes") {
  // n = 10, M = 3, xd = 3: floor(7/2) = 3 >= M.
  Instance s;
  CHECK((10 - s.plan.xd) / 2 >= s.plan.max_malicious);
  Rng rng(8);
  Encoder& enc = s.enc;
  for (int trial = 0; trial < 100; ++trial) {
    auto b = pack_block(s.plan.fractional_kind(), 6, random_symbols(s.f, rng, 6));
    auto ch = enc.encode(b);
    auto bad = random_subset(rng, 10, 3);
    for (int i : bad) ch(i, 0) = s.f.add(ch(i, 0), random_nonzero(s.f, rng));
    auto r = enc.reconstruct(s.plan.fractional_kind(), ch, {});
    CHECK(r.block == b);
  }
}
