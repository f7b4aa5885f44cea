/**************************************************************************
 * galois_test.cpp
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

#include "rmrc/errors.hpp"
#include "rmrc/galois.hpp"
#include "test_support.hpp"

using namespace rmrc;

namespace {

// Exhaustive multiplicative order, independent of Field::multiplicative_order.
std::uint64_t brute_order(const Field& f, Element a) {
  Element x = a;
  std::uint64_t k = 1;
  while (x != 1) {
    x = f.mul(x, a);
    ++k;
  }
  return k;
}

void check_axioms(const Field& f, std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 2000; ++trial) {
    const Element a = static_cast<Element>(rng.below(f.order()));
    const Element b = static_cast<Element>(rng.below(f.order()));
    const Element c = static_cast<Element>(rng.below(f.order()));
    CHECK(f.add(a, b) == f.add(b, a));
    CHECK(f.mul(a, b) == f.mul(b, a));
    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    CHECK(f.mul(a, 1) == a);
    CHECK(f.add(a, f.neg(a)) == 0);
    CHECK(f.sub(f.add(a, b), b) == a);
    if (a != 0) {
      CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.inv(f.inv(a)) == a);
      CHECK(f.div(f.mul(a, b), a) == b);
    }
  }
}

}  // namespace

TEST_CASE("F_13 picks 2 as generator and inverts by exhaustive search") {
  auto f = Field::make(13);
  CHECK(f.generator() == 2);
  CHECK(brute_order(f, 2) == 12);
  Element inv2 = 0;
  for (Element x = 1; x < 13; ++x)
    if ((2 * x) % 13 == 1) inv2 = x;
  CHECK(inv2 == 7);
  CHECK(f.inv(2) == inv2);
}

TEST_CASE("degenerate and rejected orders") {
  auto f2 = Field::make(2);
  CHECK(f2.generator() == 1);
  CHECK(f2.multiplicative_order(1) == 1);
  CHECK(f2.add(1, 1) == 0);

  CHECK_THROWS_AS(Field::make(12), InvalidParameters);
  CHECK_THROWS_AS(Field::make(9), InvalidParameters);
  CHECK_THROWS_AS(Field::make(1), InvalidParameters);
  CHECK_THROWS_AS(Field::make(1u << 17), InvalidParameters);
  // 3 has order 3 in F_13.
  CHECK_THROWS_AS(Field::make(13, 3), InvalidParameters);
  CHECK(Field::make(13, 6).generator() == 6);
}

TEST_CASE("division by zero") {
  auto f = Field::make(23);
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
  CHECK_THROWS_AS(f.div(5, 0), std::domain_error);
}

TEST_CASE("every supported binary field has a primitive generator") {
  for (unsigned w = 1; w <= 16; ++w) {
    auto f = Field::make(1u << w);
    CHECK(f.is_binary());
    const std::uint64_t group = f.order() - 1;
    CHECK(f.pow(f.generator(), group) == 1);
    if (w <= 10) CHECK(brute_order(f, f.generator()) == group);
    for (auto p : prime_factors(group)) CHECK(f.pow(f.generator(), group / p) != 1);
  }
}

TEST_CASE("field axioms hold on sampled triples") {
  check_axioms(Field::make(13), 1);
  check_axioms(Field::make(23), 2);
  check_axioms(Field::make(256), 3);
  check_axioms(Field::make(65536), 4);
  check_axioms(Field::make(65537), 5);
  // Above the table limit arithmetic falls back to modular exponentiation.
  check_axioms(Field::make(2147483647), 6);
}

TEST_CASE("g^k != 1 below the group order") {
  auto f = Field::make(23);
  const Element g = f.generator();
  Element x = 1;
  for (int k = 1; k < 22; ++k) {
    x = f.mul(x, g);
    CHECK(x != 1);
    CHECK(f.exp(k) == x);
  }
  CHECK(f.mul(x, g) == 1);
}

TEST_CASE("serialization width and payload bits") {
  CHECK(Field::make(23).symbol_bytes() == 1);
  CHECK(Field::make(23).payload_bits() == 4);
  CHECK(Field::make(257).symbol_bytes() == 2);
  CHECK(Field::make(257).payload_bits() == 8);
  CHECK(Field::make(65536).symbol_bytes() == 2);
  CHECK(Field::make(65536).payload_bits() == 16);
  CHECK(Field::make(65537).symbol_bytes() == 4);
}
