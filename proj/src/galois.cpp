/**************************************************************************
 * galois.cpp
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

#include "rmrc/galois.hpp"

#include <array>
#include <bit>
#include <stdexcept>

#include <fmt/format.h>

#include "rmrc/errors.hpp"

namespace rmrc {

namespace {

// Primitive polynomials for GF(2^w), w = 1..16 (bit w is the leading term).
constexpr std::array<std::uint32_t, 17> kPrimitivePoly = {
    0,      0x3,    0x7,    0xb,    0x13,   0x25,   0x43,   0x89,   0x11d,
    0x211,  0x409,  0x805,  0x1053, 0x201b, 0x4443, 0x8003, 0x1100b};

// Prime fields at or below this order get log/exp tables.
constexpr std::uint32_t kTableLimit = 1u << 20;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return (a * b) % m;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct Field::Impl {
  std::uint32_t q = 0;
  bool binary = false;
  std::uint32_t poly = 0;
  Element g = 1;
  // exp has 2(q-1) entries so products of logs need no reduction.
  std::vector<Element> exp;
  std::vector<std::uint32_t> log;

  bool tabled() const { return !exp.empty(); }

  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    if (tabled()) return exp[log[a] + log[b]];
    return static_cast<Element>(mulmod(a, b, q));
  }

  Element pow(Element a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (tabled()) {
      std::uint64_t k = (static_cast<std::uint64_t>(log[a]) * (e % (q - 1))) % (q - 1);
      return exp[k];
    }
    return static_cast<Element>(powmod(a, e, q));
  }

  std::uint64_t order_of(Element a) const {
    std::uint64_t group = q - 1;
    std::uint64_t ord = group;
    for (auto p : prime_factors(group)) {
      while (ord % p == 0 && pow(a, ord / p) == 1) ord /= p;
    }
    return ord;
  }

  // Binary-field multiplication without tables, used only to build them.
  Element slow_binary_mul(Element a, Element b) const {
    std::uint32_t r = 0;
    const unsigned w = std::bit_width(q) - 1;
    while (b) {
      if (b & 1) r ^= a;
      b >>= 1;
      a <<= 1;
      if (a & (1u << w)) a ^= poly;
    }
    return r;
  }
};

Field Field::make(std::uint32_t order, std::optional<Element> generator_hint) {
  auto impl = std::make_shared<Impl>();
  impl->q = order;
  if (order < 2)
    throw InvalidParameters(fmt::format("field order {} is below 2", order));

  if (std::has_single_bit(order)) {
    const unsigned w = std::bit_width(order) - 1;
    if (w >= kPrimitivePoly.size())
      throw InvalidParameters(fmt::format("GF(2^{}) is not supported", w));
    impl->binary = true;
    impl->poly = kPrimitivePoly[w];
  } else if (!is_prime(order)) {
    auto f = prime_factors(order);
    if (f.size() == 1)
      throw InvalidParameters(fmt::format(
          "field order {} is an odd prime power; only primes and 2^w are supported", order));
    throw InvalidParameters(fmt::format("field order {} is not a prime power", order));
  }

  const std::uint64_t group = order - 1;

  // Temporary tables keyed on the polynomial generator x (binary) let the
  // generator search use table-speed pow.
  if (impl->binary) {
    impl->exp.assign(2 * group, 0);
    impl->log.assign(order, 0);
    Element x = 1;
    for (std::uint64_t i = 0; i < group; ++i) {
      if (i > 0 && x == 1)
        throw InvalidParameters(fmt::format("reduction polynomial for GF({}) is not primitive", order));
      impl->exp[i] = x;
      impl->exp[i + group] = x;
      impl->log[x] = static_cast<std::uint32_t>(i);
      x = impl->slow_binary_mul(x, order == 2 ? 1 : 2);
    }
  }

  auto primitive = [&](Element a) {
    return a != 0 && a < order && impl->order_of(a) == group;
  };

  if (generator_hint) {
    if (!primitive(*generator_hint))
      throw InvalidParameters(
          fmt::format("{} is not a primitive element of F_{}", *generator_hint, order));
    impl->g = *generator_hint;
  } else {
    Element a = 1;
    while (!primitive(a)) ++a;
    impl->g = a;
  }

  // Rebuild tables around g so exp(i) = g^i for both field kinds.
  if (impl->binary || order <= kTableLimit) {
    std::vector<Element> exp(2 * group);
    std::vector<std::uint32_t> log(order, 0);
    Element x = 1;
    for (std::uint64_t i = 0; i < group; ++i) {
      exp[i] = x;
      exp[i + group] = x;
      log[x] = static_cast<std::uint32_t>(i);
      x = impl->binary ? impl->mul(x, impl->g)
                       : static_cast<Element>(mulmod(x, impl->g, order));
    }
    impl->exp = std::move(exp);
    impl->log = std::move(log);
  }
  return Field(std::move(impl));
}

std::uint32_t Field::order() const noexcept { return impl_->q; }
Element Field::generator() const noexcept { return impl_->g; }
bool Field::is_binary() const noexcept { return impl_->binary; }

unsigned Field::symbol_bytes() const noexcept {
  const std::uint32_t top = impl_->q - 1;
  if (top <= 0xff) return 1;
  if (top <= 0xffff) return 2;
  return 4;
}

unsigned Field::payload_bits() const noexcept {
  const unsigned bits = std::bit_width(impl_->q) - 1;
  return std::bit_floor(bits == 0 ? 1u : bits);
}

Element Field::add(Element a, Element b) const noexcept {
  if (impl_->binary) return a ^ b;
  std::uint64_t s = static_cast<std::uint64_t>(a) + b;
  return static_cast<Element>(s >= impl_->q ? s - impl_->q : s);
}

Element Field::sub(Element a, Element b) const noexcept {
  if (impl_->binary) return a ^ b;
  return a >= b ? a - b : static_cast<Element>(static_cast<std::uint64_t>(a) + impl_->q - b);
}

Element Field::neg(Element a) const noexcept {
  if (impl_->binary || a == 0) return a;
  return impl_->q - a;
}

Element Field::mul(Element a, Element b) const noexcept { return impl_->mul(a, b); }

Element Field::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (impl_->tabled()) {
    const std::uint32_t group = impl_->q - 1;
    return impl_->exp[(group - impl_->log[a]) % group];
  }
  return static_cast<Element>(powmod(a, impl_->q - 2, impl_->q));
}

Element Field::div(Element a, Element b) const {
  if (b == 0) throw std::domain_error("division by zero");
  return mul(a, inv(b));
}

Element Field::pow(Element a, std::uint64_t e) const noexcept { return impl_->pow(a, e); }

Element Field::exp(std::uint64_t e) const noexcept {
  const std::uint64_t group = impl_->q - 1;
  if (impl_->tabled()) return impl_->exp[e % group];
  return impl_->pow(impl_->g, e % group);
}

std::uint64_t Field::multiplicative_order(Element a) const {
  if (a == 0 || a >= impl_->q) throw std::domain_error("order of a non-unit");
  return impl_->order_of(a);
}

}  // namespace rmrc
