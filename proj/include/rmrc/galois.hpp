/**************************************************************************
 * galois.hpp
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
#include <memory>
#include <optional>
#include <vector>

namespace rmrc {

/// Canonical field element: the integer residue for prime fields, the
/// polynomial bit pattern for GF(2^w).
using Element = std::uint32_t;

/// Finite field F_q with a verified primitive element.
///
/// Supported orders are primes below 2^32 and 2^w for 1 <= w <= 16. The
/// object is a cheap handle onto immutable tables, so copies share state and
/// may be used from any thread.
class Field {
 public:
  /// Builds F_order. A supplied generator hint must be primitive; otherwise
  /// the smallest primitive element is chosen.
  static Field make(std::uint32_t order,
                    std::optional<Element> generator_hint = std::nullopt);

  std::uint32_t order() const noexcept;
  Element generator() const noexcept;
  bool is_binary() const noexcept;

  /// Bytes per serialized element (little-endian, fixed width).
  unsigned symbol_bytes() const noexcept;

  /// Largest power-of-two bit count b such that every b-bit string is a
  /// field element; used to pack raw bytes into symbols.
  unsigned payload_bits() const noexcept;

  bool contains(std::uint64_t value) const noexcept { return value < order(); }

  Element add(Element a, Element b) const noexcept;
  Element sub(Element a, Element b) const noexcept;
  Element neg(Element a) const noexcept;
  Element mul(Element a, Element b) const noexcept;
  /// Throws std::domain_error on division by zero.
  Element div(Element a, Element b) const;
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const noexcept;

  /// g^e for the field's primitive element g.
  Element exp(std::uint64_t e) const noexcept;

  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(Element a) const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.order() == b.order() && a.generator() == b.generator();
  }

 private:
  struct Impl;
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// Distinct prime factors of n, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

bool is_prime(std::uint64_t n);

}  // namespace rmrc
