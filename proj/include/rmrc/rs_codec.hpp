/**************************************************************************
 * rs_codec.hpp
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

#include <span>
#include <vector>

#include "rmrc/galois.hpp"

namespace rmrc {

/// Result of an errors-and-erasures decode.
struct DecodeOutcome {
  std::vector<Element> codeword;  // length N
  std::vector<Element> message;   // length K
  std::vector<int> error_positions;
  std::vector<int> erasure_positions;
};

/// Generalized Reed-Solomon code: position i carries sum_j m_j * x_i^j.
///
/// Shortened codes are expressed by erasing coordinates at decode time.
/// Immutable; decode is reentrant.
class EvalCode {
 public:
  EvalCode(Field field, std::vector<Element> eval_points, int dimension);

  const Field& field() const noexcept { return field_; }
  int length() const noexcept { return static_cast<int>(points_.size()); }
  int dimension() const noexcept { return k_; }
  std::span<const Element> points() const noexcept { return points_; }

  std::vector<Element> encode(std::span<const Element> message) const;

  /// Returns the unique codeword with 2*errors + |erasures| <= N - K.
  /// Throws DecodeFailure when none exists within that radius; every
  /// success is verified by re-encoding.
  DecodeOutcome decode(std::span<const Element> received, std::span<const int> erasures) const;

 private:
  Field field_;
  std::vector<Element> points_;
  int k_;
};

}  // namespace rmrc
