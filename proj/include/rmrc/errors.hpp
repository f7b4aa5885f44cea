/**************************************************************************
 * errors.hpp
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

#include <stdexcept>
#include <string>

namespace rmrc {

/// Parameters that cannot describe a valid field, code or plan.
class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A layered plan whose repair degrees break the erasure-budget restriction
/// n - d_i - 1 >= t_{i-1}.
class InfeasibleLayering : public InvalidParameters {
 public:
  InfeasibleLayering(int layer, const std::string& what)
      : InvalidParameters(what), layer_(layer) {}

  int layer() const noexcept { return layer_; }

 private:
  int layer_;
};

/// No codeword lies within the guaranteed decoding radius, or a decoded
/// result failed re-encode verification.
class DecodeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column decodes of a reconstruction accuse each other so that no set of
/// trusted columns remains.
class InconsistentFlags : public DecodeFailure {
 public:
  using DecodeFailure::DecodeFailure;
};

}  // namespace rmrc
