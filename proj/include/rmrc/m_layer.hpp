/**************************************************************************
 * m_layer.hpp
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
#include <utility>
#include <vector>

#include "rmrc/component_codes.hpp"
#include "rmrc/share_store.hpp"

namespace rmrc {

/// t_1 = floor((n - d_1 - 1)/2), t_i = floor((n - d_i - 1 - t_{i-1})/2) + t_{i-1}.
/// Throws InfeasibleLayering when d is not nondecreasing, some d_i >= n, or
/// n - d_i - 1 < t_{i-1}.
std::vector<int> correction_capability(int n, std::span<const int> d_list);

/// Parity slack bits eps_i of the recurrence.
std::vector<int> parity_slack(int n, std::span<const int> d_list);

/// (sum_{j<=i} 2^(j-1) (n - d_j - eps_j) - (2^i - 1)) / 2^i. Equals the
/// recurrence for every feasible input.
std::vector<int> correction_capability_closed_form(int n, std::span<const int> d_list);

/// Round(d0 / m), halves rounded up.
int rounded_split(int d0, int m);

/// Worst case of the recurrence for m equal degrees d:
/// ((2^m - 1)(n - d) - 2^(m+1) + 2) / 2^m.
Rational worst_case_capability(int n, int m, int d);

struct MLayerPlan {
  int n = 0;
  int m = 0;
  int d0 = 0;
  int d_tilde = 0;              // Round(d0 / m)
  std::vector<int> d_list;      // nondecreasing, sums to d0
  std::vector<int> t_list;
  std::vector<int> eps_list;

  /// Every d_i is even, so each layer has a product-matrix code.
  bool encodable() const;
};

/// Equal split with the remainder spread over the last layers, e.g.
/// (30, 3, 50) -> (16, 17, 17).
MLayerPlan optimize_layers(int n, int m, int d0);

/// Largest equal degree that still corrects t0 nodes over m layers, together
/// with n - (2^m t0 + 2^(m+1) - 2) / (2^m - 1) and whether d_tilde >= bound.
struct DualResult {
  int d_tilde = 0;
  std::vector<int> t_list;
  Rational bound;
  bool at_least_bound = false;
};
DualResult dual_max_rate(int n, int m, int t0);

/// ((2^m - 1)(n - d) - 2^(m+1) + 2) / (2^m n).
Rational error_correction_efficiency(int n, int m, int d);
/// (n - d - 1) / (2n).
Rational baseline_correction_efficiency(int n, int d);
/// (n - d - 2) / n, the m -> infinity limit.
Rational correction_efficiency_limit(int n, int d);

/// sum (d_i/2)(d_i/2 + 1); throws InvalidParameters on odd d_i.
std::int64_t storage_capacity(std::span<const int> d_list);

struct CapacityAudit {
  std::vector<std::pair<std::vector<int>, std::int64_t>> compositions;
  std::int64_t max_value = 0;
  std::int64_t min_value = 0;
  std::vector<std::vector<int>> maximizers;
  std::vector<std::vector<int>> minimizers;
};

/// Enumerates nondecreasing compositions of d0 into m even positive parts.
CapacityAudit audit_storage_capacity(int d0, int m);

/// Blocks laid out row by row over m layers and rho columns; slots past
/// `blocks` are padding.
struct Lattice {
  int m = 1;
  int rho = 1;
  std::size_t blocks = 0;

  int layer_of(std::size_t block) const { return static_cast<int>(block / rho); }
  int column_of(std::size_t block) const { return static_cast<int>(block % rho); }
  /// Block index at (layer, column), or nullopt for padding.
  std::optional<std::size_t> block_at(int layer, int column) const;
  std::size_t padding() const { return static_cast<std::size_t>(m) * rho - blocks; }
};

/// rho = ceil(blocks / m) unless given; a given rho must satisfy m rho >= blocks.
Lattice plan_lattice(std::size_t blocks, int m, std::optional<int> rho = std::nullopt);

/// Number of full-rate blocks for `symbols` data symbols (at least one).
std::size_t block_count(std::size_t symbols, int d);

/// Full-rate blocks of degree enc.d() in sequence, last one zero-padded.
ShareStore encode_layered(const Encoder& enc, std::span<const Element> data);

struct LayeredRepair : NodeRepair {
  std::vector<NodeSet> column_flags;  // per lattice column
};

/// Decodes layer by layer; every node flagged in an earlier layer is erased
/// in later layers.
LayeredRepair regenerate_layered(const Encoder& enc, const Lattice& lattice, const Matrix& help,
                                 const NodeSet& erasures, int failed);

struct LayeredRead : FileRead {
  std::vector<NodeSet> column_flags;
};

LayeredRead reconstruct_layered(const Encoder& enc, const Lattice& lattice, const ShareStore& received,
                                const NodeSet& erasures, std::size_t data_symbols);

}  // namespace rmrc
