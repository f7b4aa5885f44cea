/**************************************************************************
 * component_codes.hpp
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
#include <set>
#include <span>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "rmrc/galois.hpp"
#include "rmrc/matrix.hpp"

namespace rmrc {

using Rational = boost::rational<std::int64_t>;
using NodeSet = std::set<int>;

// ---- operating points ------------------------------------------------------

/// Right-hand side of the min-cut bound: sum_{i<k} min(alpha, (d - i) beta).
std::int64_t mincut_bound(int k, int d, std::int64_t alpha, std::int64_t beta);

/// (alpha, gamma) at the minimum-storage point: (B/k, B d / (k (d - k + 1))).
std::pair<Rational, Rational> msr_point(std::int64_t file_size, int k, int d);

/// (alpha, gamma) at the minimum-bandwidth point; both equal 2Bd/(2kd - k^2 + k).
std::pair<Rational, Rational> mbr_point(std::int64_t file_size, int k, int d);

// ---- code parameters -------------------------------------------------------

/// {n, k, d, alpha, beta} for a product-matrix MSR code with d = 2k - 2.
struct CodeParams {
  int n = 0;
  int d = 0;

  /// Rejects odd or nonpositive d and n <= d.
  static CodeParams make(int n, int d);

  int k() const noexcept { return d / 2 + 1; }
  int alpha() const noexcept { return d / 2; }
  int beta() const noexcept { return 1; }
  int gamma() const noexcept { return d; }
  /// B_H = alpha (alpha + 1).
  int full_block_size() const noexcept { return alpha() * (alpha() + 1); }
};

/// Which component code a block uses. The fractional code with match factor
/// x is identified by its repair dimension x*d, which must be an integer.
class BlockKind {
 public:
  static BlockKind full() { return BlockKind(std::nullopt); }
  static BlockKind fractional(int xd);

  bool is_full() const noexcept { return !xd_; }
  /// Dimension of the repair code: d for the full-rate code, xd otherwise.
  int repair_dimension(int d) const noexcept { return xd_ ? *xd_ : d; }

  friend bool operator==(const BlockKind&, const BlockKind&) = default;

 private:
  explicit BlockKind(std::optional<int> xd) : xd_(xd) {}
  std::optional<int> xd_;
};

/// Data symbols carried by one block: alpha(alpha+1) for the full-rate code,
/// xd(xd+1)/2 for x <= 0.5 and alpha(alpha+1)/2 + s(s+1)/2 with s = xd - alpha
/// above that.
int block_size(BlockKind kind, int d);

/// Symmetric message matrices of one block. For fractional blocks only the
/// leading s1 x s1 block of S1 and s2 x s2 block of S2 are populated.
struct MessageBlock {
  BlockKind kind = BlockKind::full();
  Matrix s1;
  Matrix s2;

  friend bool operator==(const MessageBlock&, const MessageBlock&) = default;
};

/// Lays block_size(kind, d) symbols into the upper triangles (row-major) of
/// S1 then S2, mirroring below the diagonal.
MessageBlock pack_block(BlockKind kind, int d, std::span<const Element> symbols);
std::vector<Element> unpack_block(const MessageBlock& block, int d);

struct Regeneration {
  std::vector<Element> row;  // alpha symbols of the failed node
  NodeSet flagged;
};

struct Reconstruction {
  MessageBlock block;
  NodeSet flagged;
};

/// Public encoding state Phi, Lambda, Psi = [Phi, Lambda Phi].
///
/// Node i evaluates at a_i = g^i and lambda_i = g^(i alpha), so row i of Psi
/// is (1, a_i, ..., a_i^(d-1)): one Vandermonde matrix serves encoding,
/// regeneration and reconstruction.
class Encoder {
 public:
  /// Throws InvalidParameters when the field is too small for distinct
  /// lambda_i, i.e. n > (q - 1) / gcd(alpha, q - 1).
  Encoder(Field field, int n, int d);

  const Field& field() const noexcept { return field_; }
  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  int alpha() const noexcept { return d_ / 2; }

  Element point(int node) const { return points_.at(node); }
  Element lambda(int node) const { return lambdas_.at(node); }
  const Matrix& phi() const noexcept { return phi_; }
  const Matrix& psi() const noexcept { return psi_; }

  /// [S1; S2] as a d x alpha matrix.
  Matrix message_matrix(const MessageBlock& block) const;

  /// n x alpha codeword; row i = psi_i M.
  Matrix encode(const MessageBlock& block) const;

  /// p_i = ch_i phi_z^T.
  Element help_symbol(std::span<const Element> share_row, int failed) const;

  /// Regenerates node `failed` from help symbols indexed by node (entry
  /// `failed` is ignored). Succeeds while 2 errors + |erasures| <=
  /// (n - 1) - repair_dimension.
  Regeneration regenerate(BlockKind kind, std::span<const Element> help, const NodeSet& erasures,
                          int failed) const;

  /// Recovers the message matrices from all n share rows, flagging nodes
  /// whose rows disagree with the decoded codeword.
  Reconstruction reconstruct(BlockKind kind, const Matrix& shares, const NodeSet& erasures) const;

 private:
  Reconstruction reconstruct_low(BlockKind kind, const Matrix& shares, const NodeSet& erasures) const;
  Reconstruction reconstruct_high(BlockKind kind, const Matrix& shares, const NodeSet& erasures) const;
  NodeSet verify(const MessageBlock& block, const Matrix& shares, const NodeSet& erasures,
                 int radius_slack) const;

  Field field_;
  int n_;
  int d_;
  std::vector<Element> points_;
  std::vector<Element> lambdas_;
  Matrix phi_;
  Matrix psi_;
};

}  // namespace rmrc
