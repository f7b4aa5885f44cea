/**************************************************************************
 * component_codes.cpp
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

#include "rmrc/component_codes.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "rmrc/errors.hpp"
#include "rmrc/rs_codec.hpp"

namespace rmrc {

std::int64_t mincut_bound(int k, int d, std::int64_t alpha, std::int64_t beta) {
  std::int64_t total = 0;
  for (int i = 0; i < k; ++i) total += std::min<std::int64_t>(alpha, (d - i) * beta);
  return total;
}

std::pair<Rational, Rational> msr_point(std::int64_t file_size, int k, int d) {
  if (k <= 0 || d - k + 1 <= 0) throw InvalidParameters("msr_point requires 0 < k <= d");
  return {Rational(file_size, k), Rational(file_size * d, static_cast<std::int64_t>(k) * (d - k + 1))};
}

std::pair<Rational, Rational> mbr_point(std::int64_t file_size, int k, int d) {
  const std::int64_t den = 2LL * k * d - static_cast<std::int64_t>(k) * k + k;
  if (k <= 0 || den == 0) throw InvalidParameters("mbr_point requires 0 < k <= d");
  Rational v(2 * file_size * d, den);
  return {v, v};
}

CodeParams CodeParams::make(int n, int d) {
  if (d < 2 || d % 2 != 0) throw InvalidParameters(fmt::format("repair degree d = {} must be even and >= 2", d));
  if (n <= d) throw InvalidParameters(fmt::format("need n > d, got n = {}, d = {}", n, d));
  return CodeParams{n, d};
}

BlockKind BlockKind::fractional(int xd) {
  if (xd < 1) throw InvalidParameters(fmt::format("fractional repair dimension {} must be positive", xd));
  return BlockKind(xd);
}

namespace {

struct Support {
  int s1;
  int s2;
};

Support support_of(BlockKind kind, int d) {
  const int alpha = d / 2;
  const int xd = kind.repair_dimension(d);
  if (xd > d) throw InvalidParameters(fmt::format("xd = {} exceeds d = {}", xd, d));
  if (xd <= alpha) return {xd, 0};
  return {alpha, xd - alpha};
}

int triangle(int s) { return s * (s + 1) / 2; }

void fill_symmetric(Matrix& m, int s, std::span<const Element> symbols) {
  std::size_t k = 0;
  for (int r = 0; r < s; ++r)
    for (int c = r; c < s; ++c) {
      m(r, c) = symbols[k];
      m(c, r) = symbols[k];
      ++k;
    }
}

void read_symmetric(const Matrix& m, int s, std::vector<Element>& out) {
  for (int r = 0; r < s; ++r)
    for (int c = r; c < s; ++c) out.push_back(m(r, c));
}

bool zero_outside(const Matrix& m, int s) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if ((static_cast<int>(r) >= s || static_cast<int>(c) >= s) && m(r, c) != 0) return false;
  return true;
}

std::vector<int> to_vector(const NodeSet& s) { return {s.begin(), s.end()}; }

}  // namespace

int block_size(BlockKind kind, int d) {
  auto s = support_of(kind, d);
  return triangle(s.s1) + triangle(s.s2);
}

MessageBlock pack_block(BlockKind kind, int d, std::span<const Element> symbols) {
  const auto s = support_of(kind, d);
  const int alpha = d / 2;
  if (static_cast<int>(symbols.size()) != block_size(kind, d))
    throw std::invalid_argument(
        fmt::format("block expects {} symbols, got {}", block_size(kind, d), symbols.size()));
  MessageBlock b{kind, Matrix(alpha, alpha), Matrix(alpha, alpha)};
  fill_symmetric(b.s1, s.s1, symbols.first(triangle(s.s1)));
  fill_symmetric(b.s2, s.s2, symbols.subspan(triangle(s.s1)));
  return b;
}

std::vector<Element> unpack_block(const MessageBlock& block, int d) {
  const auto s = support_of(block.kind, d);
  std::vector<Element> out;
  out.reserve(block_size(block.kind, d));
  read_symmetric(block.s1, s.s1, out);
  read_symmetric(block.s2, s.s2, out);
  return out;
}

Encoder::Encoder(Field field, int n, int d) : field_(std::move(field)), n_(n), d_(d) {
  if (d < 2 || d % 2 != 0) throw InvalidParameters(fmt::format("repair degree d = {} must be even and >= 2", d));
  if (n < 1) throw InvalidParameters("need at least one node");
  const std::uint64_t group = field_.order() - 1;
  const std::uint64_t a = static_cast<std::uint64_t>(alpha());
  const std::uint64_t distinct_lambdas = group / std::gcd(a, group);
  if (static_cast<std::uint64_t>(n) > distinct_lambdas)
    throw InvalidParameters(fmt::format(
        "F_{} supports at most {} distinct lambda_i = g^(i*{}) but n = {}", field_.order(),
        distinct_lambdas, alpha(), n));

  points_.resize(n);
  lambdas_.resize(n);
  phi_ = Matrix(n, alpha());
  psi_ = Matrix(n, d);
  for (int i = 0; i < n; ++i) {
    points_[i] = field_.exp(i);
    lambdas_[i] = field_.exp(static_cast<std::uint64_t>(i) * a);
    Element x = 1;
    for (int c = 0; c < d; ++c) {
      if (c < alpha()) phi_(i, c) = x;
      psi_(i, c) = x;
      x = field_.mul(x, points_[i]);
    }
  }
}

Matrix Encoder::message_matrix(const MessageBlock& block) const {
  const int a = alpha();
  if (static_cast<int>(block.s1.rows()) != a || static_cast<int>(block.s1.cols()) != a ||
      static_cast<int>(block.s2.rows()) != a || static_cast<int>(block.s2.cols()) != a)
    throw std::invalid_argument("message matrices must be alpha x alpha");
  Matrix m(d_, a);
  for (int r = 0; r < a; ++r)
    for (int c = 0; c < a; ++c) {
      m(r, c) = block.s1(r, c);
      m(r + a, c) = block.s2(r, c);
    }
  return m;
}

Matrix Encoder::encode(const MessageBlock& block) const {
  return multiply(field_, psi_, message_matrix(block));
}

Element Encoder::help_symbol(std::span<const Element> share_row, int failed) const {
  return dot(field_, share_row, phi_.row(failed));
}

Regeneration Encoder::regenerate(BlockKind kind, std::span<const Element> help, const NodeSet& erasures,
                                 int failed) const {
  if (static_cast<int>(help.size()) != n_) throw std::invalid_argument("help vector must be indexed by node");
  if (failed < 0 || failed >= n_) throw std::out_of_range("failed node index");
  const int dim = kind.repair_dimension(d_);
  if (dim > d_) throw InvalidParameters("repair dimension exceeds d");

  std::vector<Element> pts, recv;
  std::vector<int> node_of;
  std::vector<int> erased;
  for (int i = 0; i < n_; ++i) {
    if (i == failed) continue;
    if (erasures.count(i)) erased.push_back(static_cast<int>(node_of.size()));
    node_of.push_back(i);
    pts.push_back(points_[i]);
    recv.push_back(help[i]);
  }
  if (static_cast<int>(pts.size()) < dim)
    throw DecodeFailure("fewer surviving helpers than the repair dimension");

  EvalCode code(field_, std::move(pts), dim);
  auto out = code.decode(recv, erased);

  // x = M phi_z^T = [S1 phi_z^T; S2 phi_z^T]; ch_z = x_top + lambda_z x_bottom.
  std::vector<Element> x(d_, 0);
  std::copy(out.message.begin(), out.message.end(), x.begin());
  Regeneration r;
  r.row.resize(alpha());
  for (int c = 0; c < alpha(); ++c) r.row[c] = field_.add(x[c], field_.mul(lambdas_[failed], x[alpha() + c]));
  for (int p : out.error_positions) r.flagged.insert(node_of[p]);
  return r;
}

Reconstruction Encoder::reconstruct(BlockKind kind, const Matrix& shares, const NodeSet& erasures) const {
  if (static_cast<int>(shares.rows()) != n_ || static_cast<int>(shares.cols()) != alpha())
    throw std::invalid_argument("shares must be n x alpha");
  if (kind.repair_dimension(d_) <= alpha()) return reconstruct_low(kind, shares, erasures);
  return reconstruct_high(kind, shares, erasures);
}

NodeSet Encoder::verify(const MessageBlock& block, const Matrix& shares, const NodeSet& erasures,
                        int radius_slack) const {
  const Matrix expect = encode(block);
  NodeSet mismatch;
  for (int i = 0; i < n_; ++i) {
    if (erasures.count(i)) continue;
    if (!std::equal(expect.row(i).begin(), expect.row(i).end(), shares.row(i).begin())) mismatch.insert(i);
  }
  if (2 * static_cast<int>(mismatch.size()) + static_cast<int>(erasures.size()) > radius_slack)
    throw DecodeFailure(fmt::format("{} corrupted rows exceed the reconstruction radius", mismatch.size()));
  return mismatch;
}

// Phi S1 = R' directly: each of the first xd columns is an (n, xd) code.
Reconstruction Encoder::reconstruct_low(BlockKind kind, const Matrix& shares, const NodeSet& erasures) const {
  const int a = alpha();
  const int xd = kind.repair_dimension(d_);
  if (static_cast<int>(erasures.size()) > n_ - xd) throw DecodeFailure("too many erasures for reconstruction");
  EvalCode code(field_, points_, xd);
  const auto erased = to_vector(erasures);

  MessageBlock block{kind, Matrix(a, a), Matrix(a, a)};
  std::vector<Element> column(n_);
  for (int c = 0; c < xd; ++c) {
    for (int i = 0; i < n_; ++i) column[i] = shares(i, c);
    auto out = code.decode(column, erased);
    for (int r = 0; r < xd; ++r) block.s1(r, c) = out.message[r];
  }
  if (!block.s1.is_symmetric()) throw DecodeFailure("decoded S1 is not symmetric");
  Reconstruction rec{std::move(block), {}};
  rec.flagged = verify(rec.block, shares, erasures, n_ - xd);
  return rec;
}

// C + Lambda D = R' Phi^T; each column of C (and D) is an (n, alpha) code with
// its diagonal coordinate erased.
Reconstruction Encoder::reconstruct_high(BlockKind kind, const Matrix& shares, const NodeSet& erasures) const {
  const int a = alpha();
  const int n = n_;
  const auto& f = field_;

  Matrix rhat(n, n);
  for (int i = 0; i < n; ++i) {
    if (erasures.count(i)) continue;
    for (int j = 0; j < n; ++j) rhat(i, j) = dot(f, shares.row(i), phi_.row(j));
  }
  Matrix cm(n, n), dm(n, n);
  for (int i = 0; i < n; ++i) {
    if (erasures.count(i)) continue;
    for (int j = i + 1; j < n; ++j) {
      if (erasures.count(j)) continue;
      const Element li = lambdas_[i], lj = lambdas_[j];
      const Element c = f.div(f.sub(f.mul(lj, rhat(i, j)), f.mul(li, rhat(j, i))), f.sub(lj, li));
      const Element dv = f.div(f.sub(rhat(i, j), rhat(j, i)), f.sub(li, lj));
      cm(i, j) = cm(j, i) = c;
      dm(i, j) = dm(j, i) = dv;
    }
  }

  struct ColumnResult {
    std::vector<Element> c_msg;
    std::vector<Element> d_msg;
    NodeSet accused;
  };

  EvalCode code(f, points_, a);
  std::vector<Element> col_c(n), col_d(n);
  NodeSet flags;
  std::map<int, ColumnResult> good;
  NodeSet trusted_columns;

  for (int round = 0; round <= n; ++round) {
    good.clear();
    for (int j = 0; j < n; ++j) {
      if (erasures.count(j) || flags.count(j)) continue;
      std::vector<int> erased{j};
      for (int e : erasures) erased.push_back(e);
      for (int e : flags) erased.push_back(e);
      for (int i = 0; i < n; ++i) {
        col_c[i] = cm(i, j);
        col_d[i] = dm(i, j);
      }
      try {
        auto oc = code.decode(col_c, erased);
        auto od = code.decode(col_d, erased);
        ColumnResult res{std::move(oc.message), std::move(od.message), {}};
        res.accused.insert(oc.error_positions.begin(), oc.error_positions.end());
        res.accused.insert(od.error_positions.begin(), od.error_positions.end());
        good.emplace(j, std::move(res));
      } catch (const DecodeFailure&) {
      }
    }
    // A column whose own node is accused by another decoded column is not
    // trusted to accuse anyone else.
    NodeSet accused_any;
    for (auto& [j, res] : good) accused_any.insert(res.accused.begin(), res.accused.end());
    trusted_columns.clear();
    NodeSet accused_trusted;
    for (auto& [j, res] : good) {
      if (accused_any.count(j)) continue;
      trusted_columns.insert(j);
      accused_trusted.insert(res.accused.begin(), res.accused.end());
    }
    if (!good.empty() && trusted_columns.empty())
      throw InconsistentFlags("every decoded column is accused by another column");

    NodeSet next = flags;
    next.insert(accused_trusted.begin(), accused_trusted.end());
    if (next == flags) break;
    flags = std::move(next);
  }

  if (static_cast<int>(trusted_columns.size()) < a)
    throw DecodeFailure(fmt::format("only {} trusted columns, need {}", trusted_columns.size(), a));

  // Row j of S1 Phi^T's transpose is phi_j S1, so Phi_J S1 = [c_msg(j)].
  Matrix phi_j(a, a), rhs_c(a, a), rhs_d(a, a);
  int r = 0;
  for (int j : trusted_columns) {
    if (r == a) break;
    const auto& res = good.at(j);
    for (int c = 0; c < a; ++c) {
      phi_j(r, c) = phi_(j, c);
      rhs_c(r, c) = res.c_msg[c];
      rhs_d(r, c) = res.d_msg[c];
    }
    ++r;
  }
  MessageBlock block{kind, solve(f, phi_j, rhs_c), solve(f, phi_j, rhs_d)};
  if (!block.s1.is_symmetric() || !block.s2.is_symmetric())
    throw DecodeFailure("decoded message matrices are not symmetric");
  if (!kind.is_full() && !zero_outside(block.s2, kind.repair_dimension(d_) - a))
    throw DecodeFailure("decoded S2 violates the fractional support");

  Reconstruction rec{std::move(block), {}};
  rec.flagged = verify(rec.block, shares, erasures, n - 1 - a);
  return rec;
}

}  // namespace rmrc
