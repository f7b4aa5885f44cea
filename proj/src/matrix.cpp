/**************************************************************************
 * matrix.cpp
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

#include "rmrc/matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "rmrc/errors.hpp"

namespace rmrc {

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Element e) { return e == 0; });
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Element s = a(r, k);
      if (s == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c)
        out(r, c) = f.add(out(r, c), f.mul(s, b(k, c)));
    }
  }
  return out;
}

std::vector<Element> multiply(const Field& f, std::span<const Element> v, const Matrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector/matrix shape mismatch");
  std::vector<Element> out(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] = f.add(out[c], f.mul(v[k], m(k, c)));
  }
  return out;
}

Element dot(const Field& f, std::span<const Element> a, std::span<const Element> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot product length mismatch");
  Element s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

Matrix solve(const Field& f, Matrix a, Matrix b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("solve: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw InvalidParameters("solve: singular matrix");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(col, c), b(pivot, c));
    }
    const Element s = f.inv(a(col, col));
    for (std::size_t c = 0; c < n; ++c) a(col, c) = f.mul(a(col, c), s);
    for (std::size_t c = 0; c < b.cols(); ++c) b(col, c) = f.mul(b(col, c), s);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Element m = a(r, col);
      for (std::size_t c = 0; c < n; ++c) a(r, c) = f.sub(a(r, c), f.mul(m, a(col, c)));
      for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) = f.sub(b(r, c), f.mul(m, b(col, c)));
    }
  }
  return b;
}

}  // namespace rmrc
