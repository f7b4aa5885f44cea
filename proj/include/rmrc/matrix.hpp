/**************************************************************************
 * matrix.hpp
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

#include <cstddef>
#include <span>
#include <vector>

#include "rmrc/galois.hpp"

namespace rmrc {

/// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const Element> data() const noexcept { return data_; }

  bool is_zero() const;
  bool is_symmetric() const;
  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);

/// Row vector times matrix.
std::vector<Element> multiply(const Field& f, std::span<const Element> v, const Matrix& m);

Element dot(const Field& f, std::span<const Element> a, std::span<const Element> b);

/// Solves A X = B for square nonsingular A by Gauss-Jordan elimination.
/// Throws InvalidParameters when A is singular.
Matrix solve(const Field& f, Matrix a, Matrix b);

}  // namespace rmrc
