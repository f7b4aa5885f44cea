/**************************************************************************
 * share_store.hpp
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

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "rmrc/galois.hpp"
#include "rmrc/component_codes.hpp"
#include "rmrc/matrix.hpp"

namespace rmrc {

/// Node-major storage for a multi-block file: node i holds alpha symbols for
/// each block position, concatenated in position order.
class ShareStore {
 public:
  ShareStore() = default;
  ShareStore(int n, int alpha, std::size_t blocks)
      : n_(n), alpha_(alpha), blocks_(blocks), nodes_(n, std::vector<Element>(alpha * blocks, 0)) {}

  int n() const noexcept { return n_; }
  int alpha() const noexcept { return alpha_; }
  std::size_t blocks() const noexcept { return blocks_; }

  std::span<const Element> node(int i) const { return nodes_.at(i); }
  std::vector<Element>& node_mut(int i) { return nodes_.at(i); }

  std::span<const Element> slot(int node, std::size_t pos) const {
    return std::span<const Element>(nodes_.at(node)).subspan(pos * alpha_, alpha_);
  }
  std::span<Element> slot(int node, std::size_t pos) {
    return std::span<Element>(nodes_.at(node)).subspan(pos * alpha_, alpha_);
  }

  /// n x alpha share matrix of one block position.
  Matrix block(std::size_t pos) const {
    Matrix m(n_, alpha_);
    for (int i = 0; i < n_; ++i) {
      auto s = slot(i, pos);
      std::copy(s.begin(), s.end(), m.row(i).begin());
    }
    return m;
  }

  void set_block(std::size_t pos, const Matrix& m) {
    if (static_cast<int>(m.rows()) != n_ || static_cast<int>(m.cols()) != alpha_)
      throw std::invalid_argument("block shape does not match the store");
    for (int i = 0; i < n_; ++i) std::copy(m.row(i).begin(), m.row(i).end(), slot(i, pos).begin());
  }

  friend bool operator==(const ShareStore&, const ShareStore&) = default;

 private:
  int n_ = 0;
  int alpha_ = 0;
  std::size_t blocks_ = 0;
  std::vector<std::vector<Element>> nodes_;
};

/// Result of repairing one node across every block of a file.
struct NodeRepair {
  std::vector<Element> share;  // alpha symbols per block position
  NodeSet flagged;
};

/// Result of reading a whole file.
struct FileRead {
  std::vector<Element> data;
  NodeSet flagged;
};

}  // namespace rmrc
