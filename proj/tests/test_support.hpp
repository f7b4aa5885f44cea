/**************************************************************************
 * test_support.hpp
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
#include <set>
#include <vector>

#include "rmrc/galois.hpp"
#include "rmrc/random.hpp"

namespace rmrc::testing {

inline std::vector<Element> random_symbols(const Field& f, Rng& rng, std::size_t count) {
  std::vector<Element> v(count);
  for (auto& x : v) x = static_cast<Element>(rng.below(f.order()));
  return v;
}

inline Element random_nonzero(const Field& f, Rng& rng) {
  return static_cast<Element>(1 + rng.below(f.order() - 1));
}

/// `count` distinct indices from [0, n), excluding `skip`.
inline std::vector<int> random_subset(Rng& rng, int n, int count, const std::set<int>& skip = {}) {
  std::vector<int> pool;
  for (int i = 0; i < n; ++i)
    if (!skip.count(i)) pool.push_back(i);
  rng.shuffle(pool);
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace rmrc::testing
