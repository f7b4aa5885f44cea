/**************************************************************************
 * rs_codec.cpp
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

#include "rmrc/rs_codec.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "rmrc/errors.hpp"
#include "rmrc/poly.hpp"

namespace rmrc {

EvalCode::EvalCode(Field field, std::vector<Element> eval_points, int dimension)
    : field_(std::move(field)), points_(std::move(eval_points)), k_(dimension) {
  if (k_ < 1 || k_ > length())
    throw InvalidParameters(fmt::format("code dimension {} outside [1, {}]", k_, length()));
  std::set<Element> seen;
  for (Element x : points_) {
    if (x == 0 || !field_.contains(x))
      throw InvalidParameters("evaluation points must be nonzero field elements");
    if (!seen.insert(x).second) throw InvalidParameters("evaluation points must be distinct");
  }
}

std::vector<Element> EvalCode::encode(std::span<const Element> message) const {
  if (static_cast<int>(message.size()) != k_)
    throw std::invalid_argument(fmt::format("message length {} != {}", message.size(), k_));
  poly::Poly p(message.begin(), message.end());
  std::vector<Element> out(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) out[i] = poly::eval(field_, p, points_[i]);
  return out;
}

DecodeOutcome EvalCode::decode(std::span<const Element> received, std::span<const int> erasures) const {
  const int n = length();
  if (static_cast<int>(received.size()) != n)
    throw std::invalid_argument(fmt::format("received length {} != {}", received.size(), n));

  std::vector<char> erased(n, 0);
  for (int e : erasures) {
    if (e < 0 || e >= n) throw std::out_of_range("erasure position outside the code");
    erased[e] = 1;
  }

  std::vector<int> live;
  std::vector<Element> xs, ys;
  for (int i = 0; i < n; ++i) {
    if (erased[i]) continue;
    live.push_back(i);
    xs.push_back(points_[i]);
    ys.push_back(received[i]);
  }
  const int n_live = static_cast<int>(live.size());
  if (n_live < k_)
    throw DecodeFailure(fmt::format("{} erasures exceed the budget {}", n - n_live, n - k_));

  poly::Poly message;
  // Fast path: interpolate through the first K live points and check the rest.
  {
    auto p = poly::interpolate(field_, std::span(xs).first(k_), std::span(ys).first(k_));
    bool clean = true;
    for (int j = k_; j < n_live && clean; ++j) clean = poly::eval(field_, p, xs[j]) == ys[j];
    if (clean) message = std::move(p);
  }

  if (message.empty() && std::any_of(ys.begin(), ys.end(), [](Element y) { return y != 0; })) {
    // Gao: partial extended Euclid on (prod(x - x_i), interpolant).
    poly::Poly r0 = poly::from_roots(field_, xs);
    poly::Poly r1 = poly::interpolate(field_, xs, ys);
    poly::Poly v0, v1{1};
    while (2 * poly::degree(r1) >= n_live + k_) {
      auto [q, r] = poly::divmod(field_, r0, r1);
      poly::Poly v = poly::sub(field_, v0, poly::mul(field_, q, v1));
      r0 = std::move(r1);
      r1 = std::move(r);
      v0 = std::move(v1);
      v1 = std::move(v);
    }
    auto [f, rem] = poly::divmod(field_, r1, v1);
    if (!rem.empty() || poly::degree(f) >= k_)
      throw DecodeFailure("no codeword within the decoding radius");
    message = std::move(f);
  }

  DecodeOutcome out;
  out.message.assign(k_, 0);
  std::copy(message.begin(), message.end(), out.message.begin());
  out.codeword = encode(out.message);
  for (int i = 0; i < n; ++i) {
    if (erased[i])
      out.erasure_positions.push_back(i);
    else if (out.codeword[i] != received[i])
      out.error_positions.push_back(i);
  }
  if (2 * static_cast<int>(out.error_positions.size()) > n_live - k_)
    throw DecodeFailure("re-encoded codeword lies outside the decoding radius");
  return out;
}

}  // namespace rmrc
