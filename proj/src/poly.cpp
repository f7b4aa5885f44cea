/**************************************************************************
 * poly.cpp
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

#include "rmrc/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmrc::poly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

Element eval(const Field& f, const Poly& p, Element x) {
  Element acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
  return acc;
}

Poly add(const Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Poly sub(const Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Poly mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Field& f, const Poly& num, const Poly& den) {
  const int dd = degree(den);
  if (dd < 0) throw std::domain_error("polynomial division by zero");
  Poly rem = num;
  trim(rem);
  const int dn = degree(rem);
  if (dn < dd) return {{}, rem};
  Poly quo(dn - dd + 1, 0);
  const Element lead_inv = f.inv(den[dd]);
  for (int i = dn; i >= dd; --i) {
    const Element c = f.mul(rem[i], lead_inv);
    quo[i - dd] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, den[j]));
  }
  trim(quo);
  trim(rem);
  return {quo, rem};
}

Poly from_roots(const Field& f, std::span<const Element> roots) {
  Poly r{1};
  for (Element root : roots) {
    Poly next(r.size() + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], r[i]);
      next[i] = f.sub(next[i], f.mul(root, r[i]));
    }
    r = std::move(next);
  }
  return r;
}

Poly interpolate(const Field& f, std::span<const Element> points, std::span<const Element> values) {
  const std::size_t n = points.size();
  if (values.size() != n) throw std::invalid_argument("interpolate: length mismatch");
  // Newton divided differences, then expansion into the monomial basis.
  std::vector<Element> coef(values.begin(), values.end());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const Element num = f.sub(coef[i], coef[i - 1]);
      const Element den = f.sub(points[i], points[i - level]);
      coef[i] = f.div(num, den);
    }
  }
  Poly r;
  for (std::size_t k = n; k-- > 0;) {
    // r = r * (x - points[k]) + coef[k]
    Poly next(r.size() + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], r[i]);
      next[i] = f.sub(next[i], f.mul(points[k], r[i]));
    }
    next[0] = f.add(next[0], coef[k]);
    r = std::move(next);
  }
  trim(r);
  return r;
}

}  // namespace rmrc::poly
