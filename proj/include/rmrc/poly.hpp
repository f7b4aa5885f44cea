/**************************************************************************
 * poly.hpp
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

#include <span>
#include <utility>
#include <vector>

#include "rmrc/galois.hpp"

namespace rmrc::poly {

/// Coefficients in ascending degree; the zero polynomial is empty.
using Poly = std::vector<Element>;

void trim(Poly& p);
int degree(const Poly& p);  // -1 for zero

Element eval(const Field& f, const Poly& p, Element x);
Poly add(const Field& f, const Poly& a, const Poly& b);
Poly sub(const Field& f, const Poly& a, const Poly& b);
Poly mul(const Field& f, const Poly& a, const Poly& b);

/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> divmod(const Field& f, const Poly& num, const Poly& den);

/// Product of (x - r) over the roots.
Poly from_roots(const Field& f, std::span<const Element> roots);

/// Unique polynomial of degree < points.size() through (points[i], values[i]).
Poly interpolate(const Field& f, std::span<const Element> points, std::span<const Element> values);

}  // namespace rmrc::poly
