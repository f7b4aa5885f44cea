/**************************************************************************
 * figures.hpp
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

#include <string>
#include <string_view>
#include <vector>

namespace rmrc {

/// Inputs for the CSV figure emitters. Defaults reproduce the evaluation
/// settings: n = 30, M = 11, P = 0.2, B_F = 14000e6 symbols for fig1/fig2,
/// m = 3 for fig3, d0 = 50 for fig6 and d in {5, 10} for fig7.
struct FigureOptions {
  int n = 30;
  int max_malicious = 11;
  double tamper_probability = 0.2;
  double file_size = 14000e6;
  std::vector<double> pdet_grid;  // empty: default_pdet_grid()
  int m = 3;
  int d0 = 50;
  std::vector<int> d_tilde{5, 10};
  int m_min = 2;
  int m_max = 16;
};

/// 0.5, then 1 - 10^-k for k = 1..9.
std::vector<double> default_pdet_grid();

/// Fixed 9-significant-digit rendering used in every CSV cell.
std::string csv_number(double v);

/// CSV text with a header row for fig1, fig2, fig3, fig6 or fig7. Throws
/// InvalidParameters for an unknown id.
std::string figure_csv(std::string_view which, const FigureOptions& options = {});

}  // namespace rmrc
