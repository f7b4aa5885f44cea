/**************************************************************************
 * figures.cpp
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

#include "rmrc/figures.hpp"

#include <cmath>

#include <boost/rational.hpp>
#include <fmt/format.h>

#include "rmrc/errors.hpp"
#include "rmrc/m_layer.hpp"
#include "rmrc/two_layer.hpp"

namespace rmrc {

namespace {

double as_double(const Rational& r) { return boost::rational_cast<double>(r); }

std::string row(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out + '\n';
}

std::uint64_t file_symbols(double b_f) {
  if (!(b_f >= 1) || b_f > 9e18) throw InvalidParameters("file size out of range");
  return static_cast<std::uint64_t>(std::llround(b_f));
}

}  // namespace

std::vector<double> default_pdet_grid() {
  std::vector<double> g{0.5};
  for (int k = 1; k <= 9; ++k) g.push_back(1.0 - std::pow(10.0, -k));
  return g;
}

std::string csv_number(double v) { return fmt::format("{:.9g}", v); }

std::string figure_csv(std::string_view which, const FigureOptions& o) {
  const auto grid = o.pdet_grid.empty() ? default_pdet_grid() : o.pdet_grid;
  std::string out;

  if (which == "fig1" || which == "fig2") {
    const bool fig1 = which == "fig1";
    out += fig1 ? row({"p_det", "theta_l", "theta_h"})
                : row({"p_det", "eta", "delta_s", "delta_s_baseline", "b_f"});
    for (double pd : grid) {
      auto plan = plan_parameters(o.n, o.max_malicious, o.tamper_probability, pd, file_symbols(o.file_size));
      if (fig1)
        out += row({csv_number(pd), fmt::format("{}", plan.theta_l), fmt::format("{}", plan.theta_h)});
      else
        out += row({csv_number(pd), csv_number(plan.efficiency_ratio()), csv_number(plan.storage_efficiency()),
                    csv_number(plan.baseline_efficiency()), csv_number(o.file_size)});
    }
    return out;
  }
  if (which == "fig3") {
    out += row({"d_tilde", "delta_c", "delta_c_baseline"});
    for (int d = 1; d <= o.n - 2; ++d)
      out += row({fmt::format("{}", d), csv_number(as_double(error_correction_efficiency(o.n, o.m, d))),
                  csv_number(as_double(baseline_correction_efficiency(o.n, d)))});
    return out;
  }
  if (which == "fig6") {
    out += row({"m", "d_tilde", "delta_c", "delta_c_baseline"});
    for (int m = o.m_min; m <= o.m_max; ++m) {
      const int d = rounded_split(o.d0, m);
      out += row({fmt::format("{}", m), fmt::format("{}", d),
                  csv_number(as_double(error_correction_efficiency(o.n, m, d))),
                  csv_number(as_double(baseline_correction_efficiency(o.n, d)))});
    }
    return out;
  }
  if (which == "fig7") {
    std::string header = "m";
    for (int d : o.d_tilde) header += fmt::format(",delta_c_d{}", d);
    for (int d : o.d_tilde) header += fmt::format(",limit_d{}", d);
    out += header + '\n';
    for (int m = o.m_min; m <= o.m_max; ++m) {
      std::string line = fmt::format("{}", m);
      for (int d : o.d_tilde) line += ',' + csv_number(as_double(error_correction_efficiency(o.n, m, d)));
      for (int d : o.d_tilde) line += ',' + csv_number(as_double(correction_efficiency_limit(o.n, d)));
      out += line + '\n';
    }
    return out;
  }
  throw InvalidParameters(fmt::format("unknown figure '{}'", which));
}

}  // namespace rmrc
