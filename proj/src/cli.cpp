/**************************************************************************
 * cli.cpp
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

#include "rmrc/cli.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "rmrc/errors.hpp"
#include "rmrc/figures.hpp"
#include "rmrc/hostile_net.hpp"
#include "rmrc/m_layer.hpp"
#include "rmrc/share_file.hpp"
#include "rmrc/two_layer.hpp"

namespace rmrc {

namespace {

struct AdversaryFlags {
  std::vector<int> compromised;
  double p = 1.0;
  std::uint64_t seed = 1;
  std::string strategy = "uniform";
  bool layout_knowledge = false;
  std::vector<std::string> activation;
  std::string decoder = "auto";
  std::string trace;

  void attach(CLI::App* cmd) {
    cmd->add_option("--compromised", compromised, "Compromised node indices")->delimiter(',');
    cmd->add_option("--P", p, "Per-symbol tamper probability")->capture_default_str();
    cmd->add_option("--seed", seed, "Adversary seed")->capture_default_str();
    cmd->add_option("--strategy", strategy, "uniform|fractional_only|full_only|layer_targeted")
        ->capture_default_str();
    cmd->add_flag("--layout-knowledge", layout_knowledge, "Grant the adversary the block layout");
    cmd->add_option("--activation", activation, "node:layer pairs for layer_targeted")->delimiter(',');
    cmd->add_option("--decoder", decoder, "auto|plain|two_layer|m_layer")->capture_default_str();
    cmd->add_option("--trace", trace, "Write the event trace as JSON lines");
  }

  AdversaryConfig config() const {
    AdversaryConfig c;
    c.compromised.insert(compromised.begin(), compromised.end());
    c.tamper_probability = p;
    c.seed = seed;
    auto s = parse_strategy(strategy);
    if (!s) throw InvalidParameters(fmt::format("unknown strategy '{}'", strategy));
    c.strategy = *s;
    c.layout_knowledge = layout_knowledge;
    for (const auto& a : activation) {
      auto colon = a.find(':');
      if (colon == std::string::npos) throw InvalidParameters(fmt::format("activation '{}' is not node:layer", a));
      c.activation_layer[std::stoi(a.substr(0, colon))] = std::stoi(a.substr(colon + 1));
    }
    return c;
  }

  Scheme scheme_for(const Deployment& dep) const {
    if (decoder == "auto") return dep.scheme;
    auto s = parse_scheme(decoder);
    if (!s) throw InvalidParameters(fmt::format("unknown decoder '{}'", decoder));
    return *s;
  }
};

std::string join(const NodeSet& s) { return fmt::format("{}", fmt::join(s, ",")); }

void print_report(std::ostream& out, const RepairReport& r) {
  out << fmt::format("success: {}\n", r.success);
  if (!r.success) out << fmt::format("failure: {}\n", r.failure);
  out << fmt::format("flagged: {}\n", join(r.flagged));
  out << fmt::format("true_positives: {}\nfalse_positives: {}\n", r.true_positives, r.false_positives);
  out << fmt::format("downloaded_symbols: {}\ntampered_symbols: {}\n", r.downloaded_symbols, r.tampered_symbols);
  out << fmt::format("detection_event: {}\nwall_seconds: {:.6f}\n", r.detection_event, r.wall_seconds);
}

void write_trace(const std::string& path, const Network& net) {
  if (path.empty()) return;
  auto text = net.trace_jsonl();
  write_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::uint64_t file_symbols(double b_f) {
  if (!(b_f >= 1) || b_f > 9e18) throw InvalidParameters("file size out of range");
  return static_cast<std::uint64_t>(std::llround(b_f));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate-matched regenerating codes: planning, storage simulation and figures"};
  app.require_subcommand(1);

  // plan2
  int n = 30, malicious = 11;
  double p = 0.2, pdet = 0.999999, bf = 14000e6;
  auto* plan2 = app.add_subcommand("plan2", "Plan a two-layer code");
  plan2->add_option("--n", n)->capture_default_str();
  plan2->add_option("--M", malicious)->capture_default_str();
  plan2->add_option("--P", p)->capture_default_str();
  plan2->add_option("--pdet", pdet)->capture_default_str();
  plan2->add_option("--bf", bf, "File size in symbols")->capture_default_str();

  // planm
  int m = 3, d0 = 50;
  auto* planm = app.add_subcommand("planm", "Plan an m-layer code");
  planm->add_option("--n", n)->capture_default_str();
  planm->add_option("--m", m)->capture_default_str();
  planm->add_option("--d0", d0)->capture_default_str();

  // store
  std::string input, dir, scheme_name = "m_layer";
  std::uint32_t order = 65536;
  std::uint64_t seed = 1;
  int d = 16, rho = 0;
  auto* store = app.add_subcommand("store", "Encode a file into per-node share files");
  store->add_option("--input", input)->required();
  store->add_option("--out", dir, "Output directory")->required();
  store->add_option("--scheme", scheme_name, "two_layer|m_layer")->capture_default_str();
  store->add_option("--field", order, "Field order")->capture_default_str();
  store->add_option("--seed", seed, "Permutation seed")->capture_default_str();
  store->add_option("--n", n)->capture_default_str();
  store->add_option("--M", malicious)->capture_default_str();
  store->add_option("--P", p)->capture_default_str();
  store->add_option("--pdet", pdet)->capture_default_str();
  store->add_option("--d", d, "m-layer repair degree")->capture_default_str();
  store->add_option("--m", m)->capture_default_str();
  store->add_option("--rho", rho, "Lattice columns (0: ceil(blocks/m))")->capture_default_str();

  // repair
  int node = 0, helpers = 0;
  AdversaryFlags repair_adv;
  auto* repair = app.add_subcommand("repair", "Fail and regenerate one node");
  repair->add_option("--dir", dir)->required();
  repair->add_option("--node", node)->required();
  repair->add_option("--helpers", helpers, "Contact only this many survivors (0: all)")->capture_default_str();
  repair_adv.attach(repair);

  // read
  std::string output;
  AdversaryFlags read_adv;
  auto* read = app.add_subcommand("read", "Reconstruct the file from all nodes");
  read->add_option("--dir", dir)->required();
  read->add_option("--out", output, "Recovered file path")->required();
  read_adv.attach(read);

  // figures
  std::string which;
  FigureOptions fig;
  auto* figures = app.add_subcommand("figures", "Emit figure data as CSV");
  figures->add_option("--which", which, "fig1|fig2|fig3|fig6|fig7")->required();
  figures->add_option("--out", output, "CSV path (default stdout)");
  figures->add_option("--n", fig.n)->capture_default_str();
  figures->add_option("--M", fig.max_malicious)->capture_default_str();
  figures->add_option("--P", fig.tamper_probability)->capture_default_str();
  figures->add_option("--bf", fig.file_size)->capture_default_str();
  figures->add_option("--pdet", fig.pdet_grid, "P_det grid")->delimiter(',');
  figures->add_option("--m", fig.m)->capture_default_str();
  figures->add_option("--d0", fig.d0)->capture_default_str();
  figures->add_option("--d-tilde", fig.d_tilde)->delimiter(',');

  // montecarlo
  std::uint64_t trials = 10000;
  bool repairs = false;
  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo check of the detection probability");
  mc->add_option("--n", n)->capture_default_str();
  mc->add_option("--M", malicious)->capture_default_str();
  mc->add_option("--P", p)->capture_default_str();
  mc->add_option("--pdet", pdet)->capture_default_str();
  mc->add_option("--bf", bf)->capture_default_str();
  mc->add_option("--trials", trials)->capture_default_str();
  mc->add_option("--seed", seed)->capture_default_str();
  mc->add_option("--field", order)->capture_default_str();
  mc->add_flag("--repairs", repairs, "Run full repairs on an encoded file of --bf symbols");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*plan2) {
      auto plan = plan_parameters(n, malicious, p, pdet, file_symbols(bf));
      out << fmt::format("n: {}\nM: {}\nd: {}\nx: {}/{}\nxd: {}\nalpha: {}\n", plan.n, plan.max_malicious, plan.d,
                         plan.match_factor().numerator(), plan.match_factor().denominator(), plan.xd,
                         plan.alpha());
      out << fmt::format("B_H: {}\nB_L: {}\ntheta_L: {}\ntheta_H: {}\n", plan.full_block_size(),
                         plan.fractional_block_size(), plan.theta_l, plan.theta_h);
      out << fmt::format("detection_probability: {}\n",
                         csv_number(detection_probability(p, plan.theta_l, malicious)));
      out << fmt::format("delta_s: {}\ndelta_s_baseline: {}\neta: {}\n", csv_number(plan.storage_efficiency()),
                         csv_number(plan.baseline_efficiency()), csv_number(plan.efficiency_ratio()));
      return kExitOk;
    }
    if (*planm) {
      auto plan = optimize_layers(n, m, d0);
      auto bound = worst_case_capability(n, m, plan.d_list.back());
      out << fmt::format("n: {}\nm: {}\nd0: {}\nd_tilde: {}\n", n, m, d0, plan.d_tilde);
      out << fmt::format("d: {}\nt: {}\neps: {}\n", fmt::join(plan.d_list, ","), fmt::join(plan.t_list, ","),
                         fmt::join(plan.eps_list, ","));
      out << fmt::format("worst_case_t: {}\n", csv_number(boost::rational_cast<double>(bound)));
      out << fmt::format("encodable: {}\n", plan.encodable());
      out << fmt::format("delta_c: {}\ndelta_c_baseline: {}\n",
                         csv_number(boost::rational_cast<double>(error_correction_efficiency(n, m, plan.d_tilde))),
                         csv_number(boost::rational_cast<double>(baseline_correction_efficiency(n, plan.d_tilde))));
      return kExitOk;
    }
    if (*store) {
      auto bytes = read_bytes(input);
      auto field = Field::make(order);
      auto symbols = bytes_to_symbols(field, bytes);
      Deployment dep = [&] {
        if (scheme_name == "two_layer") {
          auto plan = plan_parameters(n, malicious, p, pdet, symbols.size());
          return deploy_two_layer(field, plan, symbols, seed);
        }
        if (scheme_name == "m_layer")
          return deploy_m_layer(field, n, d, m, symbols, rho > 0 ? std::optional<int>(rho) : std::nullopt);
        throw InvalidParameters(fmt::format("unknown scheme '{}'", scheme_name));
      }();
      save_deployment(dir, dep, bytes.size());
      out << fmt::format("stored {} bytes as {} blocks on {} nodes in {}\n", bytes.size(), dep.shares.blocks(),
                         dep.encoder.n(), dir);
      return kExitOk;
    }
    if (*repair) {
      auto stored = load_deployment(dir);
      Network net(stored.deployment, repair_adv.config());
      net.enable_trace(!repair_adv.trace.empty());
      RepairOptions opts;
      if (helpers > 0) opts.helpers = helpers;
      auto report = net.fail_and_repair(node, repair_adv.scheme_for(stored.deployment), opts);
      print_report(out, report);
      write_trace(repair_adv.trace, net);
      return report.success ? kExitOk : kExitDecodeFailure;
    }
    if (*read) {
      auto stored = load_deployment(dir);
      Network net(stored.deployment, read_adv.config());
      net.enable_trace(!read_adv.trace.empty());
      auto report = net.read_file(read_adv.scheme_for(stored.deployment));
      print_report(out, report);
      write_trace(read_adv.trace, net);
      if (!report.success) return kExitDecodeFailure;
      write_bytes(output, symbols_to_bytes(stored.deployment.encoder.field(), report.recovered, stored.byte_length));
      return kExitOk;
    }
    if (*figures) {
      auto csv = figure_csv(which, fig);
      if (output.empty())
        out << csv;
      else
        write_bytes(output, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
      return kExitOk;
    }
    if (*mc) {
      if (trials == 0) throw InvalidParameters("trials must be positive");
      auto plan = plan_parameters(n, malicious, p, pdet, file_symbols(bf));
      MonteCarloResult r;
      if (repairs) {
        auto field = Field::make(order);
        Rng data_rng(seed);
        std::vector<Element> data(plan.file_size);
        for (auto& s : data) s = static_cast<Element>(data_rng.below(field.order()));
        auto dep = deploy_two_layer(field, plan, data, seed);
        r = monte_carlo_detection(dep, trials, seed);
      } else {
        r = simulate_detection(p, plan.theta_l, malicious, trials, seed);
      }
      const double sigma = std::sqrt(pdet * (1 - pdet) / static_cast<double>(trials));
      out << fmt::format("theta_L: {}\ntrials: {}\n", plan.theta_l, r.trials);
      out << fmt::format("analytic: {}\nempirical: {}\n", csv_number(r.analytic), csv_number(r.detection_rate()));
      if (repairs) out << fmt::format("repair_success: {}\n", csv_number(r.success_rate()));
      out << fmt::format("lower_3sigma: {}\nwithin_3sigma: {}\n", csv_number(pdet - 3 * sigma),
                         r.detection_rate() >= pdet - 3 * sigma);
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DecodeFailure& e) {
    err << "decode failure: " << e.what() << '\n';
    return kExitDecodeFailure;
  } catch (const InvalidParameters& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
  return kExitUsage;
}

}  // namespace rmrc
