/**************************************************************************
 * hostile_net.cpp
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

#include "rmrc/hostile_net.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/format.h>
#include <json.hpp>

#include "rmrc/errors.hpp"

namespace rmrc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const TwoLayerPlan& two_layer_plan(const Deployment& dep) {
  if (!dep.record) throw InvalidParameters("deployment has no two-layer record");
  return dep.record->plan();
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::two_layer: return "two_layer";
    case Scheme::m_layer: return "m_layer";
    case Scheme::plain: return "plain";
  }
  return "?";
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::uniform: return "uniform";
    case Strategy::fractional_only: return "fractional_only";
    case Strategy::full_only: return "full_only";
    case Strategy::layer_targeted: return "layer_targeted";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view s) {
  for (auto v : {Scheme::two_layer, Scheme::m_layer, Scheme::plain})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  for (auto v : {Strategy::uniform, Strategy::fractional_only, Strategy::full_only, Strategy::layer_targeted})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

int Deployment::layer_of(std::size_t pos) const {
  if (record) return record->is_fractional_at(pos) ? 0 : 1;
  return lattice.layer_of(pos);
}

BlockKind Deployment::kind_at(std::size_t pos) const {
  if (fractional_at(pos)) return record->plan().fractional_kind();
  return BlockKind::full();
}

Deployment deploy_two_layer(const Field& field, const TwoLayerPlan& plan, std::span<const Element> data,
                            std::uint64_t seed) {
  Encoder enc(field, plan.n, plan.d);
  auto encoded = encode_file(enc, plan, data, seed);
  const std::size_t blocks = encoded.shares.blocks();
  return Deployment{Scheme::two_layer,
                    std::move(enc),
                    std::move(encoded.shares),
                    data.size(),
                    {data.begin(), data.end()},
                    std::move(encoded.record),
                    Lattice{1, static_cast<int>(blocks), blocks}};
}

Deployment deploy_m_layer(const Field& field, int n, int d, int m, std::span<const Element> data,
                          std::optional<int> rho) {
  Encoder enc(field, n, d);
  auto shares = encode_layered(enc, data);
  auto lattice = plan_lattice(shares.blocks(), m, rho);
  return Deployment{Scheme::m_layer,  std::move(enc), std::move(shares), data.size(), {data.begin(), data.end()},
                    std::nullopt,     lattice};
}

Network::Network(const Deployment& deployment, AdversaryConfig adversary, int trial)
    : dep_(deployment), adv_(std::move(adversary)), rng_(adv_.seed), trial_(trial) {
  const int n = dep_.encoder.n();
  if (static_cast<int>(adv_.compromised.size()) > n)
    throw InvalidParameters(fmt::format("tau = {} exceeds n = {}", adv_.compromised.size(), n));
  for (int i : adv_.compromised)
    if (i < 0 || i >= n) throw InvalidParameters(fmt::format("compromised node {} out of range", i));
  if (!(adv_.tamper_probability >= 0.0 && adv_.tamper_probability <= 1.0))
    throw InvalidParameters("tamper probability must lie in [0, 1]");
  if (adv_.strategy != Strategy::uniform && !adv_.layout_knowledge)
    throw InvalidParameters(fmt::format("strategy {} requires layout knowledge", to_string(adv_.strategy)));
}

bool Network::eligible(int node, std::size_t pos) const {
  switch (adv_.strategy) {
    case Strategy::uniform: return true;
    case Strategy::fractional_only: return dep_.fractional_at(pos);
    case Strategy::full_only: return !dep_.fractional_at(pos);
    case Strategy::layer_targeted: {
      auto it = adv_.activation_layer.find(node);
      return dep_.layer_of(pos) >= (it == adv_.activation_layer.end() ? 0 : it->second);
    }
  }
  return false;
}

bool Network::fire(int node, std::size_t pos) {
  if (!adv_.compromised.count(node) || !eligible(node, pos)) return false;
  return rng_.bernoulli(adv_.tamper_probability);
}

void Network::score(RepairReport& report) const {
  for (int i : report.flagged) (adv_.compromised.count(i) ? report.true_positives : report.false_positives)++;
}

RepairReport Network::fail_and_repair(int z, Scheme scheme, const RepairOptions& options) {
  const auto start = Clock::now();
  const auto& enc = dep_.encoder;
  const int n = enc.n();
  const std::size_t blocks = dep_.shares.blocks();
  if (z < 0 || z >= n) throw std::out_of_range("failed node index");
  const auto& f = enc.field();

  NodeSet erasures = options.erasures;
  erasures.erase(z);
  if (options.helpers) {
    int contacted = 0;
    for (int i = 0; i < n; ++i) {
      if (i == z || erasures.count(i)) continue;
      if (contacted < *options.helpers)
        ++contacted;
      else
        erasures.insert(i);
    }
  }

  RepairReport report;
  Matrix help(n, blocks);
  std::set<int> detected;
  for (std::size_t pos = 0; pos < blocks; ++pos) {
    for (int i = 0; i < n; ++i) {
      if (i == z || erasures.count(i)) continue;
      Element p = enc.help_symbol(dep_.shares.slot(i, pos), z);
      const bool tampered = fire(i, pos);
      if (tampered) {
        p = f.add(p, static_cast<Element>(1 + rng_.below(f.order() - 1)));
        ++report.tampered_symbols;
        if (dep_.fractional_at(pos)) detected.insert(i);
      }
      help(i, pos) = p;
      ++report.downloaded_symbols;
      if (tracing_) trace_.push_back({trial_, i, pos, "help", tampered});
    }
  }
  NodeSet responders;
  for (int i : adv_.compromised)
    if (i != z && !erasures.count(i)) responders.insert(i);
  report.detection_event = std::includes(detected.begin(), detected.end(), responders.begin(), responders.end());

  try {
    switch (scheme) {
      case Scheme::two_layer: {
        two_layer_plan(dep_);
        RecordLease lease(*dep_.record);
        auto r = regenerate_node(enc, lease.get(), help, erasures, z);
        lease.drop();
        report.record_dropped = !lease.held();
        report.recovered = std::move(r.share);
        report.flagged = std::move(r.flagged);
        break;
      }
      case Scheme::m_layer: {
        if (dep_.record) throw InvalidParameters("layered decoding needs an m-layer deployment");
        auto r = regenerate_layered(enc, dep_.lattice, help, erasures, z);
        report.recovered = std::move(r.share);
        report.flagged = std::move(r.flagged);
        break;
      }
      case Scheme::plain: {
        const int a = enc.alpha();
        report.recovered.assign(a * blocks, 0);
        std::vector<Element> column(n);
        for (std::size_t pos = 0; pos < blocks; ++pos) {
          for (int i = 0; i < n; ++i) column[i] = help(i, pos);
          auto r = enc.regenerate(dep_.kind_at(pos), column, erasures, z);
          std::copy(r.row.begin(), r.row.end(), report.recovered.begin() + pos * a);
          report.flagged.insert(r.flagged.begin(), r.flagged.end());
        }
        break;
      }
    }
    auto truth = dep_.shares.node(z);
    report.success = std::equal(truth.begin(), truth.end(), report.recovered.begin(), report.recovered.end());
    if (!report.success) report.failure = "regenerated share differs from the stored share";
  } catch (const DecodeFailure& e) {
    report.failure = e.what();
  }
  score(report);
  if (tracing_) trace_.push_back({trial_, z, 0, report.success ? "repaired" : "repair_failed", false});
  report.wall_seconds = seconds_since(start);
  return report;
}

RepairReport Network::read_file(Scheme scheme, const NodeSet& erasures) {
  const auto start = Clock::now();
  const auto& enc = dep_.encoder;
  const auto& f = enc.field();
  const int n = enc.n();
  const std::size_t blocks = dep_.shares.blocks();

  RepairReport report;
  ShareStore received(n, enc.alpha(), blocks);
  std::set<int> detected;
  for (std::size_t pos = 0; pos < blocks; ++pos) {
    for (int i = 0; i < n; ++i) {
      if (erasures.count(i)) continue;
      auto src = dep_.shares.slot(i, pos);
      auto dst = received.slot(i, pos);
      bool any = false;
      for (std::size_t c = 0; c < src.size(); ++c) {
        dst[c] = src[c];
        if (fire(i, pos)) {
          dst[c] = f.add(dst[c], static_cast<Element>(1 + rng_.below(f.order() - 1)));
          ++report.tampered_symbols;
          any = true;
        }
      }
      if (any && dep_.fractional_at(pos)) detected.insert(i);
      report.downloaded_symbols += src.size();
      if (tracing_) trace_.push_back({trial_, i, pos, "read", any});
    }
  }
  NodeSet responders;
  for (int i : adv_.compromised)
    if (!erasures.count(i)) responders.insert(i);
  report.detection_event = std::includes(detected.begin(), detected.end(), responders.begin(), responders.end());

  try {
    switch (scheme) {
      case Scheme::two_layer: {
        two_layer_plan(dep_);
        auto r = reconstruct_file(enc, *dep_.record, received, erasures);
        report.recovered = std::move(r.data);
        report.flagged = std::move(r.flagged);
        break;
      }
      case Scheme::m_layer: {
        if (dep_.record) throw InvalidParameters("layered decoding needs an m-layer deployment");
        auto r = reconstruct_layered(enc, dep_.lattice, received, erasures, dep_.data_symbols);
        report.recovered = std::move(r.data);
        report.flagged = std::move(r.flagged);
        break;
      }
      case Scheme::plain: {
        // Independent decode of every block, then the scheme's data layout.
        std::vector<Element> padded;
        std::vector<std::pair<std::int64_t, std::vector<Element>>> pieces;
        for (std::size_t pos = 0; pos < blocks; ++pos) {
          auto r = enc.reconstruct(dep_.kind_at(pos), received.block(pos), erasures);
          report.flagged.insert(r.flagged.begin(), r.flagged.end());
          const std::int64_t logical = dep_.record ? dep_.record->logical_at(pos) : static_cast<std::int64_t>(pos);
          pieces.emplace_back(logical, unpack_block(r.block, enc.d()));
        }
        std::sort(pieces.begin(), pieces.end());
        for (auto& [id, syms] : pieces) padded.insert(padded.end(), syms.begin(), syms.end());
        padded.resize(dep_.data_symbols);
        report.recovered = std::move(padded);
        break;
      }
    }
    report.success = report.recovered == dep_.data;
    if (!report.success) report.failure = "recovered file differs from the original";
  } catch (const DecodeFailure& e) {
    report.failure = e.what();
  }
  score(report);
  if (tracing_) trace_.push_back({trial_, -1, 0, report.success ? "read_ok" : "read_failed", false});
  report.wall_seconds = seconds_since(start);
  return report;
}

std::string Network::trace_jsonl() const {
  std::string out;
  for (const auto& e : trace_) {
    nlohmann::ordered_json j;
    j["trial"] = e.trial;
    j["node"] = e.node;
    j["block"] = e.block;
    j["action"] = e.action;
    j["tampered"] = e.tampered;
    out += j.dump();
    out += '\n';
  }
  return out;
}

MonteCarloResult simulate_detection(double p, std::int64_t theta_l, int max_malicious, std::uint64_t trials,
                                    std::uint64_t seed) {
  if (trials == 0) throw InvalidParameters("need at least one trial");
  MonteCarloResult r;
  r.trials = trials;
  r.analytic = detection_probability(p, theta_l, max_malicious);
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    bool all = true;
    for (int node = 0; node < max_malicious; ++node) {
      bool hit = false;
      // Draw every symbol so the stream does not depend on early exits.
      for (std::int64_t b = 0; b < theta_l; ++b) hit |= rng.bernoulli(p);
      all &= hit;
    }
    r.detections += all;
  }
  return r;
}

MonteCarloResult monte_carlo_detection(const Deployment& dep, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidParameters("need at least one trial");
  const auto& plan = two_layer_plan(dep);
  MonteCarloResult r;
  r.trials = trials;
  r.analytic = detection_probability(plan.tamper_probability, plan.theta_l, plan.max_malicious);
  Rng rng(seed);
  const int n = plan.n;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int z = static_cast<int>(rng.below(n));
    std::vector<int> others;
    for (int i = 0; i < n; ++i)
      if (i != z) others.push_back(i);
    rng.shuffle(others);
    AdversaryConfig adv;
    adv.compromised.insert(others.begin(), others.begin() + plan.max_malicious);
    adv.tamper_probability = plan.tamper_probability;
    adv.seed = rng.next();
    Network net(dep, adv, static_cast<int>(t));
    auto rep = net.fail_and_repair(z, Scheme::two_layer);
    r.detections += rep.detection_event;
    r.successes += rep.success;
  }
  return r;
}

}  // namespace rmrc
