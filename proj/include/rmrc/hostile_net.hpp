/**************************************************************************
 * hostile_net.hpp
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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmrc/component_codes.hpp"
#include "rmrc/m_layer.hpp"
#include "rmrc/random.hpp"
#include "rmrc/share_store.hpp"
#include "rmrc/two_layer.hpp"

namespace rmrc {

/// How a deployment was encoded, or how a repair/read is decoded. `plain`
/// decodes every block independently with no flag propagation.
enum class Scheme { two_layer, m_layer, plain };

enum class Strategy { uniform, fractional_only, full_only, layer_targeted };

std::string_view to_string(Scheme s);
std::string_view to_string(Strategy s);
std::optional<Scheme> parse_scheme(std::string_view s);
std::optional<Strategy> parse_strategy(std::string_view s);

struct AdversaryConfig {
  NodeSet compromised;
  double tamper_probability = 0.0;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::uniform;
  /// Required for every strategy other than uniform.
  bool layout_knowledge = false;
  /// layer_targeted: first layer each node attacks (0-based, default 0). For
  /// two-layer deployments fractional blocks are layer 0, full-rate layer 1.
  std::map<int, int> activation_layer;
};

/// Output of the secure server for one file: public encoder, node shares,
/// and the layout the honest roles need.
struct Deployment {
  Scheme scheme = Scheme::m_layer;
  Encoder encoder;
  ShareStore shares;
  std::size_t data_symbols = 0;
  std::vector<Element> data;                // ground truth for oracle comparison
  std::optional<PermutationRecord> record;  // two-layer only
  Lattice lattice;                          // m-layer; one layer of all blocks otherwise

  bool fractional_at(std::size_t pos) const { return record && record->is_fractional_at(pos); }
  int layer_of(std::size_t pos) const;
  BlockKind kind_at(std::size_t pos) const;
};

Deployment deploy_two_layer(const Field& field, const TwoLayerPlan& plan, std::span<const Element> data,
                            std::uint64_t seed);
Deployment deploy_m_layer(const Field& field, int n, int d, int m, std::span<const Element> data,
                          std::optional<int> rho = std::nullopt);

struct TraceEvent {
  int trial = 0;
  int node = 0;
  std::size_t block = 0;
  std::string action;
  bool tampered = false;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct RepairOptions {
  /// Contact only this many survivors (lowest indices first); the rest are
  /// declared erasures. Defaults to all n - 1.
  std::optional<int> helpers;
  NodeSet erasures;
};

struct RepairReport {
  bool success = false;
  std::string failure;  // diagnostic when !success
  NodeSet flagged;
  int true_positives = 0;
  int false_positives = 0;
  std::uint64_t downloaded_symbols = 0;
  std::uint64_t tampered_symbols = 0;
  /// Every compromised responder tampered at least once in a fractional block.
  bool detection_event = false;
  bool record_dropped = false;
  double wall_seconds = 0.0;
  std::vector<Element> recovered;  // regenerated share or file symbols
};

/// In-process storage network for one trial. Honest nodes answer verbatim;
/// compromised nodes add a uniform nonzero error to each eligible response
/// symbol with probability P. Holds a reference to the deployment.
class Network {
 public:
  /// Throws InvalidParameters for |compromised| > n, out-of-range nodes or
  /// probability, or a targeted strategy without layout knowledge.
  Network(const Deployment& deployment, AdversaryConfig adversary, int trial = 0);

  void enable_trace(bool on) { tracing_ = on; }

  /// Regenerates node z from simulated help symbols; success iff the result
  /// equals the stored share.
  RepairReport fail_and_repair(int z, Scheme scheme, const RepairOptions& options = {});

  /// Data-collector read from all nodes; success iff the file matches.
  RepairReport read_file(Scheme scheme, const NodeSet& erasures = {});

  const std::vector<TraceEvent>& trace() const noexcept { return trace_; }
  /// One JSON object per line with keys trial, node, block, action, tampered.
  std::string trace_jsonl() const;

 private:
  bool eligible(int node, std::size_t pos) const;
  bool fire(int node, std::size_t pos);
  void score(RepairReport& report) const;

  const Deployment& dep_;
  AdversaryConfig adv_;
  Rng rng_;
  int trial_;
  bool tracing_ = false;
  std::vector<TraceEvent> trace_;
};

struct MonteCarloResult {
  std::uint64_t trials = 0;
  std::uint64_t detections = 0;
  std::uint64_t successes = 0;  // end-to-end repairs (0 when not simulated)
  double analytic = 0.0;        // detection_probability(P, theta_L, M)

  double detection_rate() const { return trials ? static_cast<double>(detections) / trials : 0.0; }
  double success_rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

/// Samples the detection event alone: M nodes each tamper with each of
/// theta_L help symbols with probability P.
MonteCarloResult simulate_detection(double p, std::int64_t theta_l, int max_malicious, std::uint64_t trials,
                                    std::uint64_t seed);

/// Full repairs on a two-layer deployment: each trial picks a failed node and
/// M compromised helpers at random and runs the repair pipeline.
MonteCarloResult monte_carlo_detection(const Deployment& deployment, std::uint64_t trials, std::uint64_t seed);

}  // namespace rmrc
