#pragma once

// Scenario files describe everything an episode needs: zones, nodes,
// edges, zone gates, the agent roster, budgets, horizon, and noise knobs.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netforge/core/state.hpp"

namespace netforge::core {

struct AgentSpec {
  int id = 0;
  Team team = Team::Blue;
  std::optional<ZoneName> zone;  // blue agents are zone-assigned
};

struct NodeSpec {
  int id = -1;  // -1 = assign sequentially
  std::string name;
  ZoneName zone = ZoneName::DMZ;
  std::vector<Service> services;
  std::string token;  // empty = holds no token
};

struct GreenConfig {
  bool enabled = true;
  Real lambda_day = 5.0;
  Real lambda_night = 0.5;
  int day_start = 8;  // day regime: floor(tick) mod 24 in [day_start, day_end)
  int day_end = 20;
};

struct EncoderConfig {
  int corpus_size = 2000;
  std::uint64_t fit_seed = 7;
  int vocab_cap = 20000;
  int ngram_min = 3;
  int ngram_max = 5;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::vector<Zone> zones;
  std::vector<NodeSpec> nodes;
  std::vector<std::pair<int, int>> edges;  // undirected unless directed=true
  bool directed_edges = false;
  std::vector<ZoneGate> gates;
  std::vector<std::string> tokens;  // token universe
  std::vector<AgentSpec> agents;

  Real energy_budget = 1000.0;
  Real horizon_ticks = 500.0;
  Real sojourn_jitter = 0.2;
  int blue_concurrency_cap = 2;
  bool honeytokens_enabled = true;
  bool honeytoken_trip_bonus = true;
  bool encode_telemetry = true;
  GreenConfig green;
  EncoderConfig encoder;
  std::string action_registry_path;  // empty = built-in registry
  std::string encoder_model_path;    // empty = fit from a seed corpus
  std::string mode = "sim";          // sim | replay
  std::uint64_t seed = 0;

  std::vector<int> red_agent_ids() const;
  std::vector<int> blue_agent_ids() const;
};

// Validates the scenario and produces the node/edge/gate structure.
// Throws std::invalid_argument on duplicate node ids, gates referencing
// unknown tokens, node counts above the 100-slot target space, or zones
// declared without nodes.
Topology build_topology(const ScenarioConfig& scenario);

// Topology plus initialized inventories (full energy budgets, empty tokens).
WorldState init_world(const ScenarioConfig& scenario);

// The default 3-subnet benchmark layout scaled to node_count: one Internet
// operator box, then DMZ / Corporate / SecureVault hosts. The first corporate
// node is the domain controller and holds the Enterprise_Admin_Token; the
// Corporate<->SecureVault crossing is token-gated in both directions.
ScenarioConfig benchmark_scenario(int node_count = 100);

// JSON round-trip of the scenario file schema (see docs/formats.md).
ScenarioConfig scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const ScenarioConfig& scenario);

// Accepts either a path to a scenario file or a built-in name:
// "benchmark" or "benchmark:<node_count>".
ScenarioConfig load_scenario(const std::string& path_or_name);

}  // namespace netforge::core
