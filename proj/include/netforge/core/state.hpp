#pragma once

// Ground-truth network state: zones, nodes, zero-trust routing gates, identity
// tokens, and per-agent inventories. Everything here is a plain value type
// plus pure queries; mutation happens only through the event engine.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "netforge/types.hpp"

namespace netforge::core {

enum class ZoneName { Internet, DMZ, Corporate, SecureVault };

const char* to_string(ZoneName z);
ZoneName zone_from_string(const std::string& s);

struct Zone {
  ZoneName name;
  std::string cidr;
};

// Compromise lattice: Healthy < UserShell < Root. Exploits grant a user
// shell, privilege escalation grants root.
enum class Compromise { Healthy = 0, UserShell = 1, Root = 2 };

enum class Team { Red, Blue, Green, System };

const char* to_string(Team t);
const char* to_string(Compromise c);

struct Service {
  std::string name;
  std::vector<std::string> vuln_tags;  // e.g. MS17-010, CVE-2019-0708

  bool operator==(const Service&) const = default;
};

struct Node {
  NodeId id = 0;
  std::string name;
  ZoneName zone = ZoneName::DMZ;
  std::vector<Service> services;
  Compromise compromised = Compromise::Healthy;
  int session_owner = -1;  // red agent holding the session, -1 if none
  bool isolated = false;
  std::optional<std::string> holds_token;
};

struct AgentInventory {
  int agent_id = -1;
  Team team = Team::Blue;
  std::set<std::string> tokens;
  Real energy = 0.0;
};

struct ZoneGate {
  ZoneName src;
  ZoneName dst;
  std::string token;
};

struct Topology {
  std::vector<Node> nodes;
  std::vector<std::uint8_t> adj;  // node_count x node_count, row-major
  std::vector<ZoneGate> gates;

  int node_count() const { return static_cast<int>(nodes.size()); }
  bool edge(NodeId a, NodeId b) const {
    return adj[static_cast<std::size_t>(a) * nodes.size() + b] != 0;
  }
  void set_edge(NodeId a, NodeId b, bool present = true) {
    adj[static_cast<std::size_t>(a) * nodes.size() + b] = present ? 1 : 0;
  }
  // Token required to cross (src zone -> dst zone), or nullptr when ungated.
  const std::string* gate_token(ZoneName src, ZoneName dst) const;
};

struct WorldState {
  Real clock = 0.0;
  Topology topology;
  std::vector<AgentInventory> inventories;  // indexed by agent id
  std::vector<std::pair<NodeId, std::string>> honeytokens;  // decoy placements
  std::unordered_set<std::string> decoy_token_names;
  std::map<int, std::set<NodeId>> scan_notes;  // per red agent
  // Bumped whenever routing-relevant state changes (isolation, edges), so
  // mask consumers can cache.
  std::uint64_t topology_version = 0;

  const Node& node(NodeId id) const { return topology.nodes[id]; }
  Node& node(NodeId id) { return topology.nodes[id]; }
  const std::string* honeytoken_at(NodeId id) const;
};

// Full zero-trust routing rule: an edge exists, neither endpoint is isolated,
// and any gate on the zone crossing is satisfied by a non-decoy token in the
// inventory.
bool can_route(const WorldState& state, NodeId src, NodeId dst,
               const AgentInventory& inv);

// Physical reachability alone: gates always block, regardless of tokens.
// This is what an unauthenticated observer can see.
bool can_route_ungated(const WorldState& state, NodeId src, NodeId dst);

// Clears every red-side inventory's token set. Blue inventories and
// honeytoken placements are untouched. Idempotent.
void apply_token_flush(WorldState& state);

// node_count x node_count attention mask: 0 on the diagonal and wherever an
// unauthenticated route exists, kMaskBlocked otherwise. Token gates are
// enforced at action validation, never unlocked here; the mask feeds the
// observer, which cannot see stolen tokens.
Mat topology_mask(const WorldState& state);

// Counts over defended nodes (everything outside the Internet zone).
int defended_total(const WorldState& state);
int healthy_defended(const WorldState& state);     // Healthy and not isolated
int isolated_defended(const WorldState& state);
int compromised_defended(const WorldState& state);

bool states_equal(const WorldState& a, const WorldState& b);

}  // namespace netforge::core
