#include "netforge/core/state.hpp"

#include <stdexcept>

namespace netforge::core {

const char* to_string(ZoneName z) {
  switch (z) {
    case ZoneName::Internet: return "Internet";
    case ZoneName::DMZ: return "DMZ";
    case ZoneName::Corporate: return "Corporate";
    case ZoneName::SecureVault: return "SecureVault";
  }
  return "?";
}

ZoneName zone_from_string(const std::string& s) {
  if (s == "Internet") return ZoneName::Internet;
  if (s == "DMZ") return ZoneName::DMZ;
  if (s == "Corporate") return ZoneName::Corporate;
  if (s == "SecureVault") return ZoneName::SecureVault;
  throw std::invalid_argument("unknown zone name: " + s);
}

const char* to_string(Team t) {
  switch (t) {
    case Team::Red: return "Red";
    case Team::Blue: return "Blue";
    case Team::Green: return "Green";
    case Team::System: return "System";
  }
  return "?";
}

const char* to_string(Compromise c) {
  switch (c) {
    case Compromise::Healthy: return "Healthy";
    case Compromise::UserShell: return "UserShell";
    case Compromise::Root: return "Root";
  }
  return "?";
}

const std::string* Topology::gate_token(ZoneName src, ZoneName dst) const {
  for (const auto& g : gates) {
    if (g.src == src && g.dst == dst) return &g.token;
  }
  return nullptr;
}

const std::string* WorldState::honeytoken_at(NodeId id) const {
  for (const auto& [node, token] : honeytokens) {
    if (node == id) return &token;
  }
  return nullptr;
}

bool can_route(const WorldState& state, NodeId src, NodeId dst,
               const AgentInventory& inv) {
  const Topology& topo = state.topology;
  if (!topo.edge(src, dst)) return false;
  if (topo.nodes[src].isolated || topo.nodes[dst].isolated) return false;
  const std::string* required =
      topo.gate_token(topo.nodes[src].zone, topo.nodes[dst].zone);
  if (required == nullptr) return true;
  if (!inv.tokens.contains(*required)) return false;
  // A decoy credential fails every gate check.
  return !state.decoy_token_names.contains(*required);
}

bool can_route_ungated(const WorldState& state, NodeId src, NodeId dst) {
  const Topology& topo = state.topology;
  if (!topo.edge(src, dst)) return false;
  if (topo.nodes[src].isolated || topo.nodes[dst].isolated) return false;
  return topo.gate_token(topo.nodes[src].zone, topo.nodes[dst].zone) == nullptr;
}

void apply_token_flush(WorldState& state) {
  for (auto& inv : state.inventories) {
    if (inv.team == Team::Red) inv.tokens.clear();
  }
}

Mat topology_mask(const WorldState& state) {
  const int n = state.topology.node_count();
  Mat m = Mat::Constant(n, n, kMaskBlocked);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 0.0;  // self-loops keep softmax rows well-defined
    for (int j = 0; j < n; ++j) {
      if (i != j && can_route_ungated(state, i, j)) m(i, j) = 0.0;
    }
  }
  return m;
}

int defended_total(const WorldState& state) {
  int n = 0;
  for (const auto& node : state.topology.nodes) {
    if (node.zone != ZoneName::Internet) ++n;
  }
  return n;
}

int healthy_defended(const WorldState& state) {
  int n = 0;
  for (const auto& node : state.topology.nodes) {
    if (node.zone == ZoneName::Internet) continue;
    if (node.compromised == Compromise::Healthy && !node.isolated) ++n;
  }
  return n;
}

int isolated_defended(const WorldState& state) {
  int n = 0;
  for (const auto& node : state.topology.nodes) {
    if (node.zone != ZoneName::Internet && node.isolated) ++n;
  }
  return n;
}

int compromised_defended(const WorldState& state) {
  int n = 0;
  for (const auto& node : state.topology.nodes) {
    if (node.zone != ZoneName::Internet &&
        node.compromised != Compromise::Healthy) {
      ++n;
    }
  }
  return n;
}

bool states_equal(const WorldState& a, const WorldState& b) {
  if (a.topology.node_count() != b.topology.node_count()) return false;
  for (int i = 0; i < a.topology.node_count(); ++i) {
    const Node& x = a.topology.nodes[i];
    const Node& y = b.topology.nodes[i];
    if (x.compromised != y.compromised || x.isolated != y.isolated ||
        x.session_owner != y.session_owner || x.services != y.services ||
        x.holds_token != y.holds_token) {
      return false;
    }
  }
  if (a.inventories.size() != b.inventories.size()) return false;
  for (std::size_t i = 0; i < a.inventories.size(); ++i) {
    if (a.inventories[i].tokens != b.inventories[i].tokens) return false;
  }
  return a.honeytokens == b.honeytokens &&
         a.decoy_token_names == b.decoy_token_names &&
         a.scan_notes == b.scan_notes;
}

}  // namespace netforge::core
