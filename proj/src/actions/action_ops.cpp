#include "netforge/actions/action_ops.hpp"

#include <algorithm>

#include "json.hpp"

namespace netforge::actions {

using core::Team;
using core::ZoneName;
using nlohmann::json;

const char* to_string(Rejection r) {
  switch (r) {
    case Rejection::None: return "none";
    case Rejection::OutOfSpace: return "out_of_space";
    case Rejection::InvalidTarget: return "invalid_target";
    case Rejection::TeamMismatch: return "team_mismatch";
    case Rejection::InsufficientEnergy: return "insufficient_energy";
    case Rejection::RouteBlocked: return "route_blocked";
    case Rejection::MissingPrecondition: return "missing_precondition";
    case Rejection::NoCredentials: return "no_credentials";
    case Rejection::Disabled: return "disabled";
  }
  return "?";
}

DecodeResult decode_action(int type_id, int target_slot) {
  DecodeResult r;
  if (type_id < 0 || type_id >= kActionTypes || target_slot < 0 ||
      target_slot >= kTargetSlots) {
    r.out_of_space = true;
    return r;
  }
  r.action = AgentAction{type_id, target_slot};
  return r;
}

namespace {

bool is_foothold(const WorldState& state, int agent, NodeId node) {
  const core::Node& n = state.node(node);
  if (n.zone == ZoneName::Internet) return true;
  return n.session_owner == agent && n.compromised != Compromise::Healthy;
}

// Lowest-id foothold that can reach `target` under the given routing rule.
template <class RouteFn>
NodeId find_origin(const WorldState& state, int agent, NodeId target,
                   RouteFn&& can_reach) {
  for (int f = 0; f < state.topology.node_count(); ++f) {
    if (f == target) continue;
    if (!is_foothold(state, agent, f)) continue;
    if (can_reach(f)) return f;
  }
  return -1;
}

bool target_vulnerable(const core::Node& node, const ActionSpec& spec) {
  if (node.services.empty()) return false;
  for (const std::string& tag : spec.vuln_tags) {
    if (tag == "*") return true;  // generic remote-service exploit
    for (const core::Service& svc : node.services) {
      for (const std::string& have : svc.vuln_tags) {
        if (have == tag) return true;
      }
    }
  }
  return false;
}

std::string service_hint(const core::Node& node) {
  return node.services.empty() ? std::string("host") : node.services.front().name;
}

}  // namespace

Validation validate_action(const WorldState& state, const ActionRegistry& registry,
                           int agent_id, const AgentAction& action,
                           const ValidationOptions& opts) {
  Validation v;
  if (action.type_id < 0 || action.type_id >= registry.size()) {
    v.reason = Rejection::OutOfSpace;
    return v;
  }
  const ActionSpec& spec = registry.spec(action.type_id);
  const core::AgentInventory& inv = state.inventories[agent_id];
  if (inv.team != spec.team) {
    v.reason = Rejection::TeamMismatch;
    return v;
  }
  if (action.target_slot < 0 || action.target_slot >= state.topology.node_count()) {
    v.reason = Rejection::InvalidTarget;
    return v;
  }
  if (inv.energy < spec.energy_cost) {
    v.reason = Rejection::InsufficientEnergy;
    return v;
  }
  const NodeId target = action.target_slot;

  if (spec.team == Team::Blue) {
    if (spec.effect == EffectKind::Honeytoken && !opts.honeytokens_enabled) {
      v.reason = Rejection::Disabled;
      return v;
    }
    // Defensive actions run over the management plane; false positives are
    // allowed here and penalized by the reward instead.
    v.ok = true;
    return v;
  }

  switch (spec.effect) {
    case EffectKind::NoOp:
      v.ok = true;
      return v;
    case EffectKind::Scan:
    case EffectKind::Exploit: {
      NodeId origin = find_origin(state, agent_id, target, [&](NodeId f) {
        return core::can_route_ungated(state, f, target);
      });
      if (origin < 0) {
        v.reason = Rejection::RouteBlocked;
        return v;
      }
      v.ok = true;
      v.origin = origin;
      return v;
    }
    case EffectKind::PrivilegeEscalation: {
      const core::Node& n = state.node(target);
      if (n.session_owner != agent_id || n.compromised == Compromise::Healthy) {
        v.reason = Rejection::MissingPrecondition;
        return v;
      }
      v.ok = true;
      v.origin = target;
      return v;
    }
    case EffectKind::CredentialDump: {
      const core::Node& n = state.node(target);
      if (n.session_owner != agent_id || n.compromised != Compromise::Root) {
        v.reason = Rejection::MissingPrecondition;
        return v;
      }
      if (!n.holds_token && state.honeytoken_at(target) == nullptr) {
        v.reason = Rejection::NoCredentials;
        return v;
      }
      v.ok = true;
      v.origin = target;
      return v;
    }
    case EffectKind::LateralMove: {
      NodeId origin = find_origin(state, agent_id, target, [&](NodeId f) {
        return core::can_route(state, f, target, inv);
      });
      if (origin < 0) {
        v.reason = Rejection::RouteBlocked;
        return v;
      }
      v.ok = true;
      v.origin = origin;
      return v;
    }
    default:
      v.reason = Rejection::TeamMismatch;
      return v;
  }
}

namespace {

LogDraft draft(EffectKind kind, bool success, NodeId node, Team team,
               const WorldState& state) {
  LogDraft d;
  d.kind = kind;
  d.success = success;
  d.node = node;
  d.team = team;
  if (node >= 0 && node < state.topology.node_count()) {
    d.service = service_hint(state.node(node));
  }
  return d;
}

}  // namespace

StateDelta apply_effect(const WorldState& snapshot, const ActionRegistry& registry,
                        const ScheduledEvent& event, const ValidationOptions& opts) {
  StateDelta delta;
  if (event.team == Team::System) return delta;

  const ActionSpec& spec = registry.spec(event.action.type_id);
  const NodeId target = event.action.target_slot;
  const int agent = event.actor_id;
  auto fail = [&](EffectKind kind) {
    delta.failed = true;
    delta.logs.push_back(draft(kind, false, target, spec.team, snapshot));
  };

  switch (spec.effect) {
    case EffectKind::NoOp:
      return delta;

    case EffectKind::Scan: {
      if (spec.team == Team::Red) {
        // Preconditions can decay between enqueue and completion.
        if (event.origin < 0 || !is_foothold(snapshot, agent, event.origin) ||
            !core::can_route_ungated(snapshot, event.origin, target)) {
          fail(EffectKind::Scan);
          return delta;
        }
        delta.mutations.push_back(RecordScan{agent, target});
      }
      delta.logs.push_back(draft(EffectKind::Scan, true, target, spec.team, snapshot));
      return delta;
    }

    case EffectKind::Exploit: {
      const core::Node& n = snapshot.node(target);
      if (event.origin < 0 || !is_foothold(snapshot, agent, event.origin) ||
          !core::can_route_ungated(snapshot, event.origin, target)) {
        fail(EffectKind::Exploit);
        return delta;
      }
      if (!target_vulnerable(n, spec)) {
        fail(EffectKind::Exploit);
        return delta;
      }
      if (n.compromised == Compromise::Healthy) {
        delta.mutations.push_back(SetCompromise{target, Compromise::UserShell, agent});
      }
      delta.logs.push_back(draft(EffectKind::Exploit, true, target, Team::Red, snapshot));
      return delta;
    }

    case EffectKind::PrivilegeEscalation: {
      const core::Node& n = snapshot.node(target);
      if (n.session_owner != agent || n.compromised == Compromise::Healthy) {
        fail(EffectKind::PrivilegeEscalation);
        return delta;
      }
      if (n.compromised != Compromise::Root) {
        delta.mutations.push_back(SetCompromise{target, Compromise::Root, agent});
      }
      delta.logs.push_back(
          draft(EffectKind::PrivilegeEscalation, true, target, Team::Red, snapshot));
      return delta;
    }

    case EffectKind::CredentialDump: {
      const core::Node& n = snapshot.node(target);
      if (n.session_owner != agent || n.compromised != Compromise::Root) {
        fail(EffectKind::CredentialDump);
        return delta;
      }
      const std::string* decoy = snapshot.honeytoken_at(target);
      if (decoy != nullptr) {
        // Deception wins over the real credential; the decoy fails every
        // gate check and raises a defender trigger when newly taken.
        if (!snapshot.inventories[agent].tokens.contains(*decoy)) {
          delta.mutations.push_back(GrantToken{agent, *decoy, true});
          delta.honeytoken_trip = true;
        }
      } else if (n.holds_token) {
        if (!snapshot.inventories[agent].tokens.contains(*n.holds_token)) {
          delta.mutations.push_back(GrantToken{agent, *n.holds_token, false});
        }
      } else {
        fail(EffectKind::CredentialDump);
        return delta;
      }
      delta.logs.push_back(
          draft(EffectKind::CredentialDump, true, target, Team::Red, snapshot));
      return delta;
    }

    case EffectKind::LateralMove: {
      const core::Node& n = snapshot.node(target);
      if (event.origin < 0 || !is_foothold(snapshot, agent, event.origin) ||
          !core::can_route(snapshot, event.origin, target,
                           snapshot.inventories[agent])) {
        fail(EffectKind::LateralMove);
        return delta;
      }
      if (n.compromised == Compromise::Healthy) {
        delta.mutations.push_back(SetCompromise{target, Compromise::UserShell, agent});
      } else if (n.session_owner != agent) {
        delta.mutations.push_back(SetCompromise{target, n.compromised, agent});
      }
      delta.logs.push_back(
          draft(EffectKind::LateralMove, true, target, Team::Red, snapshot));
      return delta;
    }

    case EffectKind::Isolate: {
      if (!snapshot.node(target).isolated) {
        delta.mutations.push_back(SetIsolated{target, true});
      }
      delta.logs.push_back(draft(EffectKind::Isolate, true, target, Team::Blue, snapshot));
      return delta;
    }

    case EffectKind::Unisolate: {
      if (snapshot.node(target).isolated) {
        delta.mutations.push_back(SetIsolated{target, false});
      }
      delta.logs.push_back(
          draft(EffectKind::Unisolate, true, target, Team::Blue, snapshot));
      return delta;
    }

    case EffectKind::Cleanup: {
      if (snapshot.node(target).compromised != Compromise::Healthy) {
        delta.mutations.push_back(SetCompromise{target, Compromise::Healthy, -1});
      }
      delta.logs.push_back(draft(EffectKind::Cleanup, true, target, Team::Blue, snapshot));
      return delta;
    }

    case EffectKind::Patch: {
      bool any = false;
      for (const core::Service& svc : snapshot.node(target).services) {
        if (!svc.vuln_tags.empty()) any = true;
      }
      if (any) delta.mutations.push_back(ClearVulnTags{target});
      delta.logs.push_back(draft(EffectKind::Patch, true, target, Team::Blue, snapshot));
      return delta;
    }

    case EffectKind::CredentialReset: {
      const core::Node& n = snapshot.node(target);
      if (n.holds_token) {
        for (const core::AgentInventory& inv : snapshot.inventories) {
          if (inv.team == Team::Red && inv.tokens.contains(*n.holds_token)) {
            delta.mutations.push_back(RevokeToken{inv.agent_id, *n.holds_token});
          }
        }
      }
      delta.logs.push_back(
          draft(EffectKind::CredentialReset, true, target, Team::Blue, snapshot));
      return delta;
    }

    case EffectKind::TokenRotate: {
      // Global flush of every stolen credential, decoys included.
      for (const core::AgentInventory& inv : snapshot.inventories) {
        if (inv.team != Team::Red) continue;
        for (const std::string& tok : inv.tokens) {
          delta.mutations.push_back(RevokeToken{inv.agent_id, tok});
        }
      }
      delta.logs.push_back(
          draft(EffectKind::TokenRotate, true, target, Team::Blue, snapshot));
      return delta;
    }

    case EffectKind::Honeytoken: {
      if (!opts.honeytokens_enabled) {
        fail(EffectKind::Honeytoken);
        return delta;
      }
      if (snapshot.honeytoken_at(target) == nullptr) {
        delta.mutations.push_back(
            AddHoneytoken{target, "decoy_cred_" + snapshot.node(target).name});
      }
      delta.logs.push_back(
          draft(EffectKind::Honeytoken, true, target, Team::Blue, snapshot));
      return delta;
    }
  }
  return delta;
}

void apply_delta(WorldState& state, const StateDelta& delta) {
  for (const Mutation& m : delta.mutations) {
    std::visit(
        [&](const auto& mut) {
          using T = std::decay_t<decltype(mut)>;
          if constexpr (std::is_same_v<T, SetCompromise>) {
            core::Node& n = state.node(mut.node);
            n.compromised = mut.level;
            n.session_owner = mut.session_owner;
          } else if constexpr (std::is_same_v<T, SetIsolated>) {
            core::Node& n = state.node(mut.node);
            if (n.isolated != mut.isolated) {
              n.isolated = mut.isolated;
              ++state.topology_version;
            }
          } else if constexpr (std::is_same_v<T, GrantToken>) {
            state.inventories[mut.agent].tokens.insert(mut.token);
          } else if constexpr (std::is_same_v<T, RevokeToken>) {
            state.inventories[mut.agent].tokens.erase(mut.token);
          } else if constexpr (std::is_same_v<T, AddHoneytoken>) {
            if (state.honeytoken_at(mut.node) == nullptr) {
              state.honeytokens.emplace_back(mut.node, mut.token);
              state.decoy_token_names.insert(mut.token);
            }
          } else if constexpr (std::is_same_v<T, ClearVulnTags>) {
            for (core::Service& svc : state.node(mut.node).services) {
              svc.vuln_tags.clear();
            }
          } else if constexpr (std::is_same_v<T, RecordScan>) {
            state.scan_notes[mut.agent].insert(mut.node);
          }
        },
        m);
  }
}

namespace {

json mutation_to_json(const Mutation& m) {
  json j;
  std::visit(
      [&](const auto& mut) {
        using T = std::decay_t<decltype(mut)>;
        if constexpr (std::is_same_v<T, SetCompromise>) {
          j = {{"kind", "compromise"},
               {"node", mut.node},
               {"level", static_cast<int>(mut.level)},
               {"owner", mut.session_owner}};
        } else if constexpr (std::is_same_v<T, SetIsolated>) {
          j = {{"kind", "isolated"}, {"node", mut.node}, {"value", mut.isolated}};
        } else if constexpr (std::is_same_v<T, GrantToken>) {
          j = {{"kind", "grant"},
               {"agent", mut.agent},
               {"token", mut.token},
               {"decoy", mut.decoy}};
        } else if constexpr (std::is_same_v<T, RevokeToken>) {
          j = {{"kind", "revoke"}, {"agent", mut.agent}, {"token", mut.token}};
        } else if constexpr (std::is_same_v<T, AddHoneytoken>) {
          j = {{"kind", "honeytoken"}, {"node", mut.node}, {"token", mut.token}};
        } else if constexpr (std::is_same_v<T, ClearVulnTags>) {
          j = {{"kind", "patched"}, {"node", mut.node}};
        } else if constexpr (std::is_same_v<T, RecordScan>) {
          j = {{"kind", "scan"}, {"agent", mut.agent}, {"node", mut.node}};
        }
      },
      m);
  return j;
}

Mutation mutation_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "compromise") {
    return SetCompromise{j.at("node").get<int>(),
                         static_cast<Compromise>(j.at("level").get<int>()),
                         j.at("owner").get<int>()};
  }
  if (kind == "isolated") {
    return SetIsolated{j.at("node").get<int>(), j.at("value").get<bool>()};
  }
  if (kind == "grant") {
    return GrantToken{j.at("agent").get<int>(), j.at("token").get<std::string>(),
                      j.at("decoy").get<bool>()};
  }
  if (kind == "revoke") {
    return RevokeToken{j.at("agent").get<int>(), j.at("token").get<std::string>()};
  }
  if (kind == "honeytoken") {
    return AddHoneytoken{j.at("node").get<int>(), j.at("token").get<std::string>()};
  }
  if (kind == "patched") return ClearVulnTags{j.at("node").get<int>()};
  if (kind == "scan") {
    return RecordScan{j.at("agent").get<int>(), j.at("node").get<int>()};
  }
  throw std::invalid_argument("unknown mutation kind: " + kind);
}

}  // namespace

std::string delta_to_json_text(const StateDelta& delta) {
  json j;
  j["failed"] = delta.failed;
  j["honeytoken_trip"] = delta.honeytoken_trip;
  j["mutations"] = json::array();
  for (const Mutation& m : delta.mutations) j["mutations"].push_back(mutation_to_json(m));
  j["logs"] = json::array();
  for (const LogDraft& d : delta.logs) {
    j["logs"].push_back({{"effect", to_string(d.kind)},
                         {"success", d.success},
                         {"node", d.node},
                         {"team", core::to_string(d.team)},
                         {"service", d.service}});
  }
  return j.dump();
}

StateDelta delta_from_json_text(const std::string& text) {
  json j = json::parse(text);
  StateDelta delta;
  delta.failed = j.value("failed", false);
  delta.honeytoken_trip = j.value("honeytoken_trip", false);
  for (const json& jm : j.value("mutations", json::array())) {
    delta.mutations.push_back(mutation_from_json(jm));
  }
  for (const json& jd : j.value("logs", json::array())) {
    LogDraft d;
    d.kind = effect_from_string(jd.at("effect").get<std::string>());
    d.success = jd.at("success").get<bool>();
    d.node = jd.at("node").get<int>();
    const std::string team = jd.at("team").get<std::string>();
    d.team = team == "Red"    ? Team::Red
             : team == "Blue" ? Team::Blue
             : team == "Green" ? Team::Green
                               : Team::System;
    d.service = jd.value("service", std::string());
    delta.logs.push_back(std::move(d));
  }
  return delta;
}

}  // namespace netforge::actions
