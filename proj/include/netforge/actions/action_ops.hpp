#pragma once

// Action decoding, validation, and state-delta application. Effects are
// computed as replayable deltas against a snapshot; only the event engine
// applies them.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "netforge/actions/registry.hpp"
#include "netforge/core/state.hpp"
#include "netforge/engine/events.hpp"

namespace netforge::actions {

using core::Compromise;
using core::WorldState;
using engine::ScheduledEvent;

enum class Rejection {
  None,
  OutOfSpace,
  InvalidTarget,
  TeamMismatch,
  InsufficientEnergy,
  RouteBlocked,
  MissingPrecondition,
  NoCredentials,
  Disabled,
};

const char* to_string(Rejection r);

struct DecodeResult {
  std::optional<AgentAction> action;
  bool out_of_space = false;
};

// Decodes a raw [type, target] pair. Values outside [0,32)x[0,100) are
// out-of-space; targets beyond the scenario's node count are left to
// validation, which treats them as no-ops rather than hard errors.
DecodeResult decode_action(int type_id, int target_slot);

struct Validation {
  bool ok = false;
  Rejection reason = Rejection::None;
  NodeId origin = -1;  // chosen foothold for red actions
};

struct ValidationOptions {
  bool honeytokens_enabled = true;
};

// Checks team/type match, energy, route reachability from a controlled
// foothold, and the action's precondition chain. Rejections carry a
// machine-readable reason; they are no-ops, not errors, because a policy may
// emit any point of the action space.
Validation validate_action(const WorldState& state, const ActionRegistry& registry,
                           int agent_id, const AgentAction& action,
                           const ValidationOptions& opts = {});

// --- State deltas ------------------------------------------------------

struct SetCompromise {
  NodeId node;
  Compromise level;
  int session_owner;  // -1 clears the session
};
struct SetIsolated {
  NodeId node;
  bool isolated;
};
struct GrantToken {
  int agent;
  std::string token;
  bool decoy;
};
struct RevokeToken {
  int agent;
  std::string token;
};
struct AddHoneytoken {
  NodeId node;
  std::string token;
};
struct ClearVulnTags {
  NodeId node;
};
struct RecordScan {
  int agent;
  NodeId node;
};

using Mutation = std::variant<SetCompromise, SetIsolated, GrantToken, RevokeToken,
                              AddHoneytoken, ClearVulnTags, RecordScan>;

// Inputs for telemetry synthesis, emitted alongside each delta.
struct LogDraft {
  EffectKind kind = EffectKind::NoOp;
  bool success = true;
  NodeId node = -1;
  core::Team team = core::Team::System;
  std::string service;
};

struct StateDelta {
  std::vector<Mutation> mutations;
  std::vector<LogDraft> logs;
  bool failed = false;           // precondition decayed between enqueue and completion
  bool honeytoken_trip = false;  // red dumped a deployed decoy credential
};

// Computes the delta of a completed event against the snapshot. Re-checks
// preconditions at completion time; when one has decayed the event resolves
// as failed with its energy already forfeited.
StateDelta apply_effect(const WorldState& snapshot, const ActionRegistry& registry,
                        const ScheduledEvent& event,
                        const ValidationOptions& opts = {});

// Deterministic and idempotent per event: re-applying a delta leaves the
// state unchanged.
void apply_delta(WorldState& state, const StateDelta& delta);

std::string delta_to_json_text(const StateDelta& delta);
StateDelta delta_from_json_text(const std::string& text);

}  // namespace netforge::actions
