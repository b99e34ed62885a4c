#pragma once

// The 32-type tactical action taxonomy. The registry is a stable 32-slot
// contract; specifics (names, costs, vulnerability tags) load from a data
// file, with a built-in default covering both teams.

#include <string>
#include <vector>

#include "netforge/core/state.hpp"

namespace netforge::actions {

using core::Team;

enum class EffectKind {
  Exploit,
  PrivilegeEscalation,
  CredentialDump,
  LateralMove,
  Scan,
  Isolate,
  Unisolate,
  Cleanup,
  Patch,
  CredentialReset,
  TokenRotate,
  Honeytoken,
  NoOp,
};

const char* to_string(EffectKind k);
EffectKind effect_from_string(const std::string& s);

struct ActionSpec {
  int type_id = 0;
  std::string name;
  Team team = Team::Red;
  std::string mitre_ref;
  Real energy_cost = 0.0;
  Real base_duration = 1.0;
  EffectKind effect = EffectKind::NoOp;
  std::vector<std::string> vuln_tags;  // exploits: tags they can trigger
};

// A decoded point of the MultiDiscrete([32, 100]) space.
struct AgentAction {
  int type_id = 0;
  int target_slot = 0;

  bool operator==(const AgentAction&) const = default;
};

class ActionRegistry {
 public:
  static ActionRegistry builtin_default();
  static ActionRegistry from_json_text(const std::string& text);
  static ActionRegistry load(const std::string& path);

  std::string to_json_text() const;

  const ActionSpec& spec(int type_id) const { return specs_[type_id]; }
  const ActionSpec* find(const std::string& name) const;
  int size() const { return static_cast<int>(specs_.size()); }
  const std::vector<ActionSpec>& specs() const { return specs_; }

 private:
  explicit ActionRegistry(std::vector<ActionSpec> specs);
  std::vector<ActionSpec> specs_;
};

}  // namespace netforge::actions
