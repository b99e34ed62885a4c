#include "netforge/reward/reward.hpp"

namespace netforge::reward {

using actions::EffectKind;
using actions::Mutation;
using actions::SetCompromise;
using actions::SetIsolated;
using core::Compromise;
using core::Team;

namespace {

bool delta_isolated_node(const actions::StateDelta& delta) {
  for (const Mutation& m : delta.mutations) {
    if (const auto* iso = std::get_if<SetIsolated>(&m); iso != nullptr && iso->isolated) {
      return true;
    }
  }
  return false;
}

bool delta_cleaned_node(const actions::StateDelta& delta) {
  for (const Mutation& m : delta.mutations) {
    if (const auto* c = std::get_if<SetCompromise>(&m);
        c != nullptr && c->level == Compromise::Healthy) {
      return true;
    }
  }
  return false;
}

}  // namespace

BlueRewardBreakdown blue_step_reward(const core::WorldState& state,
                                     std::span<const CompletedEvent> completed,
                                     const RewardOptions& opts) {
  BlueRewardBreakdown r;
  for (const CompletedEvent& ce : completed) {
    if (ce.event->team == Team::Blue) {
      r.cost += ce.event->energy_committed;
      if (ce.delta->failed) continue;
      // Only actual transitions earn tactical credit; re-isolating an
      // already-isolated host scores nothing either way.
      if (ce.event->effect == EffectKind::Isolate && delta_isolated_node(*ce.delta)) {
        r.tactical += ce.target_was_compromised() ? 5.0 : -2.0;
      } else if (ce.event->effect == EffectKind::Cleanup &&
                 delta_cleaned_node(*ce.delta)) {
        r.tactical += 3.0;
      }
    } else if (ce.event->team == Team::Red && !ce.delta->failed &&
               ce.delta->honeytoken_trip && opts.honeytoken_trip_bonus) {
      r.tactical += opts.trip_bonus;
    }
  }
  const Real total_hosts = static_cast<Real>(core::defended_total(state));
  if (total_hosts > 0) {
    r.health = 1.0 * core::healthy_defended(state) / total_hosts;
    r.economics = 5.0 * core::isolated_defended(state) / total_hosts;
  }
  r.total = r.tactical + r.health - r.economics - r.cost;
  return r;
}

RedRewardBreakdown red_step_reward(const core::WorldState& state,
                                   std::span<const CompletedEvent> completed,
                                   const RewardOptions&) {
  RedRewardBreakdown r;
  for (const CompletedEvent& ce : completed) {
    if (ce.event->team != Team::Red) continue;
    r.cost += ce.event->energy_committed;
    if (ce.delta->failed) continue;
    // Only genuine escalations score; a session-ownership handover that
    // re-states the existing level earns nothing.
    for (const Mutation& m : ce.delta->mutations) {
      const auto* c = std::get_if<SetCompromise>(&m);
      if (c == nullptr) continue;
      if (c->level == Compromise::UserShell &&
          ce.target_prior_level == Compromise::Healthy) {
        r.tactical += 3.0;
      } else if (c->level == Compromise::Root &&
                 ce.target_prior_level != Compromise::Root) {
        r.tactical += 5.0;
      }
    }
  }
  const Real total_hosts = static_cast<Real>(core::defended_total(state));
  if (total_hosts > 0) {
    r.progression = 1.0 * core::compromised_defended(state) / total_hosts;
  }
  r.total = r.tactical + r.progression - r.cost;
  return r;
}

}  // namespace netforge::reward
