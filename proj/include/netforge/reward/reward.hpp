#pragma once

// Per-step reward computation with full component breakdowns for both sides.
// Pure functions of the post-apply state snapshot and the step's completed
// events.

#include <span>

#include "netforge/actions/action_ops.hpp"
#include "netforge/core/state.hpp"
#include "netforge/engine/events.hpp"

namespace netforge::reward {

struct BlueRewardBreakdown {
  Real tactical = 0;
  Real health = 0;
  Real economics = 0;
  Real cost = 0;
  Real total = 0;  // tactical + health - economics - cost
};

struct RedRewardBreakdown {
  Real tactical = 0;
  Real progression = 0;
  Real cost = 0;
  Real total = 0;  // tactical + progression - cost
};

// One applied event as seen by the reward engine.
struct CompletedEvent {
  const engine::ScheduledEvent* event = nullptr;
  const actions::StateDelta* delta = nullptr;
  // Target's ground-truth compromise level at the completion tick, captured
  // before this event's own delta applied.
  core::Compromise target_prior_level = core::Compromise::Healthy;

  bool target_was_compromised() const {
    return target_prior_level != core::Compromise::Healthy;
  }
};

struct RewardOptions {
  bool honeytoken_trip_bonus = true;
  Real trip_bonus = 2.0;
};

// Tactical: +5 per correct containment isolation (target compromised at
// completion), +3 per cleanup of a compromised host, -2 per false-positive
// isolation, plus the honeytoken trip bonus. Health pays 1.0 x the healthy
// fraction, economics charges 5.0 x the isolated fraction, cost charges the
// energy of the blue events completing this step.
BlueRewardBreakdown blue_step_reward(const core::WorldState& state,
                                     std::span<const CompletedEvent> completed,
                                     const RewardOptions& opts = {});

// Tactical: +3 per new user shell, +5 per new root. Progression pays the
// compromised fraction; cost charges the energy of the red events completing
// this step.
RedRewardBreakdown red_step_reward(const core::WorldState& state,
                                   std::span<const CompletedEvent> completed,
                                   const RewardOptions& opts = {});

}  // namespace netforge::reward
