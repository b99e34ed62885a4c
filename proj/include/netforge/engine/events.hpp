#pragma once

// Asynchronous event queue and continuous-time advance. Actions mature at
// fractional completion ticks; time jumps directly to the nearest maturing
// event and is normalized by kMaxDuration.

#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "netforge/actions/registry.hpp"
#include "netforge/rng.hpp"
#include "netforge/types.hpp"

namespace netforge::engine {

using actions::ActionSpec;
using actions::AgentAction;
using actions::EffectKind;
using core::Team;

enum class EventStatus { Pending, Completed, Nullified, Aborted };

const char* to_string(EventStatus s);

struct ScheduledEvent {
  std::uint64_t seq = 0;
  int actor_id = -1;
  Team team = Team::System;
  AgentAction action;
  EffectKind effect = EffectKind::NoOp;
  NodeId origin = -1;  // foothold a red action launches from, -1 if n/a
  Real start_tick = 0.0;
  Real completion_tick = 0.0;
  Real energy_committed = 0.0;
  EventStatus status = EventStatus::Pending;
};

struct TimeJump {
  Real t_next = 0.0;
  Real dt_norm = 0.0;  // min((t_next - t_prev) / kMaxDuration, 1)
  bool clipped = false;
};

// Min-ordered on (completion_tick, seq). Events live in a pool owned by the
// queue; handles returned by push stay valid for the queue's lifetime.
class EventQueue {
 public:
  std::uint64_t push(ScheduledEvent ev);  // assigns seq, returns it
  bool has_pending() const;
  // Earliest pending completion tick, if any.
  std::optional<Real> next_completion() const;
  // Pops every pending event completing exactly at tick t.
  std::vector<ScheduledEvent*> pop_maturing(Real t);

  ScheduledEvent* find(std::uint64_t seq);
  int pending_count(Team team) const;
  std::vector<ScheduledEvent*> pending_events();

  std::size_t size() const { return pool_.size(); }

 private:
  void sift_up(std::size_t i) const;
  void sift_down(std::size_t i) const;
  bool less(std::uint32_t a, std::uint32_t b) const;
  void drop_stale() const;

  // Deque so pointers handed out by pop_maturing survive later pushes.
  std::deque<ScheduledEvent> pool_;
  mutable std::vector<std::uint32_t> heap_;
  std::uint64_t next_seq_ = 0;
};

// Stochastic sojourn time: the action's base duration scaled by a uniform
// jitter in [1-j, 1+j]. Always draws exactly one variate so that stream
// alignment does not depend on j.
Real sample_sojourn(const ActionSpec& spec, Real jitter, RngStream& rng);

// Jumps to the completion tick of the nearest maturing event. Returns nullopt
// when nothing is pending (the harness injects a heartbeat so this does not
// happen mid-episode).
std::optional<TimeJump> advance_time(const EventQueue& queue, Real t_prev);

Real normalize_dt(Real t_prev, Real t_next);

struct ConflictOutcome {
  std::vector<ScheduledEvent*> applied;
  std::vector<ScheduledEvent*> nullified;
};

// Same-tick conflict resolution with blue supremacy: one pass over blue
// events builds the set of defended nodes (O(1) membership), then any red
// event targeting a defended node is nullified. Runs in O(A) for A events.
// NoOp blue events defend nothing. Pure in the maturing set: the verdict for
// an event depends only on the set's contents, not their order.
ConflictOutcome resolve_conflicts(const std::vector<ScheduledEvent*>& maturing);

// Blue SOC bandwidth: at most `cap` concurrently active defensive actions.
// `requests` must already be in priority order (ascending agent id, then
// action type); excess requests are dropped silently.
template <class Request>
std::pair<std::vector<Request>, std::vector<Request>> enforce_blue_cap(
    int active_blue, const std::vector<Request>& requests, int cap = 2) {
  std::pair<std::vector<Request>, std::vector<Request>> out;
  int slots = cap - active_blue;
  for (const Request& r : requests) {
    if (slots > 0) {
      out.first.push_back(r);
      --slots;
    } else {
      out.second.push_back(r);
    }
  }
  return out;
}

// Pre-emptive supremacy: a completed defense that severs or cleans a node
// aborts every pending red event whose origin or target is that node.
// Committed energy is forfeited, never refunded.
std::vector<ScheduledEvent*> preempt(EventQueue& queue,
                                     const ScheduledEvent& completed_defense);

}  // namespace netforge::engine
