#include "netforge/engine/events.hpp"

#include <algorithm>
#include <array>

namespace netforge::engine {

const char* to_string(EventStatus s) {
  switch (s) {
    case EventStatus::Pending: return "Pending";
    case EventStatus::Completed: return "Completed";
    case EventStatus::Nullified: return "Nullified";
    case EventStatus::Aborted: return "Aborted";
  }
  return "?";
}

bool EventQueue::less(std::uint32_t a, std::uint32_t b) const {
  const ScheduledEvent& x = pool_[a];
  const ScheduledEvent& y = pool_[b];
  if (x.completion_tick != y.completion_tick) {
    return x.completion_tick < y.completion_tick;
  }
  return x.seq < y.seq;
}

void EventQueue::sift_up(std::size_t i) const {
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!less(heap_[i], heap_[parent])) break;
    std::swap(heap_[i], heap_[parent]);
    i = parent;
  }
}

void EventQueue::sift_down(std::size_t i) const {
  const std::size_t n = heap_.size();
  while (true) {
    std::size_t l = 2 * i + 1;
    std::size_t r = l + 1;
    std::size_t best = i;
    if (l < n && less(heap_[l], heap_[best])) best = l;
    if (r < n && less(heap_[r], heap_[best])) best = r;
    if (best == i) break;
    std::swap(heap_[i], heap_[best]);
    i = best;
  }
}

std::uint64_t EventQueue::push(ScheduledEvent ev) {
  ev.seq = next_seq_++;
  ev.status = EventStatus::Pending;
  pool_.push_back(ev);
  heap_.push_back(static_cast<std::uint32_t>(pool_.size() - 1));
  sift_up(heap_.size() - 1);
  return ev.seq;
}

// Lazily removes heap entries whose events were nullified/aborted elsewhere.
void EventQueue::drop_stale() const {
  while (!heap_.empty() &&
         pool_[heap_.front()].status != EventStatus::Pending) {
    std::swap(heap_.front(), heap_.back());
    heap_.pop_back();
    sift_down(0);
  }
}

bool EventQueue::has_pending() const {
  drop_stale();
  return !heap_.empty();
}

std::optional<Real> EventQueue::next_completion() const {
  drop_stale();
  if (heap_.empty()) return std::nullopt;
  return pool_[heap_.front()].completion_tick;
}

std::vector<ScheduledEvent*> EventQueue::pop_maturing(Real t) {
  std::vector<ScheduledEvent*> out;
  while (true) {
    drop_stale();
    if (heap_.empty()) break;
    ScheduledEvent& ev = pool_[heap_.front()];
    if (ev.completion_tick != t) break;
    out.push_back(&ev);
    std::swap(heap_.front(), heap_.back());
    heap_.pop_back();
    sift_down(0);
  }
  return out;
}

ScheduledEvent* EventQueue::find(std::uint64_t seq) {
  if (seq >= pool_.size()) return nullptr;
  return &pool_[seq];  // seq doubles as the pool index
}

int EventQueue::pending_count(Team team) const {
  int n = 0;
  for (const auto& ev : pool_) {
    if (ev.status == EventStatus::Pending && ev.team == team) ++n;
  }
  return n;
}

std::vector<ScheduledEvent*> EventQueue::pending_events() {
  std::vector<ScheduledEvent*> out;
  for (auto& ev : pool_) {
    if (ev.status == EventStatus::Pending) out.push_back(&ev);
  }
  return out;
}

Real sample_sojourn(const ActionSpec& spec, Real jitter, RngStream& rng) {
  const Real j = std::clamp(jitter, 0.0, 0.95);
  const Real scale = rng.uniform(1.0 - j, 1.0 + j);
  return spec.base_duration * scale;
}

Real normalize_dt(Real t_prev, Real t_next) {
  return std::min((t_next - t_prev) / kMaxDuration, 1.0);
}

std::optional<TimeJump> advance_time(const EventQueue& queue, Real t_prev) {
  auto next = queue.next_completion();
  if (!next) return std::nullopt;
  TimeJump jump;
  jump.t_next = *next;
  jump.dt_norm = normalize_dt(t_prev, *next);
  jump.clipped = (*next - t_prev) > kMaxDuration;
  return jump;
}

ConflictOutcome resolve_conflicts(const std::vector<ScheduledEvent*>& maturing) {
  ConflictOutcome out;
  std::array<std::uint8_t, kTargetSlots> defended{};
  for (const ScheduledEvent* ev : maturing) {
    if (ev->team == Team::Blue && ev->effect != EffectKind::NoOp &&
        ev->action.target_slot >= 0 && ev->action.target_slot < kTargetSlots) {
      defended[ev->action.target_slot] = 1;
    }
  }
  for (ScheduledEvent* ev : maturing) {
    const bool nullified = ev->team == Team::Red &&
                           ev->action.target_slot >= 0 &&
                           ev->action.target_slot < kTargetSlots &&
                           defended[ev->action.target_slot] != 0;
    if (nullified) {
      ev->status = EventStatus::Nullified;
      out.nullified.push_back(ev);
    } else {
      ev->status = EventStatus::Completed;
      out.applied.push_back(ev);
    }
  }
  return out;
}

std::vector<ScheduledEvent*> preempt(EventQueue& queue,
                                     const ScheduledEvent& completed_defense) {
  std::vector<ScheduledEvent*> aborted;
  const NodeId n = completed_defense.action.target_slot;
  for (ScheduledEvent* ev : queue.pending_events()) {
    if (ev->team != Team::Red) continue;
    if (ev->origin == n || ev->action.target_slot == n) {
      ev->status = EventStatus::Aborted;
      aborted.push_back(ev);
    }
  }
  return aborted;
}

}  // namespace netforge::engine
