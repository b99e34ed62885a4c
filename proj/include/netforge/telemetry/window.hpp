#pragma once

// Per-zone sliding observation window: the last 8 log embeddings in arrival
// order, zero-padded at episode start.

#include <array>

#include "netforge/core/state.hpp"
#include "netforge/types.hpp"

namespace netforge::telemetry {

class ObservationWindow {
 public:
  static constexpr int kCapacity = 8;

  explicit ObservationWindow(core::ZoneName zone = core::ZoneName::DMZ)
      : zone_(zone) {
    clear();
  }

  core::ZoneName zone() const { return zone_; }
  int filled() const { return filled_; }

  void push(const Embedding128& e) {
    slots_[head_] = e;
    head_ = (head_ + 1) % kCapacity;
    if (filled_ < kCapacity) ++filled_;
  }

  void clear() {
    for (auto& s : slots_) s.setZero();
    head_ = 0;
    filled_ = 0;
  }

  // Mean over all 8 slots with a fixed denominator: unfilled slots are zero
  // padding that participates in the mean. Not re-normalized.
  Embedding128 mean() const {
    Embedding128 sum = Embedding128::Zero();
    for (const auto& s : slots_) sum += s;
    return sum / static_cast<Real>(kCapacity);
  }

 private:
  core::ZoneName zone_;
  std::array<Embedding128, kCapacity> slots_;
  int head_ = 0;
  int filled_ = 0;
};

inline Embedding128 build_observation(const ObservationWindow& window) {
  return window.mean();
}

}  // namespace netforge::telemetry
