#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "dmrsim/perception/frame.hpp"

namespace dmrsim::node {

/// Depth-1 LIFO hand-off between capture and the processing loop. A producer
/// overwrites the occupant, so the consumer never sees anything older than
/// the latest capture; overwrites are tallied, not hidden.
class FreshFrameSlot {
 public:
  /// Returns true when an unconsumed occupant was displaced.
  bool push(perception::DetectionFrame frame) {
    bool displaced = slot_.has_value();
    if (displaced) ++dropped_;
    slot_ = std::move(frame);
    return displaced;
  }

  std::optional<perception::DetectionFrame> pop() {
    std::optional<perception::DetectionFrame> out = std::move(slot_);
    slot_.reset();
    return out;
  }

  void clear() { slot_.reset(); }

  bool occupied() const { return slot_.has_value(); }
  std::uint64_t dropped_count() const { return dropped_; }

 private:
  std::optional<perception::DetectionFrame> slot_;
  std::uint64_t dropped_ = 0;
};

}  // namespace dmrsim::node
