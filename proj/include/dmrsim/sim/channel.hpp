#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "dmrsim/sim/engine.hpp"
#include "dmrsim/sim/latency.hpp"

namespace dmrsim::sim {

enum class DropPolicy { RejectNew, DropOldest };

/// Point-to-point FIFO with fixed latency and optional capacity.
///
/// A message sent at t is delivered at t + latency; messages never reorder
/// because equal delivery times preserve send order. With a bounded capacity
/// the overflow behaviour is either rejecting the new message or evicting the
/// oldest still-undelivered one.
template <typename T>
class Channel {
 public:
  using Receiver = std::function<void(T, VirtualTime sent_at)>;

  Channel(Engine& engine, std::string name, Duration latency,
          std::optional<std::size_t> capacity = std::nullopt,
          DropPolicy policy = DropPolicy::RejectNew)
      : engine_(engine),
        name_(std::move(name)),
        latency_(latency),
        capacity_(capacity),
        policy_(policy) {
    if (latency_.count() < 0) throw ConfigError("channel latency must be >= 0");
    if (capacity_ && *capacity_ == 0) throw ConfigError("channel capacity must be >= 1");
  }

  void on_receive(Receiver r) { receiver_ = std::move(r); }

  const std::string& name() const { return name_; }
  std::size_t in_flight() const { return in_flight_.size(); }

  /// Returns false when the message was dropped by the overflow policy.
  bool send(T msg) {
    if (capacity_ && in_flight_.size() == *capacity_) {
      if (policy_ == DropPolicy::RejectNew) return false;
      engine_.cancel(in_flight_.front());
      in_flight_.pop_front();
    }
    VirtualTime sent = engine_.now();
    EventHandle h = engine_.schedule_at(
        sent + latency_, name_, [this, m = std::move(msg), sent]() mutable {
          in_flight_.pop_front();
          if (receiver_) receiver_(std::move(m), sent);
        });
    in_flight_.push_back(h);
    return true;
  }

 private:
  Engine& engine_;
  std::string name_;
  Duration latency_;
  std::optional<std::size_t> capacity_;
  DropPolicy policy_;
  Receiver receiver_;
  std::deque<EventHandle> in_flight_;
};

}  // namespace dmrsim::sim
