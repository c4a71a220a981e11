#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dmrsim/sim/rng.hpp"
#include "dmrsim/sim/time.hpp"
#include "dmrsim/sim/trace.hpp"

namespace dmrsim::sim {

/// Opaque ticket for a scheduled event; lets the scheduler cancel it later.
struct EventHandle {
  std::uint64_t id = 0;
  bool valid() const { return id != 0; }
};

/// Deterministic discrete-event executor.
///
/// Events fire in (time, insertion order). The clock never moves backwards:
/// scheduling strictly in the past throws, scheduling at the current instant
/// is allowed and runs after the active handler returns.
class Engine {
 public:
  using Action = std::function<void()>;

  explicit Engine(std::uint64_t seed);

  VirtualTime now() const { return now_; }
  std::uint64_t seed() const { return seed_; }

  EventHandle schedule_at(VirtualTime at, std::string handler, Action action);
  EventHandle schedule_after(Duration delay, std::string handler, Action action);
  void cancel(EventHandle h);

  /// Dispatches every event with fire time <= deadline, then parks the clock
  /// at the deadline even if the queue ran dry earlier.
  void run_until(VirtualTime deadline);

  bool queue_empty() const;

  /// Named substream, created on first use. Equal (seed, id) pairs replay the
  /// same sequence regardless of creation order relative to other streams.
  RngStream& stream(const std::string& id);

  /// Appends a note at the current instant, attributed to `handler`.
  void note(std::string_view handler, std::string summary);

  void set_tracing(bool enabled) { tracing_ = enabled; }
  const SimulationTrace& trace() const { return trace_; }

 private:
  struct Pending {
    std::int64_t at;
    std::uint64_t id;  // also the tie-break sequence number
    std::string handler;
    Action action;
  };
  struct Later {
    bool operator()(const std::unique_ptr<Pending>& a,
                    const std::unique_ptr<Pending>& b) const {
      if (a->at != b->at) return a->at > b->at;
      return a->id > b->id;
    }
  };

  std::uint64_t seed_;
  VirtualTime now_ = kTimeZero;
  std::uint64_t next_id_ = 1;
  std::priority_queue<std::unique_ptr<Pending>, std::vector<std::unique_ptr<Pending>>, Later> queue_;
  std::unordered_set<std::uint64_t> cancelled_;
  std::unordered_map<std::string, std::unique_ptr<RngStream>> streams_;
  SimulationTrace trace_;
  bool tracing_ = true;
};

}  // namespace dmrsim::sim
