#include "dmrsim/sim/engine.hpp"

#include <stdexcept>
#include <utility>

namespace dmrsim::sim {

Engine::Engine(std::uint64_t seed) : seed_(seed) {}

EventHandle Engine::schedule_at(VirtualTime at, std::string handler, Action action) {
  if (at < now_)
    throw std::logic_error("schedule_at: " + std::to_string(at.micros) +
                           "us is in the past (now " + std::to_string(now_.micros) + "us)");
  auto p = std::make_unique<Pending>();
  p->at = at.micros;
  p->id = next_id_++;
  p->handler = std::move(handler);
  p->action = std::move(action);
  EventHandle h{p->id};
  queue_.push(std::move(p));
  return h;
}

EventHandle Engine::schedule_after(Duration delay, std::string handler, Action action) {
  return schedule_at(now_ + delay, std::move(handler), std::move(action));
}

void Engine::cancel(EventHandle h) {
  if (h.valid()) cancelled_.insert(h.id);
}

bool Engine::queue_empty() const { return queue_.empty(); }

void Engine::run_until(VirtualTime deadline) {
  if (deadline < now_) throw std::logic_error("run_until: deadline is in the past");
  while (!queue_.empty() && queue_.top()->at <= deadline.micros) {
    // priority_queue::top() is const; moving the payload out is safe because
    // the element is popped before anything else touches the queue.
    auto ev = std::move(const_cast<std::unique_ptr<Pending>&>(queue_.top()));
    queue_.pop();
    if (auto it = cancelled_.find(ev->id); it != cancelled_.end()) {
      cancelled_.erase(it);
      continue;
    }
    now_ = VirtualTime{ev->at};
    if (tracing_) trace_.append(ev->at, ev->handler, "");
    ev->action();
  }
  now_ = deadline;
}

RngStream& Engine::stream(const std::string& id) {
  auto it = streams_.find(id);
  if (it == streams_.end())
    it = streams_.emplace(id, std::make_unique<RngStream>(seed_, id)).first;
  return *it->second;
}

void Engine::note(std::string_view handler, std::string summary) {
  if (tracing_) trace_.append(now_.micros, std::string(handler), std::move(summary));
}

}  // namespace dmrsim::sim
