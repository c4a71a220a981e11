#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dmrsim::sim {

/// One dispatched event or handler-emitted note.
struct TraceEntry {
  std::int64_t micros = 0;
  std::string handler;
  std::string summary;
};

/// Chronological record of a run. Entries appear in dispatch order, which for
/// equal timestamps is insertion order, so two runs with equal seeds render
/// byte-identical text.
class SimulationTrace {
 public:
  void append(std::int64_t micros, std::string handler, std::string summary);
  void clear();

  const std::vector<TraceEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Line-oriented rendering: "<micros> <handler> <summary>\n".
  std::string to_text() const;

 private:
  std::vector<TraceEntry> entries_;
};

}  // namespace dmrsim::sim
