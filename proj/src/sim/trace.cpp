#include "dmrsim/sim/trace.hpp"

#include <utility>

#include "dmrsim/sim/time.hpp"

namespace dmrsim::sim {

void SimulationTrace::append(std::int64_t micros, std::string handler, std::string summary) {
  entries_.push_back(TraceEntry{micros, std::move(handler), std::move(summary)});
}

void SimulationTrace::clear() { entries_.clear(); }

std::string SimulationTrace::to_text() const {
  std::string out;
  out.reserve(entries_.size() * 48);
  for (const auto& e : entries_) {
    out += std::to_string(e.micros);
    out += ' ';
    out += e.handler;
    if (!e.summary.empty()) {
      out += ' ';
      out += e.summary;
    }
    out += '\n';
  }
  return out;
}

std::string format_ms(std::int64_t micros) {
  bool neg = micros < 0;
  std::int64_t abs = neg ? -micros : micros;
  std::int64_t hundredths = (abs + 5) / 10;  // round half up to 0.01 ms
  std::string s = neg ? "-" : "";
  s += std::to_string(hundredths / 100);
  s += '.';
  std::int64_t frac = hundredths % 100;
  s += static_cast<char>('0' + frac / 10);
  s += static_cast<char>('0' + frac % 10);
  return s;
}

}  // namespace dmrsim::sim
