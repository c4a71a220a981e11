#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dmrsim {

enum class NodeId : std::uint8_t { A = 0, B = 1 };

/// Actuation commands ordered by restrictiveness. Merging picks the maximum,
/// so a higher enum value must always be the safer command.
enum class SafetyCommand : std::uint8_t {
  FullSpeed = 0,
  ReducedSpeed = 1,
  Category1Stop = 2,
  EmergencyStop = 3,
};

enum class FaultKind : std::uint8_t {
  HeartbeatLoss = 0,
  NpuHang = 1,
  PowerBrownout = 2,
  SensorFault = 3,
};

/// How a fault was observed: peer software logic or the cross-wired ADC probe.
enum class Mechanism : std::uint8_t { SwLogic = 0, AdcProbing = 1 };

inline std::string_view to_string(NodeId id) {
  return id == NodeId::A ? "A" : "B";
}

inline std::string_view to_string(SafetyCommand c) {
  switch (c) {
    case SafetyCommand::FullSpeed: return "FullSpeed";
    case SafetyCommand::ReducedSpeed: return "ReducedSpeed";
    case SafetyCommand::Category1Stop: return "Category1Stop";
    case SafetyCommand::EmergencyStop: return "EmergencyStop";
  }
  return "?";
}

inline std::string_view to_string(FaultKind k) {
  switch (k) {
    case FaultKind::HeartbeatLoss: return "HeartbeatLoss";
    case FaultKind::NpuHang: return "NpuHang";
    case FaultKind::PowerBrownout: return "PowerBrownout";
    case FaultKind::SensorFault: return "SensorFault";
  }
  return "?";
}

inline std::string_view to_string(Mechanism m) {
  return m == Mechanism::SwLogic ? "SW-Logic" : "ADC-Probing";
}

inline FaultKind fault_kind_from_string(std::string_view s) {
  if (s == "HeartbeatLoss") return FaultKind::HeartbeatLoss;
  if (s == "NpuHang") return FaultKind::NpuHang;
  if (s == "PowerBrownout") return FaultKind::PowerBrownout;
  if (s == "SensorFault") return FaultKind::SensorFault;
  throw std::invalid_argument("unknown fault kind: " + std::string(s));
}

inline NodeId node_id_from_string(std::string_view s) {
  if (s == "A" || s == "a") return NodeId::A;
  if (s == "B" || s == "b") return NodeId::B;
  throw std::invalid_argument("unknown node id: " + std::string(s));
}

/// Detection mechanism associated with each fault kind.
inline Mechanism mechanism_of(FaultKind k) {
  return k == FaultKind::PowerBrownout ? Mechanism::AdcProbing
                                       : Mechanism::SwLogic;
}

}  // namespace dmrsim
