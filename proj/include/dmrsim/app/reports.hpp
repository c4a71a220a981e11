#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dmrsim/app/world.hpp"
#include "dmrsim/profiler/profiler.hpp"

namespace dmrsim::app {

/// All renderers return the exact bytes to publish; a given result always
/// formats to the same text.

std::string merged_csv(const std::vector<redundancy::MergedRow>& rows);

std::string faults_csv(const std::vector<harness::FaultRecord>& records);

std::string latency_csv_rows(const std::string& scenario,
                             const std::vector<profiler::LatencyStats>& stats);

std::string latency_csv(const std::string& scenario,
                        const std::vector<profiler::LatencyStats>& stats);

std::string latency_csv(const std::string& scenario,
                        const profiler::ProfileResult& result);

std::string latency_json(const std::string& scenario,
                         const profiler::ProfileResult& result);

/// Fixed-width console table of the latency decomposition.
std::string latency_table(const std::string& scenario,
                          const profiler::ProfileResult& result);

std::string run_summary_json(const RunResult& result, std::uint64_t config_fingerprint);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dmrsim::app
