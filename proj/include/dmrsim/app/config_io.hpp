#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dmrsim/app/world.hpp"
#include "dmrsim/harness/plan.hpp"
#include "dmrsim/node/config.hpp"
#include "dmrsim/perception/scenario.hpp"
#include "dmrsim/rules/predicate.hpp"

namespace dmrsim::app {

/// All loaders throw sim::ConfigError with the offending path and key on
/// malformed input; silent defaults are limited to genuinely optional keys.

perception::ScenarioScript load_scenario(const std::filesystem::path& file);

RuntimeConfig load_runtime(const std::filesystem::path& file);

/// Stage latency models, e.g. fitted per-scenario profiles.
node::StageDistributions load_stage_profile(const std::filesystem::path& file);

/// The plan file's injections plus its per-run single-fault flag. Campaign
/// runners split the list into one plan per injection; `run` uses it whole.
std::pair<std::vector<harness::FaultInjection>, bool> load_fault_injections(
    const std::filesystem::path& file);

/// Parses and compiles a rule document; throws sim::ConfigError carrying the
/// full diagnostic or abort text on failure.
rules::SafetyPredicate load_and_compile_rules(const std::filesystem::path& file);

sim::LatencyDistribution distribution_from_json(const nlohmann::json& j,
                                                const std::string& context);

std::string read_text_file(const std::filesystem::path& file);

/// Digest of the configuration inputs, for run provenance. Sensitive to the
/// content, order, and boundaries of the texts.
std::uint64_t config_fingerprint(const std::vector<std::string>& texts);

}  // namespace dmrsim::app
