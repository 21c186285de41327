// Copyright 2026 The ttsbench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttsbench/harness.hpp"

namespace ttsbench {

struct SizeSpec {
    int L = 1;
    int count = 10;  // instances at this size
};

struct AlgorithmSpec {
    std::string label;  // unique; names the output files
    AnnealerConfig config;
};

struct TaScanSpec {
    std::string label;  // algorithm to scan
    std::vector<long long> ta_grid;
};

struct BetaScanSpec {
    std::vector<double> beta_grid;
    std::vector<long long> ta_grid;
    MfaSchedule base;
};

// Declarative campaign description; see README for the JSON schema. The seed
// is mandatory: no wall-clock seeding anywhere.
struct CampaignConfig {
    uint64_t seed = 0;
    std::filesystem::path out_dir;
    int threads = 1;
    double target_successes = 100.0;
    long long cap = 1'000'000;
    std::vector<SizeSpec> sizes;
    std::vector<AlgorithmSpec> algorithms;
    std::vector<int> k_grid{100, 50, 30};
    std::vector<std::pair<std::string, std::string>> correlations;
    std::vector<TaScanSpec> ta_scans;
    std::optional<BetaScanSpec> beta_scan;

    static CampaignConfig from_json(const nlohmann::json& j);
    static CampaignConfig from_file(const std::filesystem::path& path);

    // canonical serialization used for the checkpoint hash
    std::string canonical() const;
};

// Thrown when a pipeline stage fails; carries the stage name so the CLI can
// report it and exit with the stage-failure code.
struct StageError : std::runtime_error {
    StageError(const std::string& stage, const std::string& what)
        : std::runtime_error("stage `" + stage + "`: " + what), stage(stage) {}
    std::string stage;
};

struct PipelineResult {
    std::filesystem::path out_dir;
    std::vector<std::string> stages_run;      // this invocation
    std::vector<std::string> stages_skipped;  // completed in the checkpoint
};

// Runs generate -> solve -> tts -> scans -> fit -> report, checkpointing
// after each stage. With `resume` the checkpoint must match the config hash
// (refused otherwise) and completed stages are skipped; artifacts are
// append-only and a rerun with the same config + seed is byte-identical.
PipelineResult run_pipeline(const CampaignConfig& config, bool resume = false);

}  // namespace ttsbench
