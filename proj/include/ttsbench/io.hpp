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
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttsbench/evt.hpp"
#include "ttsbench/harness.hpp"

namespace ttsbench {

// CSV: instance_id,s,tau,repetitions,successes,is_upper_bound
void write_tts_csv(const std::filesystem::path& path,
                   const std::vector<TtsRecord>& records);
std::vector<TtsRecord> read_tts_csv(const std::filesystem::path& path);

// CSV: instance_id,E0
void write_e0_csv(const std::filesystem::path& path,
                  const std::map<uint64_t, long long>& e0);
std::map<uint64_t, long long> read_e0_csv(const std::filesystem::path& path);

nlohmann::ordered_json fit_to_json(const GpdFit& fit);
nlohmann::ordered_json scan_to_json(const ScanResult& scan);

void write_points_csv(const std::filesystem::path& path, const char* header,
                      const std::vector<std::pair<double, double>>& points);

// SHA-256 hex digests, for the artifact manifest.
std::string sha256_string(const std::string& data);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace ttsbench
