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
//
// Compares the OpenMP batch kernel against the serial reference and checks
// they produce identical records.

#include <chrono>
#include <cstdio>

#include "ttsbench/exact.hpp"
#include "ttsbench/harness.hpp"

using namespace ttsbench;

namespace {

double seconds(auto fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

bool same_records(const BatchResult& a, const BatchResult& b) {
    if (a.records.size() != b.records.size()) return false;
    for (size_t i = 0; i < a.records.size(); ++i) {
        const auto& x = a.records[i];
        const auto& y = b.records[i];
        if (x.instance_id != y.instance_id || x.s != y.s || x.tau != y.tau ||
            x.repetitions != y.repetitions || x.successes != y.successes ||
            x.is_upper_bound != y.is_upper_bound)
            return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const int L = argc > 1 ? std::atoi(argv[1]) : 2;
    const int count = argc > 2 ? std::atoi(argv[2]) : 64;
    const uint64_t seed = 0x5eedULL;

    const ChimeraGraph graph = build_chimera(L);
    std::vector<CouplingInstance> instances;
    std::vector<std::optional<long long>> e0;
    for (int i = 0; i < count; ++i) {
        instances.push_back(generate_instance(graph, derive_seed(seed, i), i));
        e0.push_back(dp_ground(instances.back()).energy);
    }

    const AnnealerConfig configs[] = {
        AnnealerConfig{SaSchedule{200}},
        AnnealerConfig{SqaSchedule{50}},
        AnnealerConfig{MfaSchedule{200}},
    };
    const TtsOptions opts{20.0, 20000};

    std::printf("L=%d N=%d instances=%d\n", L, graph.N, count);
    std::printf("%-5s %12s %12s %8s %s\n", "alg", "serial[s]", "openmp[s]",
                "speedup", "identical");
    bool all_same = true;
    for (const auto& cfg : configs) {
        BatchResult serial, parallel;
        const double ts =
            seconds([&] { serial = batch_tts_serial(instances, e0, cfg, opts, seed); });
        const double tp =
            seconds([&] { parallel = batch_tts(instances, e0, cfg, opts, seed); });
        const bool same = same_records(serial, parallel);
        all_same = all_same && same;
        std::printf("%-5s %12.3f %12.3f %8.2f %s\n", algorithm_name(cfg), ts, tp,
                    ts / tp, same ? "yes" : "NO");
    }
    return all_same ? 0 : 1;
}
