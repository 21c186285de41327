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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ttsbench/annealers.hpp"

namespace ttsbench {

using AnnealerConfig = std::variant<SaSchedule, SqaSchedule, MfaSchedule>;

const char* algorithm_name(const AnnealerConfig& config);
long long annealing_time(const AnnealerConfig& config);
AnnealerConfig with_annealing_time(AnnealerConfig config, long long t_a);

// Stable 64-bit tag of (algorithm, schedule parameters); keeps RNG streams
// for different schedules on the same instance independent.
uint64_t config_tag(const AnnealerConfig& config);

AnnealOutcome run_annealer(const IsingProblem& problem,
                           const AnnealerConfig& config, long long e0,
                           Xoshiro256& rng);

// ------------------------------------------------------------- TTS --------

struct TtsOptions {
    double target_successes = 100.0;
    long long cap = 1'000'000;  // repetition limit per instance
};

// Estimated single-run success probability s and mean repetitions tau = 1/s.
struct TtsRecord {
    uint64_t instance_id = 0;
    double s = 0.0;
    double tau = 0.0;
    long long repetitions = 0;
    double successes = 0.0;      // accumulated success fractions
    bool is_upper_bound = false; // cap hit with zero successes; s = 1/cap
};

// Protocol core: repeat runs, accumulating success fractions, until the
// accumulated total reaches target_successes or the cap is hit. `run_once`
// is called with the repetition index and returns a success fraction in
// [0,1]; injectable so tests can use synthetic annealers.
template <class Runner>
TtsRecord estimate_tau_with(Runner&& run_once, const TtsOptions& opts) {
    if (opts.cap < opts.target_successes)
        throw std::invalid_argument("estimate_tau: cap < target_successes");
    TtsRecord rec;
    while (rec.repetitions < opts.cap && rec.successes < opts.target_successes) {
        rec.successes += run_once(rec.repetitions);
        ++rec.repetitions;
    }
    if (rec.successes <= 0.0) {
        rec.is_upper_bound = true;
        rec.s = 1.0 / static_cast<double>(opts.cap);
    } else {
        rec.s = rec.successes / static_cast<double>(rec.repetitions);
    }
    rec.tau = 1.0 / rec.s;
    return rec;
}

// Repetition r uses a fresh generator seeded from (stream_seed, r), so the
// estimate is independent of how repetitions are scheduled.
TtsRecord estimate_tau(const IsingProblem& problem, const AnnealerConfig& config,
                       long long e0, const TtsOptions& opts,
                       uint64_t stream_seed, uint64_t instance_id);

struct BatchError {
    uint64_t instance_id = 0;
    std::string message;
};

struct BatchResult {
    std::vector<TtsRecord> records;  // in instance order
    std::vector<BatchError> errors;
};

// One TtsRecord per instance; per-instance RNG streams derive from
// (master_seed, config tag, instance id), so results are byte-identical for
// any thread count. Instances with missing ground energy produce an error
// record and the batch continues.
BatchResult batch_tts(const std::vector<CouplingInstance>& instances,
                      const std::vector<std::optional<long long>>& e0,
                      const AnnealerConfig& config, const TtsOptions& opts,
                      uint64_t master_seed, int threads = 0);

// Single-threaded reference implementation of the same contract, kept for
// determinism tests and the kernel benchmark.
BatchResult batch_tts_serial(const std::vector<CouplingInstance>& instances,
                             const std::vector<std::optional<long long>>& e0,
                             const AnnealerConfig& config, const TtsOptions& opts,
                             uint64_t master_seed);

// -------------------------------------------------------- statistics ------

// Nearest-rank quantile x_(ceil(p*n)) of a sorted sample, p in (0, 1].
double nearest_rank_quantile(std::span<const double> sorted, double p);

struct QuantileCI {
    double p = 0.0;
    double value = 0.0;
    double lo = 0.0;  // 95% bootstrap interval
    double hi = 0.0;
};

std::vector<QuantileCI> bootstrap_quantiles(std::span<const double> sample,
                                            std::span<const double> probs,
                                            int resamples, uint64_t seed);

// --------------------------------------------------------------- scans ----

struct ScanPoint {
    double param = 0.0;  // t_a or beta
    std::vector<QuantileCI> quantiles;  // of total effort t_a * tau
};

struct ScanResult {
    std::vector<double> probs;
    std::vector<ScanPoint> points;
    double opt_param = 0.0;           // grid value minimizing the median
    bool quantile_disagreement = false;  // some quantile prefers another point
};

inline const std::vector<double> kDefaultScanProbs{0.50, 0.75, 0.90, 0.99};

ScanResult scan_annealing_time(const std::vector<CouplingInstance>& instances,
                               const std::vector<std::optional<long long>>& e0,
                               const AnnealerConfig& base,
                               const std::vector<long long>& ta_grid,
                               const TtsOptions& opts, uint64_t master_seed,
                               int threads = 0,
                               const std::vector<double>& probs = kDefaultScanProbs);

// For each beta, runs a t_a scan and records the effort quantiles at that
// beta's optimal t_a; opt_param is the beta minimizing the median effort.
ScanResult scan_beta(const std::vector<CouplingInstance>& instances,
                     const std::vector<std::optional<long long>>& e0,
                     const MfaSchedule& base, const std::vector<double>& beta_grid,
                     const std::vector<long long>& ta_grid, const TtsOptions& opts,
                     uint64_t master_seed, int threads = 0,
                     const std::vector<double>& probs = kDefaultScanProbs);

// ------------------------------------------------------- diagnostics ------

// Element n is the mean of the first n+1 values. Throws on empty input.
std::vector<double> running_mean(const std::vector<double>& taus);

struct CorrelationPair {
    uint64_t instance_id = 0;
    double tau_a = 0.0, tau_b = 0.0;
    double effort_a = 0.0, effort_b = 0.0;
};

struct CorrelationResult {
    std::vector<CorrelationPair> pairs;
    int s_improved = 0;       // instances with s_b > s_a
    int effort_reduced = 0;   // instances with effort_b < effort_a
};

// Joins two record sets by instance id. Throws std::invalid_argument listing
// unmatched ids.
CorrelationResult correlation_pairs(const std::vector<TtsRecord>& a,
                                    const std::vector<TtsRecord>& b,
                                    long long ta_a, long long ta_b);

}  // namespace ttsbench
