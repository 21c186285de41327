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

#include "ttsbench/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ttsbench {

const char* algorithm_name(const AnnealerConfig& config) {
    switch (config.index()) {
        case 0: return "sa";
        case 1: return "sqa";
        default: return "mfa";
    }
}

long long annealing_time(const AnnealerConfig& config) {
    return std::visit([](const auto& s) { return s.t_a; }, config);
}

AnnealerConfig with_annealing_time(AnnealerConfig config, long long t_a) {
    std::visit([&](auto& s) { s.t_a = t_a; }, config);
    return config;
}

uint64_t config_tag(const AnnealerConfig& config) {
    uint64_t tag = derive_seed(0x7475746261636865ULL, config.index());
    tag = derive_seed(tag, static_cast<uint64_t>(annealing_time(config)));
    const auto mix_double = [&](double v) {
        tag = derive_seed(tag, std::bit_cast<uint64_t>(v));
    };
    if (const auto* sa = std::get_if<SaSchedule>(&config)) {
        mix_double(sa->beta_start);
        mix_double(sa->beta_end);
    } else if (const auto* sqa = std::get_if<SqaSchedule>(&config)) {
        mix_double(sqa->beta);
        tag = derive_seed(tag, static_cast<uint64_t>(sqa->num_slices));
    } else if (const auto* mfa = std::get_if<MfaSchedule>(&config)) {
        mix_double(mfa->beta);
        tag = derive_seed(tag, static_cast<uint64_t>(mfa->table_size));
    }
    return tag;
}

AnnealOutcome run_annealer(const IsingProblem& problem,
                           const AnnealerConfig& config, long long e0,
                           Xoshiro256& rng) {
    return std::visit(
        [&](const auto& sched) -> AnnealOutcome {
            using T = std::decay_t<decltype(sched)>;
            if constexpr (std::is_same_v<T, SaSchedule>)
                return sa_run(problem, sched, e0, rng);
            else if constexpr (std::is_same_v<T, SqaSchedule>)
                return sqa_run(problem, sched, e0, rng);
            else
                return mfa_run(problem, sched, e0, rng);
        },
        config);
}

TtsRecord estimate_tau(const IsingProblem& problem, const AnnealerConfig& config,
                       long long e0, const TtsOptions& opts,
                       uint64_t stream_seed, uint64_t instance_id) {
    TtsRecord rec = estimate_tau_with(
        [&](long long rep) {
            Xoshiro256 rng(derive_seed(stream_seed, static_cast<uint64_t>(rep)));
            return run_annealer(problem, config, e0, rng).success_fraction;
        },
        opts);
    rec.instance_id = instance_id;
    return rec;
}

namespace {

BatchResult batch_tts_impl(const std::vector<CouplingInstance>& instances,
                           const std::vector<std::optional<long long>>& e0,
                           const AnnealerConfig& config, const TtsOptions& opts,
                           uint64_t master_seed, int threads, bool parallel) {
    if (e0.size() != instances.size())
        throw std::invalid_argument("batch_tts: e0 list size mismatch");
    const uint64_t tag = config_tag(config);
    const auto n = static_cast<long long>(instances.size());

    std::vector<TtsRecord> records(instances.size());
    std::vector<uint8_t> failed(instances.size(), 0);

#ifdef _OPENMP
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads) if (parallel)
#endif
    for (long long i = 0; i < n; ++i) {
        if (!e0[i]) {
            failed[i] = 1;
            continue;
        }
        const IsingProblem problem = IsingProblem::from_instance(instances[i]);
        const uint64_t stream =
            derive_seed(master_seed, tag, instances[i].id);
        records[i] =
            estimate_tau(problem, config, *e0[i], opts, stream, instances[i].id);
    }

    BatchResult result;
    result.records.reserve(instances.size());
    for (size_t i = 0; i < instances.size(); ++i) {
        if (failed[i])
            result.errors.push_back(
                {instances[i].id, "missing ground energy"});
        else
            result.records.push_back(records[i]);
    }
    return result;
}

}  // namespace

BatchResult batch_tts(const std::vector<CouplingInstance>& instances,
                      const std::vector<std::optional<long long>>& e0,
                      const AnnealerConfig& config, const TtsOptions& opts,
                      uint64_t master_seed, int threads) {
    return batch_tts_impl(instances, e0, config, opts, master_seed, threads,
                          true);
}

BatchResult batch_tts_serial(const std::vector<CouplingInstance>& instances,
                             const std::vector<std::optional<long long>>& e0,
                             const AnnealerConfig& config, const TtsOptions& opts,
                             uint64_t master_seed) {
    return batch_tts_impl(instances, e0, config, opts, master_seed, 1, false);
}

double nearest_rank_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty())
        throw std::invalid_argument("nearest_rank_quantile: empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const auto n = static_cast<double>(sorted.size());
    const auto rank = static_cast<size_t>(std::ceil(p * n));
    return sorted[rank - 1];
}

std::vector<QuantileCI> bootstrap_quantiles(std::span<const double> sample,
                                            std::span<const double> probs,
                                            int resamples, uint64_t seed) {
    if (sample.empty())
        throw std::invalid_argument("bootstrap_quantiles: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<std::vector<double>> boot(probs.size());
    Xoshiro256 rng(seed);
    std::vector<double> resample(sample.size());
    for (int r = 0; r < resamples; ++r) {
        for (auto& v : resample) v = sorted[rng.below(sorted.size())];
        std::sort(resample.begin(), resample.end());
        for (size_t q = 0; q < probs.size(); ++q)
            boot[q].push_back(nearest_rank_quantile(resample, probs[q]));
    }

    std::vector<QuantileCI> out(probs.size());
    for (size_t q = 0; q < probs.size(); ++q) {
        out[q].p = probs[q];
        out[q].value = nearest_rank_quantile(sorted, probs[q]);
        std::sort(boot[q].begin(), boot[q].end());
        out[q].lo = nearest_rank_quantile(boot[q], 0.025);
        out[q].hi = nearest_rank_quantile(boot[q], 0.975);
    }
    return out;
}

namespace {

constexpr int kBootstrapResamples = 1000;

ScanPoint make_scan_point(double param, const std::vector<TtsRecord>& records,
                          double t_a, const std::vector<double>& probs,
                          uint64_t seed) {
    std::vector<double> efforts;
    efforts.reserve(records.size());
    for (const auto& r : records) efforts.push_back(t_a * r.tau);
    ScanPoint pt;
    pt.param = param;
    pt.quantiles =
        bootstrap_quantiles(efforts, probs, kBootstrapResamples, seed);
    return pt;
}

// opt = grid point minimizing the median; the disagreement flag is set when
// any other quantile attains its minimum elsewhere.
void finish_scan(ScanResult& scan) {
    if (scan.points.empty())
        throw std::invalid_argument("scan: empty grid");
    const auto argmin = [&](size_t q) {
        size_t best = 0;
        for (size_t i = 1; i < scan.points.size(); ++i)
            if (scan.points[i].quantiles[q].value <
                scan.points[best].quantiles[q].value)
                best = i;
        return best;
    };
    size_t median_idx = 0;
    for (size_t q = 0; q < scan.probs.size(); ++q)
        if (scan.probs[q] == 0.5) median_idx = argmin(q);
    for (size_t q = 0; q < scan.probs.size(); ++q)
        if (argmin(q) != median_idx) scan.quantile_disagreement = true;
    scan.opt_param = scan.points[median_idx].param;
}

}  // namespace

ScanResult scan_annealing_time(const std::vector<CouplingInstance>& instances,
                               const std::vector<std::optional<long long>>& e0,
                               const AnnealerConfig& base,
                               const std::vector<long long>& ta_grid,
                               const TtsOptions& opts, uint64_t master_seed,
                               int threads, const std::vector<double>& probs) {
    if (ta_grid.empty())
        throw std::invalid_argument("scan_annealing_time: empty grid");
    if (!std::is_sorted(ta_grid.begin(), ta_grid.end()))
        throw std::invalid_argument("scan_annealing_time: grid not ascending");

    ScanResult scan;
    scan.probs = probs;
    for (const long long t_a : ta_grid) {
        const AnnealerConfig config = with_annealing_time(base, t_a);
        const BatchResult batch =
            batch_tts(instances, e0, config, opts, master_seed, threads);
        scan.points.push_back(make_scan_point(
            static_cast<double>(t_a), batch.records, static_cast<double>(t_a),
            probs, derive_seed(master_seed, config_tag(config), 0xb007)));
    }
    finish_scan(scan);
    return scan;
}

ScanResult scan_beta(const std::vector<CouplingInstance>& instances,
                     const std::vector<std::optional<long long>>& e0,
                     const MfaSchedule& base, const std::vector<double>& beta_grid,
                     const std::vector<long long>& ta_grid, const TtsOptions& opts,
                     uint64_t master_seed, int threads,
                     const std::vector<double>& probs) {
    if (beta_grid.empty()) throw std::invalid_argument("scan_beta: empty grid");

    ScanResult scan;
    scan.probs = probs;
    for (const double beta : beta_grid) {
        MfaSchedule sched = base;
        sched.beta = beta;
        const ScanResult inner = scan_annealing_time(
            instances, e0, sched, ta_grid, opts, master_seed, threads, probs);
        for (const auto& pt : inner.points)
            if (pt.param == inner.opt_param) {
                ScanPoint best = pt;
                best.param = beta;
                scan.points.push_back(best);
                break;
            }
    }
    finish_scan(scan);
    return scan;
}

std::vector<double> running_mean(const std::vector<double>& taus) {
    if (taus.empty()) throw std::invalid_argument("running_mean: empty input");
    std::vector<double> out(taus.size());
    double sum = 0.0;
    for (size_t i = 0; i < taus.size(); ++i) {
        sum += taus[i];
        out[i] = sum / static_cast<double>(i + 1);
    }
    return out;
}

CorrelationResult correlation_pairs(const std::vector<TtsRecord>& a,
                                    const std::vector<TtsRecord>& b,
                                    long long ta_a, long long ta_b) {
    std::vector<const TtsRecord*> bm;
    CorrelationResult out;
    std::string unmatched;
    // join on instance id via a sorted index of b
    std::vector<std::pair<uint64_t, const TtsRecord*>> bidx;
    bidx.reserve(b.size());
    for (const auto& r : b) bidx.emplace_back(r.instance_id, &r);
    std::sort(bidx.begin(), bidx.end());

    std::vector<uint8_t> used(b.size(), 0);
    for (const auto& ra : a) {
        auto it = std::lower_bound(bidx.begin(), bidx.end(), ra.instance_id,
                                   [](const auto& p, uint64_t id) {
                                       return p.first < id;
                                   });
        if (it == bidx.end() || it->first != ra.instance_id) {
            unmatched += " " + std::to_string(ra.instance_id);
            continue;
        }
        used[it - bidx.begin()] = 1;
        const TtsRecord& rb = *it->second;
        CorrelationPair p;
        p.instance_id = ra.instance_id;
        p.tau_a = ra.tau;
        p.tau_b = rb.tau;
        p.effort_a = static_cast<double>(ta_a) * ra.tau;
        p.effort_b = static_cast<double>(ta_b) * rb.tau;
        out.pairs.push_back(p);
        if (rb.s > ra.s) ++out.s_improved;
        if (p.effort_b < p.effort_a) ++out.effort_reduced;
    }
    for (size_t i = 0; i < bidx.size(); ++i)
        if (!used[i]) unmatched += " " + std::to_string(bidx[i].first);
    if (!unmatched.empty())
        throw std::invalid_argument("correlation_pairs: unmatched ids:" +
                                    unmatched);
    return out;
}

}  // namespace ttsbench
