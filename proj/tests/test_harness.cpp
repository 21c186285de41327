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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ttsbench/exact.hpp"
#include "ttsbench/harness.hpp"

using namespace ttsbench;

TEST_CASE("tau estimation with synthetic runners") {
    const TtsOptions opts{100.0, 1000000};

    SUBCASE("always succeeds") {
        const auto rec = estimate_tau_with([](long long) { return 1.0; }, opts);
        CHECK(rec.repetitions == 100);
        CHECK(rec.s == 1.0);
        CHECK(rec.tau == 1.0);
        CHECK_FALSE(rec.is_upper_bound);
    }

    SUBCASE("half fractions accumulate") {
        const auto rec = estimate_tau_with([](long long) { return 0.5; }, opts);
        CHECK(rec.repetitions == 200);
        CHECK(rec.s == doctest::Approx(0.5));
        CHECK(rec.tau == doctest::Approx(2.0));
    }

    SUBCASE("never succeeds: cap gives an upper bound") {
        const TtsOptions small{100.0, 5000};
        const auto rec = estimate_tau_with([](long long) { return 0.0; }, small);
        CHECK(rec.repetitions == 5000);
        CHECK(rec.is_upper_bound);
        CHECK(rec.s == doctest::Approx(1.0 / 5000));
        CHECK(rec.tau == doctest::Approx(5000.0));
    }

    SUBCASE("tau times s is one") {
        Xoshiro256 rng(7);
        const auto rec = estimate_tau_with(
            [&](long long) { return rng.uniform() < 0.3 ? 1.0 : 0.0; }, opts);
        CHECK(rec.s * rec.tau == doctest::Approx(1.0));
        CHECK(rec.successes >= 100.0);
    }

    SUBCASE("cap below target is rejected") {
        CHECK_THROWS_AS(
            estimate_tau_with([](long long) { return 1.0; }, TtsOptions{100, 10}),
            std::invalid_argument);
    }
}

TEST_CASE("config helpers") {
    const AnnealerConfig sa = SaSchedule{100};
    const AnnealerConfig sqa = SqaSchedule{100};
    const AnnealerConfig mfa = MfaSchedule{100};
    CHECK(std::string(algorithm_name(sa)) == "sa");
    CHECK(std::string(algorithm_name(sqa)) == "sqa");
    CHECK(std::string(algorithm_name(mfa)) == "mfa");
    CHECK(annealing_time(sa) == 100);
    CHECK(annealing_time(with_annealing_time(sa, 250)) == 250);

    // tags separate algorithms and schedule parameters
    CHECK(config_tag(sa) != config_tag(sqa));
    CHECK(config_tag(sa) != config_tag(mfa));
    CHECK(config_tag(sa) != config_tag(with_annealing_time(sa, 250)));
    CHECK(config_tag(SqaSchedule{100, 10.0}) != config_tag(SqaSchedule{100, 4.0}));
}

TEST_CASE("batch results are identical for serial and parallel paths") {
    const ChimeraGraph g = build_chimera(1);
    std::vector<CouplingInstance> instances;
    std::vector<std::optional<long long>> e0;
    for (uint64_t s = 0; s < 24; ++s) {
        instances.push_back(generate_instance(g, derive_seed(21, s), s));
        e0.push_back(dp_ground(instances.back()).energy);
    }
    const AnnealerConfig cfg = SaSchedule{50};
    const TtsOptions opts{20.0, 10000};

    const auto serial = batch_tts_serial(instances, e0, cfg, opts, 99);
    for (int threads : {1, 2, 4}) {
        const auto par = batch_tts(instances, e0, cfg, opts, 99, threads);
        REQUIRE(par.records.size() == serial.records.size());
        for (size_t i = 0; i < serial.records.size(); ++i) {
            CHECK(par.records[i].instance_id == serial.records[i].instance_id);
            CHECK(par.records[i].s == serial.records[i].s);
            CHECK(par.records[i].tau == serial.records[i].tau);
            CHECK(par.records[i].repetitions == serial.records[i].repetitions);
        }
    }
}

TEST_CASE("missing ground energies become batch errors") {
    const ChimeraGraph g = build_chimera(1);
    std::vector<CouplingInstance> instances;
    std::vector<std::optional<long long>> e0;
    for (uint64_t s = 0; s < 4; ++s) {
        instances.push_back(generate_instance(g, derive_seed(22, s), s));
        e0.push_back(s == 2 ? std::optional<long long>{}
                            : std::optional<long long>{
                                  dp_ground(instances.back()).energy});
    }
    const auto batch =
        batch_tts(instances, e0, SaSchedule{50}, TtsOptions{10.0, 1000}, 1);
    CHECK(batch.records.size() == 3);
    REQUIRE(batch.errors.size() == 1);
    CHECK(batch.errors[0].instance_id == 2);

    e0.pop_back();
    CHECK_THROWS_AS(
        batch_tts(instances, e0, SaSchedule{50}, TtsOptions{10.0, 1000}, 1),
        std::invalid_argument);
}

TEST_CASE("nearest-rank quantiles") {
    const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(nearest_rank_quantile(v, 0.5) == 5);
    CHECK(nearest_rank_quantile(v, 0.05) == 1);
    CHECK(nearest_rank_quantile(v, 0.91) == 10);
    CHECK(nearest_rank_quantile(v, 1.0) == 10);
    CHECK_THROWS_AS(nearest_rank_quantile(std::vector<double>{}, 0.5),
                    std::invalid_argument);
}

TEST_CASE("bootstrap intervals bracket the point estimate") {
    std::vector<double> sample;
    Xoshiro256 rng(31);
    for (int i = 0; i < 500; ++i) sample.push_back(rng.uniform());
    const std::vector<double> probs{0.5, 0.9};
    const auto a = bootstrap_quantiles(sample, probs, 1000, 77);
    const auto b = bootstrap_quantiles(sample, probs, 1000, 77);
    for (size_t q = 0; q < probs.size(); ++q) {
        CHECK(a[q].lo <= a[q].value);
        CHECK(a[q].value <= a[q].hi);
        CHECK(a[q].lo == b[q].lo);  // deterministic in the seed
        CHECK(a[q].hi == b[q].hi);
    }
}

TEST_CASE("running mean") {
    CHECK(running_mean({2, 4, 6}) == std::vector<double>{2, 3, 4});
    CHECK_THROWS_AS(running_mean({}), std::invalid_argument);
}

TEST_CASE("correlation pairs and improvement counts") {
    std::vector<TtsRecord> a(3), b(3);
    for (uint64_t i = 0; i < 3; ++i) {
        a[i].instance_id = i;
        b[i].instance_id = i;
    }
    // instance 0: s improves and effort drops; 1: s worsens but effort
    // still drops; 2: s and effort both worse (10000*2 < 150*1000)
    a[0].s = 0.1; a[0].tau = 10;  b[0].s = 0.5;   b[0].tau = 2;
    a[1].s = 0.5; a[1].tau = 2;   b[1].s = 0.25;  b[1].tau = 4;
    a[2].s = 0.5; a[2].tau = 2;   b[2].s = 0.001; b[2].tau = 1000;
    const auto cor = correlation_pairs(a, b, 10000, 150);
    CHECK(cor.pairs.size() == 3);
    CHECK(cor.s_improved == 1);
    CHECK(cor.effort_reduced == 2);
    CHECK(cor.pairs[0].effort_a == doctest::Approx(100000));
    CHECK(cor.pairs[0].effort_b == doctest::Approx(300));

    b[2].instance_id = 9;
    CHECK_THROWS_AS(correlation_pairs(a, b, 10000, 150), std::invalid_argument);
}

TEST_CASE("annealing-time scan finds the grid optimum") {
    const ChimeraGraph g = build_chimera(1);
    std::vector<CouplingInstance> instances;
    std::vector<std::optional<long long>> e0;
    for (uint64_t s = 0; s < 30; ++s) {
        instances.push_back(generate_instance(g, derive_seed(23, s), s));
        e0.push_back(dp_ground(instances.back()).energy);
    }
    const std::vector<long long> grid{5, 20, 80};
    const auto scan = scan_annealing_time(instances, e0, SaSchedule{1}, grid,
                                          TtsOptions{20.0, 20000}, 4);
    CHECK(scan.points.size() == grid.size());
    bool on_grid = false;
    for (long long t : grid) on_grid |= scan.opt_param == static_cast<double>(t);
    CHECK(on_grid);
    for (const auto& pt : scan.points) {
        REQUIRE(pt.quantiles.size() == scan.probs.size());
        for (size_t q = 1; q < pt.quantiles.size(); ++q)
            CHECK(pt.quantiles[q - 1].value <= pt.quantiles[q].value);
    }

    CHECK_THROWS_AS(scan_annealing_time(instances, e0, SaSchedule{1}, {},
                                        TtsOptions{20.0, 20000}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(scan_annealing_time(instances, e0, SaSchedule{1}, {80, 5},
                                        TtsOptions{20.0, 20000}, 4),
                    std::invalid_argument);
}

TEST_CASE("beta scan reports the best temperature") {
    const ChimeraGraph g = build_chimera(1);
    std::vector<CouplingInstance> instances;
    std::vector<std::optional<long long>> e0;
    for (uint64_t s = 0; s < 10; ++s) {
        instances.push_back(generate_instance(g, derive_seed(24, s), s));
        e0.push_back(dp_ground(instances.back()).energy);
    }
    const std::vector<double> betas{0.5, 4.0};
    const auto scan = scan_beta(instances, e0, MfaSchedule{}, betas, {20, 60},
                                TtsOptions{10.0, 20000}, 4);
    CHECK(scan.points.size() == betas.size());
    CHECK((scan.opt_param == 0.5 || scan.opt_param == 4.0));
}
