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

#include "ttsbench/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ttsbench/evt.hpp"
#include "ttsbench/exact.hpp"
#include "ttsbench/io.hpp"

namespace ttsbench {

namespace {

// fixed stream tags for seed derivation, one per pipeline stage
constexpr uint64_t kTagGenerate = 0x67656e6572617465ULL;
constexpr uint64_t kTagTts = 0x7474735f73746167ULL;
constexpr uint64_t kTagScan = 0x7363616e5f746167ULL;

AnnealerConfig config_from_json(const nlohmann::json& a) {
    const std::string alg = a.at("algorithm").get<std::string>();
    if (alg == "sa") {
        SaSchedule s;
        s.t_a = a.at("t_a").get<long long>();
        s.beta_start = a.value("beta_start", 0.1);
        s.beta_end = a.value("beta_end", 3.0);
        return s;
    }
    if (alg == "sqa") {
        SqaSchedule s;
        s.t_a = a.at("t_a").get<long long>();
        s.beta = a.value("beta", 10.0);
        s.num_slices = a.value("slices", 32);
        s.jperp_cap = a.value("jperp_cap", 25.0);
        return s;
    }
    if (alg == "mfa") {
        MfaSchedule s;
        s.t_a = a.at("t_a").get<long long>();
        s.beta = a.value("beta", 4.0);
        s.table_size = a.value("table_size", 1024);
        return s;
    }
    throw std::invalid_argument("unknown algorithm `" + alg + "`");
}

nlohmann::ordered_json config_to_json(const AnnealerConfig& c) {
    nlohmann::ordered_json j;
    j["algorithm"] = algorithm_name(c);
    j["t_a"] = annealing_time(c);
    if (const auto* sa = std::get_if<SaSchedule>(&c)) {
        j["beta_start"] = sa->beta_start;
        j["beta_end"] = sa->beta_end;
    } else if (const auto* sqa = std::get_if<SqaSchedule>(&c)) {
        j["beta"] = sqa->beta;
        j["slices"] = sqa->num_slices;
        j["jperp_cap"] = sqa->jperp_cap;
    } else if (const auto* mfa = std::get_if<MfaSchedule>(&c)) {
        j["beta"] = mfa->beta;
        j["table_size"] = mfa->table_size;
    }
    return j;
}

}  // namespace

CampaignConfig CampaignConfig::from_json(const nlohmann::json& j) {
    CampaignConfig c;
    if (!j.contains("seed"))
        throw std::invalid_argument("config: `seed` is required (no wall-clock seeding)");
    c.seed = j.at("seed").get<uint64_t>();
    c.out_dir = j.at("out").get<std::string>();
    c.threads = j.value("threads", 1);
    c.target_successes = j.value("target_successes", 100.0);
    c.cap = j.value("cap", 1'000'000LL);
    if (c.cap < c.target_successes)
        throw std::invalid_argument("config: cap < target_successes");

    for (const auto& s : j.at("sizes")) {
        SizeSpec spec;
        spec.L = s.at("L").get<int>();
        spec.count = s.at("count").get<int>();
        if (spec.L < 1 || spec.L > 5)
            throw std::invalid_argument(
                "config: L must be in [1,5] (exact-solver frontier limit)");
        if (spec.count < 1) throw std::invalid_argument("config: count < 1");
        c.sizes.push_back(spec);
    }
    if (c.sizes.empty()) throw std::invalid_argument("config: no sizes");

    std::set<std::string> labels;
    for (const auto& a : j.at("algorithms")) {
        AlgorithmSpec spec;
        spec.label = a.at("label").get<std::string>();
        if (!labels.insert(spec.label).second)
            throw std::invalid_argument("config: duplicate label `" +
                                        spec.label + "`");
        spec.config = config_from_json(a);
        c.algorithms.push_back(spec);
    }
    if (c.algorithms.empty()) throw std::invalid_argument("config: no algorithms");

    if (j.contains("k_grid")) c.k_grid = j.at("k_grid").get<std::vector<int>>();
    if (j.contains("correlations"))
        for (const auto& p : j.at("correlations")) {
            const auto pair = std::make_pair(p.at(0).get<std::string>(),
                                             p.at(1).get<std::string>());
            if (!labels.count(pair.first) || !labels.count(pair.second))
                throw std::invalid_argument("config: correlation label unknown");
            c.correlations.push_back(pair);
        }
    if (j.contains("ta_scans"))
        for (const auto& s : j.at("ta_scans")) {
            TaScanSpec spec;
            spec.label = s.at("label").get<std::string>();
            if (!labels.count(spec.label))
                throw std::invalid_argument("config: scan label unknown");
            spec.ta_grid = s.at("ta_grid").get<std::vector<long long>>();
            c.ta_scans.push_back(spec);
        }
    if (j.contains("beta_scan")) {
        BetaScanSpec spec;
        const auto& b = j.at("beta_scan");
        spec.beta_grid = b.at("beta_grid").get<std::vector<double>>();
        spec.ta_grid = b.at("ta_grid").get<std::vector<long long>>();
        spec.base.beta = spec.beta_grid.empty() ? 4.0 : spec.beta_grid.front();
        spec.base.table_size = b.value("table_size", 1024);
        c.beta_scan = spec;
    }
    return c;
}

CampaignConfig CampaignConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
        return from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: " + std::string(e.what()));
    }
}

std::string CampaignConfig::canonical() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    // out_dir excluded: relocating the bundle must not break resume
    j["target_successes"] = target_successes;
    j["cap"] = cap;
    nlohmann::ordered_json sz = nlohmann::ordered_json::array();
    for (const auto& s : sizes) sz.push_back({{"L", s.L}, {"count", s.count}});
    j["sizes"] = sz;
    nlohmann::ordered_json algs = nlohmann::ordered_json::array();
    for (const auto& a : algorithms) {
        auto aj = config_to_json(a.config);
        aj["label"] = a.label;
        algs.push_back(aj);
    }
    j["algorithms"] = algs;
    j["k_grid"] = k_grid;
    nlohmann::ordered_json cors = nlohmann::ordered_json::array();
    for (const auto& [a, b] : correlations) cors.push_back({a, b});
    j["correlations"] = cors;
    nlohmann::ordered_json scans = nlohmann::ordered_json::array();
    for (const auto& s : ta_scans)
        scans.push_back({{"label", s.label}, {"ta_grid", s.ta_grid}});
    j["ta_scans"] = scans;
    if (beta_scan)
        j["beta_scan"] = {{"beta_grid", beta_scan->beta_grid},
                          {"ta_grid", beta_scan->ta_grid}};
    // threads deliberately excluded: they must not affect results
    return j.dump();
}

namespace {

struct Checkpoint {
    std::string config_hash;
    std::vector<std::string> completed;

    bool done(const std::string& stage) const {
        return std::find(completed.begin(), completed.end(), stage) !=
               completed.end();
    }
};

std::filesystem::path checkpoint_path(const CampaignConfig& c) {
    return c.out_dir / "checkpoint.json";
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    Checkpoint cp;
    std::ifstream in(path);
    if (!in) return cp;
    nlohmann::json j;
    in >> j;
    cp.config_hash = j.value("config_sha256", "");
    if (j.contains("completed"))
        cp.completed = j.at("completed").get<std::vector<std::string>>();
    return cp;
}

void save_checkpoint(const CampaignConfig& c, const Checkpoint& cp) {
    nlohmann::ordered_json j{{"config_sha256", cp.config_hash},
                             {"completed", cp.completed}};
    std::ofstream out(checkpoint_path(c));
    out << j.dump(2) << '\n';
}

std::string instance_filename(int L, int id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "L%d_%05d.txt", L, id);
    return buf;
}

// All per-run state the stages share.
struct Campaign {
    const CampaignConfig& cfg;
    std::map<int, std::vector<CouplingInstance>> instances;  // by L
    std::map<int, std::map<uint64_t, long long>> e0;         // by L
    // tts records by (label, L)
    std::map<std::pair<std::string, int>, std::vector<TtsRecord>> tts;
    // chosen tail fit by (label, L)
    std::map<std::pair<std::string, int>, GpdFit> chosen_fit;

    std::vector<std::optional<long long>> e0_list(int L) const {
        std::vector<std::optional<long long>> out;
        const auto& m = e0.at(L);
        for (const auto& inst : instances.at(L)) {
            auto it = m.find(inst.id);
            out.push_back(it == m.end() ? std::optional<long long>{}
                                        : std::optional<long long>{it->second});
        }
        return out;
    }
};

void stage_generate(Campaign& cam, bool skip) {
    const auto dir = cam.cfg.out_dir / "instances";
    std::filesystem::create_directories(dir);
    for (const auto& size : cam.cfg.sizes) {
        const ChimeraGraph graph = build_chimera(size.L);
        auto& list = cam.instances[size.L];
        for (int i = 0; i < size.count; ++i) {
            const auto path = dir / instance_filename(size.L, i);
            if (skip) {
                list.push_back(read_instance(path));
                list.back().id = static_cast<uint64_t>(i);
            } else {
                const uint64_t iseed =
                    derive_seed(cam.cfg.seed, kTagGenerate,
                                static_cast<uint64_t>(size.L),
                                static_cast<uint64_t>(i));
                list.push_back(generate_instance(graph, iseed, i));
                write_instance(list.back(), path);
            }
        }
    }
}

void stage_solve(Campaign& cam, bool skip) {
    for (const auto& size : cam.cfg.sizes) {
        const auto path = cam.cfg.out_dir /
                          ("ground_energies_L" + std::to_string(size.L) + ".csv");
        if (skip) {
            cam.e0[size.L] = read_e0_csv(path);
            continue;
        }
        const auto& list = cam.instances.at(size.L);
        std::vector<long long> energies(list.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(list.size()); ++i)
            energies[i] = dp_ground(list[i]).energy;
        auto& m = cam.e0[size.L];
        for (size_t i = 0; i < list.size(); ++i) m[list[i].id] = energies[i];
        write_e0_csv(path, m);
    }
}

void stage_tts(Campaign& cam, bool skip) {
    for (const auto& alg : cam.cfg.algorithms)
        for (const auto& size : cam.cfg.sizes) {
            const auto path =
                cam.cfg.out_dir /
                ("tts_" + alg.label + "_L" + std::to_string(size.L) + ".csv");
            auto& records = cam.tts[{alg.label, size.L}];
            if (skip) {
                records = read_tts_csv(path);
                continue;
            }
            TtsOptions opts{cam.cfg.target_successes, cam.cfg.cap};
            const uint64_t master = derive_seed(
                cam.cfg.seed, kTagTts, static_cast<uint64_t>(size.L));
            const BatchResult batch =
                batch_tts(cam.instances.at(size.L), cam.e0_list(size.L),
                          alg.config, opts, master, cam.cfg.threads);
            records = batch.records;
            write_tts_csv(path, records);
        }
}

void stage_scan(Campaign& cam, bool skip) {
    if (skip) return;  // scan outputs feed no later stage
    for (const auto& scan_spec : cam.cfg.ta_scans) {
        const AlgorithmSpec* alg = nullptr;
        for (const auto& a : cam.cfg.algorithms)
            if (a.label == scan_spec.label) alg = &a;
        for (const auto& size : cam.cfg.sizes) {
            TtsOptions opts{cam.cfg.target_successes, cam.cfg.cap};
            const ScanResult scan = scan_annealing_time(
                cam.instances.at(size.L), cam.e0_list(size.L), alg->config,
                scan_spec.ta_grid, opts,
                derive_seed(cam.cfg.seed, kTagScan,
                            static_cast<uint64_t>(size.L)),
                cam.cfg.threads);
            std::ofstream out(cam.cfg.out_dir /
                              ("scan_" + scan_spec.label + "_L" +
                               std::to_string(size.L) + ".json"));
            out << scan_to_json(scan).dump(2) << '\n';
        }
    }
    if (cam.cfg.beta_scan)
        for (const auto& size : cam.cfg.sizes) {
            TtsOptions opts{cam.cfg.target_successes, cam.cfg.cap};
            const ScanResult scan = scan_beta(
                cam.instances.at(size.L), cam.e0_list(size.L),
                cam.cfg.beta_scan->base, cam.cfg.beta_scan->beta_grid,
                cam.cfg.beta_scan->ta_grid, opts,
                derive_seed(cam.cfg.seed, kTagScan, 0xbe7a,
                            static_cast<uint64_t>(size.L)),
                cam.cfg.threads);
            std::ofstream out(cam.cfg.out_dir /
                              ("scan_beta_L" + std::to_string(size.L) + ".json"));
            out << scan_to_json(scan).dump(2) << '\n';
        }
}

void stage_fit(Campaign& cam, bool skip) {
    for (const auto& alg : cam.cfg.algorithms)
        for (const auto& size : cam.cfg.sizes) {
            const auto key = std::make_pair(alg.label, size.L);
            const std::string stem =
                alg.label + "_L" + std::to_string(size.L);
            std::vector<double> taus;
            for (const auto& r : cam.tts.at(key)) taus.push_back(r.tau);
            std::sort(taus.begin(), taus.end());

            const auto scan = threshold_scan(taus, cam.cfg.k_grid);
            nlohmann::ordered_json fits = nlohmann::ordered_json::array();
            for (const auto& entry : scan) {
                nlohmann::ordered_json ej{{"k", entry.k}, {"u", entry.u}};
                if (const auto* fit = std::get_if<GpdFit>(&entry.result)) {
                    ej["fit"] = fit_to_json(*fit);
                    if (!cam.chosen_fit.count(key))  // largest feasible k
                        cam.chosen_fit[key] = *fit;
                } else {
                    ej["error"] = std::get<std::string>(entry.result);
                }
                fits.push_back(ej);
            }
            if (!skip) {
                std::ofstream out(cam.cfg.out_dir / ("fits_" + stem + ".json"));
                out << fits.dump(2) << '\n';
            }
            if (cam.chosen_fit.count(key) && !skip) {
                const GpdFit& fit = cam.chosen_fit.at(key);
                std::vector<double> exceed;
                for (double t : taus)
                    if (t > fit.params.u) exceed.push_back(t);
                write_points_csv(cam.cfg.out_dir / ("pp_" + stem + ".csv"),
                                 "model_cdf,empirical", pp_points(exceed, fit.params));
                write_points_csv(cam.cfg.out_dir / ("qq_" + stem + ".csv"),
                                 "model_quantile,sample", qq_points(exceed, fit.params));
            }
        }
}

void stage_report(Campaign& cam, bool skip) {
    if (skip) return;
    // summary table: one row per (size, algorithm)
    std::ofstream summary(cam.cfg.out_dir / "summary.csv");
    summary << "L,N,label,k,u,xi,xi_se,sigma,sigma_se\n";
    for (const auto& size : cam.cfg.sizes)
        for (const auto& alg : cam.cfg.algorithms) {
            const auto key = std::make_pair(alg.label, size.L);
            summary << size.L << ',' << 8 * size.L * size.L << ',' << alg.label;
            if (cam.chosen_fit.count(key)) {
                const GpdFit& f = cam.chosen_fit.at(key);
                char buf[160];
                std::snprintf(buf, sizeof buf, ",%d,%.17g,%.17g,%.17g,%.17g,%.17g",
                              f.k, f.params.u, f.params.xi, f.xi_se,
                              f.params.sigma, f.sigma_se);
                summary << buf << '\n';
            } else {
                summary << ",,,,,,\n";
            }
        }
    summary.close();

    for (const auto& alg : cam.cfg.algorithms)
        for (const auto& size : cam.cfg.sizes) {
            const auto& records = cam.tts.at({alg.label, size.L});
            std::vector<double> taus;
            for (const auto& r : records) taus.push_back(r.tau);
            if (taus.empty()) continue;
            const auto means = running_mean(taus);
            std::vector<std::pair<double, double>> pts;
            for (size_t i = 0; i < means.size(); ++i)
                pts.emplace_back(static_cast<double>(i + 1), means[i]);
            write_points_csv(cam.cfg.out_dir /
                                 ("running_mean_" + alg.label + "_L" +
                                  std::to_string(size.L) + ".csv"),
                             "n,mean_tau", pts);
        }

    for (const auto& [la, lb] : cam.cfg.correlations)
        for (const auto& size : cam.cfg.sizes) {
            const AnnealerConfig* ca = nullptr;
            const AnnealerConfig* cb = nullptr;
            for (const auto& a : cam.cfg.algorithms) {
                if (a.label == la) ca = &a.config;
                if (a.label == lb) cb = &a.config;
            }
            const CorrelationResult cor = correlation_pairs(
                cam.tts.at({la, size.L}), cam.tts.at({lb, size.L}),
                annealing_time(*ca), annealing_time(*cb));
            const std::string stem =
                la + "_vs_" + lb + "_L" + std::to_string(size.L);
            std::ofstream out(cam.cfg.out_dir / ("correlation_" + stem + ".csv"));
            out << "instance_id,tau_a,tau_b,effort_a,effort_b\n";
            for (const auto& p : cor.pairs) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g,%.17g\n",
                              static_cast<unsigned long long>(p.instance_id),
                              p.tau_a, p.tau_b, p.effort_a, p.effort_b);
                out << buf;
            }
            out.close();
            nlohmann::ordered_json cj{{"pairs", cor.pairs.size()},
                                      {"s_improved", cor.s_improved},
                                      {"effort_reduced", cor.effort_reduced}};
            std::ofstream cout_(cam.cfg.out_dir /
                                ("correlation_" + stem + ".json"));
            cout_ << cj.dump(2) << '\n';
        }

    // manifest: relative path -> sha256 of every artifact
    nlohmann::ordered_json manifest;
    std::vector<std::filesystem::path> files;
    for (const auto& e :
         std::filesystem::recursive_directory_iterator(cam.cfg.out_dir))
        if (e.is_regular_file()) {
            const auto rel =
                std::filesystem::relative(e.path(), cam.cfg.out_dir);
            if (rel == "manifest.json" || rel == "checkpoint.json") continue;
            files.push_back(rel);
        }
    std::sort(files.begin(), files.end());
    for (const auto& rel : files)
        manifest[rel.generic_string()] = sha256_file(cam.cfg.out_dir / rel);
    std::ofstream mout(cam.cfg.out_dir / "manifest.json");
    mout << manifest.dump(2) << '\n';
}

}  // namespace

PipelineResult run_pipeline(const CampaignConfig& config, bool resume) {
    std::filesystem::create_directories(config.out_dir);
    const std::string hash = sha256_string(config.canonical());

    Checkpoint cp = load_checkpoint(checkpoint_path(config));
    if (resume && !cp.config_hash.empty() && cp.config_hash != hash)
        throw std::invalid_argument(
            "resume: config does not match checkpoint (config sha256 " + hash +
            ", checkpoint has " + cp.config_hash + ")");
    if (!resume) cp = Checkpoint{};
    cp.config_hash = hash;

    PipelineResult result;
    result.out_dir = config.out_dir;

    Campaign cam{config};
    const auto run_stage = [&](const std::string& name, auto&& body) {
        const bool skip = cp.done(name);
        try {
            body(skip);
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }
        if (skip) {
            result.stages_skipped.push_back(name);
        } else {
            result.stages_run.push_back(name);
            cp.completed.push_back(name);
            save_checkpoint(config, cp);
        }
    };

    run_stage("generate", [&](bool s) { stage_generate(cam, s); });
    run_stage("solve", [&](bool s) { stage_solve(cam, s); });
    run_stage("tts", [&](bool s) { stage_tts(cam, s); });
    run_stage("scan", [&](bool s) { stage_scan(cam, s); });
    run_stage("fit", [&](bool s) { stage_fit(cam, s); });
    run_stage("report", [&](bool s) { stage_report(cam, s); });
    return result;
}

}  // namespace ttsbench
