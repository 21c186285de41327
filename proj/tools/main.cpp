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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ttsbench/evt.hpp"
#include "ttsbench/exact.hpp"
#include "ttsbench/io.hpp"
#include "ttsbench/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ttsbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

std::vector<CouplingInstance> load_instances(const fs::path& path) {
    std::vector<CouplingInstance> out;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(path))
            if (e.is_regular_file() && e.path().extension() == ".txt")
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
        uint64_t id = 0;
        for (const auto& f : files) {
            out.push_back(read_instance(f));
            out.back().id = id++;
        }
    } else {
        out.push_back(read_instance(path));
    }
    if (out.empty())
        throw std::invalid_argument("no instance files in " + path.string());
    return out;
}

std::vector<std::optional<long long>> resolve_e0(
    const std::vector<CouplingInstance>& instances, const std::string& e0_csv) {
    std::vector<std::optional<long long>> out;
    if (!e0_csv.empty()) {
        const auto m = read_e0_csv(e0_csv);
        for (const auto& inst : instances) {
            auto it = m.find(inst.id);
            out.push_back(it == m.end() ? std::optional<long long>{}
                                        : std::optional<long long>{it->second});
        }
    } else {
        for (const auto& inst : instances) out.push_back(dp_ground(inst).energy);
    }
    return out;
}

// Shared --alg/--t-a/... option block for anneal, tts and scan-ta.
struct AlgOptions {
    std::string alg = "sa";
    long long t_a = 100;
    double beta = 0.0;  // 0 = algorithm default
    int slices = 32;
    int table_size = 1024;
    double beta_start = 0.1;
    double beta_end = 3.0;
    double jperp_cap = 25.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alg", alg, "annealer: sa, sqa or mfa")
            ->check(CLI::IsMember({"sa", "sqa", "mfa"}));
        cmd->add_option("--t-a", t_a, "annealing time in sweeps");
        cmd->add_option("--beta", beta, "inverse temperature (sqa/mfa)");
        cmd->add_option("--slices", slices, "Trotter slices (sqa)");
        cmd->add_option("--table-size", table_size, "angle grid size (mfa)");
        cmd->add_option("--beta-start", beta_start, "initial beta (sa)");
        cmd->add_option("--beta-end", beta_end, "final beta (sa)");
        cmd->add_option("--jperp-cap", jperp_cap, "transverse coupling cap (sqa)");
    }

    AnnealerConfig build() const {
        if (alg == "sa") return SaSchedule{t_a, beta_start, beta_end};
        if (alg == "sqa")
            return SqaSchedule{t_a, beta > 0 ? beta : 10.0, slices, jperp_cap};
        return MfaSchedule{t_a, beta > 0 ? beta : 4.0, table_size};
    }
};

int run(int argc, char** argv) {
    CLI::App app{"time-to-solution benchmarks for annealing heuristics on "
                 "chimera spin glasses"};
    app.require_subcommand(1);
    app.fallthrough();

    uint64_t seed = 1;
    int threads = 0;
    std::string out;
    app.add_option("--seed", seed, "master seed (no wall-clock seeding)");
    app.add_option("--threads", threads, "worker threads (0 = runtime default)");
    app.add_option("--out", out, "output file or directory");

    // generate
    auto* gen = app.add_subcommand("generate", "write random instances");
    int gen_L = 1, gen_count = 10;
    gen->add_option("--L", gen_L, "chimera grid side")->required();
    gen->add_option("--count", gen_count, "number of instances");

    // solve
    auto* solve = app.add_subcommand("solve", "exact ground energies");
    std::string solve_in;
    solve->add_option("--in", solve_in, "instance file or directory")->required();

    // anneal
    auto* anneal = app.add_subcommand("anneal", "single annealing run");
    std::string anneal_in, anneal_e0;
    AlgOptions anneal_alg;
    anneal->add_option("--in", anneal_in, "instance file")->required();
    anneal->add_option("--e0", anneal_e0, "ground-energy CSV (else solved exactly)");
    anneal_alg.attach(anneal);

    // tts
    auto* tts = app.add_subcommand("tts", "estimate tau per instance");
    std::string tts_in, tts_e0;
    double tts_target = 100.0;
    long long tts_cap = 1'000'000;
    AlgOptions tts_alg;
    tts->add_option("--in", tts_in, "instance file or directory")->required();
    tts->add_option("--e0", tts_e0, "ground-energy CSV (else solved exactly)");
    tts->add_option("--target", tts_target, "target accumulated successes");
    tts->add_option("--cap", tts_cap, "repetition cap per instance");
    tts_alg.attach(tts);

    // scan-ta
    auto* scan_ta = app.add_subcommand("scan-ta", "annealing-time scan");
    std::string sta_in, sta_e0;
    std::vector<long long> sta_grid;
    double sta_target = 100.0;
    long long sta_cap = 1'000'000;
    AlgOptions sta_alg;
    scan_ta->add_option("--in", sta_in, "instance file or directory")->required();
    scan_ta->add_option("--e0", sta_e0, "ground-energy CSV (else solved exactly)");
    scan_ta->add_option("--grid", sta_grid, "t_a grid (ascending)")->required();
    scan_ta->add_option("--target", sta_target, "target accumulated successes");
    scan_ta->add_option("--cap", sta_cap, "repetition cap per instance");
    sta_alg.attach(scan_ta);

    // scan-beta
    auto* scan_b = app.add_subcommand("scan-beta", "mean-field beta scan");
    std::string sb_in, sb_e0;
    std::vector<double> sb_grid;
    std::vector<long long> sb_ta_grid;
    double sb_target = 100.0;
    long long sb_cap = 1'000'000;
    scan_b->add_option("--in", sb_in, "instance file or directory")->required();
    scan_b->add_option("--e0", sb_e0, "ground-energy CSV (else solved exactly)");
    scan_b->add_option("--grid", sb_grid, "beta grid")->required();
    scan_b->add_option("--ta-grid", sb_ta_grid, "t_a grid per beta")->required();
    scan_b->add_option("--target", sb_target, "target accumulated successes");
    scan_b->add_option("--cap", sb_cap, "repetition cap per instance");

    // fit-tail
    auto* fit = app.add_subcommand("fit-tail", "GPD fits over a k grid");
    std::string fit_in;
    std::vector<int> fit_k{100, 50, 30};
    fit->add_option("--in", fit_in, "tau CSV from `tts`")->required();
    fit->add_option("--k", fit_k, "exceedance counts to try");

    // report
    auto* report = app.add_subcommand("report", "summary for one tau CSV");
    std::string rep_in;
    std::vector<int> rep_k{100, 50, 30};
    report->add_option("--in", rep_in, "tau CSV from `tts`")->required();
    report->add_option("--k", rep_k, "exceedance counts to try");

    // pipeline / resume
    auto* pipe = app.add_subcommand("pipeline", "run a full campaign");
    std::string pipe_cfg;
    pipe->add_option("--config", pipe_cfg, "campaign JSON")->required();
    auto* resume = app.add_subcommand("resume", "resume a checkpointed campaign");
    std::string resume_cfg;
    resume->add_option("--config", resume_cfg, "campaign JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (gen->parsed()) {
        const fs::path dir = out.empty() ? fs::path{"instances"} : fs::path{out};
        fs::create_directories(dir);
        const ChimeraGraph graph = build_chimera(gen_L);
        for (int i = 0; i < gen_count; ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "L%d_%05d.txt", gen_L, i);
            const auto inst = generate_instance(
                graph, derive_seed(seed, static_cast<uint64_t>(gen_L),
                                   static_cast<uint64_t>(i)),
                i);
            write_instance(inst, dir / name);
        }
        std::cout << "wrote " << gen_count << " instances to " << dir.string()
                  << '\n';
    } else if (solve->parsed()) {
        const auto instances = load_instances(solve_in);
        std::map<uint64_t, long long> e0;
        for (const auto& inst : instances) e0[inst.id] = dp_ground(inst).energy;
        if (out.empty()) {
            for (const auto& [id, e] : e0) std::cout << id << ',' << e << '\n';
        } else {
            write_e0_csv(out, e0);
        }
    } else if (anneal->parsed()) {
        const auto inst = read_instance(anneal_in);
        const long long e0 =
            resolve_e0({inst}, anneal_e0).front().value();
        Xoshiro256 rng(derive_seed(seed, inst.id));
        const AnnealOutcome o =
            run_annealer(IsingProblem::from_instance(inst), anneal_alg.build(),
                         e0, rng);
        std::cout << "success_fraction=" << o.success_fraction
                  << " final_energy=" << o.final_energy << " E0=" << e0 << '\n';
    } else if (tts->parsed()) {
        const auto instances = load_instances(tts_in);
        const auto e0 = resolve_e0(instances, tts_e0);
        const BatchResult batch =
            batch_tts(instances, e0, tts_alg.build(),
                      TtsOptions{tts_target, tts_cap}, seed, threads);
        for (const auto& err : batch.errors)
            std::cerr << "instance " << err.instance_id << ": " << err.message
                      << '\n';
        if (out.empty()) {
            for (const auto& r : batch.records)
                std::cout << r.instance_id << ": s=" << r.s << " tau=" << r.tau
                          << (r.is_upper_bound ? " (upper bound)" : "") << '\n';
        } else {
            write_tts_csv(out, batch.records);
        }
        if (!batch.errors.empty()) return kExitStage;
    } else if (scan_ta->parsed()) {
        const auto instances = load_instances(sta_in);
        const auto e0 = resolve_e0(instances, sta_e0);
        const ScanResult scan = scan_annealing_time(
            instances, e0, sta_alg.build(), sta_grid,
            TtsOptions{sta_target, sta_cap}, seed, threads);
        const auto j = scan_to_json(scan);
        if (out.empty()) {
            std::cout << j.dump(2) << '\n';
        } else {
            std::ofstream f(out);
            f << j.dump(2) << '\n';
        }
    } else if (scan_b->parsed()) {
        const auto instances = load_instances(sb_in);
        const auto e0 = resolve_e0(instances, sb_e0);
        const ScanResult scan =
            scan_beta(instances, e0, MfaSchedule{}, sb_grid, sb_ta_grid,
                      TtsOptions{sb_target, sb_cap}, seed, threads);
        const auto j = scan_to_json(scan);
        if (out.empty()) {
            std::cout << j.dump(2) << '\n';
        } else {
            std::ofstream f(out);
            f << j.dump(2) << '\n';
        }
    } else if (fit->parsed() || report->parsed()) {
        const bool full = report->parsed();
        const auto records = read_tts_csv(full ? rep_in : fit_in);
        std::vector<double> taus;
        for (const auto& r : records) taus.push_back(r.tau);
        std::sort(taus.begin(), taus.end());
        nlohmann::ordered_json j;
        if (full) {
            const std::vector<double> probs{0.5, 0.75, 0.9, 0.99};
            const auto qs = bootstrap_quantiles(taus, probs, 1000, seed);
            nlohmann::ordered_json qj = nlohmann::ordered_json::array();
            for (const auto& q : qs)
                qj.push_back({{"p", q.p},
                              {"tau", q.value},
                              {"ci_lo", q.lo},
                              {"ci_hi", q.hi}});
            j["n"] = taus.size();
            j["quantiles"] = qj;
        }
        nlohmann::ordered_json fits = nlohmann::ordered_json::array();
        for (const auto& entry : threshold_scan(taus, full ? rep_k : fit_k)) {
            nlohmann::ordered_json ej{{"k", entry.k}, {"u", entry.u}};
            if (const auto* f = std::get_if<GpdFit>(&entry.result))
                ej["fit"] = fit_to_json(*f);
            else
                ej["error"] = std::get<std::string>(entry.result);
            fits.push_back(ej);
        }
        j["fits"] = fits;
        if (out.empty()) {
            std::cout << j.dump(2) << '\n';
        } else {
            std::ofstream f(out);
            f << j.dump(2) << '\n';
        }
    } else if (pipe->parsed() || resume->parsed()) {
        CampaignConfig cfg =
            CampaignConfig::from_file(pipe->parsed() ? pipe_cfg : resume_cfg);
        if (const char* env = std::getenv("TTSBENCH_OUT")) cfg.out_dir = env;
        if (!out.empty()) cfg.out_dir = out;
        if (threads > 0) cfg.threads = threads;
        const PipelineResult r = run_pipeline(cfg, resume->parsed());
        for (const auto& s : r.stages_skipped)
            std::cout << "skipped " << s << " (checkpoint)\n";
        for (const auto& s : r.stages_run) std::cout << "completed " << s << '\n';
        std::cout << "bundle: " << r.out_dir.string() << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitStage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitStage;
    }
}
