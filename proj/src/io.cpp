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

#include "ttsbench/io.hpp"

#include <openssl/evp.h>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ttsbench {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    return in;
}

}  // namespace

void write_tts_csv(const std::filesystem::path& path,
                   const std::vector<TtsRecord>& records) {
    auto out = open_out(path);
    out << "instance_id,s,tau,repetitions,successes,is_upper_bound\n";
    for (const auto& r : records)
        out << r.instance_id << ',' << fmt_double(r.s) << ','
            << fmt_double(r.tau) << ',' << r.repetitions << ','
            << fmt_double(r.successes) << ',' << (r.is_upper_bound ? 1 : 0)
            << '\n';
}

std::vector<TtsRecord> read_tts_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) ||
        line.rfind("instance_id,", 0) != 0)
        throw std::runtime_error("bad tts csv header in " + path.string());
    std::vector<TtsRecord> records;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        TtsRecord r;
        int ub = 0;
        if (std::sscanf(line.c_str(), "%" SCNu64 ",%lf,%lf,%lld,%lf,%d",
                        &r.instance_id, &r.s, &r.tau, &r.repetitions,
                        &r.successes, &ub) != 6)
            throw std::runtime_error("bad tts csv line " +
                                     std::to_string(lineno) + " in " +
                                     path.string());
        r.is_upper_bound = ub != 0;
        records.push_back(r);
    }
    return records;
}

void write_e0_csv(const std::filesystem::path& path,
                  const std::map<uint64_t, long long>& e0) {
    auto out = open_out(path);
    out << "instance_id,E0\n";
    for (const auto& [id, e] : e0) out << id << ',' << e << '\n';
}

std::map<uint64_t, long long> read_e0_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("instance_id,", 0) != 0)
        throw std::runtime_error("bad E0 csv header in " + path.string());
    std::map<uint64_t, long long> e0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        uint64_t id;
        long long e;
        if (std::sscanf(line.c_str(), "%" SCNu64 ",%lld", &id, &e) != 2)
            throw std::runtime_error("bad E0 csv line in " + path.string());
        e0[id] = e;
    }
    return e0;
}

nlohmann::ordered_json fit_to_json(const GpdFit& fit) {
    return nlohmann::ordered_json{{"xi", fit.params.xi},
                                  {"sigma", fit.params.sigma},
                                  {"u", fit.params.u},
                                  {"k", fit.k},
                                  {"xi_se", fit.xi_se},
                                  {"sigma_se", fit.sigma_se},
                                  {"loglik", fit.log_likelihood}};
}

nlohmann::ordered_json scan_to_json(const ScanResult& scan) {
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const auto& pt : scan.points) {
        nlohmann::ordered_json quants = nlohmann::ordered_json::array();
        for (const auto& q : pt.quantiles)
            quants.push_back({{"p", q.p},
                              {"value", q.value},
                              {"ci_lo", q.lo},
                              {"ci_hi", q.hi}});
        points.push_back({{"param", pt.param}, {"quantiles", quants}});
    }
    return nlohmann::ordered_json{
        {"opt_param", scan.opt_param},
        {"quantile_disagreement", scan.quantile_disagreement},
        {"points", points}};
}

void write_points_csv(const std::filesystem::path& path, const char* header,
                      const std::vector<std::pair<double, double>>& points) {
    auto out = open_out(path);
    out << header << '\n';
    for (const auto& [x, y] : points)
        out << fmt_double(x) << ',' << fmt_double(y) << '\n';
}

namespace {

std::string digest_hex(EVP_MD_CTX* ctx) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

}  // namespace

std::string sha256_string(const std::string& data) {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, data.data(), data.size());
    std::string out = digest_hex(ctx);
    EVP_MD_CTX_free(ctx);
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        EVP_DigestUpdate(ctx, buf, static_cast<size_t>(in.gcount()));
    std::string out = digest_hex(ctx);
    EVP_MD_CTX_free(ctx);
    return out;
}

}  // namespace ttsbench
