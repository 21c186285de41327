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

#include "ttsbench/evt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ttsbench {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double gpd_cdf(const GpdParams& p, double x) {
    if (x < p.u) return 0.0;  // below-threshold convention
    const double z = (x - p.u) / p.sigma;
    if (std::abs(p.xi) < kGpdXiZero) return 1.0 - std::exp(-z);
    const double arg = 1.0 + p.xi * z;
    if (arg <= 0.0) return 1.0;  // past the xi < 0 endpoint
    return 1.0 - std::pow(arg, -1.0 / p.xi);
}

double gpd_pdf(const GpdParams& p, double x) {
    if (x < p.u) return 0.0;
    const double z = (x - p.u) / p.sigma;
    if (std::abs(p.xi) < kGpdXiZero) return std::exp(-z) / p.sigma;
    const double arg = 1.0 + p.xi * z;
    if (arg <= 0.0) return 0.0;
    return std::pow(arg, -1.0 / p.xi - 1.0) / p.sigma;
}

double gpd_quantile(const GpdParams& p, double prob) {
    if (prob < 0.0 || prob > 1.0)
        throw std::invalid_argument("gpd_quantile: p outside [0,1]");
    if (prob == 1.0) {
        if (p.xi >= 0.0)
            throw std::domain_error("gpd_quantile: p=1 is unbounded for xi>=0");
        return p.u - p.sigma / p.xi;
    }
    if (std::abs(p.xi) < kGpdXiZero)
        return p.u - p.sigma * std::log1p(-prob);
    return p.u + p.sigma * std::expm1(-p.xi * std::log1p(-prob)) / p.xi;
}

namespace {

// empirical distribution F~ = i/(n+1) of a sorted sample
double empirical_cdf(std::span<const double> sorted, double x) {
    const auto i = std::upper_bound(sorted.begin(), sorted.end(), x) -
                   sorted.begin();
    return static_cast<double>(i) / static_cast<double>(sorted.size() + 1);
}

}  // namespace

double exceedance_cdf(std::span<const double> sorted, double u, double x) {
    if (sorted.empty())
        throw std::invalid_argument("exceedance_cdf: empty sample");
    if (u >= sorted.back())
        throw std::runtime_error("exceedance_cdf: no exceedances above u");
    if (x < u) return 0.0;
    const double fu = empirical_cdf(sorted, u);
    return (empirical_cdf(sorted, x) - fu) / (1.0 - fu);
}

namespace {

double gpd_loglik(std::span<const double> y, double xi, double sigma) {
    if (sigma <= 0.0) return kNegInf;
    const double k = static_cast<double>(y.size());
    if (std::abs(xi) < kGpdXiZero) {
        double sum = 0.0;
        for (double v : y) sum += v;
        return -k * std::log(sigma) - sum / sigma;
    }
    double sum = 0.0;
    for (double v : y) {
        const double arg = 1.0 + xi * v / sigma;
        if (arg <= 0.0) return kNegInf;
        sum += std::log(arg);
    }
    return -k * std::log(sigma) - (1.0 + 1.0 / xi) * sum;
}

// profile over theta = xi/sigma: given theta, the inner maximum is at
// xi = mean(log1p(theta*y)), sigma = xi/theta
struct ProfilePoint {
    double xi, sigma, loglik;
};

ProfilePoint profile_at(std::span<const double> y, double theta) {
    if (theta == 0.0) {
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(y.size());
        return {0.0, mean, gpd_loglik(y, 0.0, mean)};
    }
    double xi = 0.0;
    for (double v : y) {
        const double arg = 1.0 + theta * v;
        if (arg <= 0.0) return {0.0, 1.0, kNegInf};
        xi += std::log(arg);
    }
    xi /= static_cast<double>(y.size());
    if (std::abs(xi) < kGpdXiZero) return {0.0, 1.0, kNegInf};
    const double sigma = xi / theta;
    return {xi, sigma, gpd_loglik(y, xi, sigma)};
}

// 2-parameter Nelder-Mead in (xi, log sigma), maximizing the log-likelihood;
// converged when the simplex spread drops below tol
struct SimplexResult {
    double xi, sigma, loglik, spread;
    bool converged;
};

SimplexResult nelder_mead(std::span<const double> y, double xi0, double sigma0,
                          double tol = 1e-10, int max_iter = 2000) {
    using Vec = std::array<double, 2>;  // (xi, log sigma)
    const auto eval = [&](const Vec& v) {
        return -gpd_loglik(y, v[0], std::exp(v[1]));
    };
    std::array<Vec, 3> s = {Vec{xi0, std::log(sigma0)},
                            Vec{xi0 + 0.05, std::log(sigma0)},
                            Vec{xi0, std::log(sigma0) + 0.05}};
    std::array<double, 3> f = {eval(s[0]), eval(s[1]), eval(s[2])};

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        // order best..worst
        std::array<int, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
        std::array<Vec, 3> ss = {s[idx[0]], s[idx[1]], s[idx[2]]};
        std::array<double, 3> ff = {f[idx[0]], f[idx[1]], f[idx[2]]};
        s = ss;
        f = ff;
        if (std::isfinite(f[2]) && f[2] - f[0] < tol) break;

        const Vec centroid = {(s[0][0] + s[1][0]) / 2, (s[0][1] + s[1][1]) / 2};
        const auto affine = [&](double c) {
            return Vec{centroid[0] + c * (s[2][0] - centroid[0]),
                       centroid[1] + c * (s[2][1] - centroid[1])};
        };
        const Vec refl = affine(-1.0);
        const double fr = eval(refl);
        if (fr < f[0]) {
            const Vec exp_ = affine(-2.0);
            const double fe = eval(exp_);
            if (fe < fr) {
                s[2] = exp_;
                f[2] = fe;
            } else {
                s[2] = refl;
                f[2] = fr;
            }
        } else if (fr < f[1]) {
            s[2] = refl;
            f[2] = fr;
        } else {
            const Vec contr = affine(fr < f[2] ? -0.5 : 0.5);
            const double fc = eval(contr);
            if (fc < std::min(fr, f[2])) {
                s[2] = contr;
                f[2] = fc;
            } else {  // shrink toward best
                for (int i = 1; i < 3; ++i) {
                    s[i] = {(s[i][0] + s[0][0]) / 2, (s[i][1] + s[0][1]) / 2};
                    f[i] = eval(s[i]);
                }
            }
        }
    }
    SimplexResult r;
    r.xi = s[0][0];
    r.sigma = std::exp(s[0][1]);
    r.loglik = -f[0];
    r.spread = f[2] - f[0];
    r.converged = iter < max_iter;
    return r;
}

}  // namespace

GpdFit fit_gpd_mle(std::span<const double> sample, double u,
                   int min_exceedances) {
    std::vector<double> y;
    for (double x : sample)
        if (x > u) y.push_back(x - u);
    const int k = static_cast<int>(y.size());
    if (k < min_exceedances)
        throw std::invalid_argument("fit_gpd_mle: only " + std::to_string(k) +
                                    " exceedances, need " +
                                    std::to_string(min_exceedances));

    const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
    const double ymax = *ymax_it;
    if (ymax - *ymin_it <= 1e-12 * ymax)
        throw std::runtime_error("fit_gpd_mle: degenerate sample, all exceedances equal");

    double ymean = 0.0;
    for (double v : y) ymean += v;
    ymean /= k;

    // bracket the profile: positive/negative theta on log grids plus points
    // near the negative support boundary -1/ymax
    ProfilePoint best{0.0, ymean, gpd_loglik(y, 0.0, ymean)};
    const auto consider = [&](double theta) {
        const ProfilePoint p = profile_at(y, theta);
        if (p.loglik > best.loglik) best = p;
    };
    for (int j = 0; j <= 120; ++j) {
        const double mag = std::pow(10.0, -6.0 + 8.0 * j / 120.0) / ymean;
        consider(mag);
        if (-mag > -1.0 / ymax) consider(-mag);
    }
    for (int d = 1; d <= 7; ++d)
        consider(-(1.0 - std::pow(10.0, -d)) / ymax);

    const SimplexResult polished = nelder_mead(y, best.xi, best.sigma);
    if (!polished.converged)
        throw std::runtime_error(
            "fit_gpd_mle: simplex did not converge, final spread " +
            std::to_string(polished.spread));

    GpdFit fit;
    fit.params = {polished.xi, u, polished.sigma};
    fit.k = k;
    fit.log_likelihood = polished.loglik;

    // observed information by central differences
    const double hx = 1e-5 * std::max(std::abs(polished.xi), 1e-3);
    const double hs = 1e-5 * std::max(polished.sigma, 1e-3);
    const auto ll = [&](double xi, double sigma) {
        return gpd_loglik(y, xi, sigma);
    };
    const double l0 = polished.loglik;
    const double dxx =
        (ll(polished.xi + hx, polished.sigma) - 2 * l0 +
         ll(polished.xi - hx, polished.sigma)) / (hx * hx);
    const double dss =
        (ll(polished.xi, polished.sigma + hs) - 2 * l0 +
         ll(polished.xi, polished.sigma - hs)) / (hs * hs);
    const double dxs = (ll(polished.xi + hx, polished.sigma + hs) -
                        ll(polished.xi + hx, polished.sigma - hs) -
                        ll(polished.xi - hx, polished.sigma + hs) +
                        ll(polished.xi - hx, polished.sigma - hs)) /
                       (4 * hx * hs);
    const double det = dxx * dss - dxs * dxs;  // Hessian of l, negative definite
    const double var_xi = -dss / det;
    const double var_sigma = -dxx / det;
    if (!(det > 0.0) || !(var_xi > 0.0) || !(var_sigma > 0.0) ||
        !std::isfinite(var_xi) || !std::isfinite(var_sigma))
        throw std::runtime_error(
            "fit_gpd_mle: observed information not positive definite");
    fit.xi_se = std::sqrt(var_xi);
    fit.sigma_se = std::sqrt(var_sigma);
    return fit;
}

namespace {

// W^{-1}_{xi,0,1}(p)
double unit_gpd_inverse(double xi, double p) {
    if (std::abs(xi) < kGpdXiZero) return -std::log1p(-p);
    return std::expm1(-xi * std::log1p(-p)) / xi;
}

}  // namespace

double TailModel::cdf(double x) const {
    return gpd_cdf({xi, u_tilde, sigma_tilde}, x);
}

double TailModel::quantile(double prob) const {
    return gpd_quantile({xi, u_tilde, sigma_tilde}, prob);
}

TailModel tail_model(const GpdFit& fit, double f_u) {
    if (f_u < 0.0 || f_u >= 1.0)
        throw std::invalid_argument("tail_model: F(u) must be in [0,1)");
    const double q = unit_gpd_inverse(fit.params.xi, f_u);
    const double denom = 1.0 + fit.params.xi * q;
    if (denom <= 0.0)
        throw std::runtime_error("tail_model: invalid reparametrization, 1 + xi*W^-1(F(u)) <= 0");
    TailModel m;
    m.xi = fit.params.xi;
    m.u = fit.params.u;
    m.f_u = f_u;
    m.sigma_tilde = fit.params.sigma / denom;
    m.u_tilde = fit.params.u - m.sigma_tilde * q;
    return m;
}

std::vector<ThresholdScanEntry> threshold_scan(std::span<const double> sample,
                                               std::vector<int> k_grid) {
    std::vector<double> desc(sample.begin(), sample.end());
    std::sort(desc.begin(), desc.end(), std::greater<>());
    std::sort(k_grid.begin(), k_grid.end(), std::greater<>());

    std::vector<ThresholdScanEntry> out;
    for (const int k : k_grid) {
        ThresholdScanEntry entry;
        entry.k = k;
        if (k < 1 || static_cast<size_t>(k) + 1 > desc.size()) {
            entry.result = std::string("k out of range for sample size " +
                                       std::to_string(desc.size()));
            out.push_back(std::move(entry));
            continue;
        }
        entry.u = desc[k];  // (k+1)-th largest value
        try {
            entry.result = fit_gpd_mle(sample, entry.u);
        } catch (const std::exception& e) {
            entry.result = std::string(e.what());
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<std::pair<double, double>> pp_points(std::span<const double> sorted,
                                                 const GpdParams& model) {
    std::vector<std::pair<double, double>> pts;
    const double n1 = static_cast<double>(sorted.size() + 1);
    for (size_t i = 0; i < sorted.size(); ++i)
        pts.emplace_back(gpd_cdf(model, sorted[i]),
                         static_cast<double>(i + 1) / n1);
    return pts;
}

std::vector<std::pair<double, double>> qq_points(std::span<const double> sorted,
                                                 const GpdParams& model) {
    std::vector<std::pair<double, double>> pts;
    const double n1 = static_cast<double>(sorted.size() + 1);
    for (size_t i = 0; i < sorted.size(); ++i)
        pts.emplace_back(gpd_quantile(model, static_cast<double>(i + 1) / n1),
                         sorted[i]);
    return pts;
}

PotStabilityReport pot_stability_check(std::span<const double> sample,
                                       const GpdFit& fit_at_u, double mu,
                                       int min_exceedances) {
    if (mu < fit_at_u.params.u)
        throw std::invalid_argument("pot_stability_check: mu below u");
    PotStabilityReport rep;
    rep.fit_u = fit_at_u;
    rep.fit_mu = fit_gpd_mle(sample, mu, min_exceedances);
    const double se_xi = std::hypot(fit_at_u.xi_se, rep.fit_mu.xi_se);
    rep.xi_diff_se =
        std::abs(rep.fit_mu.params.xi - fit_at_u.params.xi) / se_xi;
    rep.predicted_sigma =
        fit_at_u.params.sigma + fit_at_u.params.xi * (mu - fit_at_u.params.u);
    const double se_sigma = std::hypot(fit_at_u.sigma_se, rep.fit_mu.sigma_se);
    rep.sigma_diff_se =
        std::abs(rep.fit_mu.params.sigma - rep.predicted_sigma) / se_sigma;
    return rep;
}

}  // namespace ttsbench
