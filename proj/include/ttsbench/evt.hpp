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

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ttsbench {

// Generalized Pareto distribution W_{xi,u,sigma}; the xi = 0 branch (the
// exponential limit) is taken for |xi| < 1e-8.
struct GpdParams {
    double xi = 0.0;     // shape
    double u = 0.0;      // threshold / location
    double sigma = 1.0;  // scale, > 0
};

constexpr double kGpdXiZero = 1e-8;

double gpd_cdf(const GpdParams& p, double x);
double gpd_pdf(const GpdParams& p, double x);
// Inverse cdf; throws std::domain_error for p = 1 with xi >= 0.
double gpd_quantile(const GpdParams& p, double prob);

// Exceedance distribution (F~(x) - F~(u)) / (1 - F~(u)) over the empirical
// distribution F~ = i/(n+1) of a sorted sample. Throws when u is at or above
// the sample maximum.
double exceedance_cdf(std::span<const double> sorted, double u, double x);

struct GpdFit {
    GpdParams params;
    int k = 0;               // exceedance count
    double xi_se = 0.0;
    double sigma_se = 0.0;
    double log_likelihood = 0.0;
};

// Maximum likelihood fit of (xi, sigma) to the exceedances above u: a profile
// over theta = xi/sigma on a bracketed grid, polished by a Nelder-Mead
// simplex until the log-likelihood improvement drops below 1e-10. Standard
// errors come from the numerically differentiated observed information.
// Throws std::invalid_argument below `min_exceedances` and std::runtime_error
// on degenerate samples or non-convergence.
GpdFit fit_gpd_mle(std::span<const double> sample, double u,
                   int min_exceedances = 30);

// Full-distribution reparametrization: F(x) ~ W_{xi, u~, sigma~}(x) for
// x >= u, anchored so the model reproduces the empirical F(u).
struct TailModel {
    double xi = 0.0;
    double u_tilde = 0.0;
    double sigma_tilde = 0.0;
    double u = 0.0;   // original threshold
    double f_u = 0.0; // empirical F(u)

    double cdf(double x) const;
    double quantile(double prob) const;
};

TailModel tail_model(const GpdFit& fit, double f_u);

struct ThresholdScanEntry {
    int k = 0;
    double u = 0.0;
    std::variant<GpdFit, std::string> result;  // fit or per-entry error
};

// For each exceedance count k (scanned in descending k order), sets the
// threshold to the (k+1)-th largest sample value and fits there. Per-k
// failures are recorded, not propagated.
std::vector<ThresholdScanEntry> threshold_scan(std::span<const double> sample,
                                               std::vector<int> k_grid);

// PP plot points (model_cdf(x_(i)), i/(n+1)) and QQ plot points
// (model_quantile(i/(n+1)), x_(i)) for a sorted sample.
std::vector<std::pair<double, double>> pp_points(std::span<const double> sorted,
                                                 const GpdParams& model);
std::vector<std::pair<double, double>> qq_points(std::span<const double> sorted,
                                                 const GpdParams& model);

// Peaks-over-threshold stability: refit above mu > u and compare the shape
// against the fit at u and the scale against the predicted sigma + xi*(mu-u).
struct PotStabilityReport {
    GpdFit fit_u;
    GpdFit fit_mu;
    double xi_diff_se = 0.0;      // |xi_mu - xi_u| in combined-SE units
    double predicted_sigma = 0.0; // sigma_u + xi_u * (mu - u)
    double sigma_diff_se = 0.0;   // |sigma_mu - predicted| in combined-SE units
};

PotStabilityReport pot_stability_check(std::span<const double> sample,
                                       const GpdFit& fit_at_u, double mu,
                                       int min_exceedances = 30);

}  // namespace ttsbench
