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

#include <cmath>
#include <cstdint>
#include <vector>

#include "ttsbench/instance.hpp"
#include "ttsbench/rng.hpp"

namespace ttsbench {

// Coupled +-1 problem in the form the annealer kernels consume. Built from a
// CouplingInstance, or from a raw edge list for the toy systems used in the
// equilibrium tests. Immutable after construction.
struct IsingProblem {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int8_t> couplings;
    Adjacency adj;

    static IsingProblem from_instance(const CouplingInstance& inst);
    static IsingProblem from_edges(int n, std::vector<std::pair<int, int>> edges,
                                   std::vector<int8_t> couplings);

    long long energy(const std::vector<int8_t>& spins) const;
};

struct AnnealOutcome {
    double success_fraction = 0.0;  // SA/MFA: 0 or 1; SQA: multiples of 1/M
    long long final_energy = 0;     // best classical energy at readout
    long long sweeps_used = 0;
};

// ---------------------------------------------------------------- SA ------

struct SaSchedule {
    long long t_a = 1000;      // annealing time in sweeps
    double beta_start = 0.1;
    double beta_end = 3.0;
};

// One Metropolis sweep at fixed inverse temperature: sequential single-spin
// flips with acceptance min(1, exp(-beta*dE)).
void sa_sweep(const IsingProblem& problem, std::vector<int8_t>& spins,
              double beta, Xoshiro256& rng);

// Anneals from a uniformly random configuration over t_a sweeps; sweep k uses
// beta(k) = beta_start + (beta_end - beta_start) * k / t_a, k = 1..t_a.
// success_fraction is 1 iff the final energy equals e0.
AnnealOutcome sa_run(const IsingProblem& problem, const SaSchedule& sched,
                     long long e0, Xoshiro256& rng);

// ---------------------------------------------------------------- SQA -----

struct SqaSchedule {
    long long t_a = 1000;
    double beta = 10.0;
    int num_slices = 32;       // Trotter slices M, 2..64
    double jperp_cap = 25.0;   // clamp for the diverging time coupling
};

struct SqaCouplings {
    double spatial;  // per-edge weight (beta/M)*B(t), applied at beta_eff = 1
    double jperp;    // time coupling -0.5*ln tanh(beta*A(t)/M), clamped
};

// Suzuki-Trotter couplings at sweep k (1..t_a) of the linear schedule
// A(t) = 1 - t/t_a, B(t) = t/t_a.
SqaCouplings sqa_effective_couplings(const SqaSchedule& sched, long long k);

// Swendsen-Wang style cluster update of one site's imaginary-time ring,
// stored as one bit per slice (bit = 1 means spin -1). Bonds between
// equal-valued time neighbours are activated with probability p_bond; the
// resulting clusters are Metropolis-accepted against the spatial action
// change reported by spatial_dE(mask).
template <class SpatialDeltaE>
void sqa_ring_update(uint64_t& x, int m, double p_bond, SpatialDeltaE spatial_dE,
                     Xoshiro256& rng) {
    const uint64_t ring = m == 64 ? ~uint64_t{0} : (uint64_t{1} << m) - 1;
    const uint64_t up = ((x >> 1) | (x << (m - 1))) & ring;  // slice m+1 at bit m
    uint64_t breaks = x ^ up;  // bond m broken where slices m, m+1 differ
    if (p_bond < 1.0 - 1e-12) {
        for (int b = 0; b < m; ++b)
            if (!((breaks >> b) & 1) && rng.uniform() >= p_bond)
                breaks |= uint64_t{1} << b;
    }
    // each cluster is proposed for a flip with probability 1/2 and accepted
    // by Metropolis on the spatial term; flipping unconditionally would make
    // the zero-field update a deterministic global complement
    auto try_flip = [&](uint64_t mask) {
        if (!rng.bit()) return;
        const double de = spatial_dE(mask);
        if (de <= 0.0 || rng.uniform() < std::exp(-de)) x ^= mask;
    };
    if (breaks == 0) {
        try_flip(ring);  // one cluster spanning the whole ring
        return;
    }
    // clusters are the cyclic runs of slices between broken bonds; bond b
    // separates slice b from slice b+1, so each cluster starts at b+1
    int first = -1;
    for (int b = 0; b < m; ++b)
        if ((breaks >> b) & 1) {
            first = b;
            break;
        }
    int start = (first + 1) % m;
    uint64_t mask = 0;
    for (int step = 0; step < m; ++step) {
        const int slice = (start + step) % m;
        mask |= uint64_t{1} << slice;
        if ((breaks >> slice) & 1) {  // cluster ends after this slice
            try_flip(mask);
            mask = 0;
        }
    }
}

// Path-integral anneal: M replicas with periodic imaginary-time coupling,
// initialized site-wise random but uniform across slices. success_fraction
// is the fraction of slices whose classical energy equals e0.
AnnealOutcome sqa_run(const IsingProblem& problem, const SqaSchedule& sched,
                      long long e0, Xoshiro256& rng);

// ---------------------------------------------------------------- MFA -----

struct MfaSchedule {
    long long t_a = 1000;
    double beta = 4.0;
    int table_size = 1024;  // trig lookup resolution; 0 = exact trig
};

// Rotor state; angles are tracked through their sin/cos only.
struct MfaState {
    std::vector<double> sin_theta;
    std::vector<double> cos_theta;
};

MfaState mfa_initial_state(int n);  // all spins x-aligned, theta = pi/2

// One Metropolis sweep of H = -A*sum sin(theta_i)
//                            -B*sum_ij J_ij cos(theta_i) cos(theta_j)
// with per-site proposals theta' uniform in [0, 2pi) (quantized to the
// lookup grid when table_size > 0).
void mfa_sweep(const IsingProblem& problem, MfaState& state, double a, double b,
               double beta, int table_size, Xoshiro256& rng);

// Readout projects s_i = sign(cos theta_i), ties to +1; success_fraction is 1
// iff the projected energy equals e0.
AnnealOutcome mfa_run(const IsingProblem& problem, const MfaSchedule& sched,
                      long long e0, Xoshiro256& rng);

}  // namespace ttsbench
