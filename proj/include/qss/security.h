// Copyright 2026 The qss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qss/protocol.h"

namespace qss {

/// Soundness bound of a variant: 1/S for the symmetric variants, 2/S with aborts.
double soundness_bound(Variant v, int rounds);

/// Exact P(ACCEPT) x (1 - output fidelity), averaged over keys, use round and
/// strategy draws. Correlated adversaries are limited to S <= 3 (ResourceError).
double p_fail_exact(const ProtocolConfig& cfg, const AdversaryChannel& adversary);
double p_fail_exact(ProtocolRunner& runner);

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// Sample mean of the per-trial failure weight. Trial i draws from Rng(seed, i).
Estimate p_fail_monte_carlo(ProtocolRunner& runner, long long trials, std::uint64_t seed);
Estimate p_fail_monte_carlo(const ProtocolConfig& cfg, const AdversaryChannel& adversary, long long trials,
                            std::uint64_t seed);

struct SecurityReport {
    Variant variant = Variant::kInteractive;
    int rounds = 1;
    std::string adversary;
    double p_fail_exact = 0.0;
    /// Monte Carlo columns, empty when trials == 0.
    bool has_mc = false;
    Estimate mc;
    double bound = 0.0;
    double margin = 0.0;

    bool violated(double tol = 1e-9) const { return margin < -tol; }
};

/// Exact evaluation plus an optional Monte Carlo estimate (trials > 0).
SecurityReport evaluate_security(const ProtocolConfig& cfg, const AdversaryChannel& adversary, long long trials,
                                 std::uint64_t seed);

/// Fixed set of ten adversaries used by the regression sweeps.
std::vector<AdversaryChannel> regression_adversaries(const Scheme& scheme, const std::vector<int>& players, int rounds,
                                                     std::uint64_t seed);

enum class QMode { kSymmetric, kAbort };

std::string qmode_name(QMode m);
QMode parse_qmode(const std::string& name);

struct QEigenvalue {
    /// Number of out-of-subspace rounds in the string.
    int weight = 0;
    /// Bit r set when round r is out of the subspace (abort mode only; 0 otherwise).
    std::uint64_t pattern = 0;
    /// Number of strings sharing this value (symmetric mode groups by weight).
    long long strings = 1;
    double value = 0.0;
};

struct QSpectrum {
    int rounds = 1;
    QMode mode = QMode::kSymmetric;
    int q = 2;
    std::vector<QEigenvalue> eigenvalues;
    double max_eigenvalue = 0.0;
};

/// Eigenvalues of the soundness operator on the common {Pi, Pi-perp} string basis.
/// Rounds that are tested and lie outside the subspace pass with probability 1/q.
QSpectrum q_spectrum(int rounds, QMode mode, int q = 2);

struct QDenseCheck {
    int rounds = 1;
    QMode mode = QMode::kSymmetric;
    long long dimension = 0;
    double max_dense = 0.0;
    double max_combinatorial = 0.0;
    /// Largest gap between the sorted dense and combinatorial spectra (with multiplicity).
    double spectrum_error = 0.0;
};

/// Builds the operator literally from the projector on dealer + B and diagonalizes it.
/// Requires S <= 3 and a real projector (true for the built-in qubit schemes).
QDenseCheck q_dense_check(const Scheme& scheme, const std::vector<int>& players, int rounds, QMode mode);

struct AcceptanceLawReport {
    int q = 2;
    std::vector<int> players;
    int samples = 0;
    /// Largest Tr(M rho) - (1+F)/2 over the samples.
    double max_excess_half_law = 0.0;
    /// Largest |Tr(M rho) - (1+(q-1)F)/q| over the samples.
    double max_dev_q_law = 0.0;
    /// Largest |Tr(M rho) - (1+F)/2|: zero only if the half law is an identity.
    double max_dev_half_law = 0.0;
    /// Smallest (1+F)/2 - Tr(M rho) over resources mixed with logical X errors.
    double saturation_gap = 0.0;
    /// Acceptance of the honest resource and of a Pi-orthogonal resource.
    double honest_acceptance = 0.0;
    double orthogonal_acceptance = 0.0;
    bool half_law_bound_holds = false;
    bool q_law_matches = false;
    bool half_law_matches = false;
};

/// Compares the exact Born acceptance, averaged over the test set, against both laws.
AcceptanceLawReport acceptance_law_check(const Scheme& scheme, const std::vector<int>& players, int samples,
                                         std::uint64_t seed);

/// Max pairwise trace distance between the pad-averaged encodings
/// (1/q^2) sum_x encode(X^{x0} Z^{x1} psi) of `secrets` on all players.
double pad_secrecy_check(const Scheme& scheme, const std::vector<QuantumState>& secrets);

struct UnboundedCell {
    int rounds = 1;
    double f = 0.0;
    long long trials = 0;
    Estimate estimate;
    double exact = 0.0;
    double bound = 0.0;
    /// Per-round acceptance of a fidelity-f resource minus (1+f)/2.
    double acceptance_excess = 0.0;
    bool ok = false;
};

/// P(secret sent while every delivered resource has fidelity <= f) for the unbounded
/// variant against fixed-fidelity adversaries, compared with 2/(S(1-f)).
std::vector<UnboundedCell> unbounded_bound_sweep(const Scheme& scheme, const std::vector<int>& players,
                                                 const std::vector<int>& rounds, const std::vector<double>& f_values,
                                                 long long trials, std::uint64_t seed);

}  // namespace qss
