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

#include <cstddef>
#include <vector>

#include "qss/linalg.h"
#include "qss/pauli.h"

namespace qss {

class Rng;

/// Dense state of a qudit register: an amplitude vector (pure) or a density matrix
/// (mixed). Site 0 is the least significant digit of the basis index.
class QuantumState {
   public:
    /// Validated constructors; throw std::invalid_argument when the invariants fail.
    static QuantumState from_vector(int q, int num_sites, Vector amplitudes);
    static QuantumState from_density(int q, int num_sites, Matrix rho);
    static QuantumState basis(int q, int num_sites, std::size_t index);
    static QuantumState maximally_mixed(int q, int num_sites);

    /// No validation; used for intermediate (possibly unnormalized) branches.
    static QuantumState unchecked_vector(int q, int num_sites, Vector amplitudes);
    static QuantumState unchecked_density(int q, int num_sites, Matrix rho);

    int dimension() const { return q_; }
    int num_sites() const { return n_; }
    std::size_t size() const { return size_; }
    bool is_pure() const { return pure_; }

    /// Throws std::logic_error for a mixed state.
    const Vector& amplitudes() const;
    /// Always available; computed for pure states.
    Matrix density_matrix() const;
    QuantumState as_mixed() const;

    /// This state on the low sites, `high` on the following sites.
    QuantumState tensor(const QuantumState& high) const;

    /// Norm squared (pure) or trace (mixed).
    double trace() const;
    QuantumState normalized() const;

    /// Throws NumericError if the state-type invariants fail at `tol`.
    void check_invariants(double tol = 1e-10) const;

   private:
    QuantumState(int q, int n, bool pure) : q_(q), n_(n), size_(0), pure_(pure) {}

    int q_;
    int n_;
    std::size_t size_;
    bool pure_;
    Vector vec_;
    Matrix rho_;
};

/// Kraus operators acting on `sites` of a register; operator indices use sites[0]
/// as the least significant digit. Construction checks sum K^dag K = I within 1e-10.
class KrausChannel {
   public:
    KrausChannel(int q, std::vector<int> sites, std::vector<Matrix> ops);

    static KrausChannel identity(int q, std::vector<int> sites);
    static KrausChannel unitary(int q, std::vector<int> sites, Matrix u);
    /// rho -> (1-p) rho + p I/q on one site.
    static KrausChannel depolarizing(int q, int site, double p);
    /// Applies word_k with probability probs[k]; words act on the listed sites.
    static KrausChannel pauli_mixture(int q, std::vector<int> sites, const std::vector<PauliString>& words,
                                      const std::vector<double>& probs);
    /// Replaces whatever is on `sites` by the fixed state `junk`.
    static KrausChannel replacement(int q, std::vector<int> sites, const Matrix& junk);

    int dimension() const { return q_; }
    const std::vector<int>& sites() const { return sites_; }
    const std::vector<Matrix>& ops() const { return ops_; }
    bool is_identity() const { return identity_; }

    /// Same operators relabelled onto other sites.
    KrausChannel on_sites(std::vector<int> sites) const;

   private:
    int q_;
    std::vector<int> sites_;
    std::vector<Matrix> ops_;
    bool identity_ = false;
};

/// One branch of a deterministic projection.
struct Branch {
    double probability = 0.0;
    QuantumState state;
};

struct Measurement {
    int outcome = 0;
    double probability = 0.0;
    QuantumState post;
};

struct BellMeasurement {
    int x0 = 0;
    int x1 = 0;
    double probability = 0.0;
    QuantumState post;
};

QuantumState apply_pauli(const QuantumState& state, const PauliString& word);
/// op on the listed sites (not necessarily unitary; result is not renormalized).
QuantumState apply_operator(const QuantumState& state, const std::vector<int>& sites, const Matrix& op);
QuantumState apply_channel(const QuantumState& state, const KrausChannel& channel);

Complex expectation(const QuantumState& state, const PauliString& word);

/// Spectral projector onto eigenvalue omega^y of `obs`; requires obs^q = I.
Matrix spectral_projector(const PauliString& obs, int y);
/// Born probabilities of the q outcomes of `obs` (obs^q = I, any omega phase).
std::vector<double> outcome_probabilities(const QuantumState& state, const PauliString& obs);
/// Projects onto outcome y and renormalizes; NumericError if the branch is empty.
Branch project_outcome(const QuantumState& state, const PauliString& obs, int y);
/// Samples an outcome of an observable with obs^q = I. Outcome y <-> eigenvalue omega^y.
Measurement measure_observable(const QuantumState& state, const PauliString& obs, Rng& rng);
/// As measure_observable, restricted to phase-free words.
Measurement measure_pauli(const QuantumState& state, const PauliString& obs, Rng& rng);

/// Generalized Bell vector (I (x) X^{x0} Z^{x1}) |Phi_00> on two sites, first site low.
Vector bell_vector(int q, int x0, int x1);
std::vector<double> bell_probabilities(const QuantumState& state, int site_a, int site_b);
Branch project_bell(const QuantumState& state, int site_a, int site_b, int x0, int x1);
BellMeasurement bell_measure(const QuantumState& state, int site_a, int site_b, Rng& rng);

/// Reduced state on `keep_sites`, in the order given.
QuantumState partial_trace(const QuantumState& state, const std::vector<int>& keep_sites);

/// <target| rho |target> for a pure target.
double fidelity(const QuantumState& state, const QuantumState& target);
double trace_distance(const QuantumState& a, const QuantumState& b);

/// Output qudit held by the coalition owning the Weyl pair (x_l, z_l):
/// rho_out = (1/q) sum_{a,b} Tr(rho (Z_L^a X_L^b)^dag) Z^a X^b.
QuantumState decode_logical(const QuantumState& state, const PauliString& x_l, const PauliString& z_l);

struct TeleportBranch {
    int x0 = 0;
    int x1 = 0;
    double probability = 0.0;
    /// Player-side state after the correction, sites 1.. of the resource.
    QuantumState players;
};

/// All q^2 Bell-outcome branches of teleporting `secret` through `resource`
/// (site 0 dealer, sites 1..m players). Player corrections: X_L^{-x0} then Z_L^{x1}.
/// Branches with probability below 1e-14 are omitted.
std::vector<TeleportBranch> teleport_branches(const QuantumState& resource, const QuantumState& secret,
                                              const PauliString& x_l, const PauliString& z_l);
TeleportBranch teleport_through(const QuantumState& resource, const QuantumState& secret, const PauliString& x_l,
                                const PauliString& z_l, Rng& rng);

}  // namespace qss
