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

#include "qss/state.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qss/errors.h"
#include "qss/rng.h"

namespace qss {

namespace {

constexpr double kBranchFloor = 1e-14;

// Offsets of every local index and the list of base indices (all listed sites zero).
struct SiteLayout {
    std::vector<std::size_t> local_offsets;
    std::vector<std::size_t> bases;
};

SiteLayout layout_for(int q, int n, const std::vector<int>& sites) {
    std::vector<std::size_t> strides(n);
    std::size_t stride = 1;
    for (int s = 0; s < n; s++) {
        strides[s] = stride;
        stride *= q;
    }
    std::vector<bool> used(n, false);
    for (int s : sites) {
        if (s < 0 || s >= n) {
            throw std::invalid_argument("site " + std::to_string(s) + " outside a " + std::to_string(n) +
                                        "-site register");
        }
        if (used[s]) {
            throw std::invalid_argument("site " + std::to_string(s) + " listed twice");
        }
        used[s] = true;
    }
    SiteLayout layout;
    std::size_t local_dim = 1;
    for (std::size_t k = 0; k < sites.size(); k++) {
        local_dim *= q;
    }
    layout.local_offsets.resize(local_dim);
    for (std::size_t l = 0; l < local_dim; l++) {
        std::size_t rem = l;
        std::size_t off = 0;
        for (int s : sites) {
            off += (rem % q) * strides[s];
            rem /= q;
        }
        layout.local_offsets[l] = off;
    }
    std::vector<int> rest;
    for (int s = 0; s < n; s++) {
        if (!used[s]) {
            rest.push_back(s);
        }
    }
    std::size_t rest_dim = stride / local_dim;
    layout.bases.resize(rest_dim);
    for (std::size_t r = 0; r < rest_dim; r++) {
        std::size_t rem = r;
        std::size_t off = 0;
        for (int s : rest) {
            off += (rem % q) * strides[s];
            rem /= q;
        }
        layout.bases[r] = off;
    }
    return layout;
}

// Left-multiplies the columns of `m` by `op` acting on the layout's sites.
void left_apply(Matrix& m, const SiteLayout& layout, const Matrix& op) {
    auto local_dim = static_cast<Eigen::Index>(layout.local_offsets.size());
    Vector gathered(local_dim);
    for (Eigen::Index col = 0; col < m.cols(); col++) {
        for (std::size_t base : layout.bases) {
            for (Eigen::Index l = 0; l < local_dim; l++) {
                gathered(l) = m(static_cast<Eigen::Index>(base + layout.local_offsets[l]), col);
            }
            Vector out = op * gathered;
            for (Eigen::Index l = 0; l < local_dim; l++) {
                m(static_cast<Eigen::Index>(base + layout.local_offsets[l]), col) = out(l);
            }
        }
    }
}

Matrix conjugate_by(const Matrix& rho, const SiteLayout& layout, const Matrix& op) {
    Matrix a = rho;
    left_apply(a, layout, op);
    Matrix b = a.adjoint();
    left_apply(b, layout, op);
    return b.adjoint();
}

// word * m (rows permuted and scaled)
Matrix pauli_left(const PauliString& word, const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        auto t = static_cast<Eigen::Index>(word.target(static_cast<std::size_t>(i)));
        out.row(t) = word.coefficient(static_cast<std::size_t>(i)) * m.row(i);
    }
    return out;
}

Vector pauli_vec(const PauliString& word, const Vector& v) {
    Vector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); i++) {
        auto t = static_cast<Eigen::Index>(word.target(static_cast<std::size_t>(i)));
        out(t) = word.coefficient(static_cast<std::size_t>(i)) * v(i);
    }
    return out;
}

void require_register(const QuantumState& state, const PauliString& word) {
    if (state.dimension() != word.dimension() || state.num_sites() != word.num_sites()) {
        throw std::invalid_argument("Pauli word does not match the state register");
    }
}

void require_order_q(const PauliString& obs) {
    if (!obs.pow(obs.dimension()).is_identity()) {
        throw std::invalid_argument("observable " + obs.str() + " does not satisfy obs^q = I");
    }
}

// Projector P_y = (1/q) sum_k omega^{-yk} obs^k applied on the left.
Matrix projector_left(const PauliString& obs, int y, const Matrix& m) {
    int q = obs.dimension();
    Matrix acc = Matrix::Zero(m.rows(), m.cols());
    PauliString power = PauliString::identity(q, obs.num_sites());
    for (int k = 0; k < q; k++) {
        acc += omega_pow(q, -1LL * y * k) * pauli_left(power, m);
        power = power * obs;
    }
    return acc / static_cast<double>(q);
}

Vector projector_vec(const PauliString& obs, int y, const Vector& v) {
    int q = obs.dimension();
    Vector acc = Vector::Zero(v.size());
    PauliString power = PauliString::identity(q, obs.num_sites());
    for (int k = 0; k < q; k++) {
        acc += omega_pow(q, -1LL * y * k) * pauli_vec(power, v);
        power = power * obs;
    }
    return acc / static_cast<double>(q);
}

QuantumState project_raw(const QuantumState& state, const SiteLayout& layout, const Matrix& projector) {
    if (state.is_pure()) {
        Matrix v = state.amplitudes();
        left_apply(v, layout, projector);
        return QuantumState::unchecked_vector(state.dimension(), state.num_sites(), v.col(0));
    }
    return QuantumState::unchecked_density(state.dimension(), state.num_sites(),
                                           conjugate_by(state.density_matrix(), layout, projector));
}

}  // namespace

// ---------------------------------------------------------------------------
// QuantumState

QuantumState QuantumState::unchecked_vector(int q, int num_sites, Vector amplitudes) {
    QuantumState s(q, num_sites, true);
    s.size_ = checked_dim(q, num_sites);
    if (static_cast<std::size_t>(amplitudes.size()) != s.size_) {
        throw std::invalid_argument("amplitude vector has wrong length");
    }
    s.vec_ = std::move(amplitudes);
    return s;
}

QuantumState QuantumState::unchecked_density(int q, int num_sites, Matrix rho) {
    QuantumState s(q, num_sites, false);
    s.size_ = checked_dim(q, num_sites);
    if (s.size_ * s.size_ > kDenseEntryCap) {
        throw ResourceError("density matrix of " + std::to_string(num_sites) + " sites exceeds the dense size cap");
    }
    if (static_cast<std::size_t>(rho.rows()) != s.size_ || rho.rows() != rho.cols()) {
        throw std::invalid_argument("density matrix has wrong shape");
    }
    s.rho_ = std::move(rho);
    return s;
}

QuantumState QuantumState::from_vector(int q, int num_sites, Vector amplitudes) {
    if (!is_prime(q)) {
        throw std::invalid_argument("qudit dimension must be prime");
    }
    QuantumState s = unchecked_vector(q, num_sites, std::move(amplitudes));
    if (std::abs(s.vec_.squaredNorm() - 1.0) > 1e-10) {
        throw std::invalid_argument("state vector is not normalized");
    }
    return s;
}

QuantumState QuantumState::from_density(int q, int num_sites, Matrix rho) {
    if (!is_prime(q)) {
        throw std::invalid_argument("qudit dimension must be prime");
    }
    QuantumState s = unchecked_density(q, num_sites, std::move(rho));
    try {
        s.check_invariants();
    } catch (const NumericError& e) {
        throw std::invalid_argument(e.what());
    }
    return s;
}

QuantumState QuantumState::basis(int q, int num_sites, std::size_t index) {
    std::size_t dim = checked_dim(q, num_sites);
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return from_vector(q, num_sites, std::move(v));
}

QuantumState QuantumState::maximally_mixed(int q, int num_sites) {
    std::size_t dim = checked_dim(q, num_sites);
    auto d = static_cast<Eigen::Index>(dim);
    return unchecked_density(q, num_sites, Matrix::Identity(d, d) / static_cast<double>(dim));
}

const Vector& QuantumState::amplitudes() const {
    if (!pure_) {
        throw std::logic_error("amplitudes() called on a mixed state");
    }
    return vec_;
}

Matrix QuantumState::density_matrix() const {
    if (pure_) {
        return vec_ * vec_.adjoint();
    }
    return rho_;
}

QuantumState QuantumState::as_mixed() const {
    if (!pure_) {
        return *this;
    }
    return unchecked_density(q_, n_, density_matrix());
}

QuantumState QuantumState::tensor(const QuantumState& high) const {
    if (q_ != high.q_) {
        throw std::invalid_argument("tensor of registers with different q");
    }
    int n = n_ + high.n_;
    if (pure_ && high.pure_) {
        checked_dim(q_, n);
        Vector v(static_cast<Eigen::Index>(size_ * high.size_));
        for (std::size_t h = 0; h < high.size_; h++) {
            v.segment(static_cast<Eigen::Index>(h * size_), static_cast<Eigen::Index>(size_)) =
                high.vec_(static_cast<Eigen::Index>(h)) * vec_;
        }
        return unchecked_vector(q_, n, std::move(v));
    }
    std::size_t dim = checked_dim(q_, n);
    if (dim * dim > kDenseEntryCap) {
        throw ResourceError("joint density matrix exceeds the dense size cap");
    }
    return unchecked_density(q_, n, kron(high.density_matrix(), density_matrix()));
}

double QuantumState::trace() const {
    if (pure_) {
        return vec_.squaredNorm();
    }
    return rho_.trace().real();
}

QuantumState QuantumState::normalized() const {
    double t = trace();
    if (!(t > 0.0)) {
        throw NumericError("cannot normalize a zero state");
    }
    if (pure_) {
        return unchecked_vector(q_, n_, vec_ / std::sqrt(t));
    }
    return unchecked_density(q_, n_, rho_ / t);
}

void QuantumState::check_invariants(double tol) const {
    if (pure_) {
        if (std::abs(vec_.squaredNorm() - 1.0) > tol) {
            throw NumericError("pure state norm deviates from 1");
        }
        return;
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw NumericError("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > tol) {
        throw NumericError("density matrix trace deviates from 1");
    }
    Matrix herm = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw NumericError("density matrix has a negative eigenvalue");
    }
}

// ---------------------------------------------------------------------------
// KrausChannel

KrausChannel::KrausChannel(int q, std::vector<int> sites, std::vector<Matrix> ops)
    : q_(q), sites_(std::move(sites)), ops_(std::move(ops)) {
    if (!is_prime(q)) {
        throw std::invalid_argument("channel dimension must be prime");
    }
    if (ops_.empty()) {
        throw std::invalid_argument("channel needs at least one Kraus operator");
    }
    auto local = static_cast<Eigen::Index>(checked_dim(q, static_cast<int>(sites_.size())));
    Matrix completeness = Matrix::Zero(local, local);
    for (const auto& k : ops_) {
        if (k.rows() != local || k.cols() != local) {
            throw std::invalid_argument("Kraus operator has wrong shape for its sites");
        }
        completeness += k.adjoint() * k;
    }
    if ((completeness - Matrix::Identity(local, local)).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("channel is not trace preserving");
    }
    identity_ = ops_.size() == 1 && (ops_[0] - Matrix::Identity(local, local)).cwiseAbs().maxCoeff() < 1e-15;
}

KrausChannel KrausChannel::identity(int q, std::vector<int> sites) {
    auto local = static_cast<Eigen::Index>(checked_dim(q, static_cast<int>(sites.size())));
    return KrausChannel(q, std::move(sites), {Matrix::Identity(local, local)});
}

KrausChannel KrausChannel::unitary(int q, std::vector<int> sites, Matrix u) {
    return KrausChannel(q, std::move(sites), {std::move(u)});
}

KrausChannel KrausChannel::depolarizing(int q, int site, double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("depolarizing parameter outside [0,1]");
    }
    // (1-p) rho + p I/q = sum over the q^2 Weyl operators with weights
    std::vector<PauliString> words;
    std::vector<double> probs;
    for (int z = 0; z < q; z++) {
        for (int x = 0; x < q; x++) {
            words.push_back(PauliString::single(q, 1, 0, z, x));
            double w = p / (q * q);
            if (z == 0 && x == 0) {
                w += 1.0 - p;
            }
            probs.push_back(w);
        }
    }
    return pauli_mixture(q, {site}, words, probs);
}

KrausChannel KrausChannel::pauli_mixture(int q, std::vector<int> sites, const std::vector<PauliString>& words,
                                         const std::vector<double>& probs) {
    if (words.size() != probs.size()) {
        throw std::invalid_argument("Pauli mixture needs one probability per word");
    }
    std::vector<Matrix> ops;
    for (std::size_t k = 0; k < words.size(); k++) {
        if (probs[k] < 0.0) {
            throw std::invalid_argument("negative probability in Pauli mixture");
        }
        if (words[k].num_sites() != static_cast<int>(sites.size())) {
            throw std::invalid_argument("Pauli mixture word does not match the channel sites");
        }
        if (probs[k] > 0.0) {
            ops.push_back(std::sqrt(probs[k]) * words[k].to_matrix());
        }
    }
    return KrausChannel(q, std::move(sites), std::move(ops));
}

KrausChannel KrausChannel::replacement(int q, std::vector<int> sites, const Matrix& junk) {
    auto local = static_cast<Eigen::Index>(checked_dim(q, static_cast<int>(sites.size())));
    if (junk.rows() != local || junk.cols() != local) {
        throw std::invalid_argument("replacement state has wrong shape");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (junk + junk.adjoint()));
    std::vector<Matrix> ops;
    for (Eigen::Index e = 0; e < local; e++) {
        double lambda = solver.eigenvalues()(e);
        if (lambda <= 1e-15) {
            continue;
        }
        Vector v = std::sqrt(lambda) * solver.eigenvectors().col(e);
        for (Eigen::Index k = 0; k < local; k++) {
            Matrix op = Matrix::Zero(local, local);
            op.col(k) = v;
            ops.push_back(std::move(op));
        }
    }
    return KrausChannel(q, std::move(sites), std::move(ops));
}

KrausChannel KrausChannel::on_sites(std::vector<int> sites) const {
    if (sites.size() != sites_.size()) {
        throw std::invalid_argument("relabelled channel needs the same number of sites");
    }
    return KrausChannel(q_, std::move(sites), ops_);
}

// ---------------------------------------------------------------------------
// Operations

QuantumState apply_pauli(const QuantumState& state, const PauliString& word) {
    require_register(state, word);
    if (state.is_pure()) {
        return QuantumState::unchecked_vector(state.dimension(), state.num_sites(),
                                              pauli_vec(word, state.amplitudes()));
    }
    Matrix left = pauli_left(word, state.density_matrix());
    Matrix both = pauli_left(word, Matrix(left.adjoint())).adjoint();
    return QuantumState::unchecked_density(state.dimension(), state.num_sites(), std::move(both));
}

QuantumState apply_operator(const QuantumState& state, const std::vector<int>& sites, const Matrix& op) {
    SiteLayout layout = layout_for(state.dimension(), state.num_sites(), sites);
    if (static_cast<std::size_t>(op.rows()) != layout.local_offsets.size() || op.rows() != op.cols()) {
        throw std::invalid_argument("operator shape does not match its sites");
    }
    return project_raw(state, layout, op);
}

QuantumState apply_channel(const QuantumState& state, const KrausChannel& channel) {
    if (channel.dimension() != state.dimension()) {
        throw std::invalid_argument("channel dimension does not match the state");
    }
    SiteLayout layout = layout_for(state.dimension(), state.num_sites(), channel.sites());
    if (channel.is_identity()) {
        return state;
    }
    if (channel.ops().size() == 1) {
        return project_raw(state, layout, channel.ops()[0]);
    }
    Matrix rho = state.density_matrix();
    Matrix acc = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& k : channel.ops()) {
        acc += conjugate_by(rho, layout, k);
    }
    return QuantumState::unchecked_density(state.dimension(), state.num_sites(), std::move(acc));
}

Complex expectation(const QuantumState& state, const PauliString& word) {
    require_register(state, word);
    Complex acc = 0.0;
    if (state.is_pure()) {
        const Vector& v = state.amplitudes();
        for (Eigen::Index j = 0; j < v.size(); j++) {
            auto t = static_cast<Eigen::Index>(word.target(static_cast<std::size_t>(j)));
            acc += std::conj(v(t)) * word.coefficient(static_cast<std::size_t>(j)) * v(j);
        }
        return acc;
    }
    Matrix rho = state.density_matrix();
    for (Eigen::Index i = 0; i < rho.rows(); i++) {
        auto t = static_cast<Eigen::Index>(word.target(static_cast<std::size_t>(i)));
        acc += word.coefficient(static_cast<std::size_t>(i)) * rho(i, t);
    }
    return acc;
}

Matrix spectral_projector(const PauliString& obs, int y) {
    require_order_q(obs);
    int q = obs.dimension();
    auto dim = static_cast<Eigen::Index>(checked_dim(q, obs.num_sites()));
    return projector_left(obs, mod(y, q), Matrix::Identity(dim, dim));
}

std::vector<double> outcome_probabilities(const QuantumState& state, const PauliString& obs) {
    require_register(state, obs);
    require_order_q(obs);
    int q = obs.dimension();
    std::vector<Complex> moments;
    PauliString power = PauliString::identity(q, obs.num_sites());
    for (int k = 0; k < q; k++) {
        moments.push_back(expectation(state, power));
        power = power * obs;
    }
    std::vector<double> probs(q);
    for (int y = 0; y < q; y++) {
        Complex acc = 0.0;
        for (int k = 0; k < q; k++) {
            acc += omega_pow(q, -1LL * y * k) * moments[k];
        }
        probs[y] = std::max(0.0, acc.real() / q);
    }
    return probs;
}

Branch project_outcome(const QuantumState& state, const PauliString& obs, int y) {
    require_register(state, obs);
    require_order_q(obs);
    QuantumState raw = state.is_pure()
                           ? QuantumState::unchecked_vector(state.dimension(), state.num_sites(),
                                                            projector_vec(obs, mod(y, obs.dimension()), state.amplitudes()))
                           : [&] {
                                 Matrix a = projector_left(obs, mod(y, obs.dimension()), state.density_matrix());
                                 Matrix b = projector_left(obs, mod(y, obs.dimension()), Matrix(a.adjoint()));
                                 return QuantumState::unchecked_density(state.dimension(), state.num_sites(),
                                                                        b.adjoint());
                             }();
    double p = raw.trace();
    if (p < kBranchFloor) {
        throw NumericError("outcome " + std::to_string(y) + " of " + obs.str() + " has zero probability");
    }
    return {p, raw.normalized()};
}

Measurement measure_observable(const QuantumState& state, const PauliString& obs, Rng& rng) {
    std::vector<double> probs = outcome_probabilities(state, obs);
    int y = static_cast<int>(rng.categorical(probs));
    Branch b = project_outcome(state, obs, y);
    return {y, b.probability, std::move(b.state)};
}

Measurement measure_pauli(const QuantumState& state, const PauliString& obs, Rng& rng) {
    if (!obs.phase_free()) {
        throw std::invalid_argument("measure_pauli needs a phase-free word, got " + obs.str());
    }
    return measure_observable(state, obs, rng);
}

Vector bell_vector(int q, int x0, int x1) {
    Vector v = Vector::Zero(q * q);
    double norm = 1.0 / std::sqrt(static_cast<double>(q));
    for (int j = 0; j < q; j++) {
        int b = mod(j + x0, q);
        v(j + q * b) = norm * omega_pow(q, 1LL * x1 * j);
    }
    return v;
}

namespace {

void require_bell_sites(const QuantumState& state, int a, int b) {
    if (a == b) {
        throw std::invalid_argument("Bell measurement needs two distinct sites");
    }
    if (a < 0 || b < 0 || a >= state.num_sites() || b >= state.num_sites()) {
        throw std::invalid_argument("Bell measurement site out of range");
    }
}

}  // namespace

std::vector<double> bell_probabilities(const QuantumState& state, int site_a, int site_b) {
    require_bell_sites(state, site_a, site_b);
    int q = state.dimension();
    QuantumState pair = partial_trace(state, {site_a, site_b});
    Matrix rho = pair.density_matrix();
    std::vector<double> probs;
    for (int x0 = 0; x0 < q; x0++) {
        for (int x1 = 0; x1 < q; x1++) {
            Vector v = bell_vector(q, x0, x1);
            probs.push_back(std::max(0.0, (v.adjoint() * rho * v)(0, 0).real()));
        }
    }
    return probs;
}

Branch project_bell(const QuantumState& state, int site_a, int site_b, int x0, int x1) {
    require_bell_sites(state, site_a, site_b);
    int q = state.dimension();
    Vector v = bell_vector(q, mod(x0, q), mod(x1, q));
    Matrix projector = v * v.adjoint();
    SiteLayout layout = layout_for(q, state.num_sites(), {site_a, site_b});
    QuantumState raw = project_raw(state, layout, projector);
    double p = raw.trace();
    if (p < kBranchFloor) {
        throw NumericError("Bell outcome has zero probability");
    }
    return {p, raw.normalized()};
}

BellMeasurement bell_measure(const QuantumState& state, int site_a, int site_b, Rng& rng) {
    std::vector<double> probs = bell_probabilities(state, site_a, site_b);
    auto k = static_cast<int>(rng.categorical(probs));
    int q = state.dimension();
    Branch b = project_bell(state, site_a, site_b, k / q, k % q);
    return {k / q, k % q, b.probability, std::move(b.state)};
}

QuantumState partial_trace(const QuantumState& state, const std::vector<int>& keep_sites) {
    if (keep_sites.empty()) {
        throw std::invalid_argument("partial trace needs a nonempty keep set");
    }
    int q = state.dimension();
    SiteLayout layout = layout_for(q, state.num_sites(), keep_sites);
    auto local = static_cast<Eigen::Index>(layout.local_offsets.size());
    Matrix out = Matrix::Zero(local, local);
    if (state.is_pure()) {
        const Vector& v = state.amplitudes();
        Vector piece(local);
        for (std::size_t base : layout.bases) {
            for (Eigen::Index l = 0; l < local; l++) {
                piece(l) = v(static_cast<Eigen::Index>(base + layout.local_offsets[l]));
            }
            out += piece * piece.adjoint();
        }
    } else {
        Matrix rho = state.density_matrix();
        for (std::size_t base : layout.bases) {
            for (Eigen::Index i = 0; i < local; i++) {
                auto row = static_cast<Eigen::Index>(base + layout.local_offsets[i]);
                for (Eigen::Index j = 0; j < local; j++) {
                    out(i, j) += rho(row, static_cast<Eigen::Index>(base + layout.local_offsets[j]));
                }
            }
        }
    }
    return QuantumState::unchecked_density(q, static_cast<int>(keep_sites.size()), std::move(out));
}

double fidelity(const QuantumState& state, const QuantumState& target) {
    if (!target.is_pure()) {
        throw std::invalid_argument("fidelity against a mixed target is unsupported");
    }
    if (state.dimension() != target.dimension() || state.num_sites() != target.num_sites()) {
        throw std::invalid_argument("fidelity of incompatible registers");
    }
    const Vector& t = target.amplitudes();
    double f = state.is_pure() ? std::norm(t.dot(state.amplitudes()))
                               : (t.adjoint() * state.density_matrix() * t)(0, 0).real();
    return std::clamp(f, 0.0, 1.0);
}

double trace_distance(const QuantumState& a, const QuantumState& b) {
    if (a.dimension() != b.dimension() || a.num_sites() != b.num_sites()) {
        throw std::invalid_argument("trace distance of incompatible registers");
    }
    return trace_distance(a.density_matrix(), b.density_matrix());
}

QuantumState decode_logical(const QuantumState& state, const PauliString& x_l, const PauliString& z_l) {
    int q = state.dimension();
    require_register(state, x_l);
    require_register(state, z_l);
    if (z_l.commutation_exponent(x_l) != 1) {
        throw std::invalid_argument("logical pair must satisfy Z_L X_L = omega X_L Z_L");
    }
    Matrix out = Matrix::Zero(q, q);
    PauliString z_power = PauliString::identity(q, state.num_sites());
    for (int a = 0; a < q; a++) {
        PauliString x_power = PauliString::identity(q, state.num_sites());
        for (int b = 0; b < q; b++) {
            Complex weight = std::conj(expectation(state, z_power * x_power));
            out += weight * PauliString::single(q, 1, 0, a, b).to_matrix();
            x_power = x_power * x_l;
        }
        z_power = z_power * z_l;
    }
    out /= static_cast<double>(q);
    return QuantumState::unchecked_density(q, 1, 0.5 * (out + out.adjoint()));
}

namespace {

QuantumState correct_players(const QuantumState& players, const PauliString& x_l, const PauliString& z_l, int x0,
                             int x1) {
    int q = players.dimension();
    QuantumState s = apply_pauli(players, x_l.pow(mod(-x0, q)));
    return apply_pauli(s, z_l.pow(mod(x1, q)));
}

std::vector<int> player_sites(int resource_sites) {
    std::vector<int> keep;
    for (int s = 2; s < resource_sites + 1; s++) {
        keep.push_back(s);
    }
    return keep;
}

void require_teleport_shapes(const QuantumState& resource, const QuantumState& secret, const PauliString& x_l,
                             const PauliString& z_l) {
    if (secret.num_sites() != 1 || secret.dimension() != resource.dimension()) {
        throw std::invalid_argument("secret must be a single qudit of the resource dimension");
    }
    if (resource.num_sites() < 2) {
        throw std::invalid_argument("resource needs a dealer site and at least one player site");
    }
    if (x_l.num_sites() != resource.num_sites() - 1 || z_l.num_sites() != resource.num_sites() - 1) {
        throw std::invalid_argument("logical corrections must act on the resource's player sites");
    }
}

}  // namespace

std::vector<TeleportBranch> teleport_branches(const QuantumState& resource, const QuantumState& secret,
                                              const PauliString& x_l, const PauliString& z_l) {
    require_teleport_shapes(resource, secret, x_l, z_l);
    int q = resource.dimension();
    QuantumState joint = secret.tensor(resource);
    std::vector<double> probs = bell_probabilities(joint, 0, 1);
    std::vector<int> keep = player_sites(resource.num_sites());
    std::vector<TeleportBranch> out;
    for (int k = 0; k < q * q; k++) {
        if (probs[k] < kBranchFloor) {
            continue;
        }
        Branch b = project_bell(joint, 0, 1, k / q, k % q);
        QuantumState players = partial_trace(b.state, keep);
        out.push_back({k / q, k % q, b.probability, correct_players(players, x_l, z_l, k / q, k % q)});
    }
    return out;
}

TeleportBranch teleport_through(const QuantumState& resource, const QuantumState& secret, const PauliString& x_l,
                                const PauliString& z_l, Rng& rng) {
    require_teleport_shapes(resource, secret, x_l, z_l);
    QuantumState joint = secret.tensor(resource);
    BellMeasurement m = bell_measure(joint, 0, 1, rng);
    QuantumState players = partial_trace(m.post, player_sites(resource.num_sites()));
    return {m.x0, m.x1, m.probability, correct_players(players, x_l, z_l, m.x0, m.x1)};
}

}  // namespace qss
