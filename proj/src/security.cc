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

#include "qss/security.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qss/errors.h"
#include "qss/rng.h"

namespace qss {

namespace {

constexpr int kMaxAbortSpectrumRounds = 20;
constexpr int kMaxDenseQRounds = 3;

// Failure of one strategy, from per-round test acceptance a and use failure u.
double strategy_failure(ProtocolRunner& runner, const RoundStrategy& strategy, Variant variant, int S) {
    auto accept = [&](int i) { return runner.test_acceptance(strategy.channel_for(i)); };
    auto use = [&](int i) { return runner.use_failure(strategy.channel_for(i)); };
    switch (variant) {
        case Variant::kInteractive:
        case Variant::kNonInteractive: {
            std::vector<double> a(S);
            for (int i = 0; i < S; i++) {
                a[i] = accept(i);
            }
            double total = 0.0;
            for (int r = 0; r < S; r++) {
                double pass = 1.0;
                for (int i = 0; i < S; i++) {
                    if (i != r) {
                        pass *= a[i];
                    }
                }
                total += pass * use(r);
            }
            return total / S;
        }
        case Variant::kAbort: {
            double total = 0.0;
            double pass = 1.0;
            for (int r = 0; r < S; r++) {
                total += pass * use(r);
                pass *= accept(r);
            }
            return total / S;
        }
        case Variant::kUnboundedAbort: {
            // Round N is the use round with probability (1/S)(1-1/S)^N; channels past
            // the strategy's list repeat the last one, which closes the sum.
            const double p_use = 1.0 / S;
            const int listed = std::max<int>(1, static_cast<int>(strategy.rounds.size()));
            double total = 0.0;
            double reach = 1.0;
            for (int n = 0; n < listed - 1; n++) {
                total += reach * p_use * use(n);
                reach *= (1.0 - p_use) * accept(n);
            }
            double a = accept(listed - 1);
            total += reach * p_use * use(listed - 1) / (1.0 - (1.0 - p_use) * a);
            return total;
        }
    }
    return 0.0;
}

long long binomial(int n, int k) {
    long long out = 1;
    for (int i = 1; i <= k; i++) {
        out = out * (n - k + i) / i;
    }
    return out;
}

Eigen::MatrixXd kron_real(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

double soundness_bound(Variant v, int rounds) {
    if (rounds < 1) {
        throw std::invalid_argument("S must be at least 1");
    }
    return (v == Variant::kInteractive || v == Variant::kNonInteractive ? 1.0 : 2.0) / rounds;
}

double p_fail_exact(ProtocolRunner& runner) {
    const ProtocolConfig& cfg = runner.config();
    const AdversaryChannel& adv = runner.adversary();
    if (adv.mode() == AdversaryChannel::Mode::kCorrelated) {
        return runner.correlated_failure();
    }
    const auto& strategies = adv.strategies();
    const auto& weights = adv.weights();
    double total_weight = 0.0;
    for (double w : weights) {
        total_weight += w;
    }
    double total = 0.0;
    for (std::size_t k = 0; k < strategies.size(); k++) {
        double w = strategies.size() == 1 ? 1.0 : weights[k] / total_weight;
        total += w * strategy_failure(runner, strategies[k], cfg.variant, cfg.rounds);
    }
    return total;
}

double p_fail_exact(const ProtocolConfig& cfg, const AdversaryChannel& adversary) {
    ProtocolRunner runner(cfg, adversary);
    return p_fail_exact(runner);
}

Estimate p_fail_monte_carlo(ProtocolRunner& runner, long long trials, std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long long i = 0; i < trials; i++) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        double w = runner.run(rng).failure_weight();
        sum += w;
        sum_sq += w * w;
    }
    Estimate out;
    out.mean = sum / trials;
    if (trials > 1) {
        double var = std::max(0.0, (sum_sq - trials * out.mean * out.mean) / (trials - 1));
        out.stderr_ = std::sqrt(var / trials);
    }
    return out;
}

Estimate p_fail_monte_carlo(const ProtocolConfig& cfg, const AdversaryChannel& adversary, long long trials,
                            std::uint64_t seed) {
    ProtocolRunner runner(cfg, adversary);
    return p_fail_monte_carlo(runner, trials, seed);
}

SecurityReport evaluate_security(const ProtocolConfig& cfg, const AdversaryChannel& adversary, long long trials,
                                 std::uint64_t seed) {
    ProtocolRunner runner(cfg, adversary);
    SecurityReport rep;
    rep.variant = cfg.variant;
    rep.rounds = cfg.rounds;
    rep.adversary = adversary.id();
    rep.p_fail_exact = p_fail_exact(runner);
    if (trials > 0) {
        rep.has_mc = true;
        rep.mc = p_fail_monte_carlo(runner, trials, seed);
    }
    rep.bound = soundness_bound(cfg.variant, cfg.rounds);
    rep.margin = rep.bound - rep.p_fail_exact;
    return rep;
}

std::vector<AdversaryChannel> regression_adversaries(const Scheme& scheme, const std::vector<int>& players, int rounds,
                                                     std::uint64_t seed) {
    Rng rng(seed);
    const int n = scheme.num_players();
    const std::vector<int> everyone = [&] {
        std::vector<int> out;
        for (int j = 1; j <= n; j++) {
            out.push_back(j);
        }
        return out;
    }();
    std::vector<AdversaryChannel> out;
    out.push_back(AdversaryChannel::identity());
    out.push_back(one_round_corruption(scheme, rounds));
    out.push_back(all_rounds_corruption(scheme));
    out.push_back(fixed_fidelity(scheme, 0.5));
    out.push_back(depolarizing_adversary(scheme, 0.2, players).renamed("depolarizing-B"));
    out.push_back(depolarizing_adversary(scheme, 0.5, everyone).renamed("depolarizing-all"));
    out.push_back(random_kraus_adversary(scheme, rounds, players, 1, rng, "random-unitary-B"));
    out.push_back(random_kraus_adversary(scheme, rounds, players, 2, rng, "random-kraus-B"));
    out.push_back(random_kraus_adversary(scheme, rounds, everyone, 3, rng, "random-kraus-all"));
    const long long dim = static_cast<long long>(std::pow(scheme.dimension(), n) + 0.5);
    out.push_back(replacement_adversary(scheme, random_density_matrix(rng, dim)));
    return out;
}

std::string qmode_name(QMode m) { return m == QMode::kSymmetric ? "symmetric" : "abort"; }

QMode parse_qmode(const std::string& name) {
    if (name == "symmetric") {
        return QMode::kSymmetric;
    }
    if (name == "abort") {
        return QMode::kAbort;
    }
    throw std::invalid_argument("unknown spectrum mode '" + name + "'");
}

QSpectrum q_spectrum(int rounds, QMode mode, int q) {
    if (rounds < 1) {
        throw std::invalid_argument("S must be at least 1");
    }
    if (!is_prime(q)) {
        throw std::invalid_argument("q must be prime");
    }
    QSpectrum out;
    out.rounds = rounds;
    out.mode = mode;
    out.q = q;
    const double S = rounds;
    if (mode == QMode::kSymmetric) {
        if (rounds > 62) {
            throw ResourceError("symmetric spectrum limited to S <= 62");
        }
        for (int k = 0; k <= rounds; k++) {
            QEigenvalue e;
            e.weight = k;
            e.strings = binomial(rounds, k);
            e.value = k == 0 ? 0.0 : k * std::pow(1.0 / q, k - 1) / S;
            out.eigenvalues.push_back(e);
        }
    } else {
        if (rounds > kMaxAbortSpectrumRounds) {
            throw ResourceError("abort spectrum enumerates 2^S strings; limited to S <= " +
                                std::to_string(kMaxAbortSpectrumRounds));
        }
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << rounds); s++) {
            QEigenvalue e;
            e.pattern = s;
            double value = 0.0;
            double pass = 1.0;
            for (int r = 0; r < rounds; r++) {
                if ((s >> r) & 1) {
                    e.weight++;
                    value += pass;
                    pass /= q;
                }
            }
            e.value = value / S;
            out.eigenvalues.push_back(e);
        }
    }
    for (const auto& e : out.eigenvalues) {
        out.max_eigenvalue = std::max(out.max_eigenvalue, e.value);
    }
    return out;
}

QDenseCheck q_dense_check(const Scheme& scheme, const std::vector<int>& players, int rounds, QMode mode) {
    if (rounds < 1 || rounds > kMaxDenseQRounds) {
        throw ResourceError("dense Q construction limited to S <= 3");
    }
    const int q = scheme.dimension();
    Matrix pi = build_projector(scheme, players).matrix;
    if (pi.imag().cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("dense Q check needs a real projector");
    }
    const Eigen::MatrixXd P = pi.real();
    const Eigen::Index d = P.rows();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd out_proj = I - P;
    const Eigen::MatrixXd tested = (I + (q - 1) * P) / q;

    const Eigen::Index dim = static_cast<Eigen::Index>(std::pow(static_cast<double>(d), rounds) + 0.5);
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(dim, dim);
    for (int r = 0; r < rounds; r++) {
        Eigen::MatrixXd term = Eigen::MatrixXd::Identity(1, 1);
        for (int i = 0; i < rounds; i++) {
            const Eigen::MatrixXd& factor =
                i == r ? out_proj : (mode == QMode::kSymmetric || i < r ? tested : I);
            term = kron_real(term, factor);
        }
        Q += term;
    }
    Q /= static_cast<double>(rounds);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Q, Eigen::EigenvaluesOnly);
    std::vector<double> dense(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
    std::sort(dense.begin(), dense.end());

    const long long rank_in = std::llround(P.trace());
    const long long rank_out = d - rank_in;
    QSpectrum spec = q_spectrum(rounds, mode, q);
    std::vector<double> comb;
    for (const auto& e : spec.eigenvalues) {
        long long mult = e.strings;
        for (int i = 0; i < rounds; i++) {
            mult *= i < e.weight ? rank_out : rank_in;
        }
        comb.insert(comb.end(), static_cast<std::size_t>(mult), e.value);
    }
    std::sort(comb.begin(), comb.end());
    if (comb.size() != dense.size()) {
        throw NumericError("projector rank does not account for the full space");
    }
    QDenseCheck out;
    out.rounds = rounds;
    out.mode = mode;
    out.dimension = dim;
    out.max_dense = dense.back();
    out.max_combinatorial = spec.max_eigenvalue;
    for (std::size_t i = 0; i < dense.size(); i++) {
        out.spectrum_error = std::max(out.spectrum_error, std::abs(dense[i] - comb[i]));
    }
    return out;
}

namespace {

// Exact Born acceptance: dealer measures D_t, B measures L_t, accept iff equal; uniform t.
struct BornAcceptance {
    std::vector<Matrix> accept_terms;

    BornAcceptance(const Scheme& scheme, const std::vector<int>& players) {
        const int q = scheme.dimension();
        LogicalOperatorPair ops = scheme.logical_ops(players);
        for (TestSelector t : test_selectors(q)) {
            PauliString d_obs = dealer_observable(q, t);
            PauliString b_obs = ops.local(ops.observable(t));
            Matrix term;
            for (int y = 0; y < q; y++) {
                Matrix joint = kron(spectral_projector(b_obs, y), spectral_projector(d_obs, y));
                term = term.size() == 0 ? joint : Matrix(term + joint);
            }
            accept_terms.push_back(term);
        }
    }

    double operator()(const Matrix& rho) const {
        double total = 0.0;
        for (const auto& m : accept_terms) {
            total += (m * rho).trace().real();
        }
        return total / static_cast<double>(accept_terms.size());
    }
};

}  // namespace

AcceptanceLawReport acceptance_law_check(const Scheme& scheme, const std::vector<int>& players, int samples,
                                         std::uint64_t seed) {
    if (samples < 1) {
        throw std::invalid_argument("samples must be at least 1");
    }
    const int q = scheme.dimension();
    LogicalOperatorPair ops = scheme.logical_ops(players);
    std::vector<int> keep = {0};
    for (int j : ops.players) {
        keep.push_back(j);
    }
    const Matrix honest = partial_trace(epr_resource(scheme.code()), keep).density_matrix();
    PauliString x_err = PauliString::identity(q, 1).tensor(ops.local(ops.x_l));
    const Matrix x_mat = x_err.to_matrix();
    const Matrix orthogonal = x_mat * honest * x_mat.adjoint();
    const Matrix pi = build_projector(scheme, players).matrix;
    BornAcceptance born(scheme, players);

    AcceptanceLawReport rep;
    rep.q = q;
    rep.players = ops.players;
    rep.samples = samples;
    rep.max_excess_half_law = -1.0;
    rep.saturation_gap = 1.0;
    rep.honest_acceptance = born(honest);
    rep.orthogonal_acceptance = born(orthogonal);

    Rng rng(seed);
    auto record = [&](const Matrix& rho) {
        double F = (pi * rho).trace().real();
        double acc = born(rho);
        rep.max_excess_half_law = std::max(rep.max_excess_half_law, acc - (1.0 + F) / 2.0);
        rep.max_dev_half_law = std::max(rep.max_dev_half_law, std::abs(acc - (1.0 + F) / 2.0));
        rep.max_dev_q_law = std::max(rep.max_dev_q_law, std::abs(acc - (1.0 + (q - 1) * F) / q));
        return std::pair{F, acc};
    };
    record(honest);
    record(orthogonal);
    for (int i = 0; i < samples; i++) {
        // Alternate between generic states and states with substantial overlap on the subspace.
        Matrix rho = random_density_matrix(rng, honest.rows());
        if (i % 2 == 1) {
            double w = rng.uniform_real();
            rho = w * honest + (1.0 - w) * rho;
        }
        record(rho);
        double F = rng.uniform_real();
        auto [fid, acc] = record(F * honest + (1.0 - F) * orthogonal);
        rep.saturation_gap = std::min(rep.saturation_gap, (1.0 + fid) / 2.0 - acc);
    }
    rep.half_law_bound_holds = rep.max_excess_half_law <= 1e-10;
    rep.q_law_matches = rep.max_dev_q_law <= 1e-10;
    rep.half_law_matches = rep.max_dev_half_law <= 1e-10;
    return rep;
}

double pad_secrecy_check(const Scheme& scheme, const std::vector<QuantumState>& secrets) {
    const int q = scheme.dimension();
    std::vector<Matrix> averages;
    for (const auto& secret : secrets) {
        if (secret.dimension() != q || secret.num_sites() != 1) {
            throw std::invalid_argument("secrets must be single qudits of the scheme's dimension");
        }
        Matrix avg;
        for (int x0 = 0; x0 < q; x0++) {
            for (int x1 = 0; x1 < q; x1++) {
                PauliString pad = PauliString::single(q, 1, 0, 0, x0) * PauliString::single(q, 1, 0, x1, 0);
                Matrix rho = encode(scheme.code(), apply_pauli(secret, pad)).density_matrix();
                avg = avg.size() == 0 ? rho : Matrix(avg + rho);
            }
        }
        averages.push_back(avg / static_cast<double>(q * q));
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < averages.size(); a++) {
        for (std::size_t b = a + 1; b < averages.size(); b++) {
            worst = std::max(worst, trace_distance(averages[a], averages[b]));
        }
    }
    return worst;
}

std::vector<UnboundedCell> unbounded_bound_sweep(const Scheme& scheme, const std::vector<int>& players,
                                                 const std::vector<int>& rounds, const std::vector<double>& f_values,
                                                 long long trials, std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    auto shared = std::make_shared<const Scheme>(scheme);
    std::vector<UnboundedCell> out;
    std::uint64_t cell = 0;
    for (int S : rounds) {
        for (double f : f_values) {
            if (f < 0.0 || f >= 1.0) {
                throw std::invalid_argument("f must lie in [0, 1)");
            }
            ProtocolConfig cfg;
            cfg.scheme = shared;
            cfg.players = players;
            cfg.rounds = S;
            cfg.variant = Variant::kUnboundedAbort;
            cfg.secret = QuantumState::basis(scheme.dimension(), 1, 0);
            ProtocolRunner runner(cfg, fixed_fidelity(scheme, f));
            const RoundChannel& ch = runner.adversary().strategies()[0].channel_for(0);

            UnboundedCell c;
            c.rounds = S;
            c.f = f;
            c.trials = trials;
            c.bound = 2.0 / (S * (1.0 - f));
            const double a = runner.test_acceptance(ch);
            c.acceptance_excess = a - (1.0 + f) / 2.0;
            const double p_use = 1.0 / S;
            c.exact = p_use / (1.0 - (1.0 - p_use) * a);

            const std::uint64_t cell_seed = mix_seed(seed, cell++);
            long long hits = 0;
            for (long long i = 0; i < trials; i++) {
                Rng rng(cell_seed, static_cast<std::uint64_t>(i));
                Transcript tr = runner.run(rng);
                bool event = tr.use_round >= 0;
                for (const auto& r : tr.rounds) {
                    event = event && r.resource_fidelity <= f + 1e-12;
                }
                hits += event ? 1 : 0;
            }
            double p = static_cast<double>(hits) / trials;
            c.estimate.mean = p;
            c.estimate.stderr_ = std::sqrt(p * (1.0 - p) / trials);
            c.ok = p <= c.bound + 3.0 * c.estimate.stderr_ && c.acceptance_excess <= 1e-10;
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace qss
