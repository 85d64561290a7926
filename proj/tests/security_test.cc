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

#include <cmath>

#include <gtest/gtest.h>

#include "qss/errors.h"
#include "qss/rng.h"
#include "qss/schemes.h"

using namespace qss;

namespace {

std::shared_ptr<const Scheme> five() {
    static auto s = std::make_shared<const Scheme>(threshold_3_5_scheme());
    return s;
}

ProtocolConfig config(std::shared_ptr<const Scheme> s, std::vector<int> players, int rounds, Variant v) {
    ProtocolConfig cfg;
    cfg.scheme = s;
    cfg.players = std::move(players);
    cfg.rounds = rounds;
    cfg.variant = v;
    cfg.secret = QuantumState::basis(s->dimension(), 1, 0);
    return cfg;
}

// Product of per-round channels written as one joint channel, for the correlated evaluator.
AdversaryChannel as_correlated(const std::vector<KrausChannel>& per_round) {
    std::vector<Matrix> ops = {Matrix::Identity(1, 1)};
    std::vector<ShareSite> sites;
    for (std::size_t r = 0; r < per_round.size(); r++) {
        std::vector<Matrix> next;
        for (const auto& high : per_round[r].ops()) {
            for (const auto& low : ops) {
                next.push_back(kron(high, low));
            }
        }
        ops = std::move(next);
        for (int player : per_round[r].sites()) {
            sites.push_back({static_cast<int>(r), player});
        }
    }
    std::vector<int> local(sites.size());
    for (std::size_t i = 0; i < local.size(); i++) {
        local[i] = static_cast<int>(i);
    }
    return AdversaryChannel::correlated("product", KrausChannel(per_round[0].dimension(), local, ops), sites);
}

}  // namespace

TEST(security, bounds) {
    EXPECT_DOUBLE_EQ(soundness_bound(Variant::kInteractive, 4), 0.25);
    EXPECT_DOUBLE_EQ(soundness_bound(Variant::kAbort, 4), 0.5);
    EXPECT_THROW(soundness_bound(Variant::kAbort, 0), std::invalid_argument);
}

TEST(security, identity_adversary_never_fails) {
    for (Variant v : {Variant::kInteractive, Variant::kNonInteractive, Variant::kAbort, Variant::kUnboundedAbort}) {
        auto cfg = config(five(), {1, 2, 3}, 4, v);
        EXPECT_NEAR(p_fail_exact(cfg, AdversaryChannel::identity()), 0.0, 1e-10);
        Estimate mc = p_fail_monte_carlo(cfg, AdversaryChannel::identity(), 10000, 1);
        EXPECT_NEAR(mc.mean, 0.0, 1e-10);
        EXPECT_NEAR(mc.stderr_, 0.0, 1e-10);
    }
}

TEST(security, one_round_corruption_saturates) {
    for (int S : {1, 2, 4, 8}) {
        for (Variant v : {Variant::kInteractive, Variant::kNonInteractive, Variant::kAbort}) {
            auto cfg = config(five(), {1, 2, 3}, S, v);
            double p = p_fail_exact(cfg, one_round_corruption(*five(), S));
            EXPECT_NEAR(p, 1.0 / S, 1e-10) << variant_name(v) << " S=" << S;
        }
        QSpectrum spec = q_spectrum(S, QMode::kSymmetric);
        EXPECT_NEAR(spec.eigenvalues[1].value, 1.0 / S, 1e-15);
    }
}

TEST(security, monte_carlo_matches_exact_for_one_round_attack) {
    auto cfg = config(five(), {1, 2, 3}, 4, Variant::kInteractive);
    auto adv = one_round_corruption(*five(), 4);
    double exact = p_fail_exact(cfg, adv);
    Estimate mc = p_fail_monte_carlo(cfg, adv, 100000, 2);
    EXPECT_LT(std::abs(mc.mean - exact), 3 * mc.stderr_);
}

TEST(security, monte_carlo_matches_exact_for_depolarizing) {
    auto cfg = config(five(), {1, 3, 4}, 3, Variant::kNonInteractive);
    cfg.secret = QuantumState::from_vector(2, 1, Vector::Constant(2, Complex(std::sqrt(0.5), 0.0)));
    auto adv = depolarizing_adversary(*five(), 0.3, {1, 3, 4});
    double exact = p_fail_exact(cfg, adv);
    EXPECT_GT(exact, 0.0);
    Estimate mc = p_fail_monte_carlo(cfg, adv, 50000, 3);
    EXPECT_LT(std::abs(mc.mean - exact), 3 * mc.stderr_);
}

TEST(security, regression_suite_exact_vs_sampled) {
    auto adversaries = regression_adversaries(*five(), {2, 3, 5}, 3, 11);
    ASSERT_EQ(adversaries.size(), 10u);
    for (Variant v : {Variant::kInteractive, Variant::kAbort, Variant::kUnboundedAbort}) {
        for (const auto& adv : adversaries) {
            SecurityReport rep = evaluate_security(config(five(), {2, 3, 5}, 3, v), adv, 20000, 5);
            EXPECT_FALSE(rep.violated()) << adv.id();
            double tol = std::max(3 * rep.mc.stderr_, 1e-9);
            EXPECT_LT(std::abs(rep.mc.mean - rep.p_fail_exact), tol) << variant_name(v) << " " << adv.id();
        }
    }
}

TEST(security, random_kraus_below_bound) {
    Rng rng(21);
    for (int S : {2, 4, 8}) {
        for (int i = 0; i < 10; i++) {
            auto adv = random_kraus_adversary(*five(), S, {1, 2, 3}, 1 + i % 3, rng);
            double p = p_fail_exact(config(five(), {1, 2, 3}, S, Variant::kInteractive), adv);
            EXPECT_LE(p, 1.0 / S + 1e-9);
        }
    }
}

TEST(security, per_round_formula_equals_joint_evolution) {
    Rng rng(22);
    for (int S : {1, 2}) {
        for (Variant v : {Variant::kInteractive, Variant::kNonInteractive}) {
            std::vector<KrausChannel> chans;
            std::vector<RoundChannel> rounds;
            for (int r = 0; r < S; r++) {
                chans.push_back(random_kraus_channel(2, {1, 3}, 2, rng));
                rounds.push_back({chans.back()});
            }
            auto cfg = config(five(), {1, 2, 3}, S, v);
            cfg.secret = QuantumState::from_vector(2, 1, random_pure_vector(rng, 2));
            double per_round = p_fail_exact(cfg, AdversaryChannel::per_round("per-round", rounds));
            double joint = p_fail_exact(cfg, as_correlated(chans));
            EXPECT_NEAR(per_round, joint, 1e-10) << variant_name(v) << " S=" << S;
        }
    }
}

TEST(security, correlated_limits) {
    auto s = std::make_shared<const Scheme>(trivial_scheme(2));
    Rng rng(23);
    std::vector<KrausChannel> chans;
    for (int r = 0; r < 4; r++) {
        chans.push_back(random_kraus_channel(2, {1}, 1, rng));
    }
    EXPECT_THROW(p_fail_exact(config(s, {1}, 4, Variant::kInteractive), as_correlated(chans)), ResourceError);
    chans.pop_back();
    double p = p_fail_exact(config(s, {1}, 3, Variant::kInteractive), as_correlated(chans));
    EXPECT_LE(p, 1.0 / 3 + 1e-9);
}

TEST(security, correlated_exact_vs_sampled) {
    auto s = std::make_shared<const Scheme>(trivial_scheme(2));
    Rng rng(24);
    // A genuinely entangling channel across the two rounds' shares.
    KrausChannel joint = random_kraus_channel(2, {0, 1}, 3, rng);
    auto adv = AdversaryChannel::correlated("entangling", joint, {{0, 1}, {1, 1}});
    for (Variant v : {Variant::kInteractive, Variant::kNonInteractive}) {
        auto cfg = config(s, {1}, 2, v);
        double exact = p_fail_exact(cfg, adv);
        Estimate mc = p_fail_monte_carlo(cfg, adv, 50000, 6);
        EXPECT_LE(exact, 0.5 + 1e-9);
        EXPECT_LT(std::abs(mc.mean - exact), 3 * mc.stderr_) << variant_name(v);
    }
}

TEST(security, output_fidelity_at_least_resource_fidelity) {
    Rng rng(25);
    for (int i = 0; i < 10; i++) {
        auto adv = random_kraus_adversary(*five(), 1, {1, 2, 3, 4, 5}, 2, rng);
        auto cfg = config(five(), {1, 2, 3}, 1, Variant::kInteractive);
        cfg.secret = QuantumState::from_vector(2, 1, random_pure_vector(rng, 2));
        ProtocolRunner runner(cfg, adv);
        const RoundChannel& ch = runner.adversary().strategies()[0].channel_for(0);
        EXPECT_GE(1.0 - runner.use_failure(ch), runner.resource_fidelity(ch) - 1e-9);
    }
}

TEST(security, q_spectrum_formulas) {
    for (int S : {1, 2, 3, 5, 8, 16}) {
        QSpectrum sym = q_spectrum(S, QMode::kSymmetric);
        EXPECT_NEAR(sym.max_eigenvalue, 1.0 / S, 1e-15);
        if (S >= 2) {
            EXPECT_NEAR(sym.eigenvalues[2].value, 1.0 / S, 1e-15);
        }
        QSpectrum ab = q_spectrum(S, QMode::kAbort);
        double expect = (2.0 - std::pow(2.0, 1 - S)) / S;
        EXPECT_NEAR(ab.max_eigenvalue, expect, 1e-15);
        EXPECT_EQ(ab.eigenvalues.back().weight, S);
        EXPECT_NEAR(ab.eigenvalues.back().value, expect, 1e-15);
        EXPECT_LT(ab.max_eigenvalue, 2.0 / S);
        long long strings = 0;
        for (const auto& e : sym.eigenvalues) {
            strings += e.strings;
        }
        EXPECT_EQ(strings, 1LL << S);
    }
    EXPECT_NEAR(q_spectrum(1, QMode::kSymmetric).max_eigenvalue, 1.0, 1e-15);
    EXPECT_NEAR(q_spectrum(1, QMode::kAbort).max_eigenvalue, 1.0, 1e-15);
    // Qutrit: tested out-of-subspace rounds pass with 1/3, so k = 1 is the unique maximum.
    QSpectrum q3 = q_spectrum(4, QMode::kSymmetric, 3);
    EXPECT_NEAR(q3.max_eigenvalue, 0.25, 1e-15);
    EXPECT_NEAR(q3.eigenvalues[2].value, 2.0 / 12.0, 1e-15);
    EXPECT_THROW(q_spectrum(0, QMode::kAbort), std::invalid_argument);
    EXPECT_THROW(q_spectrum(30, QMode::kAbort), ResourceError);
}

TEST(security, q_spectrum_dense_small) {
    for (int S : {1, 2}) {
        for (QMode m : {QMode::kSymmetric, QMode::kAbort}) {
            QDenseCheck c = q_dense_check(*five(), {1, 2, 3}, S, m);
            EXPECT_EQ(c.dimension, S == 1 ? 16 : 256);
            EXPECT_LT(c.spectrum_error, 1e-9) << qmode_name(m);
            EXPECT_NEAR(c.max_dense, c.max_combinatorial, 1e-9);
        }
    }
    EXPECT_THROW(q_dense_check(*five(), {1, 2, 3}, 4, QMode::kSymmetric), ResourceError);
}

TEST(security, acceptance_law_qubit) {
    AcceptanceLawReport rep = acceptance_law_check(*five(), {1, 2, 3}, 1000, 31);
    EXPECT_TRUE(rep.half_law_bound_holds);
    EXPECT_NEAR(rep.honest_acceptance, 1.0, 1e-12);
    EXPECT_NEAR(rep.orthogonal_acceptance, 0.5, 1e-12);
    EXPECT_NEAR(rep.saturation_gap, 0.0, 1e-10);
    // For qubits {X, Z} tests the half law is a bound, not an identity.
    EXPECT_FALSE(rep.half_law_matches);
}

TEST(security, acceptance_law_qutrit) {
    auto s = qutrit_2_3_scheme();
    AcceptanceLawReport rep = acceptance_law_check(s, {1, 2}, 200, 32);
    EXPECT_NEAR(rep.honest_acceptance, 1.0, 1e-12);
    EXPECT_NEAR(rep.orthogonal_acceptance, 1.0 / 3.0, 1e-12);
    EXPECT_TRUE(rep.q_law_matches);
    EXPECT_FALSE(rep.half_law_matches);
    // Agrees with the POVM assembled from the test projectors.
    AcceptancePovm povm = build_acceptance_povm(s, {1, 2});
    Matrix pi = build_projector(s, {1, 2}).matrix;
    Matrix law = (Matrix::Identity(pi.rows(), pi.cols()) + 2.0 * pi) / 3.0;
    EXPECT_LT((povm.accept - law).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(security, unbounded_sweep_small) {
    auto cells = unbounded_bound_sweep(*five(), {1, 2, 3}, {4}, {0.0, 0.5}, 20000, 41);
    ASSERT_EQ(cells.size(), 2u);
    for (const auto& c : cells) {
        EXPECT_TRUE(c.ok);
        EXPECT_NEAR(c.acceptance_excess, 0.0, 1e-10);
        EXPECT_LT(std::abs(c.estimate.mean - c.exact), 3 * c.estimate.stderr_ + 1e-12);
    }
    EXPECT_NEAR(cells[0].bound, 0.5, 1e-15);
    EXPECT_NEAR(cells[0].exact, 0.4, 1e-12);
    EXPECT_THROW(unbounded_bound_sweep(*five(), {1, 2, 3}, {4}, {1.0}, 10, 1), std::invalid_argument);
}

TEST(security, unbounded_exact_matches_fixed_fidelity_closed_form) {
    for (double f : {0.0, 0.5, 0.9}) {
        auto cfg = config(five(), {1, 2, 3}, 4, Variant::kUnboundedAbort);
        double p = p_fail_exact(cfg, fixed_fidelity(*five(), f));
        double g = 1.0 - f;
        EXPECT_NEAR(p, 2 * g / (2 + 3 * g), 1e-12);
        EXPECT_LE(p, 2.0 / 4);
    }
}
