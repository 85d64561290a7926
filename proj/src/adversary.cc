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

#include "qss/adversary.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qss/rng.h"

namespace qss {

namespace {

const RoundChannel& empty_round() {
    static const RoundChannel empty;
    return empty;
}

PauliString identity_on_players(const Scheme& scheme) {
    return PauliString::identity(scheme.dimension(), scheme.num_players());
}

void check_players(const std::vector<int>& sites, int num_players, const char* what) {
    for (int s : sites) {
        if (s < 1 || s > num_players) {
            throw std::invalid_argument(std::string(what) + " touches a site outside the player shares");
        }
    }
}

}  // namespace

const RoundChannel& RoundStrategy::channel_for(int round) const {
    if (rounds.empty()) {
        return empty_round();
    }
    return rounds[std::min<std::size_t>(static_cast<std::size_t>(round), rounds.size() - 1)];
}

AdversaryChannel AdversaryChannel::identity() {
    AdversaryChannel a;
    a.strategies_.push_back({});
    a.weights_.push_back(1.0);
    return a;
}

AdversaryChannel AdversaryChannel::per_round(std::string id, std::vector<RoundChannel> rounds) {
    AdversaryChannel a;
    a.id_ = std::move(id);
    a.strategies_.push_back({std::move(rounds)});
    a.weights_.push_back(1.0);
    return a;
}

AdversaryChannel AdversaryChannel::mixture(std::string id, std::vector<RoundStrategy> strategies,
                                           std::vector<double> weights) {
    if (strategies.empty() || strategies.size() != weights.size()) {
        throw std::invalid_argument("mixture needs one weight per strategy");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw std::invalid_argument("negative mixture weight");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::invalid_argument("mixture weights must sum to 1");
    }
    AdversaryChannel a;
    a.mode_ = Mode::kMixture;
    a.id_ = std::move(id);
    a.strategies_ = std::move(strategies);
    a.weights_ = std::move(weights);
    return a;
}

AdversaryChannel AdversaryChannel::correlated(std::string id, KrausChannel joint, std::vector<ShareSite> sites) {
    if (sites.size() != joint.sites().size()) {
        throw std::invalid_argument("correlated channel needs one share per local site");
    }
    for (std::size_t i = 0; i < sites.size(); i++) {
        for (std::size_t j = i + 1; j < sites.size(); j++) {
            if (sites[i] == sites[j]) {
                throw std::invalid_argument("correlated channel lists a share twice");
            }
        }
    }
    AdversaryChannel a;
    a.mode_ = Mode::kCorrelated;
    a.id_ = std::move(id);
    std::vector<int> local(sites.size());
    for (std::size_t i = 0; i < local.size(); i++) {
        local[i] = static_cast<int>(i);
    }
    a.joint_.push_back(joint.on_sites(local));
    a.joint_sites_ = std::move(sites);
    return a;
}

void AdversaryChannel::validate(int q, int num_players) const {
    if (mode_ == Mode::kCorrelated) {
        if (joint().dimension() != q) {
            throw std::invalid_argument("adversary channel dimension does not match the scheme");
        }
        for (const ShareSite& s : joint_sites_) {
            if (s.round < 0 || s.player < 1 || s.player > num_players) {
                throw std::invalid_argument("correlated channel addresses a missing share");
            }
        }
        return;
    }
    for (const RoundStrategy& st : strategies_) {
        for (const RoundChannel& rc : st.rounds) {
            for (const KrausChannel& k : rc) {
                if (k.dimension() != q) {
                    throw std::invalid_argument("adversary channel dimension does not match the scheme");
                }
                check_players(k.sites(), num_players, "adversary channel");
            }
        }
    }
}

std::vector<int> all_player_sites(int num_players) {
    std::vector<int> sites(num_players);
    for (int j = 0; j < num_players; j++) {
        sites[j] = j + 1;
    }
    return sites;
}

KrausChannel random_kraus_channel(int q, std::vector<int> sites, int rank, Rng& rng) {
    if (rank < 1) {
        throw std::invalid_argument("Kraus rank must be positive");
    }
    const auto d = static_cast<Eigen::Index>(checked_dim(q, static_cast<int>(sites.size())));
    Matrix g(d * rank, d);
    for (Eigen::Index i = 0; i < g.rows(); i++) {
        for (Eigen::Index j = 0; j < g.cols(); j++) {
            double re = rng.normal();
            double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix iso = qr.householderQ() * Matrix::Identity(d * rank, d);
    std::vector<Matrix> ops;
    for (int k = 0; k < rank; k++) {
        ops.push_back(iso.block(k * d, 0, d, d));
    }
    return KrausChannel(q, std::move(sites), std::move(ops));
}

AdversaryChannel one_round_corruption(const Scheme& scheme, int rounds) {
    if (rounds < 1) {
        throw std::invalid_argument("round count must be positive");
    }
    const auto players = all_player_sites(scheme.num_players());
    KrausChannel flip = KrausChannel::unitary(scheme.dimension(), players, scheme.code().dressing().to_matrix());
    std::vector<RoundStrategy> strategies;
    for (int j = 0; j < rounds; j++) {
        RoundStrategy st;
        st.rounds.assign(rounds, RoundChannel{});
        st.rounds[j] = {flip};
        strategies.push_back(std::move(st));
    }
    return AdversaryChannel::mixture("one-round-corruption", std::move(strategies),
                                     std::vector<double>(rounds, 1.0 / rounds));
}

AdversaryChannel all_rounds_corruption(const Scheme& scheme) {
    const auto players = all_player_sites(scheme.num_players());
    KrausChannel flip = KrausChannel::unitary(scheme.dimension(), players, scheme.code().dressing().to_matrix());
    return AdversaryChannel::per_round("all-rounds-corruption", {{flip}});
}

AdversaryChannel fixed_fidelity(const Scheme& scheme, double f) {
    if (f < 0.0 || f > 1.0) {
        throw std::invalid_argument("fidelity outside [0,1]");
    }
    KrausChannel ch = KrausChannel::pauli_mixture(scheme.dimension(), all_player_sites(scheme.num_players()),
                                                  {identity_on_players(scheme), scheme.code().dressing()}, {f, 1.0 - f});
    return AdversaryChannel::per_round("fixed-fidelity", {{ch}});
}

AdversaryChannel depolarizing_adversary(const Scheme& scheme, double p, const std::vector<int>& players) {
    RoundChannel rc;
    for (int player : scheme.access().normalize(players)) {
        rc.push_back(KrausChannel::depolarizing(scheme.dimension(), player, p));
    }
    return AdversaryChannel::per_round("depolarizing", {rc});
}

AdversaryChannel random_kraus_adversary(const Scheme& scheme, int rounds, const std::vector<int>& players, int rank,
                                        Rng& rng, std::string id) {
    std::vector<int> sites = scheme.access().normalize(players);
    std::vector<RoundChannel> per;
    for (int i = 0; i < rounds; i++) {
        per.push_back({random_kraus_channel(scheme.dimension(), sites, rank, rng)});
    }
    return AdversaryChannel::per_round(std::move(id), std::move(per));
}

AdversaryChannel replacement_adversary(const Scheme& scheme, const Matrix& junk) {
    KrausChannel ch = KrausChannel::replacement(scheme.dimension(), all_player_sites(scheme.num_players()), junk);
    return AdversaryChannel::per_round("replacement", {{ch}});
}

}  // namespace qss
