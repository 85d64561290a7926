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

#include <string>
#include <utility>
#include <vector>

#include "qss/access.h"
#include "qss/state.h"

namespace qss {

class Rng;

/// Channels applied in order to one round's player shares. Sites use the resource
/// numbering: player j is site j, site 0 (the dealer) is never touched.
using RoundChannel = std::vector<KrausChannel>;

/// One adversary behaviour: the channel for each round; rounds past the end reuse the
/// last entry, and an empty list means no interference.
struct RoundStrategy {
    std::vector<RoundChannel> rounds;

    const RoundChannel& channel_for(int round) const;
};

/// A (round, player label) share addressed by a correlated channel.
struct ShareSite {
    int round = 0;
    int player = 1;
    bool operator==(const ShareSite&) const = default;
};

class AdversaryChannel {
   public:
    enum class Mode { kPerRound, kMixture, kCorrelated };

    static AdversaryChannel identity();
    static AdversaryChannel per_round(std::string id, std::vector<RoundChannel> rounds);
    /// Strategy k is used with probability weights[k] (drawn once per run).
    static AdversaryChannel mixture(std::string id, std::vector<RoundStrategy> strategies, std::vector<double> weights);
    /// One channel jointly on the listed shares; its local sites 0..k-1 map to `sites`.
    static AdversaryChannel correlated(std::string id, KrausChannel joint, std::vector<ShareSite> sites);

    Mode mode() const { return mode_; }
    const std::string& id() const { return id_; }
    const std::vector<RoundStrategy>& strategies() const { return strategies_; }
    const std::vector<double>& weights() const { return weights_; }
    const KrausChannel& joint() const { return joint_.front(); }
    const std::vector<ShareSite>& joint_sites() const { return joint_sites_; }

    AdversaryChannel renamed(std::string id) const {
        AdversaryChannel out = *this;
        out.id_ = std::move(id);
        return out;
    }

    /// Throws std::invalid_argument when a channel touches the dealer or a missing player.
    void validate(int q, int num_players) const;

   private:
    AdversaryChannel() = default;

    Mode mode_ = Mode::kPerRound;
    std::string id_ = "identity";
    std::vector<RoundStrategy> strategies_;
    std::vector<double> weights_;
    std::vector<KrausChannel> joint_;
    std::vector<ShareSite> joint_sites_;
};

std::vector<int> all_player_sites(int num_players);

/// Random channel on `sites` from a Haar-like Stinespring isometry with `rank` Kraus operators.
KrausChannel random_kraus_channel(int q, std::vector<int> sites, int rank, Rng& rng);

/// Applies the code's logical X (its dressing word) to all shares of one uniformly
/// guessed round and leaves the others alone.
AdversaryChannel one_round_corruption(const Scheme& scheme, int rounds);

/// Logical X on every round.
AdversaryChannel all_rounds_corruption(const Scheme& scheme);

/// Identity with probability f, logical X otherwise, every round: each delivered
/// resource has projector fidelity exactly f.
AdversaryChannel fixed_fidelity(const Scheme& scheme, double f);

/// Depolarizing noise of strength p on each listed player, every round.
AdversaryChannel depolarizing_adversary(const Scheme& scheme, double p, const std::vector<int>& players);

/// Independent random channel per round on `players`.
AdversaryChannel random_kraus_adversary(const Scheme& scheme, int rounds, const std::vector<int>& players, int rank,
                                        Rng& rng, std::string id = "random-kraus");

/// Every share of every round replaced by the fixed state `junk` on all players.
AdversaryChannel replacement_adversary(const Scheme& scheme, const Matrix& junk);

}  // namespace qss
