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

#include "qss/protocol.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qss/errors.h"
#include "qss/rng.h"

namespace qss {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::kInteractive:
            return "interactive";
        case Variant::kNonInteractive:
            return "non-interactive";
        case Variant::kAbort:
            return "abort";
        case Variant::kUnboundedAbort:
            return "unbounded-abort";
    }
    return "unknown";
}

Variant parse_variant(const std::string& name) {
    for (Variant v : {Variant::kInteractive, Variant::kNonInteractive, Variant::kAbort, Variant::kUnboundedAbort}) {
        if (variant_name(v) == name) {
            return v;
        }
    }
    throw std::invalid_argument("unknown protocol variant: " + name);
}

std::string final_flag_name(FinalFlag f) {
    switch (f) {
        case FinalFlag::kAccept:
            return "ACCEPT";
        case FinalFlag::kReject:
            return "REJECT";
        case FinalFlag::kAbort:
            return "ABORT";
    }
    return "UNKNOWN";
}

void ProtocolConfig::validate() const {
    if (!scheme) {
        throw std::invalid_argument("protocol config has no scheme");
    }
    if (rounds < 1) {
        throw std::invalid_argument("security parameter S must be at least 1");
    }
    if (!scheme->access().is_authorized(players)) {
        throw std::invalid_argument("accessing set B is not authorized");
    }
    if (secret.dimension() != scheme->dimension() || secret.num_sites() != 1 || !secret.is_pure()) {
        throw std::invalid_argument("secret must be one pure qudit of the scheme dimension");
    }
    if (std::abs(secret.trace() - 1.0) > 1e-10) {
        throw std::invalid_argument("secret is not normalized");
    }
    if (max_rounds < 1) {
        throw std::invalid_argument("round cap must be positive");
    }
}

double Transcript::failure_weight() const {
    if (final != FinalFlag::kAccept || !output) {
        return 0.0;
    }
    return std::max(0.0, 1.0 - fidelity);
}

namespace {

constexpr double kFloor = 1e-14;

bool trivial(TestSelector t) { return t.first == 0 && t.second == 0; }

// Eigenvector of Z^{t1} X^{t2} for eigenvalue w^y (|0> for the trivial selector).
Vector selector_eigenvector(int q, TestSelector t, int y) {
    if (trivial(t)) {
        Vector v = Vector::Zero(q);
        v(0) = 1.0;
        return v;
    }
    Matrix p = spectral_projector(PauliString::single(q, 1, 0, t.first, t.second), y);
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < p.cols(); c++) {
        if (p.col(c).norm() > p.col(best).norm()) {
            best = c;
        }
    }
    Vector v = p.col(best);
    return v / v.norm();
}

struct UseBranch {
    double probability;
    int x0;
    int x1;
    QuantumState output;
    double fidelity;
};

}  // namespace

struct ProtocolRunner::Impl {
    const Scheme& scheme;
    const ProtocolConfig& cfg;
    const AdversaryChannel& adversary;
    int q;
    int n;
    int m;
    std::vector<int> players;
    PauliString x_loc;
    PauliString z_loc;
    std::vector<TestSelector> selectors;
    // words on the (dealer, B) register
    std::vector<PauliString> dealer_words;
    std::vector<PauliString> b_words;
    std::vector<PauliString> test_words;
    // words on the B register
    std::vector<PauliString> l_words;
    std::vector<int> keep_local;
    std::vector<int> keep_b;
    QuantumState resource;
    std::optional<Matrix> projector;
    bool projector_failed = false;

    std::map<const RoundChannel*, QuantumState> local_resource;
    std::map<std::pair<const RoundChannel*, int>, std::vector<double>> joint_dist;
    std::map<std::tuple<const RoundChannel*, int, int>, std::vector<double>> ni_dist;
    std::map<const RoundChannel*, std::vector<UseBranch>> int_use;
    std::map<std::tuple<const RoundChannel*, int, int>, UseBranch> ni_use;
    std::map<const RoundChannel*, double> res_fid;
    std::optional<QuantumState> correlated_joint;

    Impl(const ProtocolConfig& c, const AdversaryChannel& adv, const LogicalOperatorPair& ops)
        : scheme(*c.scheme),
          cfg(c),
          adversary(adv),
          q(c.scheme->dimension()),
          n(c.scheme->num_players()),
          m(static_cast<int>(ops.players.size())),
          players(ops.players),
          x_loc(ops.local(ops.x_l)),
          z_loc(ops.local(ops.z_l)),
          selectors(test_selectors(q)),
          resource(epr_resource(scheme.code())) {
        PauliString id_b = PauliString::identity(q, m);
        for (TestSelector t : selectors) {
            PauliString l = ops.local(ops.observable(t));
            l_words.push_back(l);
            dealer_words.push_back(dealer_observable(q, t).tensor(id_b));
            b_words.push_back(PauliString::identity(q, 1).tensor(l));
            test_words.push_back(local_test_word(scheme, ops, t));
        }
        keep_local.push_back(0);
        for (int p : players) {
            keep_local.push_back(p);
            keep_b.push_back(p);
        }
    }

    int selector_index(TestSelector t) const {
        auto it = std::find(selectors.begin(), selectors.end(), t);
        if (it == selectors.end()) {
            throw std::invalid_argument("test selector outside the test set");
        }
        return static_cast<int>(it - selectors.begin());
    }

    static QuantumState through(QuantumState s, const RoundChannel& ch) {
        for (const KrausChannel& k : ch) {
            s = apply_channel(s, k);
        }
        return s;
    }

    const QuantumState& local_state(const RoundChannel& ch) {
        auto it = local_resource.find(&ch);
        if (it == local_resource.end()) {
            it = local_resource.emplace(&ch, partial_trace(through(resource, ch), keep_local)).first;
        }
        return it->second;
    }

    double fidelity_of_local(const QuantumState& local) {
        if (!projector && !projector_failed) {
            try {
                projector = build_projector(scheme, players).matrix;
            } catch (const ResourceError&) {
                projector_failed = true;
            }
        }
        if (!projector) {
            return std::nan("");
        }
        return (*projector * local.density_matrix()).trace().real();
    }

    double resource_fidelity(const RoundChannel& ch) {
        auto it = res_fid.find(&ch);
        if (it == res_fid.end()) {
            it = res_fid.emplace(&ch, fidelity_of_local(local_state(ch))).first;
        }
        return it->second;
    }

    // P(dealer y, B y') flattened as y * q + y'.
    const std::vector<double>& joint(const RoundChannel& ch, int t_idx) {
        auto key = std::make_pair(&ch, t_idx);
        auto it = joint_dist.find(key);
        if (it != joint_dist.end()) {
            return it->second;
        }
        const QuantumState& rho = local_state(ch);
        std::vector<double> dist(q * q, 0.0);
        std::vector<double> pd = outcome_probabilities(rho, dealer_words[t_idx]);
        for (int y = 0; y < q; y++) {
            if (pd[y] < kFloor) {
                continue;
            }
            Branch b = project_outcome(rho, dealer_words[t_idx], y);
            std::vector<double> pb = outcome_probabilities(b.state, b_words[t_idx]);
            for (int y2 = 0; y2 < q; y2++) {
                dist[y * q + y2] = b.probability * pb[y2];
            }
        }
        return joint_dist.emplace(key, std::move(dist)).first->second;
    }

    QuantumState prepared(const Vector& logical) const {
        QuantumState secret = QuantumState::unchecked_vector(q, 1, logical);
        return QuantumState::basis(q, 1, 0).tensor(encode(scheme.code(), secret));
    }

    // Distribution of B's outcome for the key-prepared test state (t, y).
    const std::vector<double>& ni(const RoundChannel& ch, int t_idx, int y) {
        auto key = std::make_tuple(&ch, t_idx, y);
        auto it = ni_dist.find(key);
        if (it != ni_dist.end()) {
            return it->second;
        }
        QuantumState sent = prepared(selector_eigenvector(q, selectors[t_idx], y));
        QuantumState at_b = partial_trace(through(sent, ch), keep_b);
        return ni_dist.emplace(key, outcome_probabilities(at_b, l_words[t_idx])).first->second;
    }

    UseBranch decode_branch(const QuantumState& b_state, double probability, int x0, int x1) const {
        QuantumState out = decode_logical(b_state, x_loc, z_loc);
        return {probability, x0, x1, out, fidelity(out, cfg.secret)};
    }

    const std::vector<UseBranch>& interactive_use(const RoundChannel& ch) {
        auto it = int_use.find(&ch);
        if (it != int_use.end()) {
            return it->second;
        }
        std::vector<UseBranch> out;
        for (const TeleportBranch& b : teleport_branches(local_state(ch), cfg.secret, x_loc, z_loc)) {
            out.push_back(decode_branch(b.players, b.probability, b.x0, b.x1));
        }
        return int_use.emplace(&ch, std::move(out)).first->second;
    }

    PauliString pad_word(int x0, int x1) const { return x_loc.pow(x0) * z_loc.pow(x1); }

    QuantumState strip(const QuantumState& b_state, int x0, int x1) const {
        return apply_pauli(b_state, pad_word(x0, x1).dagger());
    }

    const UseBranch& keyed_use(const RoundChannel& ch, int x0, int x1) {
        auto key = std::make_tuple(&ch, x0, x1);
        auto it = ni_use.find(key);
        if (it != ni_use.end()) {
            return it->second;
        }
        Vector padded = (PauliString::single(q, 1, 0, 0, x0) * PauliString::single(q, 1, 0, x1, 0)).to_matrix() *
                        cfg.secret.amplitudes();
        QuantumState at_b = partial_trace(through(prepared(padded), ch), keep_b);
        return ni_use.emplace(key, decode_branch(strip(at_b, x0, x1), 1.0, x0, x1)).first->second;
    }

    double test_acceptance(const RoundChannel& ch, Variant v) {
        double total = 0.0;
        for (int ti = 0; ti < static_cast<int>(selectors.size()); ti++) {
            if (v == Variant::kInteractive) {
                const auto& d = joint(ch, ti);
                for (int y = 0; y < q; y++) {
                    total += d[y * q + y];
                }
            } else if (trivial(selectors[ti])) {
                total += ni(ch, ti, 0)[0];
            } else {
                for (int y = 0; y < q; y++) {
                    total += ni(ch, ti, y)[y] / q;
                }
            }
        }
        return total / static_cast<double>(selectors.size());
    }

    double use_failure(const RoundChannel& ch, Variant v) {
        double total = 0.0;
        if (v == Variant::kInteractive) {
            for (const UseBranch& b : interactive_use(ch)) {
                total += b.probability * (1.0 - b.fidelity);
            }
            return total;
        }
        for (int x0 = 0; x0 < q; x0++) {
            for (int x1 = 0; x1 < q; x1++) {
                total += (1.0 - keyed_use(ch, x0, x1).fidelity) / (q * q);
            }
        }
        return total;
    }

    // ---- transcripts for per-round adversaries

    void finish_use(Transcript& tr, RoundRecord& rec, const UseBranch& b) {
        rec.kind = RoundKind::kUse;
        rec.x0 = b.x0;
        rec.x1 = b.x1;
        tr.output = b.output;
        tr.fidelity = b.fidelity;
    }

    Transcript run_interactive(const RoundStrategy& st, Rng& rng) {
        Transcript tr;
        tr.variant = Variant::kInteractive;
        const int S = cfg.rounds;
        tr.use_round = static_cast<int>(rng.uniform_int(S));
        bool all_pass = true;
        for (int i = 0; i < S; i++) {
            const RoundChannel& ch = st.channel_for(i);
            RoundRecord rec;
            rec.index = i;
            rec.resource_fidelity = resource_fidelity(ch);
            if (i == tr.use_round) {
                const auto& branches = interactive_use(ch);
                std::vector<double> probs;
                for (const auto& b : branches) {
                    probs.push_back(b.probability);
                }
                finish_use(tr, rec, branches[rng.categorical(probs)]);
            } else {
                int ti = static_cast<int>(rng.uniform_int(selectors.size()));
                std::size_t k = rng.categorical(joint(ch, ti));
                rec.t = selectors[ti];
                rec.y_expected = static_cast<int>(k) / q;
                rec.y_measured = static_cast<int>(k) % q;
                rec.verdict = rec.y_expected == rec.y_measured ? Verdict::kAccept : Verdict::kReject;
                all_pass = all_pass && rec.verdict == Verdict::kAccept;
            }
            tr.rounds.push_back(rec);
        }
        tr.rounds_consumed = S;
        tr.final = all_pass ? FinalFlag::kAccept : FinalFlag::kReject;
        return tr;
    }

    // B's measurement on a key-prepared test state.
    RoundRecord keyed_test(const RoundChannel& ch, int index, TestSelector t, int y_dealer, int y_b, Rng& rng) {
        RoundRecord rec;
        rec.index = index;
        rec.resource_fidelity = resource_fidelity(ch);
        rec.t = t;
        rec.y_expected = y_b;
        rec.y_measured = static_cast<int>(rng.categorical(ni(ch, selector_index(t), y_dealer)));
        rec.verdict = rec.y_expected == rec.y_measured ? Verdict::kAccept : Verdict::kReject;
        return rec;
    }

    Transcript run_keyed(const RoundStrategy& st, Variant v, Rng& rng) {
        Transcript tr;
        tr.variant = v;
        const int S = cfg.rounds;
        KeyMaterial key = KeyMaterial::random(S, q, selectors, rng);
        std::vector<KeyShare> shares = share_key(key, scheme.access(), rng);
        std::vector<KeyShare> held;
        for (int p : players) {
            held.push_back(shares[p - 1]);
        }
        KeyMaterial b_key = reconstruct_key(held, scheme.access(), S, q);
        tr.use_round = key.use_round;
        bool all_pass = true;
        for (int i = 0; i < S; i++) {
            const RoundChannel& ch = st.channel_for(i);
            if (i == key.use_round) {
                RoundRecord rec;
                rec.index = i;
                rec.resource_fidelity = resource_fidelity(ch);
                if (b_key.x0 != key.x0 || b_key.x1 != key.x1) {
                    throw ProtocolError("reconstructed pad differs from the dealer's");
                }
                finish_use(tr, rec, keyed_use(ch, key.x0, key.x1));
                tr.rounds.push_back(rec);
                if (v == Variant::kAbort) {
                    break;
                }
                continue;
            }
            RoundRecord rec = keyed_test(ch, i, b_key.t[i], key.y[i], b_key.y[i], rng);
            tr.rounds.push_back(rec);
            if (rec.verdict == Verdict::kReject) {
                all_pass = false;
                if (v == Variant::kAbort) {
                    tr.final = FinalFlag::kAbort;
                    tr.rounds_consumed = i + 1;
                    return tr;
                }
            }
        }
        tr.rounds_consumed = v == Variant::kAbort ? static_cast<long long>(tr.rounds.size()) : S;
        tr.final = all_pass ? FinalFlag::kAccept : FinalFlag::kReject;
        return tr;
    }

    Transcript run_unbounded(const RoundStrategy& st, Rng& rng) {
        Transcript tr;
        tr.variant = Variant::kUnboundedAbort;
        for (long long i = 0;; i++) {
            if (i >= cfg.max_rounds) {
                throw ProtocolError("unbounded protocol exceeded the round cap of " + std::to_string(cfg.max_rounds));
            }
            const RoundChannel& ch = st.channel_for(static_cast<int>(std::min<long long>(i, 1 << 30)));
            bool use = rng.uniform_int(cfg.rounds) == 0;
            if (use) {
                int x0 = static_cast<int>(rng.uniform_int(q));
                int x1 = static_cast<int>(rng.uniform_int(q));
                RoundRecord rec;
                rec.index = static_cast<int>(i);
                rec.resource_fidelity = resource_fidelity(ch);
                finish_use(tr, rec, keyed_use(ch, x0, x1));
                tr.rounds.push_back(rec);
                tr.use_round = static_cast<int>(i);
                tr.final = FinalFlag::kAccept;
                tr.rounds_consumed = i + 1;
                return tr;
            }
            TestSelector t = selectors[rng.uniform_int(selectors.size())];
            int y = trivial(t) ? 0 : static_cast<int>(rng.uniform_int(q));
            RoundRecord rec = keyed_test(ch, static_cast<int>(i), t, y, y, rng);
            tr.rounds.push_back(rec);
            if (rec.verdict == Verdict::kReject) {
                tr.final = FinalFlag::kAbort;
                tr.rounds_consumed = i + 1;
                return tr;
            }
        }
    }

    // ---- correlated adversaries: all rounds held in one joint register

    struct JointLayout {
        // per round: offset of the round's block in the joint register before reduction
        std::vector<int> offset;
        std::vector<std::vector<int>> labels;  // players in block order (B first, then extras)
        int total = 0;
        std::vector<int> channel_sites;
        std::vector<int> keep;  // dealer (if any) and B of every round, round order
    };

    JointLayout layout(bool with_dealer) const {
        const int S = cfg.rounds;
        JointLayout lay;
        lay.labels.assign(S, players);
        for (const ShareSite& s : adversary.joint_sites()) {
            if (s.round >= S) {
                throw std::invalid_argument("correlated channel addresses a round beyond S");
            }
            auto& l = lay.labels[s.round];
            if (std::find(l.begin(), l.end(), s.player) == l.end()) {
                l.push_back(s.player);
            }
        }
        const int d = with_dealer ? 1 : 0;
        for (int i = 0; i < S; i++) {
            lay.offset.push_back(lay.total);
            for (int k = 0; k < d + m; k++) {
                lay.keep.push_back(lay.total + k);
            }
            lay.total += d + static_cast<int>(lay.labels[i].size());
        }
        for (const ShareSite& s : adversary.joint_sites()) {
            const auto& l = lay.labels[s.round];
            int pos = static_cast<int>(std::find(l.begin(), l.end(), s.player) - l.begin());
            lay.channel_sites.push_back(lay.offset[s.round] + d + pos);
        }
        checked_dim(q, 2 * lay.total);
        return lay;
    }

    QuantumState apply_joint(const JointLayout& lay, const std::vector<QuantumState>& blocks) const {
        QuantumState joint = blocks[0];
        for (std::size_t i = 1; i < blocks.size(); i++) {
            joint = joint.tensor(blocks[i]);
        }
        joint = apply_channel(joint.as_mixed(), adversary.joint().on_sites(lay.channel_sites));
        return partial_trace(joint, lay.keep);
    }

    std::vector<int> block_sites(int round, int width) const {
        std::vector<int> s;
        for (int k = 0; k < width; k++) {
            s.push_back(round * width + k);
        }
        return s;
    }

    const QuantumState& interactive_joint() {
        if (!correlated_joint) {
            JointLayout lay = layout(true);
            std::vector<QuantumState> blocks;
            for (int i = 0; i < cfg.rounds; i++) {
                std::vector<int> keep = {0};
                keep.insert(keep.end(), lay.labels[i].begin(), lay.labels[i].end());
                blocks.push_back(partial_trace(resource, keep));
            }
            correlated_joint = apply_joint(lay, blocks);
        }
        return *correlated_joint;
    }

    QuantumState keyed_joint(const std::vector<Vector>& logical) const {
        JointLayout lay = layout(false);
        std::vector<QuantumState> blocks;
        for (int i = 0; i < cfg.rounds; i++) {
            blocks.push_back(partial_trace(prepared(logical[i]), lay.labels[i]));
        }
        return apply_joint(lay, blocks);
    }

    PauliString on_block(const PauliString& w, int round, int width) const {
        return w.embed(cfg.rounds * width, block_sites(round, width));
    }

    Vector padded_secret(int x0, int x1) const {
        return (PauliString::single(q, 1, 0, 0, x0) * PauliString::single(q, 1, 0, x1, 0)).to_matrix() *
               cfg.secret.amplitudes();
    }

    Transcript run_correlated(Variant v, Rng& rng) {
        const int S = cfg.rounds;
        const int width_i = 1 + m;
        Transcript tr;
        tr.variant = v;
        tr.rounds_consumed = S;
        bool all_pass = true;
        if (v == Variant::kInteractive) {
            QuantumState state = interactive_joint();
            tr.use_round = static_cast<int>(rng.uniform_int(S));
            std::vector<RoundRecord> recs(S);
            for (int i = 0; i < S; i++) {
                recs[i].index = i;
                recs[i].resource_fidelity = fidelity_of_local(partial_trace(state, block_sites(i, width_i)));
            }
            for (int i = 0; i < S; i++) {
                if (i == tr.use_round) {
                    continue;
                }
                int ti = static_cast<int>(rng.uniform_int(selectors.size()));
                Measurement md = measure_observable(state, on_block(dealer_words[ti], i, width_i), rng);
                Measurement mb = measure_observable(md.post, on_block(b_words[ti], i, width_i), rng);
                state = mb.post;
                recs[i].t = selectors[ti];
                recs[i].y_expected = md.outcome;
                recs[i].y_measured = mb.outcome;
                recs[i].verdict = md.outcome == mb.outcome ? Verdict::kAccept : Verdict::kReject;
                all_pass = all_pass && recs[i].verdict == Verdict::kAccept;
            }
            QuantumState local = partial_trace(state, block_sites(tr.use_round, width_i));
            auto branches = teleport_branches(local, cfg.secret, x_loc, z_loc);
            std::vector<double> probs;
            for (const auto& b : branches) {
                probs.push_back(b.probability);
            }
            const TeleportBranch& b = branches[rng.categorical(probs)];
            finish_use(tr, recs[tr.use_round], decode_branch(b.players, b.probability, b.x0, b.x1));
            tr.rounds = recs;
            tr.final = all_pass ? FinalFlag::kAccept : FinalFlag::kReject;
            return tr;
        }
        if (v != Variant::kNonInteractive) {
            throw std::invalid_argument("correlated adversaries are supported for the interactive and "
                                        "non-interactive variants");
        }
        KeyMaterial key = KeyMaterial::random(S, q, selectors, rng);
        std::vector<KeyShare> shares = share_key(key, scheme.access(), rng);
        std::vector<KeyShare> held;
        for (int p : players) {
            held.push_back(shares[p - 1]);
        }
        KeyMaterial b_key = reconstruct_key(held, scheme.access(), S, q);
        std::vector<Vector> logical;
        for (int i = 0; i < S; i++) {
            logical.push_back(i == key.use_round ? padded_secret(key.x0, key.x1)
                                                 : selector_eigenvector(q, key.t[i], key.y[i]));
        }
        QuantumState state = keyed_joint(logical);
        tr.use_round = key.use_round;
        std::vector<RoundRecord> recs(S);
        for (int i = 0; i < S; i++) {
            recs[i].index = i;
            recs[i].resource_fidelity = std::nan("");
            if (i == key.use_round) {
                continue;
            }
            int ti = selector_index(b_key.t[i]);
            Measurement mb = measure_observable(state, on_block(l_words[ti], i, m), rng);
            state = mb.post;
            recs[i].t = b_key.t[i];
            recs[i].y_expected = b_key.y[i];
            recs[i].y_measured = mb.outcome;
            recs[i].verdict = mb.outcome == b_key.y[i] ? Verdict::kAccept : Verdict::kReject;
            all_pass = all_pass && recs[i].verdict == Verdict::kAccept;
        }
        QuantumState at_b = partial_trace(state, block_sites(key.use_round, m));
        finish_use(tr, recs[key.use_round], decode_branch(strip(at_b, key.x0, key.x1), 1.0, key.x0, key.x1));
        tr.rounds = recs;
        tr.final = all_pass ? FinalFlag::kAccept : FinalFlag::kReject;
        return tr;
    }

    // Unnormalized projection onto one outcome of a word.
    static QuantumState project(const QuantumState& s, const PauliString& w, int y) {
        Matrix p = spectral_projector(w, y);
        Matrix rho = s.density_matrix();
        return QuantumState::unchecked_density(s.dimension(), s.num_sites(), p * rho * p);
    }

    double correlated_failure() {
        const int S = cfg.rounds;
        if (S > 3) {
            throw ResourceError("exact evaluation of correlated adversaries needs S <= 3; use Monte Carlo");
        }
        const int nt = static_cast<int>(selectors.size());
        double total = 0.0;
        if (cfg.variant == Variant::kInteractive) {
            const int width_i = 1 + m;
            const QuantumState& joint0 = interactive_joint();
            for (int r = 0; r < S; r++) {
                std::vector<int> tests;
                for (int i = 0; i < S; i++) {
                    if (i != r) {
                        tests.push_back(i);
                    }
                }
                long long combos = 1;
                for (std::size_t k = 0; k < tests.size(); k++) {
                    combos *= nt;
                }
                for (long long c = 0; c < combos; c++) {
                    QuantumState s = joint0;
                    long long rest = c;
                    for (int i : tests) {
                        int ti = static_cast<int>(rest % nt);
                        rest /= nt;
                        s = project(s, on_block(test_words[ti], i, width_i), 0);
                    }
                    QuantumState local = partial_trace(s, block_sites(r, width_i));
                    double weight = local.trace();
                    if (weight < kFloor) {
                        continue;
                    }
                    double fail = 0.0;
                    for (const auto& b : teleport_branches(local.normalized(), cfg.secret, x_loc, z_loc)) {
                        fail += b.probability * (1.0 - decode_branch(b.players, b.probability, b.x0, b.x1).fidelity);
                    }
                    total += weight * fail / (S * static_cast<double>(combos));
                }
            }
            return total;
        }
        if (cfg.variant != Variant::kNonInteractive) {
            throw std::invalid_argument("correlated adversaries are supported for the interactive and "
                                        "non-interactive variants");
        }
        // enumerate r, then (t, y) for every test round, then the pad
        for (int r = 0; r < S; r++) {
            std::vector<int> tests;
            for (int i = 0; i < S; i++) {
                if (i != r) {
                    tests.push_back(i);
                }
            }
            long long combos = 1;
            for (std::size_t k = 0; k < tests.size(); k++) {
                combos *= nt * q;
            }
            for (long long c = 0; c < combos; c++) {
                std::vector<int> ti(S, 0);
                std::vector<int> ys(S, 0);
                double weight_key = 1.0;
                long long rest = c;
                bool skip = false;
                for (int i : tests) {
                    ti[i] = static_cast<int>(rest % nt);
                    rest /= nt;
                    ys[i] = static_cast<int>(rest % q);
                    rest /= q;
                    if (trivial(selectors[ti[i]])) {
                        skip = skip || ys[i] != 0;
                        weight_key /= nt;
                    } else {
                        weight_key /= nt * q;
                    }
                }
                if (skip) {
                    continue;
                }
                for (int x0 = 0; x0 < q; x0++) {
                    for (int x1 = 0; x1 < q; x1++) {
                        std::vector<Vector> logical(S);
                        for (int i = 0; i < S; i++) {
                            logical[i] = i == r ? padded_secret(x0, x1)
                                                : selector_eigenvector(q, selectors[ti[i]], ys[i]);
                        }
                        QuantumState s = keyed_joint(logical);
                        for (int i : tests) {
                            s = project(s, on_block(l_words[ti[i]], i, m), ys[i]);
                        }
                        QuantumState at_b = partial_trace(s, block_sites(r, m));
                        double weight = at_b.trace();
                        if (weight < kFloor) {
                            continue;
                        }
                        UseBranch u = decode_branch(strip(at_b.normalized(), x0, x1), 1.0, x0, x1);
                        total += weight_key * weight * (1.0 - u.fidelity) / (S * static_cast<double>(q * q));
                    }
                }
            }
        }
        return total;
    }
};

ProtocolRunner::ProtocolRunner(ProtocolConfig cfg, AdversaryChannel adversary)
    : cfg_(std::move(cfg)), adversary_(std::move(adversary)) {
    cfg_.validate();
    adversary_.validate(cfg_.scheme->dimension(), cfg_.scheme->num_players());
    ops_ = cfg_.scheme->logical_ops(cfg_.players);
    cfg_.players = ops_.players;
    if (adversary_.mode() == AdversaryChannel::Mode::kCorrelated &&
        cfg_.variant != Variant::kInteractive && cfg_.variant != Variant::kNonInteractive) {
        throw std::invalid_argument("correlated adversaries are supported for the interactive and "
                                    "non-interactive variants");
    }
    impl_ = std::make_unique<Impl>(cfg_, adversary_, ops_);
}

ProtocolRunner::~ProtocolRunner() = default;

Transcript ProtocolRunner::run(Rng& rng) {
    if (adversary_.mode() == AdversaryChannel::Mode::kCorrelated) {
        return impl_->run_correlated(cfg_.variant, rng);
    }
    const auto& weights = adversary_.weights();
    int k = weights.size() > 1 ? static_cast<int>(rng.categorical(weights)) : 0;
    const RoundStrategy& st = adversary_.strategies()[k];
    Transcript tr;
    switch (cfg_.variant) {
        case Variant::kInteractive:
            tr = impl_->run_interactive(st, rng);
            break;
        case Variant::kNonInteractive:
        case Variant::kAbort:
            tr = impl_->run_keyed(st, cfg_.variant, rng);
            break;
        case Variant::kUnboundedAbort:
            tr = impl_->run_unbounded(st, rng);
            break;
    }
    tr.strategy = k;
    return tr;
}

Transcript ProtocolRunner::run() {
    Rng rng(cfg_.seed);
    return run(rng);
}

double ProtocolRunner::test_acceptance(const RoundChannel& ch) { return impl_->test_acceptance(ch, cfg_.variant); }

double ProtocolRunner::use_failure(const RoundChannel& ch) { return impl_->use_failure(ch, cfg_.variant); }

double ProtocolRunner::resource_fidelity(const RoundChannel& ch) { return impl_->resource_fidelity(ch); }

double ProtocolRunner::correlated_failure() {
    if (adversary_.mode() != AdversaryChannel::Mode::kCorrelated) {
        throw std::invalid_argument("adversary is not correlated");
    }
    return impl_->correlated_failure();
}

namespace {

Transcript run_checked(const ProtocolConfig& cfg, const AdversaryChannel& adversary, Variant expected) {
    if (cfg.variant != expected) {
        throw std::invalid_argument("config variant is " + variant_name(cfg.variant) + ", expected " +
                                    variant_name(expected));
    }
    ProtocolRunner runner(cfg, adversary);
    return runner.run();
}

}  // namespace

Transcript run_interactive(const ProtocolConfig& cfg, const AdversaryChannel& adversary) {
    return run_checked(cfg, adversary, Variant::kInteractive);
}

Transcript run_noninteractive(const ProtocolConfig& cfg, const AdversaryChannel& adversary) {
    return run_checked(cfg, adversary, Variant::kNonInteractive);
}

Transcript run_abort(const ProtocolConfig& cfg, const AdversaryChannel& adversary) {
    return run_checked(cfg, adversary, Variant::kAbort);
}

Transcript run_unbounded_abort(const ProtocolConfig& cfg, const AdversaryChannel& adversary) {
    return run_checked(cfg, adversary, Variant::kUnboundedAbort);
}

Transcript run_protocol(const ProtocolConfig& cfg, const AdversaryChannel& adversary) {
    ProtocolRunner runner(cfg, adversary);
    return runner.run();
}

}  // namespace qss
