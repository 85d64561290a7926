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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qss/access.h"
#include "qss/adversary.h"
#include "qss/shamir.h"
#include "qss/state.h"

namespace qss {

class Rng;

enum class Variant { kInteractive, kNonInteractive, kAbort, kUnboundedAbort };

std::string variant_name(Variant v);
/// "interactive", "non-interactive", "abort", "unbounded-abort".
Variant parse_variant(const std::string& name);

struct ProtocolConfig {
    std::shared_ptr<const Scheme> scheme;
    /// The accessing set B (player labels).
    std::vector<int> players;
    /// Security parameter S.
    int rounds = 1;
    Variant variant = Variant::kInteractive;
    QuantumState secret = QuantumState::basis(2, 1, 0);
    std::uint64_t seed = 0;
    /// Runaway guard for the unbounded variant.
    long long max_rounds = 1000000;

    /// Throws std::invalid_argument on S < 1, unauthorized B, or a bad secret.
    void validate() const;
};

enum class RoundKind { kTest, kUse };
enum class Verdict { kNone, kAccept, kReject };
enum class FinalFlag { kAccept, kReject, kAbort };

std::string final_flag_name(FinalFlag f);

struct RoundRecord {
    int index = 0;
    RoundKind kind = RoundKind::kTest;
    TestSelector t{0, 0};
    int y_expected = 0;
    int y_measured = 0;
    Verdict verdict = Verdict::kNone;
    /// Bell outcome (interactive) or pad (key based variants) of the use round.
    int x0 = 0;
    int x1 = 0;
    /// Projector fidelity of the resource the adversary let through in this round.
    double resource_fidelity = 1.0;
};

struct Transcript {
    Variant variant = Variant::kInteractive;
    /// Mixture component the adversary drew (0 for single-strategy adversaries).
    int strategy = 0;
    /// Position of the use round, -1 if it never happened.
    int use_round = -1;
    std::vector<RoundRecord> rounds;
    FinalFlag final = FinalFlag::kReject;
    std::optional<QuantumState> output;
    double fidelity = 0.0;
    long long rounds_consumed = 0;

    /// 1 - <psi|rho_out|psi> on ACCEPT with an output, 0 otherwise.
    double failure_weight() const;
};

/// Runs one protocol configuration against one adversary many times. Per-round dense
/// results (post-channel states, outcome distributions, decoded outputs) are memoised,
/// so repeated runs cost one sampling pass each.
class ProtocolRunner {
   public:
    ProtocolRunner(ProtocolConfig cfg, AdversaryChannel adversary);
    ~ProtocolRunner();
    ProtocolRunner(const ProtocolRunner&) = delete;
    ProtocolRunner& operator=(const ProtocolRunner&) = delete;

    const ProtocolConfig& config() const { return cfg_; }
    const AdversaryChannel& adversary() const { return adversary_; }
    const LogicalOperatorPair& logical_ops() const { return ops_; }

    /// One run drawing all randomness from `rng`.
    Transcript run(Rng& rng);
    /// One run seeded from the config.
    Transcript run();

    // Exact per-round quantities for a given round channel (per-round adversaries).
    /// Probability that a test round passes, averaged over the test set and keys.
    double test_acceptance(const RoundChannel& ch);
    /// Average of 1 - fidelity of the decoded output if this round is the use round.
    double use_failure(const RoundChannel& ch);
    /// Tr(Pi rho) of the post-channel resource on dealer and B.
    double resource_fidelity(const RoundChannel& ch);
    /// Exact p_fail for a correlated adversary (S <= 3, within the dense cap).
    double correlated_failure();

   private:
    struct Impl;
    ProtocolConfig cfg_;
    AdversaryChannel adversary_;
    LogicalOperatorPair ops_;
    std::unique_ptr<Impl> impl_;
};

Transcript run_interactive(const ProtocolConfig& cfg, const AdversaryChannel& adversary);
Transcript run_noninteractive(const ProtocolConfig& cfg, const AdversaryChannel& adversary);
Transcript run_abort(const ProtocolConfig& cfg, const AdversaryChannel& adversary);
Transcript run_unbounded_abort(const ProtocolConfig& cfg, const AdversaryChannel& adversary);
/// Dispatches on cfg.variant.
Transcript run_protocol(const ProtocolConfig& cfg, const AdversaryChannel& adversary);

}  // namespace qss
