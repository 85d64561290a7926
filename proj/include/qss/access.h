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

#include <map>
#include <string>
#include <vector>

#include "qss/access_structure.h"
#include "qss/graph_code.h"
#include "qss/pauli.h"
#include "qss/shamir.h"
#include "qss/state.h"

namespace qss {

/// Logical Weyl pair acting only on the players of B. Words live on the full player
/// register (player j on site j-1).
struct LogicalOperatorPair {
    std::vector<int> players;
    PauliString x_l;
    PauliString z_l;

    /// Z_L^{t1} X_L^{t2}.
    PauliString observable(TestSelector t) const;
    /// Restriction of a player-register word to the sites of B, in label order.
    PauliString local(const PauliString& word) const;
};

/// Largest deviation of |x_l|i_L> - |i+1_L>| and |z_l|i_L> - w^i|i_L>| over the basis.
double logical_action_error(const GraphCode& code, const PauliString& x_l, const PauliString& z_l);

/// Test set per round: {X, Z} for qubits, all of F_q^2 otherwise.
std::vector<TestSelector> test_selectors(int q);

/// (Z^{t1} X^{t2})^T, the dealer's half of a test.
PauliString dealer_observable(int q, TestSelector t);

class Scheme {
   public:
    /// Registered pairs are validated; every other minimal authorized set gets a pair by
    /// exhaustive search over words on the set, lowest weight first.
    Scheme(std::string name, GraphCode code, AccessStructure access, std::vector<LogicalOperatorPair> registered = {});

    const std::string& name() const { return name_; }
    const GraphCode& code() const { return code_; }
    const AccessStructure& access() const { return access_; }
    int dimension() const { return code_.dimension(); }
    int num_players() const { return code_.num_players(); }

    /// Pair for an authorized set; throws NoOperatorsError otherwise.
    LogicalOperatorPair logical_ops(const std::vector<int>& players) const;
    /// True when the pair for this minimal set was given rather than searched.
    bool is_registered(const std::vector<int>& minimal_set) const;

   private:
    std::string name_;
    GraphCode code_;
    AccessStructure access_;
    std::map<std::vector<int>, LogicalOperatorPair> pairs_;
    std::vector<std::vector<int>> registered_;
};

/// Lowest-weight logical pair on `players`, deterministic; throws NoOperatorsError.
LogicalOperatorPair search_logical_ops(const GraphCode& code, std::vector<int> players);

struct StabilizerDecomposition {
    TestSelector t;
    /// D_t (x) L_t^dagger on (dealer, players).
    PauliString observable;
    /// Exponent of each resource generator (index 0 = K_d); empty if no product matched.
    std::vector<int> exponents;
    bool symbolic = false;
    /// Stabilizes the resource, symbolically or numerically.
    bool verified = false;

    std::string product_str() const;
};

/// One entry per nontrivial test selector.
std::vector<StabilizerDecomposition> test_operator_identity(const Scheme& scheme, const std::vector<int>& players);

struct EntanglementProjector {
    std::vector<int> players;
    /// Terms D_t (x) L_t^dagger on the local (dealer, B) register; matrix = mean of terms.
    std::vector<PauliString> words;
    Matrix matrix;
};

struct AcceptancePovm {
    std::vector<int> players;
    Matrix accept;
    Matrix reject;
};

EntanglementProjector build_projector(const Scheme& scheme, const std::vector<int>& players);
AcceptancePovm build_acceptance_povm(const Scheme& scheme, const std::vector<int>& players);

/// Local test observable for one selector: D_t (x) L_t^dagger on (dealer, B).
PauliString local_test_word(const Scheme& scheme, const LogicalOperatorPair& ops, TestSelector t);

/// Max pairwise trace distance between the reduced encodings of `secrets` on an
/// unauthorized set. Throws std::invalid_argument for an authorized set.
double secrecy_check(const Scheme& scheme, const std::vector<int>& players, const std::vector<QuantumState>& secrets);

}  // namespace qss
