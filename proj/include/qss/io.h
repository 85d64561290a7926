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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qss/security.h"

namespace qss {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input file.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kArtifactVersion = "0.1.0";

/// 64-bit FNV-1a, used for config hashes in output headers.
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// Fixed-precision decimal used in every text output so reruns are byte-identical.
std::string format_real(double v, int digits = 12);

// Graph files: one edge per line, "u v" or "u v w" with 1-based player labels;
// blank lines and '#' comments are ignored.
Graph parse_graph_text(const std::string& text, int num_vertices = 0);
Graph load_graph_file(const std::filesystem::path& path, int num_vertices = 0);
std::string graph_to_text(const Graph& g);

/// Player-label word notation accepted back by PauliString::parse_labels.
std::string label_string(const PauliString& word);

// Scheme JSON:
//   {"name", "q", "players", "edges": [[u, v] | [u, v, w] ...] or "graph_file",
//    "dressing": "Z1 Z2 ...", "access": {"threshold": k} | {"minimal_sets": [[...]]},
//    "logical_ops": [{"players": [...], "x": "...", "z": "..."}]}
// or {"builtin": "threshold-3-5"}.
Scheme scheme_from_json(const Json& j, const std::filesystem::path& base_dir = {});
Json scheme_to_json(const Scheme& scheme);
Scheme load_scheme(const std::filesystem::path& path);

/// Secret as a list of amplitudes ([re, im] pairs or reals), or {"basis": i}.
QuantumState secret_from_json(const Json& j, int q);
/// Pure states as [re, im] pairs in site order; mixed states as rows of pairs.
Json state_to_json(const QuantumState& s);

// Adversary spec: {"type": "identity" | "one-round-corruption" | "all-rounds-corruption"
//   | "fixed-fidelity" (f) | "depolarizing" (p, players) | "random-kraus" (players,
//   rank, seed) | "replacement" (seed), "id": optional}. `rounds` sizes the
// round-dependent types.
AdversaryChannel adversary_from_json(const Json& j, const Scheme& scheme, int rounds);

using SchemePtr = std::shared_ptr<const Scheme>;

/// The "scheme" field: a built-in name, an inline object, or a path relative to `base_dir`.
SchemePtr scheme_field(const Json& j, const std::filesystem::path& base_dir);

struct RunConfig {
    ProtocolConfig protocol;
    Json adversary;
    std::optional<std::uint64_t> seed;
};

struct SweepConfig {
    SchemePtr scheme;
    std::vector<int> players;
    std::vector<Variant> variants;
    std::vector<int> rounds;
    std::vector<Json> adversaries;
    Json secret;
    long long trials = 0;
    std::optional<std::uint64_t> seed;
    // Optional fixed-fidelity sweep of the unbounded variant.
    std::vector<int> fidelity_rounds;
    std::vector<double> fidelity_values;
};

struct SpectrumConfig {
    std::vector<int> rounds;
    std::vector<QMode> modes;
    int q = 2;
    /// Dense cross-check system (empty scheme: skipped).
    SchemePtr scheme;
    std::vector<int> players;
};

struct SecrecyConfig {
    SchemePtr scheme;
    int secrets = 50;
    std::optional<std::uint64_t> seed;
};

struct AcceptanceLawConfig {
    SchemePtr scheme;
    std::vector<int> players;
    int samples = 1000;
    std::optional<std::uint64_t> seed;
};

Json load_json_file(const std::filesystem::path& path);

RunConfig run_config_from_json(const Json& j, const std::filesystem::path& base_dir);
SweepConfig sweep_config_from_json(const Json& j, const std::filesystem::path& base_dir);
SpectrumConfig spectrum_config_from_json(const Json& j, const std::filesystem::path& base_dir);
SecrecyConfig secrecy_config_from_json(const Json& j, const std::filesystem::path& base_dir);
AcceptanceLawConfig acceptance_law_config_from_json(const Json& j, const std::filesystem::path& base_dir);

/// Header line shared by every output file.
Json output_header(const std::string& command, const Json& config, std::uint64_t seed);

Json round_to_json(const RoundRecord& r);
Json transcript_summary_json(const Transcript& tr);
/// Header line, one line per round, then the summary line.
std::string transcript_jsonl(const Transcript& tr, const Json& header);

std::vector<std::string> security_csv_columns();
std::string security_csv_row(const SecurityReport& rep);
Json security_to_json(const SecurityReport& rep);

Json spectrum_to_json(const QSpectrum& spec);
Json dense_check_to_json(const QDenseCheck& c);
Json acceptance_law_to_json(const AcceptanceLawReport& rep);
Json unbounded_cell_to_json(const UnboundedCell& c);

Json key_share_to_json(const KeyShare& s);
KeyShare key_share_from_json(const Json& j);

}  // namespace qss
