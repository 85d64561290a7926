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

#include "qss/io.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qss/errors.h"
#include "qss/rng.h"
#include "qss/schemes.h"

namespace qss {

namespace fs = std::filesystem;

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object()) {
        throw ConfigError("expected a JSON object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(std::string("missing field '") + key + "'");
    }
    return *it;
}

template <typename T>
T get_as(const Json& j, const char* key) {
    try {
        return require(j, key).get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) {
        return fallback;
    }
    return get_as<T>(j, key);
}

std::optional<std::uint64_t> optional_seed(const Json& j) {
    if (!j.contains("seed")) {
        return std::nullopt;
    }
    return get_as<std::uint64_t>(j, "seed");
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<int> all_players(const Scheme& s) {
    std::vector<int> out;
    for (int j = 1; j <= s.num_players(); j++) {
        out.push_back(j);
    }
    return out;
}

Json complex_pair(Complex c) { return Json::array({c.real(), c.imag()}); }

// Wraps library validation errors in the input so they map to the malformed-input code.
template <typename F>
auto as_config(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_real(double v, int digits) {
    if (v == 0.0) {
        v = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

Graph parse_graph_text(const std::string& text, int num_vertices) {
    std::vector<std::array<int, 3>> edges;
    int max_label = 0;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        std::vector<long long> nums;
        std::string tok;
        while (fields >> tok) {
            try {
                std::size_t used = 0;
                nums.push_back(std::stoll(tok, &used));
                if (used != tok.size()) {
                    throw std::invalid_argument(tok);
                }
            } catch (const std::exception&) {
                throw ConfigError("graph line " + std::to_string(line_no) + ": bad token '" + tok + "'");
            }
        }
        if (nums.empty()) {
            continue;
        }
        if (nums.size() != 2 && nums.size() != 3) {
            throw ConfigError("graph line " + std::to_string(line_no) + ": expected 'u v' or 'u v w'");
        }
        if (nums[0] < 1 || nums[1] < 1 || nums[0] > 64 || nums[1] > 64) {
            throw ConfigError("graph line " + std::to_string(line_no) + ": labels start at 1");
        }
        int w = nums.size() == 3 ? static_cast<int>(nums[2]) : 1;
        edges.push_back({static_cast<int>(nums[0]), static_cast<int>(nums[1]), w});
        max_label = std::max<int>(max_label, std::max(nums[0], nums[1]));
    }
    int n = num_vertices > 0 ? num_vertices : max_label;
    if (max_label > n) {
        throw ConfigError("graph label exceeds the vertex count");
    }
    if (n == 0) {
        throw ConfigError("empty graph without a vertex count");
    }
    return as_config([&] {
        Graph g(n);
        for (const auto& e : edges) {
            g.add_edge(e[0] - 1, e[1] - 1, e[2]);
        }
        return g;
    });
}

Graph load_graph_file(const fs::path& path, int num_vertices) { return parse_graph_text(read_file(path), num_vertices); }

std::string graph_to_text(const Graph& g) {
    std::string out;
    for (const auto& e : g.edges()) {
        out += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1);
        if (e.weight != 1) {
            out += " " + std::to_string(e.weight);
        }
        out += "\n";
    }
    return out;
}

std::string label_string(const PauliString& word) {
    std::vector<std::string> tokens;
    if (word.phase_exp() != 0) {
        tokens.push_back("w^" + std::to_string(word.phase_exp()));
    }
    for (int s = 0; s < word.num_sites(); s++) {
        auto tok = [&](char kind, int e) {
            std::string t = kind + std::to_string(s + 1);
            if (e != 1) {
                t += "^" + std::to_string(e);
            }
            tokens.push_back(t);
        };
        if (word.z(s) != 0) {
            tok('Z', word.z(s));
        }
        if (word.x(s) != 0) {
            tok('X', word.x(s));
        }
    }
    std::string out;
    for (const auto& t : tokens) {
        out += (out.empty() ? "" : " ") + t;
    }
    return out;
}

Scheme scheme_from_json(const Json& j, const fs::path& base_dir) {
    if (j.is_object() && j.contains("builtin")) {
        return as_config([&] { return builtin_scheme(get_as<std::string>(j, "builtin")); });
    }
    const int q = get_as<int>(j, "q");
    if (!is_prime(q)) {
        throw ConfigError("q must be prime");
    }
    const int n = get_as<int>(j, "players");
    if (n < 1 || n > 20) {
        throw ConfigError("players must be between 1 and 20");
    }
    Graph graph(n);
    if (j.contains("graph_file")) {
        graph = load_graph_file(base_dir / get_as<std::string>(j, "graph_file"), n);
    } else {
        for (const auto& e : require(j, "edges")) {
            if (!e.is_array() || (e.size() != 2 && e.size() != 3)) {
                throw ConfigError("edges are [u, v] or [u, v, w]");
            }
            try {
                int u = e[0].get<int>();
                int v = e[1].get<int>();
                int w = e.size() == 3 ? e[2].get<int>() : 1;
                if (u < 1 || v < 1 || u > n || v > n) {
                    throw ConfigError("edge label out of range");
                }
                as_config([&] {
                    graph.add_edge(u - 1, v - 1, w);
                    return 0;
                });
            } catch (const Json::exception&) {
                throw ConfigError("edge entries must be integers");
            }
        }
    }
    const Json& access_j = require(j, "access");
    return as_config([&] {
        PauliString dressing = PauliString::parse_labels(get_as<std::string>(j, "dressing"), q, n);
        AccessStructure access = access_j.contains("threshold")
                                     ? AccessStructure::threshold(get_as<int>(access_j, "threshold"), n)
                                     : AccessStructure::from_minimal_sets(
                                           n, get_as<std::vector<std::vector<int>>>(access_j, "minimal_sets"));
        std::vector<LogicalOperatorPair> pairs;
        if (j.contains("logical_ops")) {
            for (const auto& p : require(j, "logical_ops")) {
                pairs.push_back({get_as<std::vector<int>>(p, "players"),
                                 PauliString::parse_labels(get_as<std::string>(p, "x"), q, n),
                                 PauliString::parse_labels(get_as<std::string>(p, "z"), q, n)});
            }
        }
        return Scheme(get_or<std::string>(j, "name", "custom"), GraphCode(q, graph, dressing), access, pairs);
    });
}

Json scheme_to_json(const Scheme& scheme) {
    Json j;
    j["name"] = scheme.name();
    j["q"] = scheme.dimension();
    j["players"] = scheme.num_players();
    Json edges = Json::array();
    for (const auto& e : scheme.code().graph().edges()) {
        Json edge = Json::array({e.u + 1, e.v + 1});
        if (e.weight != 1) {
            edge.push_back(e.weight);
        }
        edges.push_back(edge);
    }
    j["edges"] = edges;
    j["dressing"] = label_string(scheme.code().dressing());
    const AccessStructure& access = scheme.access();
    if (access.is_threshold()) {
        j["access"] = {{"threshold", access.threshold_k()}};
    } else {
        j["access"] = {{"minimal_sets", access.minimal_sets()}};
    }
    Json ops = Json::array();
    for (const auto& set : access.minimal_sets()) {
        if (scheme.is_registered(set)) {
            LogicalOperatorPair p = scheme.logical_ops(set);
            ops.push_back({{"players", p.players}, {"x", label_string(p.x_l)}, {"z", label_string(p.z_l)}});
        }
    }
    if (!ops.empty()) {
        j["logical_ops"] = ops;
    }
    return j;
}

Json load_json_file(const fs::path& path) {
    std::string text = read_file(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

Scheme load_scheme(const fs::path& path) { return scheme_from_json(load_json_file(path), path.parent_path()); }

SchemePtr scheme_field(const Json& j, const fs::path& base_dir) {
    const Json& s = require(j, "scheme");
    if (s.is_object()) {
        return std::make_shared<const Scheme>(scheme_from_json(s, base_dir));
    }
    if (!s.is_string()) {
        throw ConfigError("field 'scheme' must be a name, a path or an object");
    }
    std::string name = s.get<std::string>();
    for (const auto& builtin : builtin_scheme_names()) {
        if (name == builtin) {
            return std::make_shared<const Scheme>(builtin_scheme(name));
        }
    }
    if (name.rfind("trivial-", 0) == 0) {
        return std::make_shared<const Scheme>(as_config([&] { return builtin_scheme(name); }));
    }
    return std::make_shared<const Scheme>(load_scheme(base_dir / name));
}

QuantumState secret_from_json(const Json& j, int q) {
    if (j.is_object()) {
        int i = get_as<int>(j, "basis");
        if (i < 0 || i >= q) {
            throw ConfigError("secret basis index out of range");
        }
        return QuantumState::basis(q, 1, static_cast<std::size_t>(i));
    }
    if (!j.is_array() || static_cast<int>(j.size()) != q) {
        throw ConfigError("secret must list q amplitudes");
    }
    Vector v(q);
    try {
        for (int i = 0; i < q; i++) {
            const Json& a = j[i];
            v(i) = a.is_array() ? Complex(a.at(0).get<double>(), a.at(1).get<double>()) : Complex(a.get<double>(), 0.0);
        }
    } catch (const Json::exception&) {
        throw ConfigError("secret amplitudes must be numbers or [re, im] pairs");
    }
    double norm = v.norm();
    if (!(norm > 1e-12)) {
        throw ConfigError("secret has zero norm");
    }
    return QuantumState::from_vector(q, 1, v / norm);
}

Json state_to_json(const QuantumState& s) {
    Json out = Json::array();
    if (s.is_pure()) {
        const Vector& a = s.amplitudes();
        for (Eigen::Index i = 0; i < a.size(); i++) {
            out.push_back(complex_pair(a(i)));
        }
        return out;
    }
    Matrix rho = s.density_matrix();
    for (Eigen::Index r = 0; r < rho.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < rho.cols(); c++) {
            row.push_back(complex_pair(rho(r, c)));
        }
        out.push_back(row);
    }
    return out;
}

AdversaryChannel adversary_from_json(const Json& j, const Scheme& scheme, int rounds) {
    const std::string type = get_as<std::string>(j, "type");
    AdversaryChannel adv = as_config([&] {
        if (type == "identity") {
            return AdversaryChannel::identity();
        }
        if (type == "one-round-corruption") {
            return one_round_corruption(scheme, rounds);
        }
        if (type == "all-rounds-corruption") {
            return all_rounds_corruption(scheme);
        }
        if (type == "fixed-fidelity") {
            return fixed_fidelity(scheme, get_as<double>(j, "f"));
        }
        if (type == "depolarizing") {
            return depolarizing_adversary(scheme, get_as<double>(j, "p"),
                                          get_or<std::vector<int>>(j, "players", all_players(scheme)));
        }
        if (type == "random-kraus") {
            Rng rng(get_or<std::uint64_t>(j, "seed", 1));
            return random_kraus_adversary(scheme, rounds, get_or<std::vector<int>>(j, "players", all_players(scheme)),
                                          get_or<int>(j, "rank", 2), rng);
        }
        if (type == "replacement") {
            Rng rng(get_or<std::uint64_t>(j, "seed", 1));
            long long dim = 1;
            for (int i = 0; i < scheme.num_players(); i++) {
                dim *= scheme.dimension();
            }
            return replacement_adversary(scheme, random_density_matrix(rng, dim));
        }
        throw ConfigError("unknown adversary type '" + type + "'");
    });
    if (j.contains("id")) {
        adv = adv.renamed(get_as<std::string>(j, "id"));
    }
    return adv;
}

RunConfig run_config_from_json(const Json& j, const fs::path& base_dir) {
    RunConfig out;
    ProtocolConfig& cfg = out.protocol;
    cfg.scheme = scheme_field(j, base_dir);
    cfg.players = get_as<std::vector<int>>(j, "B");
    cfg.rounds = get_as<int>(j, "S");
    cfg.variant = as_config([&] { return parse_variant(get_as<std::string>(j, "variant")); });
    const int q = cfg.scheme->dimension();
    if (j.contains("q") && get_as<int>(j, "q") != q) {
        throw ConfigError("field 'q' does not match the scheme");
    }
    cfg.secret = j.contains("secret") ? secret_from_json(j["secret"], q) : QuantumState::basis(q, 1, 0);
    cfg.max_rounds = get_or<long long>(j, "max_rounds", cfg.max_rounds);
    out.adversary = j.contains("adversary") ? j["adversary"] : Json{{"type", "identity"}};
    out.seed = optional_seed(j);
    as_config([&] {
        cfg.validate();
        adversary_from_json(out.adversary, *cfg.scheme, cfg.rounds).validate(q, cfg.scheme->num_players());
        return 0;
    });
    return out;
}

SweepConfig sweep_config_from_json(const Json& j, const fs::path& base_dir) {
    SweepConfig out;
    out.scheme = scheme_field(j, base_dir);
    out.players = get_as<std::vector<int>>(j, "B");
    for (const auto& name : get_as<std::vector<std::string>>(j, "variants")) {
        out.variants.push_back(as_config([&] { return parse_variant(name); }));
    }
    out.rounds = get_as<std::vector<int>>(j, "S");
    out.adversaries = get_as<std::vector<Json>>(j, "adversaries");
    if (out.variants.empty() || out.rounds.empty() || out.adversaries.empty()) {
        throw ConfigError("sweep needs at least one variant, S value and adversary");
    }
    out.secret = j.contains("secret") ? j["secret"] : Json{{"basis", 0}};
    out.trials = get_or<long long>(j, "trials", 0);
    out.seed = optional_seed(j);
    if (j.contains("fidelity_sweep")) {
        const Json& fsw = j["fidelity_sweep"];
        out.fidelity_rounds = get_as<std::vector<int>>(fsw, "S");
        out.fidelity_values = get_as<std::vector<double>>(fsw, "f");
    }
    secret_from_json(out.secret, out.scheme->dimension());
    for (int S : out.rounds) {
        for (const auto& a : out.adversaries) {
            as_config([&] {
                ProtocolConfig cfg;
                cfg.scheme = out.scheme;
                cfg.players = out.players;
                cfg.rounds = S;
                cfg.secret = QuantumState::basis(out.scheme->dimension(), 1, 0);
                cfg.validate();
                adversary_from_json(a, *out.scheme, S).validate(out.scheme->dimension(), out.scheme->num_players());
                return 0;
            });
        }
    }
    return out;
}

SpectrumConfig spectrum_config_from_json(const Json& j, const fs::path& base_dir) {
    SpectrumConfig out;
    out.rounds = get_as<std::vector<int>>(j, "S");
    for (const auto& m : get_or<std::vector<std::string>>(j, "modes", {"symmetric", "abort"})) {
        out.modes.push_back(as_config([&] { return parse_qmode(m); }));
    }
    out.q = get_or<int>(j, "q", 2);
    if (!is_prime(out.q)) {
        throw ConfigError("q must be prime");
    }
    for (int S : out.rounds) {
        if (S < 1) {
            throw ConfigError("S values must be at least 1");
        }
    }
    if (j.contains("dense")) {
        out.scheme = scheme_field(j["dense"], base_dir);
        out.players = get_as<std::vector<int>>(j["dense"], "B");
        if (!out.scheme->access().is_authorized(out.players)) {
            throw ConfigError("dense check set is not authorized");
        }
    }
    return out;
}

SecrecyConfig secrecy_config_from_json(const Json& j, const fs::path& base_dir) {
    SecrecyConfig out;
    out.scheme = scheme_field(j, base_dir);
    out.secrets = get_or<int>(j, "secrets", 50);
    if (out.secrets < 2) {
        throw ConfigError("secrets must be at least 2");
    }
    out.seed = optional_seed(j);
    return out;
}

AcceptanceLawConfig acceptance_law_config_from_json(const Json& j, const fs::path& base_dir) {
    AcceptanceLawConfig out;
    out.scheme = scheme_field(j, base_dir);
    out.players = get_as<std::vector<int>>(j, "B");
    out.samples = get_or<int>(j, "samples", 1000);
    if (out.samples < 1) {
        throw ConfigError("samples must be at least 1");
    }
    if (!out.scheme->access().is_authorized(out.players)) {
        throw ConfigError("B is not authorized");
    }
    out.seed = optional_seed(j);
    return out;
}

Json output_header(const std::string& command, const Json& config, std::uint64_t seed) {
    return {{"artifact", "qss"},
            {"version", kArtifactVersion},
            {"command", command},
            {"config_hash", hex64(fnv1a(config.dump()))},
            {"seed", seed}};
}

namespace {

std::string kind_name(RoundKind k) { return k == RoundKind::kUse ? "USE" : "TEST"; }

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kAccept:
            return "ACCEPT";
        case Verdict::kReject:
            return "REJECT";
        case Verdict::kNone:
            break;
    }
    return "NONE";
}

}  // namespace

Json round_to_json(const RoundRecord& r) {
    Json j;
    j["round"] = r.index;
    j["kind"] = kind_name(r.kind);
    if (r.kind == RoundKind::kTest) {
        j["t"] = {r.t.first, r.t.second};
        j["y_expected"] = r.y_expected;
        j["y_measured"] = r.y_measured;
        j["verdict"] = verdict_name(r.verdict);
    } else {
        j["x"] = {r.x0, r.x1};
    }
    j["resource_fidelity"] = std::stod(format_real(r.resource_fidelity));
    return j;
}

Json transcript_summary_json(const Transcript& tr) {
    Json j;
    j["variant"] = variant_name(tr.variant);
    j["strategy"] = tr.strategy;
    j["use_round"] = tr.use_round;
    j["final"] = final_flag_name(tr.final);
    j["fidelity"] = std::stod(format_real(tr.fidelity));
    j["rounds_consumed"] = tr.rounds_consumed;
    if (tr.output) {
        j["output"] = state_to_json(*tr.output);
    }
    return j;
}

std::string transcript_jsonl(const Transcript& tr, const Json& header) {
    std::string out = header.dump() + "\n";
    for (const auto& r : tr.rounds) {
        out += round_to_json(r).dump() + "\n";
    }
    out += transcript_summary_json(tr).dump() + "\n";
    return out;
}

std::vector<std::string> security_csv_columns() {
    return {"variant", "S", "adversary", "p_fail", "bound", "margin", "stderr"};
}

std::string security_csv_row(const SecurityReport& rep) {
    return variant_name(rep.variant) + "," + std::to_string(rep.rounds) + "," + rep.adversary + "," +
           format_real(rep.p_fail_exact) + "," + format_real(rep.bound) + "," + format_real(rep.margin) + "," +
           (rep.has_mc ? format_real(rep.mc.stderr_) : "");
}

Json security_to_json(const SecurityReport& rep) {
    Json j;
    j["variant"] = variant_name(rep.variant);
    j["S"] = rep.rounds;
    j["adversary"] = rep.adversary;
    j["p_fail"] = rep.p_fail_exact;
    if (rep.has_mc) {
        j["p_fail_mc"] = rep.mc.mean;
        j["stderr"] = rep.mc.stderr_;
    }
    j["bound"] = rep.bound;
    j["margin"] = rep.margin;
    return j;
}

Json spectrum_to_json(const QSpectrum& spec) {
    Json j;
    j["S"] = spec.rounds;
    j["mode"] = qmode_name(spec.mode);
    j["q"] = spec.q;
    Json eig = Json::array();
    for (const auto& e : spec.eigenvalues) {
        Json entry = {{"weight", e.weight}, {"strings", e.strings}, {"value", e.value}};
        if (spec.mode == QMode::kAbort) {
            std::string pattern;
            for (int r = 0; r < spec.rounds; r++) {
                pattern += ((e.pattern >> r) & 1) ? '1' : '0';
            }
            entry["pattern"] = pattern;
        }
        eig.push_back(entry);
    }
    j["eigenvalues"] = eig;
    j["max_eigenvalue"] = spec.max_eigenvalue;
    return j;
}

Json dense_check_to_json(const QDenseCheck& c) {
    return {{"S", c.rounds},
            {"mode", qmode_name(c.mode)},
            {"dimension", c.dimension},
            {"max_dense", c.max_dense},
            {"max_combinatorial", c.max_combinatorial},
            {"spectrum_error", c.spectrum_error}};
}

Json acceptance_law_to_json(const AcceptanceLawReport& rep) {
    return {{"q", rep.q},
            {"B", rep.players},
            {"samples", rep.samples},
            {"honest_acceptance", rep.honest_acceptance},
            {"orthogonal_acceptance", rep.orthogonal_acceptance},
            {"half_law_prediction_orthogonal", 0.5},
            {"q_law_prediction_orthogonal", 1.0 / rep.q},
            {"max_excess_over_half_law", rep.max_excess_half_law},
            {"max_deviation_half_law", rep.max_dev_half_law},
            {"max_deviation_q_law", rep.max_dev_q_law},
            {"saturation_gap", rep.saturation_gap},
            {"half_law_is_upper_bound", rep.half_law_bound_holds},
            {"half_law_is_exact", rep.half_law_matches},
            {"q_law_is_exact", rep.q_law_matches}};
}

Json unbounded_cell_to_json(const UnboundedCell& c) {
    return {{"S", c.rounds},
            {"f", c.f},
            {"trials", c.trials},
            {"estimate", c.estimate.mean},
            {"stderr", c.estimate.stderr_},
            {"exact", c.exact},
            {"bound", c.bound},
            {"acceptance_excess", c.acceptance_excess},
            {"ok", c.ok}};
}

Json key_share_to_json(const KeyShare& s) {
    Json blocks = Json::array();
    for (const auto& b : s.blocks) {
        blocks.push_back({{"set", b.set}, {"values", b.values}});
    }
    return {{"player", s.player}, {"modulus", s.modulus}, {"method", s.method}, {"blocks", blocks}};
}

KeyShare key_share_from_json(const Json& j) {
    KeyShare s;
    s.player = get_as<int>(j, "player");
    s.modulus = get_as<int>(j, "modulus");
    s.method = get_as<std::string>(j, "method");
    if (s.method != "shamir" && s.method != "replicated") {
        throw ConfigError("unknown key share method '" + s.method + "'");
    }
    for (const auto& b : require(j, "blocks")) {
        s.blocks.push_back({get_or<std::vector<int>>(b, "set", {}), get_as<std::vector<int>>(b, "values")});
    }
    return s;
}

}  // namespace qss
