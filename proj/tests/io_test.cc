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

#include <gtest/gtest.h>

#include "qss/rng.h"
#include "qss/schemes.h"

using namespace qss;

namespace {

const std::filesystem::path kData = QSS_DATA_DIR;

}  // namespace

TEST(io, graph_file_is_the_cycle) {
    Graph g = load_graph_file(kData / "schemes" / "c5.graph");
    EXPECT_EQ(g, Graph::cycle(5));
    EXPECT_EQ(parse_graph_text(graph_to_text(g)), g);
}

TEST(io, graph_text_forms) {
    Graph g = parse_graph_text("# triangle\n1 2\n2 3 2\n\n1 3   # last\n");
    EXPECT_EQ(g.num_vertices(), 3);
    EXPECT_EQ(g.weight(1, 2), 2);
    EXPECT_EQ(g.weight(0, 2), 1);
    EXPECT_EQ(parse_graph_text("1 2\n", 4).num_vertices(), 4);
    EXPECT_THROW(parse_graph_text("1\n"), ConfigError);
    EXPECT_THROW(parse_graph_text("1 x\n"), ConfigError);
    EXPECT_THROW(parse_graph_text("0 1\n"), ConfigError);
    EXPECT_THROW(parse_graph_text("1 1\n"), ConfigError);
    EXPECT_THROW(parse_graph_text("1 5\n", 3), ConfigError);
    EXPECT_THROW(parse_graph_text(""), ConfigError);
}

TEST(io, label_strings_round_trip) {
    Rng rng(1);
    for (int q : {2, 3, 5}) {
        for (int trial = 0; trial < 50; trial++) {
            std::vector<int> z(4), x(4);
            for (int s = 0; s < 4; s++) {
                z[s] = static_cast<int>(rng.uniform_int(q));
                x[s] = static_cast<int>(rng.uniform_int(q));
            }
            PauliString w(q, z, x, static_cast<int>(rng.uniform_int(2 * q)));
            EXPECT_EQ(PauliString::parse_labels(label_string(w), q, 4), w) << label_string(w);
        }
    }
    EXPECT_EQ(label_string(PauliString::parse_labels("Z1 X2 Z3", 2, 5)), "Z1 X2 Z3");
}

TEST(io, scheme_file_matches_builtin) {
    Scheme file = load_scheme(kData / "schemes" / "threshold_3_5.json");
    Scheme builtin = threshold_3_5_scheme();
    EXPECT_EQ(file.code().graph(), builtin.code().graph());
    EXPECT_EQ(file.code().dressing(), builtin.code().dressing());
    for (const auto& set : builtin.access().minimal_sets()) {
        EXPECT_EQ(file.is_registered(set), builtin.is_registered(set));
        EXPECT_EQ(file.logical_ops(set).x_l, builtin.logical_ops(set).x_l);
        EXPECT_EQ(file.logical_ops(set).z_l, builtin.logical_ops(set).z_l);
    }
    Scheme qutrit = load_scheme(kData / "schemes" / "qutrit_2_3.json");
    EXPECT_EQ(qutrit.code().graph(), qutrit_2_3_scheme().code().graph());
    EXPECT_EQ(qutrit.code().dressing(), qutrit_2_3_scheme().code().dressing());
}

TEST(io, scheme_json_round_trip) {
    for (const Scheme& s : {threshold_3_5_scheme(), qutrit_2_3_scheme(), trivial_scheme(5)}) {
        Json j = scheme_to_json(s);
        Scheme back = scheme_from_json(j);
        EXPECT_EQ(back.code().graph(), s.code().graph());
        EXPECT_EQ(back.code().dressing(), s.code().dressing());
        EXPECT_EQ(scheme_to_json(back).dump(), j.dump());
    }
    Scheme custom = scheme_from_json(Json::parse(
        R"({"q": 2, "players": 3, "edges": [[1, 2], [2, 3]], "dressing": "Z1 Z2 Z3",
            "access": {"minimal_sets": [[1, 2], [2, 3]]}})"));
    EXPECT_FALSE(custom.access().is_threshold());
    EXPECT_EQ(scheme_to_json(custom)["access"]["minimal_sets"].size(), 2u);
}

TEST(io, scheme_json_errors) {
    EXPECT_THROW(scheme_from_json(Json::parse(R"({"q": 4, "players": 2})")), ConfigError);
    EXPECT_THROW(scheme_from_json(Json::parse(R"({"q": 2, "players": 2, "edges": [[1, 3]],
        "dressing": "Z1", "access": {"threshold": 1}})")),
                 ConfigError);
    EXPECT_THROW(scheme_from_json(Json::parse(R"({"q": 2, "players": 2, "edges": [[1, 2]],
        "access": {"threshold": 2}})")),
                 ConfigError);
    // Dressing that fixes the graph state: orthogonality fails.
    EXPECT_THROW(scheme_from_json(Json::parse(R"({"q": 2, "players": 1, "edges": [],
        "dressing": "X1", "access": {"threshold": 1}})")),
                 ConfigError);
    // Registered operators that do not act as logical operators.
    EXPECT_THROW(scheme_from_json(Json::parse(R"({"q": 2, "players": 5, "graph_file": "c5.graph",
        "dressing": "Z1 Z2 Z3 Z4 Z5", "access": {"threshold": 3},
        "logical_ops": [{"players": [1, 2, 3], "x": "X1 Z2 X3", "z": "Z1 X2 Z3"}]})"),
                                 kData / "schemes"),
                 ConfigError);
    EXPECT_THROW(scheme_from_json(Json::parse(R"({"builtin": "nope"})")), ConfigError);
}

TEST(io, secrets) {
    QuantumState s = secret_from_json(Json::parse("[3, [0, 4]]"), 2);
    EXPECT_NEAR(std::abs(s.amplitudes()(0) - Complex(0.6, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes()(1) - Complex(0, 0.8)), 0.0, 1e-15);
    EXPECT_EQ(secret_from_json(Json::parse(R"({"basis": 2})"), 3).amplitudes()(2), Complex(1, 0));
    EXPECT_THROW(secret_from_json(Json::parse("[1, 0]"), 3), ConfigError);
    EXPECT_THROW(secret_from_json(Json::parse("[0, 0]"), 2), ConfigError);
    EXPECT_THROW(secret_from_json(Json::parse(R"({"basis": 3})"), 3), ConfigError);
    Json dumped = state_to_json(s);
    ASSERT_EQ(dumped.size(), 2u);
    EXPECT_DOUBLE_EQ(dumped[1][1].get<double>(), 0.8);
}

TEST(io, run_configs) {
    RunConfig honest = run_config_from_json(load_json_file(kData / "configs" / "honest_35.json"), kData / "configs");
    EXPECT_EQ(honest.protocol.rounds, 8);
    EXPECT_EQ(honest.protocol.players, (std::vector<int>{1, 2, 3}));
    EXPECT_FALSE(honest.seed.has_value());
    RunConfig attack =
        run_config_from_json(load_json_file(kData / "configs" / "one_round_attack.json"), kData / "configs");
    EXPECT_EQ(attack.seed, std::optional<std::uint64_t>(3));
    try {
        run_config_from_json(load_json_file(kData / "configs" / "missing_field.json"), kData / "configs");
        FAIL() << "expected a config error";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("'B'"), std::string::npos);
    }
    Json bad = load_json_file(kData / "configs" / "honest_35.json");
    bad["B"] = {1, 2};
    EXPECT_THROW(run_config_from_json(bad, kData / "configs"), ConfigError);
    bad = load_json_file(kData / "configs" / "honest_35.json");
    bad["q"] = 3;
    EXPECT_THROW(run_config_from_json(bad, kData / "configs"), ConfigError);
    bad = load_json_file(kData / "configs" / "honest_35.json");
    bad["adversary"] = {{"type", "depolarizing"}, {"p", 0.1}, {"players", {7}}};
    EXPECT_THROW(run_config_from_json(bad, kData / "configs"), ConfigError);
    bad["adversary"] = {{"type", "teleporting-goblin"}};
    EXPECT_THROW(run_config_from_json(bad, kData / "configs"), ConfigError);
    EXPECT_THROW(load_json_file(kData / "configs" / "absent.json"), ConfigError);
}

TEST(io, other_configs) {
    const auto dir = kData / "configs";
    EXPECT_THROW(sweep_config_from_json(load_json_file(dir / "sweep_empty.json"), dir), ConfigError);
    SweepConfig sw = sweep_config_from_json(load_json_file(dir / "sweep_abort.json"), dir);
    EXPECT_EQ(sw.variants.size(), 2u);
    EXPECT_EQ(sw.adversaries.size(), 3u);
    SweepConfig fid = sweep_config_from_json(load_json_file(dir / "sweep_unbounded_fidelity.json"), dir);
    EXPECT_EQ(fid.fidelity_values, (std::vector<double>{0.0, 0.5, 0.9}));
    SpectrumConfig sp = spectrum_config_from_json(load_json_file(dir / "spectrum.json"), dir);
    EXPECT_EQ(sp.modes.size(), 2u);
    ASSERT_TRUE(sp.scheme);
    SecrecyConfig sec = secrecy_config_from_json(load_json_file(dir / "secrecy_35.json"), dir);
    EXPECT_EQ(sec.secrets, 50);
    AcceptanceLawConfig al = acceptance_law_config_from_json(load_json_file(dir / "acceptance_law_qutrit.json"), dir);
    EXPECT_EQ(al.scheme->dimension(), 3);
}

TEST(io, transcript_lines_are_deterministic) {
    RunConfig rc = run_config_from_json(load_json_file(kData / "configs" / "one_round_attack.json"), kData / "configs");
    auto adv = adversary_from_json(rc.adversary, *rc.protocol.scheme, rc.protocol.rounds);
    rc.protocol.seed = 3;
    Json header = output_header("run", load_json_file(kData / "configs" / "one_round_attack.json"), 3);
    std::string a = transcript_jsonl(run_protocol(rc.protocol, adv), header);
    std::string b = transcript_jsonl(run_protocol(rc.protocol, adv), header);
    EXPECT_EQ(a, b);
    std::istringstream in(a);
    std::string line;
    std::vector<Json> lines;
    while (std::getline(in, line)) {
        lines.push_back(Json::parse(line));
    }
    ASSERT_EQ(lines.size(), 2u + 4u);
    EXPECT_EQ(lines.front()["version"], kArtifactVersion);
    EXPECT_EQ(lines.front()["config_hash"].get<std::string>().size(), 16u);
    EXPECT_TRUE(lines.back().contains("final"));
}

TEST(io, hashing_and_numbers) {
    EXPECT_EQ(fnv1a(""), 14695981039346656037ULL);
    EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
    EXPECT_EQ(format_real(0.25), "0.25");
    EXPECT_EQ(format_real(-0.0), "0");
    EXPECT_EQ(format_real(1.0 / 3.0, 4), "0.3333");
}

TEST(io, csv_rows) {
    SecurityReport rep;
    rep.variant = Variant::kAbort;
    rep.rounds = 4;
    rep.adversary = "x";
    rep.p_fail_exact = 0.25;
    rep.bound = 0.5;
    rep.margin = 0.25;
    EXPECT_EQ(security_csv_row(rep), "abort,4,x,0.25,0.5,0.25,");
    EXPECT_EQ(security_csv_columns().size(), 7u);
}

TEST(io, key_shares_round_trip) {
    Rng rng(2);
    for (const AccessStructure& access :
         {AccessStructure::threshold(3, 5), AccessStructure::from_minimal_sets(3, {{1, 2}, {2, 3}})}) {
        KeyMaterial key = KeyMaterial::random(4, 2, test_selectors(2), rng);
        std::vector<KeyShare> shares = share_key(key, access, rng);
        std::vector<KeyShare> back;
        for (const auto& s : shares) {
            back.push_back(key_share_from_json(Json::parse(key_share_to_json(s).dump())));
        }
        std::vector<KeyShare> holders(back.begin(), back.begin() + (access.is_threshold() ? 3 : 2));
        if (!access.is_threshold()) {
            holders = {back[1], back[2]};
        }
        EXPECT_EQ(reconstruct_key(holders, access, 4, 2), key);
    }
    EXPECT_THROW(key_share_from_json(Json::parse(R"({"player": 1, "modulus": 7, "method": "magic", "blocks": []})")),
                 ConfigError);
}
