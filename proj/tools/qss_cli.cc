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

// qss: command-line driver for protocol runs and security checks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qss/errors.h"
#include "qss/io.h"
#include "qss/rng.h"

namespace fs = std::filesystem;
using namespace qss;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitResource = 3;

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
    std::string out;
    std::string format;

    /// Human-readable summary: stdout when the data goes to a file, stderr otherwise.
    std::ostream& log() const { return out.empty() ? std::cerr : std::cout; }
};

struct Output {
    std::string text;
    bool violated = false;
};

std::uint64_t pick_seed(const Options& opt, const std::optional<std::uint64_t>& from_config) {
    if (opt.seed) {
        return *opt.seed;
    }
    if (from_config) {
        return *from_config;
    }
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string csv_header_comment(const Json& header) {
    return "# qss " + header["version"].get<std::string>() + " command=" + header["command"].get<std::string>() +
           " config_hash=" + header["config_hash"].get<std::string>() +
           " seed=" + std::to_string(header["seed"].get<std::uint64_t>()) + "\n";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); i++) {
        out += (i ? sep : "") + parts[i];
    }
    return out;
}

std::string fixed7(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.7f", v);
    return buf;
}

Output cmd_run(const Options& opt, const Json& raw, const fs::path& dir) {
    RunConfig rc = run_config_from_json(raw, dir);
    const std::uint64_t seed = pick_seed(opt, rc.seed);
    rc.protocol.seed = seed;
    AdversaryChannel adv = adversary_from_json(rc.adversary, *rc.protocol.scheme, rc.protocol.rounds);
    Transcript tr = run_protocol(rc.protocol, adv);
    Json header = output_header("run", raw, seed);

    opt.log() << "variant: " << variant_name(tr.variant) << "\n";
    opt.log() << "seed: " << seed << "\n";
    opt.log() << "adversary: " << adv.id() << "\n";
    if (rc.adversary.value("type", "") == "one-round-corruption") {
        opt.log() << "corrupted round: " << tr.strategy << "\n";
    } else if (adv.mode() == AdversaryChannel::Mode::kMixture) {
        opt.log() << "strategy: " << tr.strategy << "\n";
    }
    opt.log() << "use round: " << tr.use_round << "\n";
    for (const auto& r : tr.rounds) {
        opt.log() << "  round " << r.index << " " << (r.kind == RoundKind::kUse ? "USE" : "TEST");
        if (r.kind == RoundKind::kTest) {
            opt.log() << " t=(" << r.t.first << "," << r.t.second << ") "
                      << (r.verdict == Verdict::kAccept ? "ACCEPT" : "REJECT");
        }
        opt.log() << "\n";
    }
    opt.log() << final_flag_name(tr.final) << ", fidelity " << fixed7(tr.fidelity) << "\n";

    Output out;
    if (opt.format == "csv") {
        out.text = csv_header_comment(header) + "round,kind,t1,t2,y_expected,y_measured,verdict,resource_fidelity\n";
        for (const auto& r : tr.rounds) {
            Json j = round_to_json(r);
            bool test = r.kind == RoundKind::kTest;
            out.text += std::to_string(r.index) + "," + j["kind"].get<std::string>() + "," +
                        (test ? std::to_string(r.t.first) + "," + std::to_string(r.t.second) + "," +
                                    std::to_string(r.y_expected) + "," + std::to_string(r.y_measured) + "," +
                                    j["verdict"].get<std::string>()
                              : std::string(",,,,")) +
                        "," + format_real(r.resource_fidelity) + "\n";
        }
        out.text += "# final=" + final_flag_name(tr.final) + " fidelity=" + format_real(tr.fidelity) + "\n";
    } else {
        out.text = transcript_jsonl(tr, header);
    }
    return out;
}

Output cmd_sweep(const Options& opt, const Json& raw, const fs::path& dir) {
    SweepConfig sw = sweep_config_from_json(raw, dir);
    const std::uint64_t seed = pick_seed(opt, sw.seed);
    const long long trials = opt.trials.value_or(sw.trials);
    Json header = output_header("sweep", raw, seed);
    QuantumState secret = secret_from_json(sw.secret, sw.scheme->dimension());

    std::vector<SecurityReport> reports;
    std::uint64_t cell = 0;
    bool violated = false;
    double min_margin = INFINITY;
    for (Variant v : sw.variants) {
        for (int S : sw.rounds) {
            for (const auto& aj : sw.adversaries) {
                ProtocolConfig cfg;
                cfg.scheme = sw.scheme;
                cfg.players = sw.players;
                cfg.rounds = S;
                cfg.variant = v;
                cfg.secret = secret;
                SecurityReport rep =
                    evaluate_security(cfg, adversary_from_json(aj, *sw.scheme, S), trials, mix_seed(seed, cell++));
                min_margin = std::min(min_margin, rep.margin);
                violated = violated || rep.violated() ||
                           (rep.has_mc && rep.mc.mean > rep.bound + 3.0 * rep.mc.stderr_ + 1e-9);
                reports.push_back(rep);
            }
        }
    }
    std::vector<UnboundedCell> cells;
    if (!sw.fidelity_rounds.empty()) {
        cells = unbounded_bound_sweep(*sw.scheme, sw.players, sw.fidelity_rounds, sw.fidelity_values,
                                      trials > 0 ? trials : 10000, mix_seed(seed, cell++));
        for (const auto& c : cells) {
            violated = violated || !c.ok;
        }
    }

    Output out;
    out.violated = violated;
    const std::string verdict = violated ? "FAIL" : "PASS";
    if (opt.format == "json") {
        Json j;
        j["header"] = header;
        Json rows = Json::array();
        for (const auto& r : reports) {
            rows.push_back(security_to_json(r));
        }
        j["reports"] = rows;
        if (!cells.empty()) {
            Json cj = Json::array();
            for (const auto& c : cells) {
                cj.push_back(unbounded_cell_to_json(c));
            }
            j["fidelity_sweep"] = cj;
        }
        j["summary"] = {{"min_margin", min_margin}, {"tolerance", -1e-9}, {"result", verdict}};
        out.text = j.dump(2) + "\n";
    } else {
        out.text = csv_header_comment(header) + join(security_csv_columns(), ",") + "\n";
        for (const auto& r : reports) {
            out.text += security_csv_row(r) + "\n";
        }
        for (const auto& c : cells) {
            // P(C_f) rows reuse the columns: p_fail holds the estimate, bound is 2/(S(1-f)).
            out.text += "unbounded-abort," + std::to_string(c.rounds) + ",C_f f=" + format_real(c.f) + "," +
                        format_real(c.estimate.mean) + "," + format_real(c.bound) + "," +
                        format_real(c.bound - c.estimate.mean) + "," + format_real(c.estimate.stderr_) + "\n";
        }
        out.text += "# summary min_margin=" + format_real(min_margin) + " tolerance=-1e-9 result=" + verdict + "\n";
    }
    opt.log() << "sweep: " << reports.size() + cells.size() << " cells, min margin " << format_real(min_margin)
              << ", " << verdict << "\n";
    return out;
}

Output cmd_spectrum(const Options& opt, const Json& raw, const fs::path& dir) {
    SpectrumConfig sc = spectrum_config_from_json(raw, dir);
    Json header = output_header("spectrum", raw, opt.seed.value_or(0));
    Output out;
    Json spectra = Json::array();
    Json dense = Json::array();
    std::string csv = csv_header_comment(header) + "S,mode,weight,pattern,strings,value\n";
    for (int S : sc.rounds) {
        for (QMode m : sc.modes) {
            QSpectrum spec = q_spectrum(S, m, sc.q);
            Json sj = spectrum_to_json(spec);
            if (m == QMode::kSymmetric) {
                out.violated = out.violated || std::abs(spec.max_eigenvalue - 1.0 / S) > 1e-12;
            } else {
                sj["closed_form_max"] = (2.0 - std::pow(2.0, 1 - S)) / S;
                sj["alternative_closed_form_max"] = (2.0 - std::pow(2.0, -S)) / S;
                sj["below_2_over_S"] = spec.max_eigenvalue < 2.0 / S;
                out.violated = out.violated || !(spec.max_eigenvalue < 2.0 / S);
            }
            spectra.push_back(sj);
            for (const auto& e : spec.eigenvalues) {
                std::string pattern;
                if (m == QMode::kAbort) {
                    for (int r = 0; r < S; r++) {
                        pattern += ((e.pattern >> r) & 1) ? '1' : '0';
                    }
                }
                csv += std::to_string(S) + "," + qmode_name(m) + "," + std::to_string(e.weight) + "," + pattern +
                       "," + std::to_string(e.strings) + "," + format_real(e.value) + "\n";
            }
            if (sc.scheme && S <= 3) {
                QDenseCheck c = q_dense_check(*sc.scheme, sc.players, S, m);
                out.violated = out.violated || c.spectrum_error > 1e-9;
                dense.push_back(dense_check_to_json(c));
                csv += "# dense S=" + std::to_string(S) + " mode=" + qmode_name(m) +
                       " max=" + format_real(c.max_dense) + " spectrum_error=" + format_real(c.spectrum_error, 3) +
                       "\n";
            }
        }
    }
    if (opt.format == "csv") {
        out.text = csv;
    } else {
        Json j;
        j["header"] = header;
        j["spectra"] = spectra;
        if (!dense.empty()) {
            j["dense_checks"] = dense;
        }
        j["result"] = out.violated ? "FAIL" : "PASS";
        out.text = j.dump(2) + "\n";
    }
    return out;
}

Output cmd_secrecy(const Options& opt, const Json& raw, const fs::path& dir) {
    SecrecyConfig sc = secrecy_config_from_json(raw, dir);
    const std::uint64_t seed = pick_seed(opt, sc.seed);
    Json header = output_header("secrecy", raw, seed);
    const Scheme& s = *sc.scheme;
    Rng rng(seed);
    std::vector<QuantumState> secrets;
    for (int i = 0; i < sc.secrets; i++) {
        secrets.push_back(QuantumState::from_vector(s.dimension(), 1, random_pure_vector(rng, s.dimension())));
    }
    Output out;
    Json rows = Json::array();
    std::string csv = csv_header_comment(header) + "players,trace_distance\n";
    double worst = 0.0;
    for (int k = 1; k <= s.num_players(); k++) {
        for (const auto& set : subsets_of_size(s.num_players(), k)) {
            if (s.access().is_authorized(set)) {
                continue;
            }
            double d = secrecy_check(s, set, secrets);
            worst = std::max(worst, d);
            std::vector<std::string> labels;
            for (int p : set) {
                labels.push_back(std::to_string(p));
            }
            rows.push_back({{"players", set}, {"trace_distance", d}});
            csv += join(labels, " ") + "," + format_real(d, 3) + "\n";
        }
    }
    double pad = pad_secrecy_check(s, secrets);
    out.violated = worst >= 1e-10 || pad >= 1e-10;
    const std::string verdict = out.violated ? "FAIL" : "PASS";
    if (opt.format == "csv") {
        out.text = csv + "# pad_average_distance=" + format_real(pad, 3) + " result=" + verdict + "\n";
    } else {
        Json j;
        j["header"] = header;
        j["scheme"] = s.name();
        j["secrets"] = sc.secrets;
        j["unauthorized_sets"] = rows;
        j["max_trace_distance"] = worst;
        j["pad_average_distance"] = pad;
        j["tolerance"] = 1e-10;
        j["result"] = verdict;
        out.text = j.dump(2) + "\n";
    }
    return out;
}

Output cmd_acceptance_law(const Options& opt, const Json& raw, const fs::path& dir) {
    AcceptanceLawConfig ac = acceptance_law_config_from_json(raw, dir);
    const std::uint64_t seed = pick_seed(opt, ac.seed);
    const int samples = static_cast<int>(opt.trials.value_or(ac.samples));
    Json header = output_header("acceptance-law", raw, seed);
    AcceptanceLawReport rep = acceptance_law_check(*ac.scheme, ac.players, samples, seed);
    Output out;
    // Only the qubit inequality is a claim to enforce; for q > 2 the report records which law matched.
    out.violated = rep.q == 2 && !rep.half_law_bound_holds;
    std::string matched = rep.q_law_matches       ? "(1+(q-1)F)/q"
                          : rep.half_law_matches    ? "(1+F)/2"
                          : rep.half_law_bound_holds ? "bound (1+F)/2"
                                                     : "neither";
    if (opt.format == "csv") {
        out.text = csv_header_comment(header) +
                   "q,samples,honest_acceptance,orthogonal_acceptance,max_excess_half_law,max_dev_half_law,"
                   "max_dev_q_law,exact_law\n" +
                   std::to_string(rep.q) + "," + std::to_string(rep.samples) + "," +
                   format_real(rep.honest_acceptance) + "," + format_real(rep.orthogonal_acceptance) + "," +
                   format_real(rep.max_excess_half_law, 3) + "," + format_real(rep.max_dev_half_law, 3) + "," +
                   format_real(rep.max_dev_q_law, 3) + "," + matched + "\n";
    } else {
        Json j;
        j["header"] = header;
        j["report"] = acceptance_law_to_json(rep);
        j["exact_law"] = matched;
        j["result"] = out.violated ? "FAIL" : "PASS";
        out.text = j.dump(2) + "\n";
    }
    opt.log() << "q=" << rep.q << " orthogonal acceptance " << format_real(rep.orthogonal_acceptance)
              << " (half law 0.5, q law " << format_real(1.0 / rep.q) << "), exact law: " << matched << "\n";
    return out;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot write " + opt.out);
    }
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verifiable quantum secret sharing: protocol runs and security checks"};
    app.require_subcommand(1);
    Options opt;
    std::vector<std::pair<std::string, Output (*)(const Options&, const Json&, const fs::path&)>> commands = {
        {"run", cmd_run},
        {"sweep", cmd_sweep},
        {"spectrum", cmd_spectrum},
        {"secrecy", cmd_secrecy},
        {"acceptance-law", cmd_acceptance_law},
    };
    const std::map<std::string, std::string> help = {
        {"run", "Execute one protocol run and write its transcript"},
        {"sweep", "Evaluate p_fail over variants, S values and adversaries"},
        {"spectrum", "Eigenvalues of the soundness operators"},
        {"secrecy", "Reduced encodings of unauthorized sets and the pad average"},
        {"acceptance-law", "Test acceptance against resource fidelity"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", opt.config, "Config file (JSON)")->required();
        sub->add_option("--seed", opt.seed, "Master seed (defaults to the config, then a random value)");
        sub->add_option("--trials", opt.trials, "Monte Carlo trials or samples");
        sub->add_option("--out", opt.out, "Output file (default: stdout)");
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitMalformed;
    }
    for (std::size_t i = 0; i < subs.size(); i++) {
        if (!subs[i]->parsed()) {
            continue;
        }
        if (opt.format.empty()) {
            opt.format = commands[i].first == "sweep" ? "csv" : "json";
        }
        try {
            if (opt.trials && *opt.trials < 1) {
                throw ConfigError("--trials must be at least 1");
            }
            fs::path path(opt.config);
            Json raw = load_json_file(path);
            Output out = commands[i].second(opt, raw, path.parent_path());
            emit(opt, out.text);
            return out.violated ? kExitViolation : 0;
        } catch (const std::invalid_argument& e) {
            std::cerr << "qss: malformed input: " << e.what() << "\n";
            return kExitMalformed;
        } catch (const std::exception& e) {
            std::cerr << "qss: simulation error: " << e.what() << "\n";
            return kExitResource;
        }
    }
    return kExitMalformed;
}
