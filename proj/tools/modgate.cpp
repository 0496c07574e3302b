// Copyright 2026 The modgate Authors
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

// modgate: command-line front end.
//
//   modgate eval   --scenario xpm-epsilon --phi 1e-4 --a 1e-3 --eps 0.01 --alpha 0.05
//   modgate sweep  --config sweep.json --out sweep.csv
//   modgate sample --scenario xpm-delta ... --trials 1000000 --seed 7
//   modgate report --regime lossless
//
// Exit codes: 0 ok, 2 invalid input, 3 orthogonal selection, 4 zero probability, 5 I/O.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "modgate/modgate.hpp"

namespace {

using modgate::GateParams;
using nlohmann::json;

enum ExitCode { kOk = 0, kInvalid = 2, kOrthogonal = 3, kZeroProb = 4, kIo = 5 };

std::vector<double> parse_numbers(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception &) {
            throw modgate::InvalidInput("bad number '" + tok + "'");
        }
        if (used != tok.size()) throw modgate::InvalidInput("bad number '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

json load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw modgate::IoError("cannot read config '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw modgate::InvalidInput("config '" + path + "' is not valid JSON: " + e.what());
    }
}

struct GlobalFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> config;
};

// Flags shared by eval and sample. Every field is optional so that only flags
// actually given override the config file.
struct GateFlags {
    std::optional<std::string> scenario, pre, post, matrix, generator, g, regime;
    std::optional<double> theta, xi, phi, a, eps, delta, alpha, alpha_arg;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--scenario", scenario, "generic | xpm-epsilon | xpm-delta");
        cmd->add_option("--theta", theta, "system polar angle in [0, pi] (generic)");
        cmd->add_option("--xi", xi, "system relative phase (generic)");
        cmd->add_option("--pre", pre, "ancilla preselection re0,im0,re1,im1 (generic)");
        cmd->add_option("--post", post, "ancilla postselection re0,im0,re1,im1 (generic)");
        cmd->add_option("--matrix", matrix, "ancilla gate, 8 reals row-major (generic)");
        cmd->add_option("--generator", generator, "ancilla gate exp(-i g sigma): x | y | z");
        cmd->add_option("--g", g, "complex coupling re,im for --generator");
        cmd->add_option("--phi", phi, "cross phase");
        cmd->add_option("--a", a, "relative absorption (>= 0)");
        cmd->add_option("--eps", eps, "epsilon postselection angle (xpm-epsilon)");
        cmd->add_option("--delta", delta, "delta postselection angle (xpm-delta)");
        cmd->add_option("--alpha", alpha, "coherent amplitude magnitude, <= 0.3");
        cmd->add_option("--alpha-arg", alpha_arg, "coherent amplitude phase");
        cmd->add_option("--regime", regime, "auto | none | regime name");
    }

    void apply(GateParams &p) const {
        if (scenario) p.scenario = modgate::parse_scenario(*scenario);
        if (theta) p.theta = *theta;
        if (xi) p.xi = *xi;
        if (pre) p.pre = parse_numbers(*pre);
        if (post) p.post = parse_numbers(*post);
        if (matrix) p.matrix = parse_numbers(*matrix);
        if (generator) p.generator = *generator;
        if (g) p.coupling = parse_numbers(*g);
        if (phi) p.phi = *phi;
        if (a) p.a = *a;
        if (eps && delta) throw modgate::InvalidInput("give either --eps or --delta");
        if (eps) p.angle = *eps;
        if (delta) p.angle = *delta;
        if (alpha) p.alpha = *alpha;
        if (alpha_arg) p.alpha_arg = *alpha_arg;
        if (regime) p.regime = *regime;
    }
};

// Writes to --out when given, stdout otherwise.
class Output {
   public:
    explicit Output(const std::optional<std::string> &path) {
        if (path && *path != "-") {
            file_.open(*path, std::ios::binary | std::ios::trunc);
            if (!file_) throw modgate::IoError("cannot open '" + *path + "' for writing");
            path_ = *path;
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }
    void finish() {
        stream().flush();
        if (!stream()) throw modgate::IoError("failed writing '" + path_ + "'");
    }

   private:
    std::ofstream file_;
    std::string path_ = "<stdout>";
};

modgate::OutputFormat format_or(const GlobalFlags &gf, const json &cfg, bool &given) {
    given = true;
    if (gf.format) return modgate::parse_format(*gf.format);
    if (cfg.is_object() && cfg.contains("format")) {
        return modgate::parse_format(cfg.at("format").get<std::string>());
    }
    given = false;
    return modgate::OutputFormat::Csv;
}

std::optional<std::string> out_or(const GlobalFlags &gf, const json &cfg) {
    if (gf.out) return gf.out;
    if (cfg.is_object() && cfg.contains("out")) return cfg.at("out").get<std::string>();
    return std::nullopt;
}

void write_flat(std::ostream &os, const nlohmann::ordered_json &j, bool has_format,
                modgate::OutputFormat format) {
    if (!has_format) {
        for (const auto &[key, val] : j.items()) {
            os << key << ": ";
            if (val.is_null()) {
                os << "undefined";
            } else if (val.is_number_float()) {
                os << modgate::detail::format_number(val.get<double>());
            } else if (val.is_array()) {
                for (std::size_t k = 0; k < val.size(); k++) {
                    os << (k ? " " : "") << modgate::detail::format_number(val[k].get<double>());
                }
            } else if (val.is_string()) {
                os << val.get<std::string>();
            } else {
                os << val.dump();
            }
            os << '\n';
        }
    } else if (format == modgate::OutputFormat::JsonLines) {
        os << j.dump() << '\n';
    } else {
        std::string header, row;
        bool first = true;
        for (const auto &[key, val] : j.items()) {
            if (val.is_array()) {
                for (std::size_t k = 0; k < val.size(); k++) {
                    header += (first ? "" : ",") + key + "_" + std::to_string(k);
                    row += (first ? "" : ",") + modgate::detail::format_number(val[k].get<double>());
                    first = false;
                }
                continue;
            }
            header += (first ? "" : ",") + key;
            std::string cell;
            if (val.is_number_float()) cell = modgate::detail::format_number(val.get<double>());
            else if (val.is_string()) cell = val.get<std::string>();
            else if (!val.is_null()) cell = val.dump();
            row += (first ? "" : ",") + cell;
            first = false;
        }
        os << header << '\n' << row << '\n';
    }
}

int outcome_exit(const modgate::GateOutcome &o) {
    if (!o.modular) {
        std::cerr << "modgate: pre- and postselection are orthogonal; modular value undefined\n";
        return kOrthogonal;
    }
    if (!o.final_state) {
        std::cerr << "modgate: postselection success probability is zero\n";
        return kZeroProb;
    }
    return kOk;
}

int cmd_eval(const GlobalFlags &gf, const GateFlags &flags) {
    json cfg = gf.config ? load_config(*gf.config) : json::object();
    GateParams p;
    p.merge_json(cfg);
    flags.apply(p);
    bool has_format = false;
    auto format = format_or(gf, cfg, has_format);
    modgate::EvalResult r = modgate::run_eval(p);
    Output out(out_or(gf, cfg));
    write_flat(out.stream(), modgate::eval_to_json(r), has_format, format);
    out.finish();
    return outcome_exit(r.outcome);
}

int cmd_sample(const GlobalFlags &gf, const GateFlags &flags,
               const std::optional<std::uint64_t> &trials, const std::optional<std::string> &bases) {
    json cfg = gf.config ? load_config(*gf.config) : json::object();
    GateParams p;
    p.merge_json(cfg);
    flags.apply(p);
    modgate::SampleConfig sc;
    if (cfg.contains("trials")) sc.trials = cfg.at("trials").get<std::uint64_t>();
    if (cfg.contains("seed")) sc.seed = cfg.at("seed").get<std::uint64_t>();
    if (cfg.contains("bases")) sc.bases = cfg.at("bases").get<std::string>();
    if (trials) sc.trials = *trials;
    if (gf.seed) sc.seed = *gf.seed;
    if (bases) sc.bases = *bases;
    bool has_format = false;
    auto format = format_or(gf, cfg, has_format);

    modgate::GateInstance inst = modgate::build_instance(p);
    modgate::GateOutcome o = modgate::apply_and_postselect(inst.prep, inst.selection, inst.gate);
    modgate::SampleEstimate e = modgate::run_sample(o, sc);

    using J = nlohmann::ordered_json;
    auto opt = [](const std::optional<double> &x) { return x ? J(*x) : J(nullptr); };
    J j;
    j["trials"] = e.trials;
    j["seed"] = sc.seed;
    j["bases"] = sc.bases;
    j["p_exact"] = o.success_probability;
    j["successes"] = e.successes;
    j["p_hat"] = e.p_hat;
    j["p_stderr"] = e.p_stderr;
    if (o.final_state) {
        auto b = modgate::bloch_vector(*o.final_state);
        j["bloch_x"] = b[0];
        j["bloch_y"] = b[1];
        j["bloch_z"] = b[2];
        j["theta_f"] = std::acos(std::clamp(b[2], -1.0, 1.0));
        j["phase"] = std::atan2(b[1], b[0]);
    }
    const char *axes[] = {"x", "y", "z"};
    for (int k = 0; k < 3; k++) {
        j[std::string("bloch_") + axes[k] + "_hat"] = opt(e.bloch_hat[k]);
        j[std::string("bloch_") + axes[k] + "_stderr"] = opt(e.bloch_stderr[k]);
    }
    j["theta_f_hat"] = opt(e.theta_f_hat);
    j["theta_f_stderr"] = opt(e.theta_f_stderr);
    j["phase_hat"] = opt(e.phase_hat);
    j["phase_stderr"] = opt(e.phase_stderr);

    Output out(out_or(gf, cfg));
    write_flat(out.stream(), j, has_format, format);
    out.finish();
    if (!o.final_state) {
        std::cerr << "modgate: postselection success probability is zero; tomography omitted\n";
        return kZeroProb;
    }
    return kOk;
}

struct SweepFlags {
    std::optional<std::string> scenario, phi, a, eps, delta, alpha, alpha_arg, pre, post, regime;
    std::optional<unsigned> threads;
};

int cmd_sweep(const GlobalFlags &gf, const SweepFlags &f) {
    json cfg = gf.config ? load_config(*gf.config) : json::object();
    modgate::SweepConfig c = modgate::SweepConfig::from_json(cfg);
    if (f.scenario) c.scenario = modgate::parse_scenario(*f.scenario);
    if (f.phi) c.phi = modgate::Grid::parse(*f.phi);
    if (f.a) c.a = modgate::Grid::parse(*f.a);
    if (f.eps && f.delta) throw modgate::InvalidInput("give either --eps or --delta");
    if (f.eps) c.angle = modgate::Grid::parse(*f.eps);
    if (f.delta) c.angle = modgate::Grid::parse(*f.delta);
    if (f.alpha) c.alpha_abs = modgate::Grid::parse(*f.alpha);
    if (f.alpha_arg) c.alpha_arg = modgate::Grid::parse(*f.alpha_arg);
    if (f.pre) c.pre = modgate::parse_state(parse_numbers(*f.pre));
    if (f.post) c.post = modgate::parse_state(parse_numbers(*f.post));
    if (f.regime) c.regime = *f.regime;
    if (f.threads) c.threads = *f.threads;
    if (gf.out) c.output_path = *gf.out;
    if (gf.format) c.format = modgate::parse_format(*gf.format);
    std::size_t n = modgate::run_sweep(c, std::cout);
    if (!c.output_path.empty() && c.output_path != "-") {
        std::cerr << "modgate: wrote " << n << " rows to " << c.output_path << '\n';
    }
    return kOk;
}

int cmd_report(const GlobalFlags &gf, const std::string &regime, const modgate::ReportOverrides &ov) {
    std::vector<modgate::RegimeId> ids;
    if (regime == "all") {
        ids.assign(std::begin(modgate::kAllRegimes), std::end(modgate::kAllRegimes));
        if (ov.phi || ov.a || ov.angle || ov.alpha) {
            throw modgate::InvalidInput("parameter overrides need a single --regime");
        }
    } else {
        auto id = modgate::parse_regime(regime);
        if (!id) throw modgate::InvalidInput("unknown regime '" + regime + "'");
        ids.push_back(*id);
    }
    Output out(gf.out);
    std::size_t passed = 0, total = 0;
    for (auto id : ids) {
        modgate::RegimeValidation v = modgate::validate_regime(id, ov);
        modgate::write_validation(out.stream(), v);
        for (const auto &c : v.checks) {
            total++;
            passed += c.pass ? 1 : 0;
        }
    }
    out.stream() << "summary: " << passed << "/" << total << " checks passed\n";
    out.finish();
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact simulator for postselection-controlled two-qubit gates"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalFlags gf;
    app.add_option("--seed", gf.seed, "random seed (sample)");
    app.add_option("--out", gf.out, "output file (default stdout)");
    app.add_option("--format", gf.format, "csv | json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    app.add_option("--config", gf.config, "JSON config file; flags override its keys");

    GateFlags eval_flags, sample_flags;
    CLI::App *eval = app.add_subcommand("eval", "evaluate one gate instance exactly");
    eval_flags.add_to(eval);

    CLI::App *sample = app.add_subcommand("sample", "seeded Monte Carlo postselection and tomography");
    sample_flags.add_to(sample);
    std::optional<std::uint64_t> trials;
    std::optional<std::string> bases;
    sample->add_option("--trials", trials, "number of trials (default 100000)");
    sample->add_option("--bases", bases, "measurement bases, subset of XYZ (default XYZ)");

    SweepFlags sf;
    CLI::App *sweep = app.add_subcommand("sweep", "evaluate a parameter grid into CSV / JSON lines");
    sweep->add_option("--scenario", sf.scenario, "generic | xpm-epsilon | xpm-delta");
    sweep->add_option("--phi", sf.phi, "grid: x | x,y,z | lo:hi:count[:lin|log]");
    sweep->add_option("--a", sf.a, "absorption grid");
    sweep->add_option("--eps", sf.eps, "epsilon grid");
    sweep->add_option("--delta", sf.delta, "delta grid");
    sweep->add_option("--alpha", sf.alpha, "|alpha| grid");
    sweep->add_option("--alpha-arg", sf.alpha_arg, "arg(alpha) grid");
    sweep->add_option("--pre", sf.pre, "ancilla preselection (generic)");
    sweep->add_option("--post", sf.post, "ancilla postselection (generic)");
    sweep->add_option("--regime", sf.regime, "auto | none | regime name");
    sweep->add_option("--threads", sf.threads, "worker threads (default: all cores)");

    std::string regime = "all";
    modgate::ReportOverrides ov;
    CLI::App *report = app.add_subcommand("report", "validate regime formulas against exact values");
    report->add_option("--regime", regime,
                       "all | eps-dominant | abs-dominant | lossless | delta-dominant | delta-abs-dominant");
    report->add_option("--phi", ov.phi, "override the canonical phi");
    report->add_option("--a", ov.a, "override the canonical a");
    report->add_option("--eps,--delta", ov.angle, "override the canonical postselection angle");
    report->add_option("--alpha", ov.alpha, "override the canonical |alpha| (0.05)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*eval) return cmd_eval(gf, eval_flags);
        if (*sample) return cmd_sample(gf, sample_flags, trials, bases);
        if (*sweep) return cmd_sweep(gf, sf);
        if (*report) return cmd_report(gf, regime, ov);
    } catch (const modgate::IoError &e) {
        std::cerr << "modgate: " << e.what() << '\n';
        return kIo;
    } catch (const modgate::OrthogonalSelection &e) {
        std::cerr << "modgate: " << e.what() << '\n';
        return kOrthogonal;
    } catch (const modgate::ZeroProbability &e) {
        std::cerr << "modgate: " << e.what() << '\n';
        return kZeroProb;
    } catch (const modgate::InvalidInput &e) {
        std::cerr << "modgate: invalid input: " << e.what() << '\n';
        return kInvalid;
    } catch (const modgate::HierarchyViolation &e) {
        std::cerr << "modgate: invalid input: " << e.what() << '\n';
        return kInvalid;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "modgate: invalid config: " << e.what() << '\n';
        return kInvalid;
    }
    return kInvalid;
}
