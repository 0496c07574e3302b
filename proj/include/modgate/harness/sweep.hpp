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

#ifndef MODGATE_HARNESS_SWEEP_HPP
#define MODGATE_HARNESS_SWEEP_HPP

// Parameter sweeps over the gate scenarios with a fixed 21-column schema.
//
// Grid points are enumerated in lexicographic order over
// (phi, a, angle, alpha_abs, alpha_arg), last index fastest. Points are
// evaluated concurrently and written back in grid order.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"
#include "modgate/channel.hpp"
#include "modgate/errors.hpp"
#include "modgate/modular_gate.hpp"
#include "modgate/xpm.hpp"

namespace modgate {

enum class Scenario { GenericGate, XpmEpsilon, XpmDelta };
enum class OutputFormat { Csv, JsonLines };

inline std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::GenericGate:
            return "generic";
        case Scenario::XpmEpsilon:
            return "xpm-epsilon";
        case Scenario::XpmDelta:
            return "xpm-delta";
    }
    return "";
}

inline Scenario parse_scenario(std::string_view s) {
    if (s == "generic") return Scenario::GenericGate;
    if (s == "xpm-epsilon") return Scenario::XpmEpsilon;
    if (s == "xpm-delta") return Scenario::XpmDelta;
    throw InvalidInput("unknown scenario '" + std::string(s) + "'");
}

inline OutputFormat parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json-lines") return OutputFormat::JsonLines;
    throw InvalidInput("unknown format '" + std::string(s) + "'");
}

/// Sorted-as-given list of values for one swept parameter.
struct Grid {
    std::vector<double> values;

    static Grid list(std::vector<double> v) {
        for (double x : v) {
            if (!std::isfinite(x)) {
                throw InvalidInput("grid values must be finite");
            }
        }
        return {std::move(v)};
    }

    /// `count` points from `lo` to `hi` inclusive, evenly spaced or log-spaced.
    static Grid range(double lo, double hi, int count, bool log_scale) {
        if (count < 1) {
            throw InvalidInput("grid count must be at least 1");
        }
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            throw InvalidInput("grid endpoints must be finite");
        }
        if (log_scale && !(lo > 0 && hi > 0)) {
            throw InvalidInput("log grid requires positive endpoints");
        }
        std::vector<double> v;
        v.reserve(count);
        for (int k = 0; k < count; k++) {
            double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
            if (log_scale) {
                v.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
            } else {
                v.push_back(lo + t * (hi - lo));
            }
        }
        // Land exactly on the endpoints.
        v.front() = lo;
        if (count > 1) v.back() = hi;
        return {std::move(v)};
    }

    /// Accepts "x", "x,y,z" or "lo:hi:count[:lin|log]".
    static Grid parse(std::string_view text) {
        std::string s(text);
        auto to_double = [](const std::string &tok) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception &) {
                throw InvalidInput("bad number '" + tok + "' in grid");
            }
            if (used != tok.size()) {
                throw InvalidInput("bad number '" + tok + "' in grid");
            }
            return v;
        };
        auto split = [](const std::string &str, char sep) {
            std::vector<std::string> out;
            std::stringstream ss(str);
            std::string tok;
            while (std::getline(ss, tok, sep)) out.push_back(tok);
            return out;
        };
        if (s.find(':') != std::string::npos) {
            auto parts = split(s, ':');
            if (parts.size() < 3 || parts.size() > 4) {
                throw InvalidInput("range grid must be lo:hi:count[:lin|log]");
            }
            double count = to_double(parts[2]);
            if (count != std::floor(count)) {
                throw InvalidInput("grid count must be an integer");
            }
            bool log_scale = false;
            if (parts.size() == 4) {
                if (parts[3] == "log") {
                    log_scale = true;
                } else if (parts[3] != "lin" && parts[3] != "linear") {
                    throw InvalidInput("grid scale must be lin or log");
                }
            }
            return range(to_double(parts[0]), to_double(parts[1]), static_cast<int>(count),
                         log_scale);
        }
        std::vector<double> v;
        for (const auto &tok : split(s, ',')) v.push_back(to_double(tok));
        if (v.empty()) throw InvalidInput("empty grid");
        return list(std::move(v));
    }

    /// Number, array of numbers, grid string, or {"min","max","count","scale"}.
    static Grid from_json(const nlohmann::json &j) {
        if (j.is_number()) return list({j.get<double>()});
        if (j.is_string()) return parse(j.get<std::string>());
        if (j.is_array()) {
            std::vector<double> v;
            for (const auto &x : j) {
                if (!x.is_number()) throw InvalidInput("grid arrays must hold numbers");
                v.push_back(x.get<double>());
            }
            return list(std::move(v));
        }
        if (j.is_object()) {
            std::string scale = j.value("scale", std::string("linear"));
            if (scale != "linear" && scale != "lin" && scale != "log") {
                throw InvalidInput("grid scale must be linear or log");
            }
            if (!j.contains("min") || !j.contains("max") || !j.contains("count")) {
                throw InvalidInput("range grid needs min, max and count");
            }
            return range(j.at("min").get<double>(), j.at("max").get<double>(),
                         j.at("count").get<int>(), scale == "log");
        }
        throw InvalidInput("unsupported grid specification");
    }
};

/// Parses "re0,im0,re1,im1" (or the 4-element JSON array) into a normalized state.
inline UnitVec2 parse_state(const std::vector<double> &v) {
    if (v.size() != 4) {
        throw InvalidInput("a qubit state needs 4 numbers: re0,im0,re1,im1");
    }
    return UnitVec2::normalized(Vec2({Complex{v[0], v[1]}, Complex{v[2], v[3]}}));
}

struct SweepConfig {
    Scenario scenario = Scenario::XpmEpsilon;
    Grid phi{{0.0}};
    Grid a{{0.0}};
    Grid angle{};  // eps or delta; required for the xpm scenarios, unused for generic
    Grid alpha_abs{{0.0}};
    Grid alpha_arg{{0.0}};
    std::optional<UnitVec2> pre;   // generic only
    std::optional<UnitVec2> post;  // generic only
    std::string regime = "auto";   // "auto", "none" or a regime name
    std::string output_path;       // empty or "-" for stdout
    OutputFormat format = OutputFormat::Csv;
    unsigned threads = 0;          // 0 = hardware concurrency

    void validate() const {
        auto nonempty = [](const Grid &g, const char *name) {
            if (g.values.empty()) throw InvalidInput(std::string("grid '") + name + "' is empty");
        };
        nonempty(phi, "phi");
        nonempty(a, "a");
        nonempty(alpha_abs, "alpha_abs");
        nonempty(alpha_arg, "alpha_arg");
        for (double x : a.values) {
            if (x < 0) throw InvalidInput("absorption must be non-negative");
        }
        for (double x : alpha_abs.values) {
            if (x < 0) throw InvalidInput("alpha_abs must be non-negative");
        }
        if (scenario == Scenario::GenericGate) {
            if (!pre || !post) {
                throw InvalidInput("generic sweeps need 'pre' and 'post' ancilla states");
            }
        } else {
            nonempty(angle, scenario == Scenario::XpmEpsilon ? "eps" : "delta");
            for (double x : alpha_abs.values) {
                if (x > kMaxCoherentAmplitude) {
                    throw InvalidInput("alpha_abs above the one-photon truncation limit 0.3");
                }
            }
            for (double x : angle.values) {
                if (std::abs(x) >= std::numbers::pi / 2) {
                    throw InvalidInput("postselection angle must satisfy |angle| < pi/2");
                }
            }
        }
        if (regime != "auto" && regime != "none") {
            auto id = parse_regime(regime);
            if (!id) throw InvalidInput("unknown regime '" + regime + "'");
            FamilyKind want =
                scenario == Scenario::XpmDelta ? FamilyKind::Delta : FamilyKind::Epsilon;
            if (scenario == Scenario::GenericGate || regime_family(*id) != want) {
                throw InvalidInput("regime '" + regime + "' does not apply to this scenario");
            }
        }
    }

    std::size_t point_count() const {
        std::size_t angles = scenario == Scenario::GenericGate ? 1 : angle.values.size();
        return phi.values.size() * a.values.size() * angles * alpha_abs.values.size() *
               alpha_arg.values.size();
    }

    /// Reads a JSON sweep description. Unknown keys are rejected.
    static SweepConfig from_json(const nlohmann::json &j) {
        if (!j.is_object()) throw InvalidInput("sweep config must be a JSON object");
        SweepConfig c;
        for (const auto &[key, val] : j.items()) {
            if (key == "scenario") {
                c.scenario = parse_scenario(val.get<std::string>());
            } else if (key == "phi") {
                c.phi = Grid::from_json(val);
            } else if (key == "a") {
                c.a = Grid::from_json(val);
            } else if (key == "eps" || key == "delta" || key == "angle") {
                c.angle = Grid::from_json(val);
            } else if (key == "alpha" || key == "alpha_abs") {
                c.alpha_abs = Grid::from_json(val);
            } else if (key == "alpha_arg") {
                c.alpha_arg = Grid::from_json(val);
            } else if (key == "pre") {
                c.pre = parse_state(val.get<std::vector<double>>());
            } else if (key == "post") {
                c.post = parse_state(val.get<std::vector<double>>());
            } else if (key == "regime") {
                c.regime = val.get<std::string>();
            } else if (key == "out") {
                c.output_path = val.get<std::string>();
            } else if (key == "format") {
                c.format = parse_format(val.get<std::string>());
            } else if (key == "threads") {
                c.threads = val.get<unsigned>();
            } else if (key == "seed") {
                // Sweeps are exact; accepted for config sharing with `sample`.
            } else {
                throw InvalidInput("unknown sweep config key '" + key + "'");
            }
        }
        return c;
    }
};

inline constexpr std::array<std::string_view, 21> kSweepColumns = {
    "scenario",       "phi",           "a",         "angle_kind",  "angle",
    "alpha_abs",      "alpha_arg",     "rm_re",     "rm_im",       "rm_abs",
    "rm_arg",         "p_exact",       "theta_m",   "omega_m",     "approx_rm_abs",
    "approx_rm_arg",  "p_approx",      "mag_rel_err", "phase_diff", "amplification",
    "effective_absorption"};

struct SweepRow {
    std::string scenario;
    double phi = 0;
    double a = 0;
    std::string angle_kind;  // "epsilon", "delta" or empty
    std::optional<double> angle;
    double alpha_abs = 0;
    double alpha_arg = 0;
    std::optional<double> rm_re, rm_im, rm_abs, rm_arg;
    double p_exact = 0;
    std::optional<double> theta_m, omega_m;
    std::optional<double> approx_rm_abs, approx_rm_arg, p_approx, mag_rel_err, phase_diff;
    std::optional<double> amplification, effective_absorption;
};

namespace detail {

inline std::optional<RegimeId> row_regime(const SweepConfig &c, FamilyKind kind, double phi,
                                          double a, double angle) {
    if (c.regime == "none") return std::nullopt;
    if (c.regime == "auto") return classify_regime(kind, phi, a, angle);
    RegimeId id = *parse_regime(c.regime);
    if (!hierarchy_holds({id, phi, a, angle})) return std::nullopt;
    return id;
}

inline SweepRow evaluate_point(const SweepConfig &c, double phi, double a,
                               std::optional<double> angle, double alpha_abs, double alpha_arg) {
    SweepRow row;
    row.scenario = scenario_name(c.scenario);
    row.phi = phi;
    row.a = a;
    row.angle = angle;
    row.alpha_abs = alpha_abs;
    row.alpha_arg = alpha_arg;

    PhaseAbsorbParams params(phi, a);
    std::optional<SystemPrep> prep;
    std::optional<SelectionPair> sel;
    std::optional<FamilyKind> kind;
    if (c.scenario == Scenario::GenericGate) {
        prep.emplace(2 * std::atan(alpha_abs), alpha_arg);
        sel.emplace(*c.pre, *c.post);
    } else {
        kind = c.scenario == Scenario::XpmEpsilon ? FamilyKind::Epsilon : FamilyKind::Delta;
        row.angle_kind = *kind == FamilyKind::Epsilon ? "epsilon" : "delta";
        prep = CoherentTruncation(std::polar(alpha_abs, alpha_arg)).prep();
        sel = xpm_selection({*kind, *angle});
    }

    GateOutcome out = apply_and_postselect(*prep, *sel, nonunitary_rz(params));
    row.p_exact = out.success_probability;
    if (!out.modular) {
        return row;
    }
    const ModularValue &m = *out.modular;
    row.rm_re = m.value.real();
    row.rm_im = m.value.imag();
    row.rm_abs = m.magnitude;
    row.rm_arg = m.omega_m;
    row.theta_m = out.theta_m;
    row.omega_m = out.omega_m;
    if (phi != 0) row.amplification = m.omega_m / phi;
    row.effective_absorption = 1 - m.magnitude;

    if (kind) {
        if (auto id = row_regime(c, *kind, phi, a, *angle)) {
            RegimeSpec spec{*id, phi, a, *angle};
            Complex approx = regime_approx(spec);
            row.approx_rm_abs = std::abs(approx);
            row.approx_rm_arg = principal_arg(approx);
            row.p_approx = regime_probability_approx(spec, alpha_abs);
            row.mag_rel_err = std::abs(m.magnitude - std::abs(approx)) / m.magnitude;
            row.phase_diff = wrap_angle(m.omega_m - principal_arg(approx));
        }
    }
    return row;
}

inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_field(const std::optional<double> &x) {
    return x ? format_number(*x) : std::string();
}

}  // namespace detail

/// Evaluates every grid point; rows come back in grid order.
inline std::vector<SweepRow> evaluate_sweep(const SweepConfig &c) {
    c.validate();
    std::vector<std::optional<double>> angles;
    if (c.scenario == Scenario::GenericGate) {
        angles.push_back(std::nullopt);
    } else {
        angles.assign(c.angle.values.begin(), c.angle.values.end());
    }

    struct Point {
        double phi, a;
        std::optional<double> angle;
        double alpha_abs, alpha_arg;
    };
    std::vector<Point> points;
    points.reserve(c.point_count());
    for (double phi : c.phi.values)
        for (double a : c.a.values)
            for (const auto &angle : angles)
                for (double r : c.alpha_abs.values)
                    for (double arg : c.alpha_arg.values) points.push_back({phi, a, angle, r, arg});

    std::vector<SweepRow> rows(points.size());
    unsigned threads = c.threads != 0 ? c.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, points.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < points.size(); k = next++) {
            const Point &p = points[k];
            rows[k] = detail::evaluate_point(c, p.phi, p.a, p.angle, p.alpha_abs, p.alpha_arg);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; t++) pool.emplace_back(worker);
    }
    return rows;
}

inline void write_csv_header(std::ostream &out) {
    for (std::size_t k = 0; k < kSweepColumns.size(); k++) {
        out << (k ? "," : "") << kSweepColumns[k];
    }
    out << '\n';
}

inline void write_csv_row(std::ostream &out, const SweepRow &r) {
    using detail::format_field;
    using detail::format_number;
    const std::string fields[] = {
        r.scenario,
        format_number(r.phi),
        format_number(r.a),
        r.angle_kind,
        format_field(r.angle),
        format_number(r.alpha_abs),
        format_number(r.alpha_arg),
        format_field(r.rm_re),
        format_field(r.rm_im),
        format_field(r.rm_abs),
        format_field(r.rm_arg),
        format_number(r.p_exact),
        format_field(r.theta_m),
        format_field(r.omega_m),
        format_field(r.approx_rm_abs),
        format_field(r.approx_rm_arg),
        format_field(r.p_approx),
        format_field(r.mag_rel_err),
        format_field(r.phase_diff),
        format_field(r.amplification),
        format_field(r.effective_absorption),
    };
    static_assert(std::size(fields) == kSweepColumns.size());
    for (std::size_t k = 0; k < std::size(fields); k++) {
        out << (k ? "," : "") << fields[k];
    }
    out << '\n';
}

inline nlohmann::ordered_json row_to_json(const SweepRow &r) {
    auto opt = [](const std::optional<double> &x) -> nlohmann::ordered_json {
        return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
    };
    auto str = [](const std::string &s) -> nlohmann::ordered_json {
        return s.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(s);
    };
    nlohmann::ordered_json j;
    j["scenario"] = r.scenario;
    j["phi"] = r.phi;
    j["a"] = r.a;
    j["angle_kind"] = str(r.angle_kind);
    j["angle"] = opt(r.angle);
    j["alpha_abs"] = r.alpha_abs;
    j["alpha_arg"] = r.alpha_arg;
    j["rm_re"] = opt(r.rm_re);
    j["rm_im"] = opt(r.rm_im);
    j["rm_abs"] = opt(r.rm_abs);
    j["rm_arg"] = opt(r.rm_arg);
    j["p_exact"] = r.p_exact;
    j["theta_m"] = opt(r.theta_m);
    j["omega_m"] = opt(r.omega_m);
    j["approx_rm_abs"] = opt(r.approx_rm_abs);
    j["approx_rm_arg"] = opt(r.approx_rm_arg);
    j["p_approx"] = opt(r.p_approx);
    j["mag_rel_err"] = opt(r.mag_rel_err);
    j["phase_diff"] = opt(r.phase_diff);
    j["amplification"] = opt(r.amplification);
    j["effective_absorption"] = opt(r.effective_absorption);
    return j;
}

inline void write_rows(std::ostream &out, const std::vector<SweepRow> &rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        write_csv_header(out);
        for (const auto &r : rows) write_csv_row(out, r);
    } else {
        for (const auto &r : rows) out << row_to_json(r).dump() << '\n';
    }
}

/// Evaluates the sweep and writes it to `c.output_path` (or `fallback` when unset).
/// Returns the number of data rows. Throws IoError when the file cannot be written.
inline std::size_t run_sweep(const SweepConfig &c, std::ostream &fallback) {
    std::vector<SweepRow> rows = evaluate_sweep(c);
    if (c.output_path.empty() || c.output_path == "-") {
        write_rows(fallback, rows, c.format);
        return rows.size();
    }
    std::ofstream f(c.output_path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open '" + c.output_path + "' for writing");
    }
    write_rows(f, rows, c.format);
    f.flush();
    if (!f) {
        throw IoError("failed writing '" + c.output_path + "'");
    }
    return rows.size();
}

}  // namespace modgate

#endif
