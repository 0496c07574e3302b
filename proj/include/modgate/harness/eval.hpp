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

#ifndef MODGATE_HARNESS_EVAL_HPP
#define MODGATE_HARNESS_EVAL_HPP

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "modgate/channel.hpp"
#include "modgate/errors.hpp"
#include "modgate/harness/sweep.hpp"
#include "modgate/modular_gate.hpp"
#include "modgate/xpm.hpp"

namespace modgate {

/// Everything needed to describe one gate instance on the command line.
///
/// Generic instances take the system angles (theta, xi), explicit ancilla states
/// and one of: a full matrix, a Pauli generator with complex coupling, or the
/// lossy phase gate (phi, a). XPM instances take (phi, a), the postselection
/// angle and the coherent amplitude.
struct GateParams {
    Scenario scenario = Scenario::XpmEpsilon;
    double theta = 0;
    double xi = 0;
    std::optional<std::vector<double>> pre;
    std::optional<std::vector<double>> post;
    std::optional<std::vector<double>> matrix;  // 8 reals, row-major (re, im) pairs
    std::optional<std::string> generator;      // "x", "y" or "z"
    std::vector<double> coupling{0.0, 0.0};    // complex g for the generator
    double phi = 0;
    double a = 0;
    std::optional<double> angle;
    double alpha = 0;
    double alpha_arg = 0;
    std::string regime = "auto";

    /// Overlays keys from a JSON object. Unknown keys are rejected.
    void merge_json(const nlohmann::json &j) {
        if (!j.is_object()) throw InvalidInput("config must be a JSON object");
        for (const auto &[key, val] : j.items()) {
            if (key == "scenario") scenario = parse_scenario(val.get<std::string>());
            else if (key == "theta") theta = val.get<double>();
            else if (key == "xi") xi = val.get<double>();
            else if (key == "pre") pre = val.get<std::vector<double>>();
            else if (key == "post") post = val.get<std::vector<double>>();
            else if (key == "matrix") matrix = val.get<std::vector<double>>();
            else if (key == "generator") generator = val.get<std::string>();
            else if (key == "g") coupling = val.get<std::vector<double>>();
            else if (key == "phi") phi = val.get<double>();
            else if (key == "a") a = val.get<double>();
            else if (key == "eps" || key == "delta" || key == "angle") angle = val.get<double>();
            else if (key == "alpha") alpha = val.get<double>();
            else if (key == "alpha_arg") alpha_arg = val.get<double>();
            else if (key == "regime") regime = val.get<std::string>();
            else if (key == "seed" || key == "trials" || key == "bases" || key == "out" ||
                     key == "format") {
                // Handled by the caller.
            } else {
                throw InvalidInput("unknown config key '" + key + "'");
            }
        }
    }
};

/// A fully validated gate instance.
struct GateInstance {
    SystemPrep prep;
    SelectionPair selection;
    Operator2 gate;
    std::optional<PhaseAbsorbParams> lossy;      // set when the gate is diag(1, e^{-a+i phi})
    std::optional<PostselectionFamily> family;   // xpm scenarios only
    double alpha_abs = 0;
};

inline Operator2 parse_matrix(const std::vector<double> &v) {
    if (v.size() != 8) {
        throw InvalidInput("a 2x2 matrix needs 8 numbers: re,im pairs in row-major order");
    }
    return make_op2({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
}

inline Operator2 parse_pauli(const std::string &name) {
    if (name == "x") return pauli::x();
    if (name == "y") return pauli::y();
    if (name == "z") return pauli::z();
    throw InvalidInput("generator must be x, y or z");
}

inline GateInstance build_instance(const GateParams &p) {
    if (p.scenario == Scenario::GenericGate) {
        if (!p.pre || !p.post) {
            throw InvalidInput("generic scenario needs --pre and --post ancilla states");
        }
        if (p.matrix && p.generator) {
            throw InvalidInput("give either --matrix or --generator, not both");
        }
        SystemPrep prep(p.theta, p.xi);
        SelectionPair sel(parse_state(*p.pre), parse_state(*p.post));
        if (p.matrix) {
            return {prep, sel, parse_matrix(*p.matrix), std::nullopt, std::nullopt, 0};
        }
        if (p.generator) {
            if (p.coupling.size() != 2) throw InvalidInput("--g needs re,im");
            Operator2 n =
                generator_gate(parse_pauli(*p.generator), Complex{p.coupling[0], p.coupling[1]});
            return {prep, sel, n, std::nullopt, std::nullopt, 0};
        }
        PhaseAbsorbParams lossy(p.phi, p.a);
        return {prep, sel, nonunitary_rz(lossy), lossy, std::nullopt, 0};
    }
    if (!p.angle) {
        throw InvalidInput(p.scenario == Scenario::XpmEpsilon ? "xpm-epsilon needs --eps"
                                                              : "xpm-delta needs --delta");
    }
    if (p.alpha < 0) throw InvalidInput("--alpha is a magnitude and must be non-negative");
    PhaseAbsorbParams lossy(p.phi, p.a);
    PostselectionFamily fam(
        p.scenario == Scenario::XpmEpsilon ? FamilyKind::Epsilon : FamilyKind::Delta, *p.angle);
    CoherentTruncation coh(std::polar(p.alpha, p.alpha_arg));
    return {coh.prep(), xpm_selection(fam), nonunitary_rz(lossy), lossy, fam, p.alpha};
}

struct EvalResult {
    GateInstance instance;
    GateOutcome outcome;
    std::optional<RegimeReport> regime;
    std::optional<BaselineResult> baseline;
};

inline EvalResult run_eval(const GateParams &p) {
    GateInstance inst = build_instance(p);
    EvalResult r{inst, apply_and_postselect(inst.prep, inst.selection, inst.gate), std::nullopt,
                 std::nullopt};
    if (inst.lossy) {
        r.baseline = baseline_direct(*inst.lossy, inst.prep);
    }
    if (inst.family && r.outcome.modular && p.regime != "none") {
        std::optional<RegimeId> id;
        if (p.regime == "auto") {
            id = classify_regime(inst.family->kind, p.phi, p.a, inst.family->angle);
        } else {
            id = parse_regime(p.regime);
            if (!id) throw InvalidInput("unknown regime '" + p.regime + "'");
            if (regime_family(*id) != inst.family->kind) {
                throw InvalidInput("regime '" + p.regime + "' does not apply to this scenario");
            }
        }
        if (id) {
            // An explicitly requested regime whose hierarchy fails is reported as an error.
            r.regime = regime_report({*id, p.phi, p.a, inst.family->angle},
                                     std::polar(p.alpha, p.alpha_arg));
        }
    }
    return r;
}

inline nlohmann::ordered_json eval_to_json(const EvalResult &r) {
    using J = nlohmann::ordered_json;
    const GateOutcome &o = r.outcome;
    J j;
    j["theta"] = r.instance.prep.theta();
    j["xi"] = r.instance.prep.xi();
    Complex ov = r.instance.selection.overlap();
    j["overlap_re"] = ov.real();
    j["overlap_im"] = ov.imag();
    if (o.modular) {
        j["nm_re"] = o.modular->value.real();
        j["nm_im"] = o.modular->value.imag();
        j["nm_abs"] = o.modular->magnitude;
        j["nm_arg"] = o.modular->omega_m;
        j["theta_m"] = *o.theta_m;
        j["omega_m"] = *o.omega_m;
    } else {
        j["nm_re"] = nullptr;
        j["nm_im"] = nullptr;
        j["nm_abs"] = nullptr;
        j["nm_arg"] = nullptr;
        j["theta_m"] = nullptr;
        j["omega_m"] = nullptr;
    }
    j["p"] = o.success_probability;
    if (o.final_state) {
        const UnitVec2 &s = *o.final_state;
        j["final"] = J::array({s[0].real(), s[0].imag(), s[1].real(), s[1].imag()});
    } else {
        j["final"] = nullptr;
    }
    if (r.baseline) {
        j["baseline_p_n"] = r.baseline->p_n;
        j["baseline_delta_theta"] = r.baseline->delta_theta;
    }
    if (r.regime) {
        const RegimeReport &g = *r.regime;
        j["regime"] = regime_name(g.spec.id);
        j["approx_rm_re"] = g.approx_rm.real();
        j["approx_rm_im"] = g.approx_rm.imag();
        j["approx_rm_abs"] = std::abs(g.approx_rm);
        j["approx_rm_arg"] = principal_arg(g.approx_rm);
        j["mag_rel_err"] = g.mag_rel_err;
        j["phase_diff"] = g.phase_diff;
        j["p_approx"] = g.p_approx;
        j["amplification"] = g.amplification ? J(*g.amplification) : J(nullptr);
        j["effective_absorption"] = g.effective_absorption;
    }
    return j;
}

/// "key: value" lines, numbers with 17 significant digits.
inline void write_eval_text(std::ostream &out, const EvalResult &r) {
    nlohmann::ordered_json j = eval_to_json(r);
    for (const auto &[key, val] : j.items()) {
        out << key << ": ";
        if (val.is_null()) {
            out << "undefined";
        } else if (val.is_number()) {
            out << detail::format_number(val.get<double>());
        } else if (val.is_array()) {
            for (std::size_t k = 0; k < val.size(); k++) {
                out << (k ? " " : "") << detail::format_number(val[k].get<double>());
            }
        } else {
            out << val.get<std::string>();
        }
        out << '\n';
    }
}

}  // namespace modgate

#endif
