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

#ifndef MODGATE_MODULAR_GATE_HPP
#define MODGATE_MODULAR_GATE_HPP

// Postselection-controlled two-qubit gate.
//
// A system qubit |psi> controls a single-qubit operation N on an ancilla
// prepared in |i>. Projecting the ancilla onto <f| leaves the system in
//
//     <f|i> [cos(theta/2)|0> + N_m e^{i xi} sin(theta/2)|1>],
//
// where N_m = <f|N|i>/<f|i> is the modular value of N. Everything the
// surviving system state needs is carried by |N_m| (a polar rotation theta_m)
// and arg N_m (a z rotation Omega_m).

#include <cmath>
#include <numbers>
#include <optional>

#include "modgate/errors.hpp"
#include "modgate/linalg.hpp"

namespace modgate {

/// Overlaps at or below this magnitude are treated as orthogonal selections.
inline constexpr double kOrthogonalOverlap = 1e-14;
/// Success probabilities at or below this are treated as zero.
inline constexpr double kZeroProbability = 1e-28;

/// cos(theta/2)|0> + e^{i xi} sin(theta/2)|1>.
class SystemPrep {
   public:
    /// `theta` must lie in [0, pi]; `xi` is wrapped into (-pi, pi].
    SystemPrep(double theta, double xi) : theta_(theta), xi_(0) {
        if (!std::isfinite(theta) || !std::isfinite(xi)) {
            throw InvalidInput("system angles must be finite");
        }
        if (theta < 0 || theta > std::numbers::pi) {
            throw InvalidInput("theta must lie in [0, pi]");
        }
        xi_ = wrap_angle(xi);
    }

    double theta() const { return theta_; }
    double xi() const { return xi_; }

    UnitVec2 state() const {
        return UnitVec2(Vec2({std::cos(theta_ / 2), std::polar(std::sin(theta_ / 2), xi_)}));
    }

   private:
    double theta_;
    double xi_;
};

class SelectionPair {
   public:
    SelectionPair(const UnitVec2 &pre, const UnitVec2 &post)
        : pre_(pre), post_(post), overlap_(inner(post.vec(), pre.vec())) {}

    const UnitVec2 &pre() const { return pre_; }
    const UnitVec2 &post() const { return post_; }
    /// <f|i>.
    Complex overlap() const { return overlap_; }
    bool orthogonal() const { return std::abs(overlap_) <= kOrthogonalOverlap; }

   private:
    UnitVec2 pre_;
    UnitVec2 post_;
    Complex overlap_;
};

struct ModularValue {
    Complex value;
    double magnitude;
    double omega_m;  // principal argument, (-pi, pi]

    static ModularValue from(Complex v) { return {v, std::abs(v), principal_arg(v)}; }
};

/// Polar rotation induced on the surviving system qubit.
///
/// Uses the atan2 form
///     theta_m = 2 atan2((1 - m) sin(theta/2) cos(theta/2), cos^2(theta/2) + m sin^2(theta/2)),
/// which satisfies tan((theta - theta_m)/2) = m tan(theta/2) on (0, pi) and stays
/// finite at theta = pi. The result lies in (-pi, pi].
inline double theta_m(double magnitude, double theta) {
    if (!(magnitude >= 0) || !std::isfinite(magnitude)) {
        throw InvalidInput("modular value magnitude must be finite and non-negative");
    }
    if (!(theta >= 0 && theta <= std::numbers::pi)) {
        throw InvalidInput("theta must lie in [0, pi]");
    }
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return 2 * std::atan2((1 - magnitude) * s * c, c * c + magnitude * s * s);
}

struct GateOutcome {
    Vec2 unnormalized_final;
    double success_probability = 0;
    std::optional<UnitVec2> final_state;  // empty when the postselection never succeeds
    std::optional<ModularValue> modular;  // empty for orthogonal selections
    std::optional<double> theta_m;
    std::optional<double> omega_m;

    /// The normalized output state; throws ZeroProbability when there is none.
    const UnitVec2 &normalized() const {
        if (!final_state) {
            throw ZeroProbability("postselection success probability is zero");
        }
        return *final_state;
    }

    /// Throws OrthogonalSelection when the modular value is undefined.
    const ModularValue &modular_value() const {
        if (!modular) {
            throw OrthogonalSelection("modular value undefined for orthogonal selection");
        }
        return *modular;
    }
};

/// |0><0| (x) I + |1><1| (x) N, with the system as the control.
inline Operator4 controlled_gate(const Operator2 &n) {
    Operator4 r;
    r(0, 0) = 1;
    r(1, 1) = 1;
    for (std::size_t i = 0; i < 2; i++) {
        for (std::size_t j = 0; j < 2; j++) {
            r(2 + i, 2 + j) = n(i, j);
        }
    }
    return r;
}

/// exp(-i g O). Complex coupling strengths give nonunitary gates.
inline Operator2 generator_gate(const Operator2 &o, Complex g) {
    return mat_exp_2x2(Complex{0, -1} * g * o);
}

/// <f|N|i> / <f|i>. Throws OrthogonalSelection when |<f|i>| <= 1e-14.
inline ModularValue modular_value(const Operator2 &n, const SelectionPair &sel) {
    if (sel.orthogonal()) {
        throw OrthogonalSelection("pre- and postselection are orthogonal");
    }
    Complex num = inner(sel.post().vec(), n * sel.pre().vec());
    return ModularValue::from(num / sel.overlap());
}

/// Runs the joint gate on |psi> (x) |i> and projects the ancilla onto <f|.
///
/// The success probability is the squared norm of the projected state. It lies
/// in [0, 1] whenever N is a contraction (every physical Kraus operator is).
inline GateOutcome apply_and_postselect(const SystemPrep &prep, const SelectionPair &sel,
                                        const Operator2 &n) {
    Vec4 joint = controlled_gate(n) * tensor(prep.state().vec(), sel.pre().vec());
    const Vec2 &f = sel.post().vec();
    Vec2 out({std::conj(f[0]) * joint[0] + std::conj(f[1]) * joint[1],
              std::conj(f[0]) * joint[2] + std::conj(f[1]) * joint[3]});

    GateOutcome r;
    r.unnormalized_final = out;
    r.success_probability = out.norm_squared();
    if (r.success_probability > kZeroProbability) {
        r.final_state = UnitVec2::normalized(out);
    }
    if (!sel.orthogonal()) {
        r.modular = modular_value(n, sel);
        r.theta_m = theta_m(r.modular->magnitude, prep.theta());
        r.omega_m = r.modular->omega_m;
    }
    return r;
}

/// diag(e^{-i beta/2}, e^{i beta/2}).
inline Operator2 rotation_z(double beta) {
    return Operator2::diagonal({std::polar(1.0, -beta / 2), std::polar(1.0, beta / 2)});
}

inline Operator2 rotation_y(double beta) {
    double c = std::cos(beta / 2);
    double s = std::sin(beta / 2);
    return make_op2(c, -s, s, c);
}

/// The single-qubit rotations that reproduce the postselected output without an ancilla.
///
/// Applies a polar rotation by -theta_m about the equatorial axis perpendicular to
/// psi's azimuth, R_z(xi) R_y(-theta_m) R_z(-xi), followed by R_z(Omega_m). For xi = 0
/// this is exactly R_z(Omega_m) R_y(-theta_m)|psi>; for other xi a bare R_y would
/// tilt the state off its meridian.
inline UnitVec2 equivalent_local_rotations(const SystemPrep &prep, const ModularValue &modular) {
    double tm = theta_m(modular.magnitude, prep.theta());
    Operator2 polar = rotation_z(prep.xi()) * rotation_y(-tm) * rotation_z(-prep.xi());
    return UnitVec2::normalized(rotation_z(modular.omega_m) * polar * prep.state().vec());
}

}  // namespace modgate

#endif
