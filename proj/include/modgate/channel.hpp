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

#ifndef MODGATE_CHANNEL_HPP
#define MODGATE_CHANNEL_HPP

// Lossy phase shift: a relative phase phi accompanied by relative absorption a.
//
// The full channel has Kraus operators
//     K0 = diag(1, e^{-a} e^{i phi}),   K1 = diag(0, sqrt(1 - e^{-2a})).
// For a << 1 the K1 branch (the photon is absorbed) is rare and the gate is
// usually approximated by K0 alone, renormalized. For small a the commonly
// quoted first-order forms are (1 - a) e^{i phi} for the K0 entry and sqrt(2a)
// for K1; everything here uses the exact exponentials.

#include <cmath>

#include "modgate/errors.hpp"
#include "modgate/linalg.hpp"
#include "modgate/modular_gate.hpp"

namespace modgate {

struct PhaseAbsorbParams {
    double phi = 0;
    double a = 0;

    PhaseAbsorbParams() = default;
    PhaseAbsorbParams(double phi_, double a_) : phi(phi_), a(a_) {
        if (!std::isfinite(phi) || !std::isfinite(a)) {
            throw InvalidInput("phase and absorption must be finite");
        }
        if (a < 0) {
            throw InvalidInput("absorption must be non-negative");
        }
    }
};

/// Upper bound on `a` accepted by the small-absorption regime entry points.
inline constexpr double kSmallAbsorptionLimit = 0.5;

struct KrausPair {
    Operator2 k0;
    Operator2 k1;

    /// k0^dag k0 + k1^dag k1.
    Operator2 completeness() const { return k0.adjoint() * k0 + k1.adjoint() * k1; }
};

/// 2x2 Hermitian, unit trace.
class DensityMatrix2 {
   public:
    explicit DensityMatrix2(const Operator2 &rho) : rho_(rho) {}

    static DensityMatrix2 pure(const UnitVec2 &psi) { return DensityMatrix2(outer(psi, psi)); }

    const Operator2 &matrix() const { return rho_; }
    Complex operator()(std::size_t i, std::size_t j) const { return rho_(i, j); }
    double trace() const { return rho_.trace().real(); }

    /// Ascending eigenvalues.
    std::array<double, 2> eigenvalues() const { return hermitian_eigenvalues(rho_); }

    static std::array<double, 2> hermitian_eigenvalues(const Operator2 &h) {
        double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
        double half_gap = 0.5 * (h(0, 0).real() - h(1, 1).real());
        double radius = std::hypot(half_gap, std::abs(h(0, 1)));
        return {mean - radius, mean + radius};
    }

   private:
    Operator2 rho_;
};

/// 1/2 ||rho - sigma||_1.
inline double trace_distance(const DensityMatrix2 &rho, const DensityMatrix2 &sigma) {
    auto ev = DensityMatrix2::hermitian_eigenvalues(rho.matrix() - sigma.matrix());
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

/// diag(1, e^{-a} e^{i phi}).
inline Operator2 nonunitary_rz(const PhaseAbsorbParams &p) {
    return Operator2::diagonal({1.0, std::exp(Complex{-p.a, p.phi})});
}

/// diag(e^{-i phi/2}, e^{-a} e^{i phi/2}), i.e. e^{-i phi/2} * nonunitary_rz(p).
///
/// Modular values built from this form pick up the same global factor.
inline Operator2 nonunitary_rz_symmetric(const PhaseAbsorbParams &p) {
    return Operator2::diagonal(
        {std::polar(1.0, -p.phi / 2), std::exp(Complex{-p.a, p.phi / 2})});
}

inline KrausPair kraus_pair(const PhaseAbsorbParams &p) {
    // -expm1(-2a) = 1 - e^{-2a} without cancellation at small a.
    double loss = -std::expm1(-2 * p.a);
    return {nonunitary_rz(p), Operator2::diagonal({0.0, std::sqrt(loss)})};
}

/// rho = K0 psi psi^dag K0^dag + K1 psi psi^dag K1^dag.
inline DensityMatrix2 exact_channel_output(const PhaseAbsorbParams &p, const UnitVec2 &psi) {
    KrausPair k = kraus_pair(p);
    Operator2 proj = outer(psi, psi);
    Operator2 rho = k.k0 * proj * k.k0.adjoint() + k.k1 * proj * k.k1.adjoint();
    double tr = rho.trace().real();
    if (tr != 1.0) {
        rho = Complex{1.0 / tr} * rho;
    }
    return DensityMatrix2(rho);
}

/// Trace distance between the full channel output and the renormalized K0-only state.
inline double single_kraus_gap(const PhaseAbsorbParams &p, const UnitVec2 &psi) {
    UnitVec2 kept = UnitVec2::normalized(nonunitary_rz(p) * psi.vec());
    return trace_distance(exact_channel_output(p, psi), DensityMatrix2::pure(kept));
}

/// The lossy phase gate applied directly to the system, without any ancilla.
struct BaselineResult {
    UnitVec2 state;      // K0|psi>/sqrt(p_n)
    double p_n;          // cos^2(theta/2) + e^{-2a} sin^2(theta/2)
    double delta_theta;  // 2 atan(e^{-a} tan(theta/2)) - theta
};

inline BaselineResult baseline_direct(const PhaseAbsorbParams &p, const SystemPrep &prep) {
    double c = std::cos(prep.theta() / 2);
    double s = std::sin(prep.theta() / 2);
    double damp = std::exp(-p.a);
    Vec2 out = nonunitary_rz(p) * prep.state().vec();
    double p_n = c * c + damp * damp * s * s;
    double delta = 2 * std::atan2(damp * s, c) - prep.theta();
    return {UnitVec2::normalized(out), p_n, delta};
}

}  // namespace modgate

#endif
