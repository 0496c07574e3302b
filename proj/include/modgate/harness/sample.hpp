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

#ifndef MODGATE_HARNESS_SAMPLE_HPP
#define MODGATE_HARNESS_SAMPLE_HPP

// Finite-count simulation of the postselection experiment.
//
// Each trial accepts with the exact success probability. Accepted trials are
// measured in one of the requested Pauli bases, cycling X, Y, Z in the order
// given, and the output state is reconstructed from the Bloch-vector means:
// theta_f = arccos(z), phase = atan2(y, x). No maximum-likelihood correction is
// applied, so estimates near the poles are biased at small counts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modgate/errors.hpp"
#include "modgate/harness/rng.hpp"
#include "modgate/modular_gate.hpp"

namespace modgate {

struct SampleConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::string bases = "XYZ";

    void validate() const {
        if (trials < 1) throw InvalidInput("trials must be at least 1");
        if (bases.empty()) throw InvalidInput("at least one measurement basis is required");
        for (std::size_t k = 0; k < bases.size(); k++) {
            char b = bases[k];
            if (b != 'X' && b != 'Y' && b != 'Z') {
                throw InvalidInput("bases must be drawn from X, Y, Z");
            }
            if (bases.find(b) != k) throw InvalidInput("bases must not repeat");
        }
    }
};

/// (x, y, z) of a pure qubit state.
inline std::array<double, 3> bloch_vector(const UnitVec2 &s) {
    Complex c = std::conj(s[0]) * s[1];
    return {2 * c.real(), 2 * c.imag(), std::norm(s[0]) - std::norm(s[1])};
}

struct SampleEstimate {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double p_hat = 0;
    double p_stderr = 0;
    std::array<std::uint64_t, 3> basis_counts{};
    std::array<std::optional<double>, 3> bloch_hat;
    std::array<std::optional<double>, 3> bloch_stderr;
    std::optional<double> theta_f_hat, theta_f_stderr;
    std::optional<double> phase_hat, phase_stderr;
};

/// Samples the postselection and tomography of `outcome` with a seeded stream.
///
/// Tomography fields stay empty when nothing was accepted, or when the bases
/// needed for an angle were not requested (theta_f needs Z, phase needs X and Y).
inline SampleEstimate run_sample(const GateOutcome &outcome, const SampleConfig &cfg) {
    cfg.validate();
    double p = outcome.success_probability;
    if (!(p >= 0 && p <= 1 + 1e-12)) {
        throw InvalidInput("success probability outside [0, 1]; the gate is not a contraction");
    }
    p = std::min(p, 1.0);  // rounding above 1
    Rng rng = Rng::substream(cfg.seed, 0);

    std::array<double, 3> bloch{};
    if (outcome.final_state) bloch = bloch_vector(*outcome.final_state);

    std::vector<int> axes;
    for (char b : cfg.bases) axes.push_back(b - 'X');

    SampleEstimate est;
    est.trials = cfg.trials;
    std::array<std::int64_t, 3> plus_minus{};
    std::size_t cursor = 0;
    for (std::uint64_t t = 0; t < cfg.trials; t++) {
        if (!rng.bernoulli(p)) continue;
        est.successes++;
        int axis = axes[cursor];
        cursor = (cursor + 1) % axes.size();
        est.basis_counts[axis]++;
        plus_minus[axis] += rng.bernoulli(0.5 * (1 + bloch[axis])) ? 1 : -1;
    }

    double n = static_cast<double>(cfg.trials);
    est.p_hat = static_cast<double>(est.successes) / n;
    est.p_stderr = std::sqrt(est.p_hat * (1 - est.p_hat) / n);

    for (int k = 0; k < 3; k++) {
        if (est.basis_counts[k] == 0) continue;
        double m = static_cast<double>(est.basis_counts[k]);
        double mean = static_cast<double>(plus_minus[k]) / m;
        est.bloch_hat[k] = mean;
        est.bloch_stderr[k] = std::sqrt(std::max(0.0, 1 - mean * mean) / m);
    }

    if (est.bloch_hat[2]) {
        double z = std::clamp(*est.bloch_hat[2], -1.0, 1.0);
        est.theta_f_hat = std::acos(z);
        double s = std::sqrt(1 - z * z);
        if (s > 0) est.theta_f_stderr = *est.bloch_stderr[2] / s;
    }
    if (est.bloch_hat[0] && est.bloch_hat[1]) {
        double x = *est.bloch_hat[0], y = *est.bloch_hat[1];
        double r2 = x * x + y * y;
        est.phase_hat = std::atan2(y, x);
        if (r2 > 0) {
            double sx = *est.bloch_stderr[0], sy = *est.bloch_stderr[1];
            est.phase_stderr = std::sqrt(y * y * sx * sx + x * x * sy * sy) / r2;
        }
    }
    return est;
}

}  // namespace modgate

#endif
