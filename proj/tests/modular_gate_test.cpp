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

#include "modgate/modular_gate.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "modgate/xpm.hpp"
#include "oracle.hpp"

using namespace modgate;

namespace {

constexpr double kPi = std::numbers::pi;
const double kH = std::numbers::sqrt2 / 2;

void expect_near(Complex a, Complex b, double tol) { EXPECT_LE(std::abs(a - b), tol) << a << " vs " << b; }

struct Instance {
    SystemPrep prep;
    SelectionPair sel;
    Operator2 n;
};

// theta, xi, i, f and N all random; N is a general complex matrix.
Instance random_instance(Rng &rng) {
    SystemPrep prep(rng.uniform(0, kPi), rng.uniform(-kPi, kPi));
    return {prep, SelectionPair(oracle::random_state(rng), oracle::random_state(rng)),
            oracle::random_operator(rng)};
}

}  // namespace

TEST(controlled_gate, examples) {
    EXPECT_EQ((controlled_gate(Operator2::identity()) - Operator4::identity()).max_abs(), 0);

    Operator4 cnot;
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    EXPECT_EQ((controlled_gate(pauli::x()) - cnot).max_abs(), 0);

    Complex ph = std::polar(1.0, 0.7);
    EXPECT_EQ((controlled_gate(Operator2::diagonal({1, ph})) - Operator4::diagonal({1, 1, 1, ph})).max_abs(), 0);
}

TEST(controlled_gate, matches_projector_definition) {
    Rng rng(21);
    for (int k = 0; k < 100; k++) {
        Operator2 n = oracle::random_operator(rng);
        oracle::M4 ref = oracle::joint_gate(oracle::to_m2(n));
        Operator4 g = controlled_gate(n);
        for (int r = 0; r < 4; r++)
            for (int c = 0; c < 4; c++) EXPECT_EQ(g(r, c), ref[r][c]);
    }
}

TEST(generator_gate, examples) {
    EXPECT_LE((generator_gate(pauli::z(), 0) - Operator2::identity()).max_abs(), 0);

    double phi = 0.3, a = 0.1;
    Operator2 g = generator_gate(pauli::z(), Complex{phi, a} / 2.0);
    Complex global = std::exp(Complex{a, -phi} / 2.0);
    Operator2 target = global * Operator2::diagonal({1, std::exp(Complex{-a, phi})});
    EXPECT_LE((g - target).max_abs(), 1e-15);
    expect_near(g(1, 1) / g(0, 0), std::exp(Complex{-a, phi}), 1e-15);

    EXPECT_LE((generator_gate(pauli::x(), kPi / 2) - Complex{0, -1} * pauli::x()).max_abs(), 1e-15);
}

TEST(modular_value, examples) {
    Rng rng(22);
    SelectionPair sel(oracle::random_state(rng), oracle::random_state(rng));
    expect_near(modular_value(Operator2::identity(), sel).value, 1, 1e-14);

    UnitVec2 minus({kH, -kH});
    ModularValue cancel = modular_value(Operator2::diagonal({1, -1}), SelectionPair(minus, minus));
    EXPECT_LE(cancel.magnitude, 1e-16);

    // Brute-force <f|N|i>/<f|i> written out component by component.
    double eps = 0.01, a = 1e-3, phi = 1e-4;
    Complex z = std::exp(Complex{-a, phi});
    Complex f0 = kH * (std::cos(eps) - std::sin(eps)), f1 = kH * (std::cos(eps) + std::sin(eps));
    Complex ref = (f0 * kH - f1 * kH * z) / (f0 * kH - f1 * kH);
    ModularValue m = modular_value(Operator2::diagonal({1, z}), xpm_selection(PostselectionFamily::epsilon(eps)));
    expect_near(m.value, ref, 1e-13);
    // mpmath, 30 digits.
    expect_near(m.value, Complex{0.949526655190852846, 0.00504478601455725032}, 1e-12);
    EXPECT_LT(m.magnitude, 1);
    EXPECT_NEAR(m.omega_m, std::arg(m.value), 0);
}

TEST(modular_value, orthogonal_selection_throws) {
    UnitVec2 zero({1, 0}), one({0, 1});
    EXPECT_THROW(modular_value(Operator2::identity(), SelectionPair(zero, one)), OrthogonalSelection);
    EXPECT_TRUE(SelectionPair(zero, one).orthogonal());
    EXPECT_FALSE(SelectionPair(zero, UnitVec2({std::sqrt(1 - 1e-20), 1e-10})).orthogonal());
}

TEST(apply_and_postselect, theta_zero_leaves_system_in_ground_state) {
    Rng rng(23);
    for (int k = 0; k < 20; k++) {
        SelectionPair sel(oracle::random_state(rng), oracle::random_state(rng));
        GateOutcome out = apply_and_postselect(SystemPrep(0, 0.4), sel, oracle::random_operator(rng));
        EXPECT_NEAR(out.success_probability, std::norm(sel.overlap()), 1e-15);
        EXPECT_NEAR(fidelity(out.normalized(), UnitVec2({1, 0})), 1, 1e-15);
    }
}

TEST(apply_and_postselect, orthogonal_identity_has_zero_probability) {
    UnitVec2 zero({1, 0}), one({0, 1});
    GateOutcome out = apply_and_postselect(SystemPrep(1.0, 0), SelectionPair(zero, one), Operator2::identity());
    EXPECT_EQ(out.success_probability, 0);
    EXPECT_THROW(out.normalized(), ZeroProbability);
    EXPECT_THROW(out.modular_value(), OrthogonalSelection);
    EXPECT_FALSE(out.theta_m);
}

TEST(apply_and_postselect, matches_joint_state_oracle) {
    // The fixed example first, then random instances.
    SystemPrep prep(kPi / 2, 0);
    SelectionPair sel = xpm_selection(PostselectionFamily::epsilon(0.1));
    Operator2 n = Operator2::diagonal({1, std::polar(1.0, 0.3)});
    GateOutcome out = apply_and_postselect(prep, sel, n);
    oracle::V2 ref = oracle::postselected({prep.state()[0], prep.state()[1]}, {sel.pre()[0], sel.pre()[1]},
                                          {sel.post()[0], sel.post()[1]}, oracle::to_m2(n));
    for (int k = 0; k < 2; k++) expect_near(out.unnormalized_final[k], ref[k], 1e-15);

    Rng rng(24);
    for (int t = 0; t < 1000; t++) {
        Instance in = random_instance(rng);
        GateOutcome o = apply_and_postselect(in.prep, in.sel, in.n);
        UnitVec2 psi = in.prep.state();
        oracle::V2 r = oracle::postselected({psi[0], psi[1]}, {in.sel.pre()[0], in.sel.pre()[1]},
                                            {in.sel.post()[0], in.sel.post()[1]}, oracle::to_m2(in.n));
        for (int k = 0; k < 2; k++) expect_near(o.unnormalized_final[k], r[k], 1e-13);
        EXPECT_NEAR(o.success_probability, std::norm(r[0]) + std::norm(r[1]), 1e-13);
    }
}

TEST(apply_and_postselect, closed_form_probability) {
    Rng rng(25);
    for (int t = 0; t < 1000; t++) {
        Instance in = random_instance(rng);
        GateOutcome o = apply_and_postselect(in.prep, in.sel, in.n);
        double c = std::cos(in.prep.theta() / 2), s = std::sin(in.prep.theta() / 2);
        double m = o.modular_value().magnitude;
        double closed = std::norm(in.sel.overlap()) * (c * c + m * m * s * s);
        EXPECT_LE(std::abs(closed - o.success_probability), 1e-10 * o.success_probability);
    }
}

TEST(apply_and_postselect, probability_in_unit_interval_for_contractions) {
    Rng rng(26);
    for (int t = 0; t < 1000; t++) {
        SystemPrep prep(rng.uniform(0, kPi), rng.uniform(-kPi, kPi));
        SelectionPair sel(oracle::random_state(rng), oracle::random_state(rng));
        GateOutcome o = apply_and_postselect(prep, sel, oracle::random_contraction(rng));
        EXPECT_GE(o.success_probability, 0);
        EXPECT_LE(o.success_probability, 1 + 1e-15);
    }
}

TEST(apply_and_postselect, global_phase_covariance) {
    Rng rng(27);
    for (int t = 0; t < 200; t++) {
        Instance in = random_instance(rng);
        Complex g = std::polar(1.0, rng.uniform(-kPi, kPi));
        // A phase on |f> cancels in N_m; a phase on N multiplies it.
        SelectionPair rotated(in.sel.pre(), UnitVec2(g * in.sel.post().vec()));
        GateOutcome base = apply_and_postselect(in.prep, in.sel, in.n);
        GateOutcome moved = apply_and_postselect(in.prep, rotated, in.n);
        expect_near(moved.modular_value().value, base.modular_value().value, 1e-12 * base.modular_value().magnitude);
        EXPECT_NEAR(moved.success_probability, base.success_probability, 1e-12);
        EXPECT_NEAR(fidelity(moved.normalized(), base.normalized()), 1, 1e-12);

        ModularValue scaled = modular_value(g * in.n, in.sel);
        expect_near(scaled.value, g * base.modular_value().value, 1e-12 * base.modular_value().magnitude);
    }
}

TEST(theta_m, examples) {
    for (double th : {0.0, 0.1, kPi / 2, 3.0, kPi}) {
        EXPECT_NEAR(theta_m(1, th), 0, 1e-15);
        EXPECT_NEAR(theta_m(0, th), th, 1e-15);
    }
    EXPECT_NEAR(theta_m(2, kPi / 2), -0.643501108793284387, 1e-15);
    EXPECT_NEAR(theta_m(2, kPi / 2), 2 * std::atan(-1.0 / 3), 1e-15);
    EXPECT_THROW(theta_m(-1, 0.3), InvalidInput);
    EXPECT_THROW(theta_m(1, 4.0), InvalidInput);
}

TEST(theta_m, satisfies_tangent_relation) {
    Rng rng(28);
    for (int t = 0; t < 1000; t++) {
        double th = rng.uniform(0.01, kPi - 0.01);
        double m = std::exp(rng.uniform(-5, 5));
        double tm = theta_m(m, th);
        EXPECT_NEAR(std::tan((th - tm) / 2), m * std::tan(th / 2), 1e-9 * (1 + m * std::tan(th / 2)));
    }
}

TEST(theta_m, extreme_magnitudes) {
    // theta - theta_m = 2 atan(m tan(theta/2)), so the deviation from the limit is
    // bounded by 2 m tan(theta/2) (small m) or 2 cot(theta/2)/m (large m).
    for (double th : {0.1, kPi / 2, kPi - 0.1}) {
        double small = 1e-6, large = 1e6;
        EXPECT_LE(std::abs(theta_m(small, th) - th), 2 * small * std::tan(th / 2) * (1 + 1e-9));
        EXPECT_LE(std::abs(theta_m(large, th) - (th - kPi)), 2 / (large * std::tan(th / 2)) * (1 + 1e-9));
    }
}

TEST(equivalent_local_rotations, trivial_cases) {
    SystemPrep prep(1.1, 0.4);
    UnitVec2 same = equivalent_local_rotations(prep, ModularValue::from(1));
    EXPECT_NEAR(fidelity(same, prep.state()), 1, 1e-15);

    UnitVec2 phased = equivalent_local_rotations(prep, ModularValue::from(std::polar(1.0, 0.25)));
    UnitVec2 expected = UnitVec2::normalized(Operator2::diagonal({1, std::polar(1.0, 0.25)}) * prep.state().vec());
    EXPECT_NEAR(fidelity(phased, expected), 1, 1e-15);
}

TEST(equivalent_local_rotations, reproduces_postselected_state) {
    Rng rng(29);
    for (int t = 0; t < 1000; t++) {
        Instance in = random_instance(rng);
        GateOutcome o = apply_and_postselect(in.prep, in.sel, in.n);
        UnitVec2 local = equivalent_local_rotations(in.prep, o.modular_value());
        EXPECT_GE(fidelity(local, o.normalized()), 1 - 1e-10);
    }
}

TEST(equivalent_local_rotations, bare_y_rotation_when_azimuth_is_zero) {
    Rng rng(30);
    for (int t = 0; t < 200; t++) {
        SystemPrep prep(rng.uniform(0, kPi), 0);
        SelectionPair sel(oracle::random_state(rng), oracle::random_state(rng));
        GateOutcome o = apply_and_postselect(prep, sel, oracle::random_operator(rng));
        Vec2 bare = rotation_z(o.modular_value().omega_m) * rotation_y(-*o.theta_m) * prep.state().vec();
        EXPECT_GE(fidelity(UnitVec2::normalized(bare), o.normalized()), 1 - 1e-10);
    }
}

TEST(system_prep, validation) {
    EXPECT_THROW(SystemPrep(-0.1, 0), InvalidInput);
    EXPECT_THROW(SystemPrep(3.2, 0), InvalidInput);
    EXPECT_THROW(SystemPrep(1, std::nan("")), InvalidInput);
    EXPECT_NEAR(SystemPrep(1, 3 * kPi).xi(), kPi, 1e-15);
}
