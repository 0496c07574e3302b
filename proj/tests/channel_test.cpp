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

#include "modgate/channel.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "oracle.hpp"

using namespace modgate;

namespace {

constexpr double kPi = std::numbers::pi;
const double kH = std::numbers::sqrt2 / 2;

}  // namespace

TEST(nonunitary_rz, examples) {
    EXPECT_EQ((nonunitary_rz({0, 0}) - Operator2::identity()).max_abs(), 0);
    EXPECT_LE((nonunitary_rz({kPi, 0}) - pauli::z()).max_abs(), 1e-15);
    Operator2 r = nonunitary_rz({0.3, 0.1});
    EXPECT_LE((r - Operator2::diagonal({1, std::polar(0.904837418035959573, 0.3)})).max_abs(), 1e-15);
}

TEST(nonunitary_rz, symmetric_form_differs_by_global_phase) {
    for (double phi : {0.0, 0.3, -1.2})
        for (double a : {0.0, 0.01, 0.7}) {
            Operator2 lhs = nonunitary_rz_symmetric({phi, a});
            Operator2 rhs = std::polar(1.0, -phi / 2) * nonunitary_rz({phi, a});
            EXPECT_LE((lhs - rhs).max_abs(), 1e-15);
        }
}

TEST(nonunitary_rz, rejects_bad_parameters) {
    EXPECT_THROW(PhaseAbsorbParams(0, -0.1), InvalidInput);
    EXPECT_THROW(PhaseAbsorbParams(std::nan(""), 0), InvalidInput);
}

TEST(kraus_pair, examples) {
    KrausPair k = kraus_pair({0.4, 0});
    EXPECT_EQ(k.k1.max_abs(), 0);
    EXPECT_TRUE(k.k0.is_unitary(1e-15));

    // sqrt(1 - e^{-0.2}) from mpmath.
    KrausPair k2 = kraus_pair({0.2, 0.1});
    EXPECT_NEAR(k2.k1(1, 1).real(), 0.425757262911647980885, 1e-15);
    EXPECT_EQ(k2.k1(0, 0), 0.0);
}

TEST(kraus_pair, completeness) {
    for (double a : {0.0, 1e-4, 1e-2, 0.01, 0.5, 1.0, 2.5, 5.0}) {
        KrausPair k = kraus_pair({0.37, a});
        EXPECT_LE((k.completeness() - Operator2::identity()).max_abs(), 1e-15) << "a = " << a;
    }
}

TEST(exact_channel_output, examples) {
    UnitVec2 zero({1, 0});
    DensityMatrix2 rho = exact_channel_output({0.3, 0.8}, zero);
    EXPECT_LE((rho.matrix() - outer(zero, zero)).max_abs(), 1e-15);

    UnitVec2 plus({kH, kH});
    DensityMatrix2 unitary = exact_channel_output({0.3, 0}, plus);
    UnitVec2 rotated = UnitVec2::normalized(nonunitary_rz({0.3, 0}) * plus.vec());
    EXPECT_LE((unitary.matrix() - outer(rotated, rotated)).max_abs(), 1e-15);

    // rho = [[1/2, e^{-a}/2], [e^{-a}/2, 1/2]] by hand.
    DensityMatrix2 mixed = exact_channel_output({0, 0.1}, plus);
    double d = 0.904837418035959573;
    EXPECT_LE((mixed.matrix() - make_op2(0.5, d / 2, d / 2, 0.5)).max_abs(), 1e-15);
}

TEST(exact_channel_output, is_a_density_matrix) {
    Rng rng(31);
    for (int t = 0; t < 500; t++) {
        UnitVec2 psi = oracle::random_state(rng);
        DensityMatrix2 rho = exact_channel_output({rng.uniform(-kPi, kPi), rng.uniform(0, 5)}, psi);
        EXPECT_NEAR(rho.trace(), 1, 1e-14);
        EXPECT_LE((rho.matrix() - rho.matrix().adjoint()).max_abs(), 1e-15);
        EXPECT_GE(rho.eigenvalues()[0], -1e-15);
    }
}

TEST(single_kraus_gap, examples) {
    UnitVec2 plus({kH, kH});
    EXPECT_LE(single_kraus_gap({0.2, 0}, plus), 1e-15);
    EXPECT_LE(single_kraus_gap({0.2, 0.3}, UnitVec2({1, 0})), 1e-16);
    // mpmath at theta = pi/2.
    EXPECT_NEAR(single_kraus_gap({0, 1e-2}, plus), 0.00703574208513613, 1e-13);
    EXPECT_NEAR(single_kraus_gap({0, 1e-3}, plus), 0.000706753257273491, 1e-14);
}

TEST(single_kraus_gap, shrinks_linearly) {
    UnitVec2 plus({kH, kH});
    double ratio = single_kraus_gap({0, 1e-2}, plus) / single_kraus_gap({0, 1e-3}, plus);
    EXPECT_GE(ratio, 8.5);
    EXPECT_LE(ratio, 11.5);
}

TEST(baseline_direct, examples) {
    BaselineResult none = baseline_direct({0.5, 0}, SystemPrep(1.0, 0));
    EXPECT_NEAR(none.delta_theta, 0, 1e-15);
    EXPECT_NEAR(none.p_n, 1, 1e-15);

    // mpmath.
    BaselineResult b = baseline_direct({0, 0.01}, SystemPrep(kPi / 2, 0));
    EXPECT_NEAR(b.delta_theta, -0.009999833337499879, 1e-15);
    EXPECT_NEAR(b.p_n, 0.990099336653377651, 1e-15);
    EXPECT_NEAR(b.p_n, 0.5 + 0.5 * std::exp(-0.02), 1e-15);
}

TEST(baseline_direct, first_order_bounds) {
    for (double a : {1e-2, 1e-3, 1e-4})
        for (double th : {0.3, kPi / 2, 2.5}) {
            BaselineResult b = baseline_direct({0.1, a}, SystemPrep(th, 0));
            EXPECT_LE(std::abs(b.delta_theta + a * std::sin(th)), 2 * a * a);
            double s = std::sin(th / 2);
            EXPECT_LE(std::abs(b.p_n - (1 - 2 * a * s * s)), 2 * a * a);
        }
}

TEST(baseline_direct, state_matches_polar_shift) {
    Rng rng(32);
    for (int t = 0; t < 200; t++) {
        SystemPrep prep(rng.uniform(0, kPi), rng.uniform(-kPi, kPi));
        PhaseAbsorbParams p(rng.uniform(-1, 1), rng.uniform(0, 2));
        BaselineResult b = baseline_direct(p, prep);
        double th = prep.theta() + b.delta_theta;
        EXPECT_NEAR(std::abs(b.state[0]), std::cos(th / 2), 1e-12);
        EXPECT_NEAR(std::abs(b.state[1]), std::sin(th / 2), 1e-12);
        EXPECT_NEAR(b.p_n, (nonunitary_rz(p) * prep.state().vec()).norm_squared(), 1e-14);
    }
}
