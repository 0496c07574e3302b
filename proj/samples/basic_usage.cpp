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

// Walks through one postselected controlled gate and the XPM scenario.

#include <cstdio>

#include "modgate/modgate.hpp"

int main() {
    using namespace modgate;

    // A lossy phase on the ancilla, controlled by a weak coherent state.
    CoherentTruncation coherent(0.05);
    PhaseAbsorbParams gate(1e-5, 1e-3);
    PostselectionFamily fam = PostselectionFamily::epsilon(1e-2);

    GateOutcome out = apply_and_postselect(coherent.prep(), xpm_selection(fam), nonunitary_rz(gate));
    const ModularValue &rm = out.modular_value();
    std::printf("R_m = %.9f %+.9fi  |R_m| = %.9f  arg = %.9g\n", rm.value.real(), rm.value.imag(),
                rm.magnitude, rm.omega_m);
    std::printf("success probability = %.6g\n", out.success_probability);

    // The same output from two local rotations, no ancilla needed.
    UnitVec2 local = equivalent_local_rotations(coherent.prep(), rm);
    std::printf("fidelity with local rotations = %.15f\n", fidelity(local, out.normalized()));

    RegimeReport r = regime_report({RegimeId::EpsDominant, gate.phi, gate.a, fam.angle}, 0.05);
    std::printf("first-order |R_m| = %.9f (relative error %.3g)\n", std::abs(r.approx_rm), r.mag_rel_err);

    // Without the ancilla, the same loss just tilts the state toward |0>.
    BaselineResult base = baseline_direct(gate, coherent.prep());
    std::printf("direct gate: delta theta = %.6g, p = %.9f\n", base.delta_theta, base.p_n);
    return 0;
}
