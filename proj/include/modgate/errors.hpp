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

#ifndef MODGATE_ERRORS_HPP
#define MODGATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modgate {

/// Malformed parameters: non-finite numbers, non-unit states, out-of-range angles.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Pre- and postselection are orthogonal, so the modular value ratio is undefined.
struct OrthogonalSelection : std::domain_error {
    using std::domain_error::domain_error;
};

/// Postselection never succeeds; there is no normalized output state.
struct ZeroProbability : std::domain_error {
    using std::domain_error::domain_error;
};

/// A regime formula was requested for parameters outside its scale ordering.
struct HierarchyViolation : std::domain_error {
    using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace modgate

#endif
