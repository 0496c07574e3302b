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

#ifndef MODGATE_MODGATE_HPP
#define MODGATE_MODGATE_HPP

#include "modgate/channel.hpp"
#include "modgate/errors.hpp"
#include "modgate/harness/eval.hpp"
#include "modgate/harness/report.hpp"
#include "modgate/harness/rng.hpp"
#include "modgate/harness/sample.hpp"
#include "modgate/harness/sweep.hpp"
#include "modgate/linalg.hpp"
#include "modgate/modular_gate.hpp"
#include "modgate/xpm.hpp"

#endif
