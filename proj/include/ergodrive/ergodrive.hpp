// Copyright 2026 The ergodrive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "ergodrive/drive_geometry.hpp"
#include "ergodrive/ergotropy.hpp"
#include "ergodrive/golden_section.hpp"
#include "ergodrive/noisy_dynamics.hpp"
#include "ergodrive/parallel.hpp"
#include "ergodrive/quantum_core.hpp"
#include "ergodrive/serialization.hpp"
#include "ergodrive/triad_optimizer.hpp"
