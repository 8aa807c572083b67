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

namespace ergodrive {

// Numerical tolerances shared by every module.
struct Tolerances {
  static constexpr double herm = 1e-12;       // |A(i,j) - conj(A(j,i))|
  static constexpr double psd = 1e-10;        // smallest admissible eigenvalue is -psd
  static constexpr double trace = 1e-10;      // |Tr(rho) - 1|
  static constexpr double bloch = 1e-10;      // |v| <= 1 + bloch
  static constexpr double unit_axis = 1e-10;  // ||n| - 1|
  static constexpr double eig_tie = 1e-10;    // eigenvalues closer than this are degenerate
  static constexpr double runtime_psd = 1e-8; // positivity check inside integrators
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace ergodrive
