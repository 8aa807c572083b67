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

#include <cmath>
#include <functional>
#include <utility>

#include "ergodrive/error.hpp"

namespace ergodrive {

template <class Value>
struct GoldenSectionResult {
  double x;
  Value value;
  int evaluations;
};

// Golden-section search on [lo, hi] for a unimodal objective. `better(a, b)`
// returns true when value a is preferred over b, so the search works with any
// totally ordered value type (scalars, lexicographic tuples, ...). Stops when
// the bracket is narrower than `width`.
template <class Eval, class Better>
auto golden_section_search(double lo, double hi, double width, Eval&& eval, Better&& better)
    -> GoldenSectionResult<decltype(eval(lo))> {
  detail::require(hi > lo, ErrorKind::invalid_argument, "golden_section_search: empty bracket");
  detail::require(width > 0.0, ErrorKind::invalid_argument, "golden_section_search: width must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  auto fc = eval(c);
  auto fd = eval(d);
  int evaluations = 2;

  while (b - a > width) {
    if (better(fc, fd)) {
      b = d;
      d = c;
      fd = std::move(fc);
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = std::move(fd);
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
    ++evaluations;
  }
  if (better(fd, fc)) return {d, std::move(fd), evaluations};
  return {c, std::move(fc), evaluations};
}

template <class F>
GoldenSectionResult<double> golden_section_minimize(F&& f, double lo, double hi, double width) {
  return golden_section_search(lo, hi, width, std::forward<F>(f), std::less<double>{});
}

}  // namespace ergodrive
