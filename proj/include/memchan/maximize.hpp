// Copyright 2026 The memchan Authors
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

#ifndef MEMCHAN_MAXIMIZE_HPP
#define MEMCHAN_MAXIMIZE_HPP

#include <algorithm>
#include <cmath>

#include "memchan/qlinalg.hpp"

namespace memchan {

struct ScalarMaximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Maximizes f on [lo, hi]: a coarse grid with spacing `grid_step` picks the
/// best cell, golden-section search then refines it until the bracket is
/// narrower than `tol`. Ties (values within 1e-12) resolve to the smaller x.
template <typename F>
ScalarMaximum maximize_scalar(F&& f, double lo, double hi, double grid_step, double tol) {
  if (!(hi >= lo)) throw Error("maximize_scalar: empty interval");
  const int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / grid_step - 1e-9)));
  const double h = (hi - lo) / cells;

  ScalarMaximum best{lo, f(lo)};
  int best_index = 0;
  for (int i = 1; i <= cells; ++i) {
    const double x = (i == cells) ? hi : lo + i * h;
    const double v = f(x);
    if (v > best.value + 1e-12) {
      best = {x, v};
      best_index = i;
    }
  }

  double a = lo + std::max(0, best_index - 1) * h;
  double b = (best_index + 1 >= cells) ? hi : lo + (best_index + 1) * h;
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double v = f(x);
  if (v > best.value + 1e-12) best = {x, v};
  return best;
}

}  // namespace memchan

#endif  // MEMCHAN_MAXIMIZE_HPP
