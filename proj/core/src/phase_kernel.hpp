// Copyright 2026 The povmlab Authors
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

// Internal: the arc kernel shared by the spin phase and the truncated
// number-phase observables.

#pragma once

#include <cmath>
#include <numbers>

#include "povmlab/linalg.hpp"

namespace povmlab::detail {

/// K(r, c) = int_u^v exp(i * orientation * (c - r) * a) da / 2 pi.
inline Matrix arc_kernel(std::size_t dim, double u, double v, int orientation) {
  const auto n = static_cast<Eigen::Index>(dim);
  const double two_pi = 2.0 * std::numbers::pi;
  Matrix k(n, n);
  // Integer frequencies integrate to zero over a whole turn; rounding in
  // polar() would otherwise leave ~1e-17 off the diagonal.
  if (v - u == two_pi) return Matrix::Identity(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto freq = static_cast<double>(orientation * (c - r));
      if (c == r) {
        k(r, c) = (v - u) / two_pi;
      } else {
        k(r, c) = (std::polar(1.0, freq * v) - std::polar(1.0, freq * u)) /
                  Complex(0.0, two_pi * freq);
      }
    }
  }
  return k;
}

}  // namespace povmlab::detail
