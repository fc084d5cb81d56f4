// Copyright 2026 The GeoDP Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "geodp/error.hpp"
#include "geodp/manifold.hpp"
#include "geodp/quadrature.hpp"

namespace geodp {

// Heat kernel of the Laplace-Beltrami operator on the unit S^2 as a function
// of cos d(x, z), truncated after order L:
//   p = sum_{l=0}^{L} (2l+1)/(4 pi) exp(-l(l+1) t) P_l(cos d).
// The generator is Delta itself, so the flat analogue is N(x, 2tI).
inline double SphereHeatKernelZonal(double cos_angle, double t, int order) {
  if (!(t > 0.0)) throw Error(ErrorCode::kDomain, "heat kernel time must be positive");
  if (order < 1) throw Error(ErrorCode::kDomain, "heat kernel truncation order must be >= 1");
  const double c = std::clamp(cos_angle, -1.0, 1.0);
  double p_prev = 1.0;
  double p_cur = c;
  double sum = 1.0 + 3.0 * std::exp(-2.0 * t) * c;
  for (int l = 2; l <= order; ++l) {
    const double p_next = ((2.0 * l - 1.0) * c * p_cur - (l - 1.0) * p_prev) / l;
    p_prev = p_cur;
    p_cur = p_next;
    const double decay = std::exp(-static_cast<double>(l) * (l + 1) * t);
    if (decay == 0.0) break;
    sum += (2.0 * l + 1.0) * decay * p_cur;
  }
  return sum / (4.0 * std::numbers::pi);
}

inline double SphereHeatKernel(const ManifoldPoint& x, const ManifoldPoint& z, double t,
                               int order) {
  RequireSameSpec(x, z);
  if (x.spec().kind != ManifoldKind::kSphere || x.spec().m != 2) {
    throw Error(ErrorCode::kUnsupportedManifold, "spectral heat kernel is implemented for S^2 only");
  }
  return SphereHeatKernelZonal(x.coords().dot(z.coords()), t, order);
}

// P(d(x, B_t) <= angle) for Brownian motion on S^2, from the same series
// integrated termwise: int_{cos a}^1 P_l = (P_{l-1} - P_{l+1}) / (2l+1).
inline double SphereHeatRadialCdf(double angle, double t, int order) {
  if (!(t > 0.0)) throw Error(ErrorCode::kDomain, "heat kernel time must be positive");
  if (order < 1) throw Error(ErrorCode::kDomain, "heat kernel truncation order must be >= 1");
  if (angle <= 0.0) return 0.0;
  if (angle >= std::numbers::pi) return 1.0;
  std::vector<double> legendre;
  LegendreSeries(std::cos(angle), order + 1, legendre);
  double sum = 1.0 - legendre[1];
  for (int l = 1; l <= order; ++l) {
    const double decay = std::exp(-static_cast<double>(l) * (l + 1) * t);
    if (decay == 0.0) break;
    sum += decay * (legendre[l - 1] - legendre[l + 1]);
  }
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

}  // namespace geodp
