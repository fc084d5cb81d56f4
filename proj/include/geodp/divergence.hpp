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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "geodp/error.hpp"
#include "geodp/heat_kernel.hpp"
#include "geodp/manifold.hpp"
#include "geodp/quadrature.hpp"

namespace geodp {

// Latitude-longitude product rule: Gauss-Legendre in cos(theta) times the
// uniform (trapezoid) rule in phi.
struct SphereGrid {
  int n_theta = 400;
  int n_phi = 800;
};

namespace detail {

// Integral over S^2 of p^alpha q^(1-alpha), where p and q are heat kernels
// started at the north pole and at the point at angle `angle` from it.
inline double RenyiMomentSphere(double angle, double t, double alpha, int order,
                                const SphereGrid& grid) {
  const GaussLegendreRule rule(grid.n_theta);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double dphi = 2.0 * std::numbers::pi / grid.n_phi;
  std::vector<double> cos_phi(grid.n_phi);
  for (int j = 0; j < grid.n_phi; ++j) cos_phi[j] = std::cos(j * dphi);

  double total = 0.0;
  for (int i = 0; i < grid.n_theta; ++i) {
    const double u = rule.nodes[i];
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - u * u));
    const double p = SphereHeatKernelZonal(u, t, order);
    const double p_alpha = std::pow(p, alpha);
    double ring = 0.0;
    for (int j = 0; j < grid.n_phi; ++j) {
      const double q = SphereHeatKernelZonal(u * c + sin_theta * s * cos_phi[j], t, order);
      ring += p_alpha * std::pow(q, 1.0 - alpha);
    }
    total += rule.weights[i] * ring * dphi;
  }
  return total;
}

}  // namespace detail

// Order-alpha Renyi divergence between the S^2 heat kernels p(x,.,t) and
// p(y,.,t), by quadrature. The integral is recomputed on a half-resolution
// grid; a relative disagreement above 1e-6 throws kAccuracy.
inline double RenyiDivergenceSphere(const ManifoldPoint& x, const ManifoldPoint& y, double t,
                                    double alpha, int order = 60, SphereGrid grid = {}) {
  RequireSameSpec(x, y);
  if (x.spec().kind != ManifoldKind::kSphere || x.spec().m != 2) {
    throw Error(ErrorCode::kUnsupportedManifold, "sphere Renyi divergence needs S^2");
  }
  if (!(alpha > 1.0)) throw Error(ErrorCode::kDomain, "alpha must be > 1");
  if (!(t > 0.0)) throw Error(ErrorCode::kDomain, "t must be > 0");
  if (grid.n_theta < 4 || grid.n_phi < 4) throw Error(ErrorCode::kDomain, "grid too coarse");
  const double angle = Distance(x, y);
  const double fine = detail::RenyiMomentSphere(angle, t, alpha, order, grid);
  const double coarse = detail::RenyiMomentSphere(
      angle, t, alpha, order, SphereGrid{grid.n_theta / 2, grid.n_phi / 2});
  if (!(std::abs(fine - coarse) <= 1e-6 * std::abs(fine))) {
    throw Error(ErrorCode::kAccuracy, "sphere divergence quadrature did not converge");
  }
  return std::max(0.0, std::log(fine) / (alpha - 1.0));
}

}  // namespace geodp
