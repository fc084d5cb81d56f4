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

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "geodp/error.hpp"

namespace geodp {

// (alpha, epsilon) Renyi-DP budget.
struct RdpBudget {
  double alpha = 2.0;
  double epsilon = 1.0;

  static RdpBudget Make(double alpha, double epsilon) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
      throw Error(ErrorCode::kDomain, "RDP order alpha must be finite and > 1");
    }
    if (!(epsilon > 0.0)) throw Error(ErrorCode::kDomain, "RDP epsilon must be > 0");
    return {alpha, epsilon};
  }
};

// Global sensitivity in Riemannian distance units.
struct SensitivitySummary {
  double delta = 0.0;
};

namespace detail {

// Below this |K * t| the curvature term is treated as the removable pole at
// K = 0 and the flat-space value is returned.
inline constexpr double kFlatCurvatureThreshold = 1e-12;

inline void CheckCalibrationArgs(double alpha, double delta) {
  if (!(alpha > 1.0)) throw Error(ErrorCode::kDomain, "alpha must be > 1");
  if (!(delta >= 0.0)) throw Error(ErrorCode::kDomain, "sensitivity must be >= 0");
}

}  // namespace detail

// RDP epsilon of releasing Brownian motion run for time t on a manifold with
// Ric >= -K:  K alpha Delta^2 / (2 (1 - exp(-2 K t))).
inline double BmEpsilon(double K, double alpha, double delta, double t) {
  detail::CheckCalibrationArgs(alpha, delta);
  if (!(t > 0.0)) throw Error(ErrorCode::kDomain, "diffusion time must be > 0");
  const double scale = alpha * delta * delta;
  if (std::abs(K * t) < detail::kFlatCurvatureThreshold) return scale / (4.0 * t);
  return K * scale / (-2.0 * std::expm1(-2.0 * K * t));
}

// Limit of BmEpsilon as t -> infinity. Zero unless K > 0.
inline double BmPrivacyFloor(double K, double alpha, double delta) {
  return K > 0.0 ? K * alpha * delta * delta / 2.0 : 0.0;
}

// Diffusion time at which BM meets `budget`. For K > 0 no time works once
// 2 epsilon <= K alpha Delta^2; that case throws kInfeasibleBudget.
inline double BmTimeForBudget(double K, const RdpBudget& budget, double delta) {
  detail::CheckCalibrationArgs(budget.alpha, delta);
  if (!(budget.epsilon > 0.0)) throw Error(ErrorCode::kDomain, "epsilon must be > 0");
  const double scale = budget.alpha * delta * delta;
  const double flat_time = scale / (4.0 * budget.epsilon);
  if (delta == 0.0) return std::numeric_limits<double>::min();
  if (std::abs(K * flat_time) < detail::kFlatCurvatureThreshold) return flat_time;
  const double ratio = K * scale / (2.0 * budget.epsilon);
  if (ratio >= 1.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "epsilon " << budget.epsilon << " is at or below the BM privacy floor K*alpha*Delta^2/2 = "
        << BmPrivacyFloor(K, budget.alpha, delta)
        << "; no finite diffusion time reaches it, use the Langevin mechanism";
    throw Error(ErrorCode::kInfeasibleBudget, msg.str());
  }
  return -std::log1p(-ratio) / (2.0 * K);
}

// RDP epsilon of the anchored Langevin diffusion with pull lambda on a
// Hadamard manifold with Ric >= -K:  c alpha Delta^2 / (2 (exp(2ct) - 1)),
// c = lambda - K.
inline double LangevinEpsilon(double K, double lambda, double alpha, double delta, double t) {
  detail::CheckCalibrationArgs(alpha, delta);
  if (!(t > 0.0)) throw Error(ErrorCode::kDomain, "diffusion time must be > 0");
  const double c = lambda - K;
  if (!(c > 0.0)) throw Error(ErrorCode::kDriftTooWeak, "Langevin pull lambda must exceed K");
  const double scale = alpha * delta * delta;
  if (c * t < detail::kFlatCurvatureThreshold) return scale / (4.0 * t);
  return c * scale / (2.0 * std::expm1(2.0 * c * t));
}

inline double LangevinTimeForBudget(double K, double lambda, const RdpBudget& budget,
                                    double delta) {
  detail::CheckCalibrationArgs(budget.alpha, delta);
  if (!(budget.epsilon > 0.0)) throw Error(ErrorCode::kDomain, "epsilon must be > 0");
  const double c = lambda - K;
  if (!(c > 0.0) || !(lambda > 0.0)) {
    throw Error(ErrorCode::kDriftTooWeak,
                "Langevin pull lambda must exceed the curvature constant K (Bakry-Emery "
                "curvature lambda - K must be positive)");
  }
  if (delta == 0.0) return std::numeric_limits<double>::min();
  const double scale = budget.alpha * delta * delta;
  return std::log1p(c * scale / (2.0 * budget.epsilon)) / (2.0 * c);
}

// RDP curve of a pure eps*-DP mechanism at order alpha:
//   (alpha-1)^-1 log( e^{alpha e}/(e^e+1) + e^e e^{-alpha e}/(e^e+1) ),
// rewritten as e + [log1p(e^{(1-2 alpha) e}) - log1p(e^{-e})] / (alpha - 1)
// so that it never overflows.
inline double DpToRdp(double eps_star, double alpha) {
  if (!(eps_star >= 0.0)) throw Error(ErrorCode::kDomain, "pure-DP epsilon must be >= 0");
  if (!(alpha > 1.0)) throw Error(ErrorCode::kDomain, "alpha must be > 1");
  if (eps_star == 0.0) return 0.0;
  const double tail = std::log1p(std::exp((1.0 - 2.0 * alpha) * eps_star)) -
                      std::log1p(std::exp(-eps_star));
  return std::max(0.0, eps_star + tail / (alpha - 1.0));
}

// Pure-DP epsilon* whose RDP curve passes through `target` at target.alpha.
inline double RdpToDpBudget(const RdpBudget& target) {
  if (!(target.alpha > 1.0) || !(target.epsilon > 0.0)) {
    throw Error(ErrorCode::kDomain, "invalid RDP budget");
  }
  double lo = target.epsilon;
  double hi = target.epsilon * target.alpha / (target.alpha - 1.0) + 10.0;
  while (DpToRdp(hi, target.alpha) < target.epsilon) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (DpToRdp(mid, target.alpha) < target.epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// E[d(a, B_t)] <= sqrt(2 m t) when Ric is bounded below by a positive constant.
inline double BmUtilityBound(int m, double t) {
  if (m < 1 || !(t >= 0.0)) throw Error(ErrorCode::kDomain, "need m >= 1 and t >= 0");
  return std::sqrt(2.0 * m * t);
}

// Expected-distance bound for the Langevin release on a Hadamard manifold with
// Ric >= -K. The sqrt((m-1)K)/lambda shift stays in even when a = o.
inline double LangevinUtilityBound(int m, double K, double lambda, double anchor_distance,
                                   double t) {
  if (m < 1 || !(lambda > 0.0) || !(t >= 0.0) || !(K >= 0.0) || !(anchor_distance >= 0.0)) {
    throw Error(ErrorCode::kDomain, "invalid Langevin utility bound arguments");
  }
  const double shift = anchor_distance + std::sqrt((m - 1.0) * K) / lambda;
  return std::sqrt(2.0 * m / lambda + shift * shift) * std::sqrt(-std::expm1(-lambda * t));
}

// Riemannian Laplace rate for eps*-DP; doubled off homogeneous manifolds.
inline double RlRate(double delta, double eps_star, bool homogeneous = true) {
  if (!(eps_star > 0.0)) throw Error(ErrorCode::kDomain, "pure-DP epsilon must be > 0");
  if (!(delta >= 0.0)) throw Error(ErrorCode::kDomain, "sensitivity must be >= 0");
  return (homogeneous ? 1.0 : 2.0) * delta / eps_star;
}

// Exponential-wrapped Gaussian rate Delta / sqrt(2 epsilon / alpha).
inline double EwgRate(double delta, const RdpBudget& budget) {
  if (!(delta >= 0.0)) throw Error(ErrorCode::kDomain, "sensitivity must be >= 0");
  return delta * std::sqrt(budget.alpha / (2.0 * budget.epsilon));
}

}  // namespace geodp
