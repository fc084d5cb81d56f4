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

#include <cmath>
#include <numbers>
#include <functional>
#include <optional>
#include <string>

#include "geodp/error.hpp"
#include "geodp/manifold.hpp"
#include "geodp/rng.hpp"

namespace geodp {

// Step count giving h <= 0.01 and at least 100 steps.
inline int DefaultSteps(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::kDomain, "diffusion time must be > 0");
  const double by_step = std::ceil(t * 100.0 - 1e-9);
  return static_cast<int>(std::max(100.0, by_step));
}

struct MechanismConfig {
  double t = 1.0;
  int n_step = 100;
  // Langevin pull strength; only read by the Langevin sampler.
  double lambda = 0.0;
  std::optional<ManifoldPoint> anchor;

  static MechanismConfig Bm(double t, std::optional<int> n_step = std::nullopt) {
    MechanismConfig cfg;
    cfg.t = t;
    cfg.n_step = n_step.value_or(DefaultSteps(t));
    cfg.Validate();
    return cfg;
  }

  static MechanismConfig Langevin(double t, double lambda, ManifoldPoint anchor,
                                  std::optional<int> n_step = std::nullopt) {
    MechanismConfig cfg;
    cfg.t = t;
    cfg.n_step = n_step.value_or(DefaultSteps(t));
    cfg.lambda = lambda;
    cfg.anchor = std::move(anchor);
    cfg.Validate();
    return cfg;
  }

  void Validate() const {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::kDomain, "t must be finite and > 0");
    if (n_step < 1) throw Error(ErrorCode::kDomain, "n_step must be >= 1");
  }

  void ValidateLangevin(const ManifoldSpec& spec) const {
    Validate();
    if (!anchor) throw Error(ErrorCode::kDomain, "Langevin sampler needs an anchor");
    if (!(anchor->spec() == spec)) {
      throw Error(ErrorCode::kSpecMismatch, "anchor lives on a different manifold");
    }
    if (!(lambda > 0.0) || !(lambda > spec.ric_lower_K)) {
      throw Error(ErrorCode::kDriftTooWeak, "Langevin pull lambda must be > 0 and exceed K");
    }
  }
};

// Geodesic random walk approximating Brownian motion (generator Delta) run
// for time t from a: n_step moves Exp_Y(sqrt(2h) xi), h = t / n_step.
// On Euclidean space the result is exactly N(a, 2t I) for every n_step.
inline ManifoldPoint BmSample(const ManifoldPoint& a, double t, int n_step, Rng& rng) {
  if (!(t > 0.0)) throw Error(ErrorCode::kDomain, "diffusion time must be > 0");
  if (n_step < 1) throw Error(ErrorCode::kDomain, "n_step must be >= 1");
  const ManifoldKind kind = a.spec().kind;
  const int m = a.spec().m;
  const double scale = std::sqrt(2.0 * t / n_step);
  detail::StepWorkspace work(kind, m);
  Eigen::VectorXd y = a.coords();
  Eigen::VectorXd xi(y.size());
  for (int k = 0; k < n_step; ++k) {
    work.TangentGaussian(y, rng, xi);
    xi *= scale;
    work.ExpInPlace(y, xi);
  }
  return {TrustedTag{}, a.spec(), std::move(y)};
}

// Euler-geodesic discretization of dX = sqrt(2) dB - grad V dt with
// V = lambda d(o, .)^2 / 2: Y <- Exp_Y(h lambda Log_Y(o) + sqrt(2h) xi).
// Hadamard manifolds only.
inline ManifoldPoint LangevinSample(const ManifoldPoint& a, const MechanismConfig& cfg, Rng& rng) {
  const ManifoldSpec& spec = a.spec();
  if (spec.kind == ManifoldKind::kSphere) {
    throw Error(ErrorCode::kUnsupportedManifold,
                "the Langevin mechanism is defined on Hadamard manifolds only");
  }
  cfg.ValidateLangevin(spec);
  const ManifoldKind kind = spec.kind;
  const int m = spec.m;
  const double h = cfg.t / cfg.n_step;
  const double noise = std::sqrt(2.0 * h);
  const double pull = h * cfg.lambda;
  const Eigen::VectorXd& o = cfg.anchor->coords();
  detail::StepWorkspace work(kind, m);
  Eigen::VectorXd y = a.coords();
  Eigen::VectorXd step(y.size());
  for (int k = 0; k < cfg.n_step; ++k) {
    work.TangentGaussian(y, rng, step);
    step *= noise;
    step += pull * detail::Log(kind, y, o);
    work.ExpInPlace(y, step);
  }
  return {TrustedTag{}, spec, std::move(y)};
}

namespace detail {

// Radius with density proportional to exp(-s/sigma) A(s), given uniform u.
inline double LaplaceRadius(ManifoldKind kind, int m, double sigma, double u, Rng& rng) {
  const double a = 1.0 / sigma;
  constexpr double kTol = 1e-10;
  if (kind == ManifoldKind::kEuclidean) {
    // s^{m-1} e^{-s/sigma} is a Gamma(m, sigma) density.
    return rng.Gamma(static_cast<double>(m), sigma);
  }
  if (kind == ManifoldKind::kSphere) {
    const double pi = std::numbers::pi;
    if (m == 1) {
      return -std::log1p(u * std::expm1(-a * pi)) / a;
    }
    if (m == 2) {
      // Integral_0^s e^{-au} sin u du = (1 - e^{-as}(a sin s + cos s)) / (1 + a^2).
      const double total = 1.0 + std::exp(-a * pi);
      auto cdf = [a, total](double s) {
        return (1.0 - std::exp(-a * s) * (a * std::sin(s) + std::cos(s))) / total;
      };
      return SolveIncreasing(cdf, u, 0.0, pi, kTol);
    }
    auto density = [&](double s) { return std::exp(-a * s) * RadialArea(kind, m, s); };
    const double total = IntegrateSmooth(density, 0.0, pi);
    return SolveIncreasing([&](double s) { return IntegrateSmooth(density, 0.0, s) / total; }, u,
                           0.0, pi, kTol);
  }
  // Hyperboloid: e^{-s/sigma} sinh^{m-1}(s) is integrable iff 1/sigma > m - 1.
  if (!(a > m - 1.0)) {
    throw Error(ErrorCode::kNormalization,
                "Riemannian Laplace density is not normalizable on H^" + std::to_string(m) +
                    " for sigma >= 1/(m-1) (sigma = " + std::to_string(sigma) + ")");
  }
  if (m == 1) return -std::log1p(-u) / a;
  std::function<double(double)> cdf;
  if (m == 2) {
    cdf = [a](double s) {
      return 0.5 * ((a + 1.0) * -std::expm1(-(a - 1.0) * s) -
                    (a - 1.0) * -std::expm1(-(a + 1.0) * s));
    };
  } else {
    // sinh^n s = 2^-n sum_k C(n,k) (-1)^k e^{(n-2k)s} gives the normalizer.
    const int n = m - 1;
    double total = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      total += ((k % 2 == 0) ? binom : -binom) / (a - n + 2.0 * k);
      binom = binom * (n - k) / (k + 1.0);
    }
    total /= std::pow(2.0, n);
    cdf = [a, m, kind, total](double s) {
      auto density = [&](double v) { return std::exp(-a * v) * RadialArea(kind, m, v); };
      return IntegrateSmooth(density, 0.0, s) / total;
    };
  }
  double hi = 1.0;
  while (cdf(hi) < u) {
    hi *= 2.0;
    if (hi > 1e6) throw Error(ErrorCode::kNormalization, "Laplace radius bracket diverged");
  }
  return SolveIncreasing(cdf, u, 0.0, hi, kTol);
}

}  // namespace detail

// Throws kNormalization when exp(-d/sigma) has infinite mass on `spec`.
inline void CheckLaplaceNormalizable(const ManifoldSpec& spec, double sigma) {
  if (spec.kind == ManifoldKind::kHyperboloid && spec.m > 1 && !(1.0 / sigma > spec.m - 1.0)) {
    throw Error(ErrorCode::kNormalization,
                "Riemannian Laplace density is not normalizable on " + ToString(spec) +
                    " for sigma >= 1/(m-1) (sigma = " + std::to_string(sigma) + ")");
  }
}

// Riemannian Laplace release: density proportional to exp(-d(center, x)/sigma)
// sampled in polar form around `center`. sigma == 0 returns `center`.
inline ManifoldPoint RlSample(const ManifoldPoint& center, double sigma, Rng& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kDomain, "Laplace rate must be finite and >= 0");
  }
  const ManifoldSpec& spec = center.spec();
  CheckLaplaceNormalizable(spec, sigma);
  if (sigma == 0.0) return center;
  const TangentVector dir = UniformDirection(center, rng);
  const double s = detail::LaplaceRadius(spec.kind, spec.m, sigma, rng.UniformOpen(), rng);
  return ExpMap(dir * s);
}

// Exponential-wrapped Gaussian: z ~ N(Log_foot(center), sigma^2 I_m) in the
// tangent space at `footpoint`, released as Exp_foot(z).
inline ManifoldPoint EwgSample(const ManifoldPoint& footpoint, const ManifoldPoint& center,
                               double sigma, Rng& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kDomain, "EWG rate must be finite and >= 0");
  }
  const TangentVector mean = LogMap(footpoint, center);
  return ExpMap(mean + TangentGaussian(footpoint, rng) * sigma);
}

}  // namespace geodp
