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
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "geodp/error.hpp"
#include "geodp/manifold.hpp"
#include "geodp/rng.hpp"

namespace geodp {

// n >= 1 points on one manifold, all inside the closed ball B(center, radius).
class Dataset {
 public:
  static Dataset Make(std::vector<ManifoldPoint> points, ManifoldPoint center, double radius) {
    if (points.empty()) throw Error(ErrorCode::kDomain, "dataset must contain at least one point");
    if (!(radius > 0.0)) throw Error(ErrorCode::kDomain, "dataset ball radius must be > 0");
    for (const ManifoldPoint& x : points) {
      RequireSameSpec(center, x);
      if (Distance(center, x) > radius + 1e-9) {
        throw Error(ErrorCode::kDomain, "dataset point lies outside B(center, radius)");
      }
    }
    return Dataset(std::move(points), std::move(center), radius);
  }

  const std::vector<ManifoldPoint>& points() const { return points_; }
  const ManifoldPoint& center() const { return center_; }
  double radius() const { return radius_; }
  const ManifoldSpec& spec() const { return center_.spec(); }
  size_t size() const { return points_.size(); }

  // Copy with entry i replaced; the adjacent dataset of the sensitivity
  // definition.
  Dataset WithReplaced(size_t i, ManifoldPoint x) const {
    std::vector<ManifoldPoint> pts = points_;
    pts.at(i) = std::move(x);
    return Make(std::move(pts), center_, radius_);
  }

 private:
  Dataset(std::vector<ManifoldPoint> points, ManifoldPoint center, double radius)
      : points_(std::move(points)), center_(std::move(center)), radius_(radius) {}

  std::vector<ManifoldPoint> points_;
  ManifoldPoint center_;
  double radius_;
};

inline Dataset SampleUniformDataset(const ManifoldPoint& center, double radius, size_t n, Rng& rng) {
  std::vector<ManifoldPoint> pts;
  pts.reserve(n);
  for (size_t i = 0; i < n; ++i) pts.push_back(UniformBallSample(center, radius, rng));
  return Dataset::Make(std::move(pts), center, radius);
}

namespace detail {

inline void CheckExponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::kDomain, "exponent p must be finite and > 1");
}

inline double Objective(const Dataset& data, const Eigen::VectorXd& y, double p) {
  const ManifoldKind kind = data.spec().kind;
  double sum = 0.0;
  for (const ManifoldPoint& x : data.points()) {
    sum += std::pow(Distance(kind, y, x.coords()), p);
  }
  return sum / (static_cast<double>(data.size()) * p);
}

// Terms with d < 1e-12 are dropped: their magnitude d^{p-1} vanishes for p > 1.
inline Eigen::VectorXd Gradient(const Dataset& data, const Eigen::VectorXd& y, double p) {
  const ManifoldKind kind = data.spec().kind;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(y.size());
  for (const ManifoldPoint& x : data.points()) {
    const double d = Distance(kind, y, x.coords());
    if (d < 1e-12) continue;
    g -= std::pow(d, p - 2.0) * Log(kind, y, x.coords());
  }
  g /= static_cast<double>(data.size());
  ProjectToTangent(kind, y, g);
  return g;
}

}  // namespace detail

// F_D(y) = (1/(n p)) sum_i d(y, x_i)^p.
inline double FrechetObjective(const Dataset& data, const ManifoldPoint& y, double p) {
  detail::CheckExponent(p);
  RequireSameSpec(data.center(), y);
  return detail::Objective(data, y.coords(), p);
}

// Riemannian gradient -(1/n) sum_i d(y, x_i)^{p-2} Log_y(x_i).
inline TangentVector FrechetGradient(const Dataset& data, const ManifoldPoint& y, double p) {
  detail::CheckExponent(p);
  RequireSameSpec(data.center(), y);
  return {TrustedTag{}, y, detail::Gradient(data, y.coords(), p)};
}

// b_c(l) = sqrt(c) l cot(sqrt(c) l) for c >= 0 (1 at c = 0), and 1 for c < 0.
inline double BFunc(double c, double l) {
  if (!(l >= 0.0)) throw Error(ErrorCode::kDomain, "b_c(l) needs l >= 0");
  if (c <= 0.0) return 1.0;
  const double x = std::sqrt(c) * l;
  if (x >= std::numbers::pi) {
    throw Error(ErrorCode::kDomain, "b_c(l) needs l < pi / sqrt(c)");
  }
  if (x < 1e-8) return 1.0 - x * x / 3.0;
  return x / std::tan(x);
}

// pi / (k sqrt(kappa)), read as +infinity when kappa <= 0.
inline double CurvatureScale(double kappa, double k) {
  return kappa > 0.0 ? std::numbers::pi / (k * std::sqrt(kappa)) : kInfinity;
}

// Largest ball radius for which the p-mean exists uniquely:
// (1/2) min{inj, pi/(2 sqrt(kappa))} for p < 2, (1/2) min{inj, pi/sqrt(kappa)}
// for p >= 2.
inline double AdmissibleRadius(double kappa, double p, double inj) {
  const double curvature_term = p < 2.0 ? CurvatureScale(kappa, 2.0) : CurvatureScale(kappa, 1.0);
  return 0.5 * std::min(inj, curvature_term);
}

// Radius bound of the small-ball strong-convexity regime,
// (1/2) min{inj, pi/(2 sqrt(kappa))}.
inline double SmallBallRadius(double kappa, double inj) {
  return 0.5 * std::min(inj, CurvatureScale(kappa, 2.0));
}

// Strong-convexity modulus of d(., y)^p / p on B(o, r), p in (1, 2]:
// k = (2r)^{p-2} min{p - 1, b_kappa(2r)}.
inline double StrongConvexityK(double kappa, double r, double p, double inj = kInfinity) {
  detail::CheckExponent(p);
  if (p > 2.0) throw Error(ErrorCode::kDomain, "strong convexity constant needs p in (1, 2]");
  if (!(r > 0.0)) throw Error(ErrorCode::kDomain, "radius must be > 0");
  if (r > SmallBallRadius(kappa, inj)) {
    throw Error(ErrorCode::kDomain, "radius exceeds (1/2) min{inj, pi/(2 sqrt(kappa))}");
  }
  return std::pow(2.0 * r, p - 2.0) * std::min(p - 1.0, BFunc(kappa, 2.0 * r));
}

// NSK p-uniform convexity constant of CAT(0) spaces: 2(p-1) on (1,2], 8/2^p above.
inline double NskConstant(double p) {
  detail::CheckExponent(p);
  return p <= 2.0 ? 2.0 * (p - 1.0) : 8.0 / std::pow(2.0, p);
}

struct SolverOptions {
  double tol = 1e-9;
  int max_iter = 10000;
};

// Constrained Frechet p-mean by projected Riemannian gradient descent with
// backtracking, started at the ball center. Steps that leave B(o, r) are
// pulled back along the geodesic from o.
inline ManifoldPoint SolvePMean(const Dataset& data, double p, SolverOptions options = {}) {
  detail::CheckExponent(p);
  const ManifoldSpec& spec = data.spec();
  if (spec.sec_upper_kappa > 0.0 &&
      !(data.radius() < AdmissibleRadius(spec.sec_upper_kappa, p, spec.inj_radius))) {
    throw Error(ErrorCode::kDomain, "ball radius is not below the admissible p-mean radius");
  }
  const ManifoldKind kind = spec.kind;
  const Eigen::VectorXd& o = data.center().coords();
  const double r = data.radius();

  auto project = [&](Eigen::VectorXd& y) {
    const double d = detail::Distance(kind, o, y);
    if (d <= r) return;
    Eigen::VectorXd v = detail::Log(kind, o, y);
    v *= r / d;
    y = detail::Exp(kind, o, v);
  };

  constexpr double kArmijo = 1e-4;
  constexpr double kMaxStep = 1e8;
  constexpr int kMaxHalvings = 80;

  struct Iterate {
    Eigen::VectorXd y;
    Eigen::VectorXd grad;
    double value = 0.0;
    double grad_norm = 0.0;
  };
  auto evaluate = [&](Eigen::VectorXd y) {
    Iterate it;
    it.value = detail::Objective(data, y, p);
    it.grad = detail::Gradient(data, y, p);
    it.grad_norm = detail::TangentNormAt(kind, y, it.grad);
    it.y = std::move(y);
    return it;
  };
  auto trial = [&](const Iterate& from, double step) {
    Eigen::VectorXd y = detail::Exp(kind, from.y, -step * from.grad);
    project(y);
    return evaluate(std::move(y));
  };
  // Objective differences below the noise band are summation roundoff, so
  // there the gradient norm decides.
  auto better = [](const Iterate& a, const Iterate& b) {
    const double noise = 1e-13 * std::max(1.0, std::abs(b.value));
    if (a.value < b.value - noise) return true;
    if (a.value > b.value + noise) return false;
    return a.grad_norm < b.grad_norm;
  };

  Iterate cur = evaluate(o);
  double step = 1.0;
  for (int iter = 0; iter < options.max_iter && cur.grad_norm > options.tol; ++iter) {
    const double noise = 1e-13 * std::max(1.0, std::abs(cur.value));
    std::optional<Iterate> next;
    int halving = 0;
    for (; halving < kMaxHalvings; ++halving, step *= 0.5) {
      Iterate cand = trial(cur, step);
      const double decrease = kArmijo * step * cur.grad_norm * cur.grad_norm;
      const bool ok = decrease > noise ? cand.value <= cur.value - decrease : better(cand, cur);
      if (ok) {
        next = std::move(cand);
        break;
      }
    }
    if (!next) break;
    // Keep halving while it helps; damps oscillation from an overlong step.
    while (halving < kMaxHalvings) {
      Iterate cand = trial(cur, 0.5 * step);
      if (!better(cand, *next)) break;
      next = std::move(cand);
      step *= 0.5;
      ++halving;
    }
    cur = std::move(*next);
    step = std::min(2.0 * step, kMaxStep);
  }
  const double grad_norm = cur.grad_norm;
  if (grad_norm <= options.tol) return {TrustedTag{}, spec, std::move(cur.y)};
  std::ostringstream msg;
  msg.precision(6);
  msg << "p-mean solver stopped with gradient norm " << grad_norm << " > tol " << options.tol;
  throw Error(ErrorCode::kConvergence, msg.str());
}

enum class CurvatureRegime { kGeneralSmallBall, kHadamard, kCompactPositive };

inline std::string_view RegimeName(CurvatureRegime regime) {
  switch (regime) {
    case CurvatureRegime::kGeneralSmallBall: return "general-small-ball";
    case CurvatureRegime::kHadamard: return "hadamard";
    case CurvatureRegime::kCompactPositive: return "compact-positive";
  }
  return "unknown";
}

// Inputs of the p-mean sensitivity bounds.
struct SensitivityContext {
  double p = 2.0;
  double r = 1.0;
  double n = 1.0;
  double kappa = 0.0;
  double inj = kInfinity;
  CurvatureRegime regime = CurvatureRegime::kHadamard;

  static SensitivityContext ForManifold(const ManifoldSpec& spec, double p, double r, double n) {
    SensitivityContext ctx;
    ctx.p = p;
    ctx.r = r;
    ctx.n = n;
    ctx.kappa = spec.sec_upper_kappa;
    ctx.inj = spec.inj_radius;
    ctx.regime = spec.is_hadamard() ? CurvatureRegime::kHadamard
                                    : CurvatureRegime::kCompactPositive;
    ctx.Validate();
    return ctx;
  }

  void Validate() const {
    detail::CheckExponent(p);
    if (!(r > 0.0)) throw Error(ErrorCode::kDomain, "sensitivity radius must be > 0");
    if (!(n >= 1.0)) throw Error(ErrorCode::kDomain, "sample size must be >= 1");
    switch (regime) {
      case CurvatureRegime::kGeneralSmallBall:
        if (r > SmallBallRadius(kappa, inj)) {
          throw Error(ErrorCode::kDomain, "small-ball regime needs r <= (1/2) min{inj, pi/(2 sqrt(kappa))}");
        }
        break;
      case CurvatureRegime::kHadamard:
        if (kappa > 0.0) throw Error(ErrorCode::kRegime, "Hadamard regime needs kappa <= 0");
        break;
      case CurvatureRegime::kCompactPositive:
        if (!(kappa > 0.0)) throw Error(ErrorCode::kRegime, "compact regime needs kappa > 0");
        break;
    }
  }
};

// p in (1, 2], any curvature, r <= (1/2) min{inj, pi/(2 sqrt(kappa))}:
// (2r(2 - b))^{p-1} / (n (4r)^{p-2} min{p - 1, b}),  b = b_kappa(2r).
inline double SensitivityPLe2(const SensitivityContext& ctx) {
  detail::CheckExponent(ctx.p);
  if (ctx.p > 2.0) throw Error(ErrorCode::kDomain, "this bound needs p in (1, 2]");
  if (!(ctx.r > 0.0) || !(ctx.n >= 1.0)) throw Error(ErrorCode::kDomain, "need r > 0, n >= 1");
  if (ctx.r > SmallBallRadius(ctx.kappa, ctx.inj)) {
    throw Error(ErrorCode::kDomain, "radius exceeds (1/2) min{inj, pi/(2 sqrt(kappa))}");
  }
  const double b = BFunc(ctx.kappa, 2.0 * ctx.r);
  const double p = ctx.p;
  return std::pow(2.0 * ctx.r * (2.0 - b), p - 1.0) /
         (ctx.n * std::pow(4.0 * ctx.r, p - 2.0) * std::min(p - 1.0, b));
}

// Hadamard manifolds, any p > 1:
// ((p-1)(4r)^{p-2} 2r / (n lambda_p))^{1/(p-1)},  lambda_p = k_p / p.
inline double SensitivityHadamard(const SensitivityContext& ctx) {
  detail::CheckExponent(ctx.p);
  if (ctx.kappa > 0.0 || ctx.regime == CurvatureRegime::kCompactPositive) {
    throw Error(ErrorCode::kRegime, "Hadamard sensitivity bound needs non-positive curvature");
  }
  if (!(ctx.r > 0.0) || !(ctx.n >= 1.0)) throw Error(ErrorCode::kDomain, "need r > 0, n >= 1");
  const double p = ctx.p;
  const double lambda_p = NskConstant(p) / p;
  return std::pow((p - 1.0) * std::pow(4.0 * ctx.r, p - 2.0) * 2.0 * ctx.r / (ctx.n * lambda_p),
                  1.0 / (p - 1.0));
}

// Positive curvature kappa, p >= 2, r <= pi/(4 sqrt(kappa)):
// (2^{p-1} p (p-1) (4r)^{p-2} (2 - b) 2r / (n b))^{1/(p-1)},  b = b_kappa(2r).
inline double SensitivityCompact(const SensitivityContext& ctx) {
  if (!(ctx.kappa > 0.0)) throw Error(ErrorCode::kRegime, "compact bound needs kappa > 0");
  if (!(ctx.p >= 2.0) || !std::isfinite(ctx.p)) throw Error(ErrorCode::kDomain, "compact bound needs p >= 2");
  if (!(ctx.r > 0.0) || !(ctx.n >= 1.0)) throw Error(ErrorCode::kDomain, "need r > 0, n >= 1");
  if (ctx.r > CurvatureScale(ctx.kappa, 4.0)) {
    throw Error(ErrorCode::kDomain, "compact bound needs r <= pi/(4 sqrt(kappa))");
  }
  const double b = BFunc(ctx.kappa, 2.0 * ctx.r);
  const double p = ctx.p;
  return std::pow(std::pow(2.0, p - 1.0) * p * (p - 1.0) * std::pow(4.0 * ctx.r, p - 2.0) *
                      (2.0 - b) * 2.0 * ctx.r / (ctx.n * b),
                  1.0 / (p - 1.0));
}

enum class SensitivityRule { kSmallBall, kHadamard, kCompact };

inline std::string_view RuleName(SensitivityRule rule) {
  switch (rule) {
    case SensitivityRule::kSmallBall: return "small-ball (p<=2)";
    case SensitivityRule::kHadamard: return "hadamard";
    case SensitivityRule::kCompact: return "compact";
  }
  return "unknown";
}

struct SensitivityChoice {
  double delta = 0.0;
  SensitivityRule rule = SensitivityRule::kSmallBall;
};

// Smallest of the bounds whose hypotheses hold; kNoValidBound if none does.
inline SensitivityChoice ChooseSensitivityBound(const SensitivityContext& ctx) {
  detail::CheckExponent(ctx.p);
  if (!(ctx.r > 0.0) || !(ctx.n >= 1.0)) throw Error(ErrorCode::kDomain, "need r > 0, n >= 1");
  SensitivityChoice best{kInfinity, SensitivityRule::kSmallBall};
  auto offer = [&best](double value, SensitivityRule rule) {
    if (value < best.delta) best = {value, rule};
  };
  const bool hadamard = ctx.kappa <= 0.0 && ctx.regime != CurvatureRegime::kCompactPositive;
  if (ctx.p <= 2.0 && ctx.r <= SmallBallRadius(ctx.kappa, ctx.inj)) {
    offer(SensitivityPLe2(ctx), SensitivityRule::kSmallBall);
  }
  if (ctx.p >= 2.0 && hadamard) offer(SensitivityHadamard(ctx), SensitivityRule::kHadamard);
  if (ctx.p >= 2.0 && ctx.kappa > 0.0 && ctx.r <= CurvatureScale(ctx.kappa, 4.0)) {
    offer(SensitivityCompact(ctx), SensitivityRule::kCompact);
  }
  if (!std::isfinite(best.delta)) {
    std::ostringstream msg;
    msg << "no sensitivity bound applies for p = " << ctx.p << ", r = " << ctx.r
        << ", kappa = " << ctx.kappa;
    throw Error(ErrorCode::kNoValidBound, msg.str());
  }
  return best;
}

inline double SensitivityBound(const SensitivityContext& ctx) {
  return ChooseSensitivityBound(ctx).delta;
}

}  // namespace geodp
