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
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "geodp/error.hpp"
#include "geodp/rng.hpp"

namespace geodp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kPointTolerance = 1e-10;
// Log maps on the sphere fail this close to the antipode.
inline constexpr double kAntipodalMargin = 1e-9;

enum class ManifoldKind { kEuclidean, kSphere, kHyperboloid };

// Unit-curvature models only: S^m has radius 1, H^m has curvature -1.
// `ric_lower_K` is the K in "Ric >= -K", so the sphere carries a negative K.
struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::kEuclidean;
  int m = 1;
  double ric_lower_K = 0.0;
  double sec_upper_kappa = 0.0;
  double sec_lower = 0.0;
  double inj_radius = kInfinity;

  static ManifoldSpec Euclidean(int m) {
    CheckDimension(m);
    return {ManifoldKind::kEuclidean, m, 0.0, 0.0, 0.0, kInfinity};
  }
  static ManifoldSpec Sphere(int m) {
    CheckDimension(m);
    return {ManifoldKind::kSphere, m, -(m - 1.0), 1.0, 1.0, std::numbers::pi};
  }
  static ManifoldSpec Hyperboloid(int m) {
    CheckDimension(m);
    return {ManifoldKind::kHyperboloid, m, m - 1.0, -1.0, -1.0, kInfinity};
  }

  int ambient_dim() const { return kind == ManifoldKind::kEuclidean ? m : m + 1; }
  bool is_hadamard() const { return sec_upper_kappa <= 0.0; }

  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;

 private:
  static void CheckDimension(int m) {
    if (m < 1) throw Error(ErrorCode::kDomain, "manifold dimension must be >= 1");
  }
};

inline std::string_view KindName(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::kEuclidean: return "euclidean";
    case ManifoldKind::kSphere: return "sphere";
    case ManifoldKind::kHyperboloid: return "hyperboloid";
  }
  return "unknown";
}

inline std::string ToString(const ManifoldSpec& spec) {
  return std::string(KindName(spec.kind)) + ":" + std::to_string(spec.m);
}

// Parses "euclidean:m", "sphere:m" or "hyperboloid:m".
inline ManifoldSpec ParseManifold(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kConfig, "manifold must look like kind:m, got '" +
                                        std::string(text) + "'");
  }
  const std::string kind(text.substr(0, colon));
  int m = 0;
  try {
    size_t used = 0;
    const std::string dim(text.substr(colon + 1));
    m = std::stoi(dim, &used);
    if (used != dim.size()) throw std::invalid_argument(dim);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfig, "bad manifold dimension in '" + std::string(text) + "'");
  }
  if (m < 1) throw Error(ErrorCode::kConfig, "manifold dimension must be >= 1");
  if (kind == "euclidean") return ManifoldSpec::Euclidean(m);
  if (kind == "sphere") return ManifoldSpec::Sphere(m);
  if (kind == "hyperboloid") return ManifoldSpec::Hyperboloid(m);
  throw Error(ErrorCode::kConfig, "unknown manifold kind '" + kind + "'");
}

namespace detail {

// Ambient bilinear form: Euclidean dot product, or the Lorentzian
// <x,y>_L = -x0*y0 + sum_{i>=1} xi*yi on the hyperboloid.
inline double Inner(ManifoldKind kind, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (kind == ManifoldKind::kHyperboloid) {
    return a.dot(b) - 2.0 * a[0] * b[0];
  }
  return a.dot(b);
}

inline void ProjectToTangent(ManifoldKind kind, const Eigen::VectorXd& x, Eigen::VectorXd& v) {
  switch (kind) {
    case ManifoldKind::kEuclidean:
      return;
    case ManifoldKind::kSphere:
      v -= x.dot(v) * x;
      return;
    case ManifoldKind::kHyperboloid:
      v += Inner(kind, x, v) * x;
      return;
  }
}

inline void NormalizePoint(ManifoldKind kind, Eigen::VectorXd& x) {
  switch (kind) {
    case ManifoldKind::kEuclidean:
      return;
    case ManifoldKind::kSphere:
      x /= x.norm();
      return;
    case ManifoldKind::kHyperboloid: {
      // Lift onto the upper sheet; rescaling by sqrt(-<x,x>_L) would inherit
      // the x0^2 eps cancellation far from the origin.
      x[0] = std::sqrt(1.0 + x.tail(x.size() - 1).squaredNorm());
      return;
    }
  }
}

inline double TangentNorm(ManifoldKind kind, const Eigen::VectorXd& v) {
  return std::sqrt(std::max(0.0, Inner(kind, v, v)));
}

// Norm of v tangent at x. On the hyperboloid <v,v>_L cancels to |v|^2 from
// terms of size x0^2 |v|^2; the coordinates of v in the boost frame at x,
// v_s - x_s <x_s,v_s> / (x0 (x0 + 1)), lose only x0 eps.
inline double TangentNormAt(ManifoldKind kind, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& v) {
  if (kind != ManifoldKind::kHyperboloid) return TangentNorm(kind, v);
  const Eigen::Index m = x.size() - 1;
  const double k = x.tail(m).dot(v.tail(m)) / (x[0] * (x[0] + 1.0));
  return (v.tail(m) - k * x.tail(m)).norm();
}

// Both closed forms are rewritten in their well-conditioned chordal versions:
// 2*atan2(|x-y|, |x+y|) equals arccos(<x,y>), and 2*asinh(|x-y|_L / 2) equals
// arccosh(-<x,y>_L), without the loss of precision near zero distance.
inline double Distance(ManifoldKind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  switch (kind) {
    case ManifoldKind::kEuclidean:
      return (x - y).norm();
    case ManifoldKind::kSphere:
      return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
    case ManifoldKind::kHyperboloid: {
      const double c = std::max(1.0, -Inner(kind, x, y));
      if (c >= 2.0) return std::acosh(c);
      const Eigen::VectorXd diff = x - y;
      const double chord = std::sqrt(std::max(0.0, Inner(kind, diff, diff)));
      return 2.0 * std::asinh(0.5 * chord);
    }
  }
  return 0.0;
}

inline Eigen::VectorXd Exp(ManifoldKind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  if (kind == ManifoldKind::kEuclidean) return x + v;
  const double n = TangentNormAt(kind, x, v);
  if (n < 1e-14) return x;
  Eigen::VectorXd y;
  if (kind == ManifoldKind::kSphere) {
    y = std::cos(n) * x + (std::sin(n) / n) * v;
  } else {
    y = std::cosh(n) * x + (std::sinh(n) / n) * v;
  }
  NormalizePoint(kind, y);
  return y;
}

inline Eigen::VectorXd Log(ManifoldKind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (kind == ManifoldKind::kEuclidean) return y - x;
  const double d = Distance(kind, x, y);
  if (kind == ManifoldKind::kSphere && d > std::numbers::pi - kAntipodalMargin) {
    throw Error(ErrorCode::kCutLocus, "log map requested at an antipodal pair");
  }
  Eigen::VectorXd w = y - x;
  ProjectToTangent(kind, x, w);
  const double nw = TangentNormAt(kind, x, w);
  if (nw == 0.0 || d == 0.0) return Eigen::VectorXd::Zero(x.size());
  w *= d / nw;
  ProjectToTangent(kind, x, w);
  return w;
}

// Hyperboloid frame: the boost taking (1, 0) to x applied to the spatial
// axes, column j = (x_j, e_j + x_j/(x_0 + 1) x_s). Lorentz Gram-Schmidt on
// ambient axes cancels catastrophically once x_0 is large.
template <typename Matrix>
void HyperboloidFrame(const Eigen::VectorXd& x, Matrix& frame) {
  const Eigen::Index m = x.size() - 1;
  const auto xs = x.tail(m);
  const double c = 1.0 / (x[0] + 1.0);
  for (Eigen::Index j = 0; j < m; ++j) {
    frame(0, j) = xs[j];
    frame.col(j).tail(m) = (c * xs[j]) * xs;
    frame(j + 1, j) += 1.0;
  }
}

// Orthonormal frame of T_xM as the columns of an (ambient x m) matrix.
// On the sphere Gram-Schmidt runs over the ambient axes ordered by increasing
// |x_i|, which is deterministic and always drops the axis most aligned with x.
inline Eigen::MatrixXd Frame(ManifoldKind kind, int m, const Eigen::VectorXd& x) {
  if (kind == ManifoldKind::kEuclidean) return Eigen::MatrixXd::Identity(m, m);
  if (kind == ManifoldKind::kHyperboloid) {
    Eigen::MatrixXd frame(m + 1, m);
    HyperboloidFrame(x, frame);
    return frame;
  }
  const int n = static_cast<int>(x.size());
  std::vector<int> axes(n);
  std::iota(axes.begin(), axes.end(), 0);
  std::stable_sort(axes.begin(), axes.end(),
                   [&](int a, int b) { return std::abs(x[a]) < std::abs(x[b]); });
  Eigen::MatrixXd frame(n, m);
  int filled = 0;
  for (int axis : axes) {
    if (filled == m) break;
    Eigen::VectorXd u = Eigen::VectorXd::Unit(n, axis);
    ProjectToTangent(kind, x, u);
    for (int j = 0; j < filled; ++j) {
      u -= Inner(kind, frame.col(j), u) * frame.col(j);
    }
    const double norm = TangentNorm(kind, u);
    if (norm < 1e-8) continue;
    frame.col(filled++) = u / norm;
  }
  if (filled != m) throw Error(ErrorCode::kDomain, "failed to build a tangent frame");
  return frame;
}

inline Eigen::VectorXd TangentGaussian(ManifoldKind kind, int m, const Eigen::VectorXd& x,
                                       Rng& rng) {
  Eigen::VectorXd z(m);
  for (int i = 0; i < m; ++i) z[i] = rng.Normal();
  if (kind == ManifoldKind::kEuclidean) return z;
  return Frame(kind, m, x) * z;
}

// Reusable buffers for the sampler inner loops, so one walk step allocates
// nothing. Produces exactly the same frame and draws as Frame/TangentGaussian.
class StepWorkspace {
 public:
  StepWorkspace(ManifoldKind kind, int m)
      : kind_(kind), m_(m), n_(kind == ManifoldKind::kEuclidean ? m : m + 1),
        axes_(n_), frame_(n_, m), basis_(n_), z_(m) {}

  // out <- u Z for Z ~ N(0, I_m), u the deterministic frame at x.
  void TangentGaussian(const Eigen::VectorXd& x, Rng& rng, Eigen::VectorXd& out) {
    for (int i = 0; i < m_; ++i) z_[i] = rng.Normal();
    if (kind_ == ManifoldKind::kEuclidean) {
      out = z_;
      return;
    }
    BuildFrame(x);
    out.noalias() = frame_ * z_;
  }

  // x <- Exp_x(v), in place.
  void ExpInPlace(Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    if (kind_ == ManifoldKind::kEuclidean) {
      x += v;
      return;
    }
    const double n = TangentNormAt(kind_, x, v);
    if (n < 1e-14) return;
    if (kind_ == ManifoldKind::kSphere) {
      x = std::cos(n) * x + (std::sin(n) / n) * v;
    } else {
      x = std::cosh(n) * x + (std::sinh(n) / n) * v;
    }
    NormalizePoint(kind_, x);
  }

 private:
  void BuildFrame(const Eigen::VectorXd& x) {
    if (kind_ == ManifoldKind::kHyperboloid) {
      HyperboloidFrame(x, frame_);
      return;
    }
    std::iota(axes_.begin(), axes_.end(), 0);
    std::stable_sort(axes_.begin(), axes_.end(),
                     [&](int a, int b) { return std::abs(x[a]) < std::abs(x[b]); });
    int filled = 0;
    for (int axis : axes_) {
      if (filled == m_) break;
      basis_.setZero();
      basis_[axis] = 1.0;
      ProjectToTangent(kind_, x, basis_);
      for (int j = 0; j < filled; ++j) {
        basis_ -= Inner(kind_, frame_.col(j), basis_) * frame_.col(j);
      }
      const double norm = TangentNorm(kind_, basis_);
      if (norm < 1e-8) continue;
      frame_.col(filled++) = basis_ / norm;
    }
    if (filled != m_) throw Error(ErrorCode::kDomain, "failed to build a tangent frame");
  }

  ManifoldKind kind_;
  int m_;
  int n_;
  std::vector<int> axes_;
  Eigen::MatrixXd frame_;
  Eigen::VectorXd basis_;
  Eigen::VectorXd z_;
};

// Smallest s in [lo, hi] with f(s) >= target for nondecreasing f, to absolute
// tolerance `tol` in s.
template <typename F>
double SolveIncreasing(F&& f, double target, double lo, double hi, double tol) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo >= 0.0) return lo;
  if (fhi <= 0.0) return hi;
  std::uintmax_t max_iter = 200;
  const auto result = boost::math::tools::toms748_solve(
      [&](double s) { return f(s) - target; }, lo, hi, flo, fhi,
      [tol](double a, double b) { return std::abs(b - a) <= tol; }, max_iter);
  return 0.5 * (result.first + result.second);
}

// Radial volume density A(s) of geodesic polar coordinates.
inline double RadialArea(ManifoldKind kind, int m, double s) {
  switch (kind) {
    case ManifoldKind::kEuclidean: return std::pow(s, m - 1);
    case ManifoldKind::kSphere: return std::pow(std::sin(s), m - 1);
    case ManifoldKind::kHyperboloid: return std::pow(std::sinh(s), m - 1);
  }
  return 0.0;
}

template <typename F>
// Integrated over u in [0, 1]. Boost floors the panel error estimate at
// 2 eps |r| before scaling by the half-width, so on a short [a, b] the
// tolerance test can never pass and the recursion runs to full depth.
double IntegrateSmooth(F&& f, double a, double b) {
  if (b <= a) return 0.0;
  const double width = b - a;
  auto g = [&](double u) { return width * f(a + width * u); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, 1e-14);
}

// Radius of a point drawn uniformly (w.r.t. volume) from B(o, r), given a
// uniform u in (0, 1).
inline double UniformBallRadius(ManifoldKind kind, int m, double r, double u) {
  if (kind == ManifoldKind::kEuclidean) return r * std::pow(u, 1.0 / m);
  if (m == 1) return r * u;
  if (m == 2) {
    // 1 - cos s = 2 sin^2(s/2) and cosh s - 1 = 2 sinh^2(s/2).
    if (kind == ManifoldKind::kSphere) {
      return 2.0 * std::asin(std::sqrt(u) * std::sin(0.5 * r));
    }
    return 2.0 * std::asinh(std::sqrt(u) * std::sinh(0.5 * r));
  }
  auto area = [&](double s) { return RadialArea(kind, m, s); };
  const double total = IntegrateSmooth(area, 0.0, r);
  return SolveIncreasing([&](double s) { return IntegrateSmooth(area, 0.0, s) / total; }, u,
                         0.0, r, 1e-12);
}

}  // namespace detail

// Marker for constructors that skip validation; only for outputs of kernels
// that already enforce the invariants.
struct TrustedTag {};

class ManifoldPoint {
 public:
  // Validates the manifold constraint (unit norm on the sphere, upper sheet
  // of <x,x>_L = -1 on the hyperboloid) to within 1e-10.
  static ManifoldPoint FromCoords(const ManifoldSpec& spec, Eigen::VectorXd coords) {
    if (coords.size() != spec.ambient_dim()) {
      throw Error(ErrorCode::kInvalidPoint, "expected " + std::to_string(spec.ambient_dim()) +
                                                " coordinates for " + ToString(spec));
    }
    if (!coords.allFinite()) throw Error(ErrorCode::kInvalidPoint, "non-finite coordinates");
    switch (spec.kind) {
      case ManifoldKind::kEuclidean:
        break;
      case ManifoldKind::kSphere:
        if (std::abs(coords.norm() - 1.0) > kPointTolerance) {
          throw Error(ErrorCode::kInvalidPoint, "sphere point must have unit norm");
        }
        break;
      case ManifoldKind::kHyperboloid:
        // <x,x>_L carries rounding of order x0^2 ulp, so far points get a
        // relative tolerance.
        if (coords[0] <= 0.0 || std::abs(detail::Inner(spec.kind, coords, coords) + 1.0) >
                                    kPointTolerance * std::max(1.0, coords[0] * coords[0])) {
          throw Error(ErrorCode::kInvalidPoint, "hyperboloid point must satisfy <x,x>_L = -1, x0 > 0");
        }
        break;
    }
    return ManifoldPoint(TrustedTag{}, spec, std::move(coords));
  }

  // Maps arbitrary ambient coordinates onto the manifold: normalizes on the
  // sphere, lifts the spatial part onto the upper sheet on the hyperboloid.
  static ManifoldPoint Project(const ManifoldSpec& spec, Eigen::VectorXd coords) {
    if (coords.size() != spec.ambient_dim()) {
      throw Error(ErrorCode::kInvalidPoint, "wrong coordinate count for " + ToString(spec));
    }
    if (spec.kind == ManifoldKind::kSphere) {
      const double n = coords.norm();
      if (n == 0.0) throw Error(ErrorCode::kInvalidPoint, "cannot project the origin onto the sphere");
      coords /= n;
    } else if (spec.kind == ManifoldKind::kHyperboloid) {
      coords[0] = std::sqrt(1.0 + coords.tail(spec.m).squaredNorm());
    }
    return ManifoldPoint(TrustedTag{}, spec, std::move(coords));
  }

  // Euclidean zero, sphere north pole (0,...,0,1), hyperboloid (1,0,...,0).
  static ManifoldPoint Origin(const ManifoldSpec& spec) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(spec.ambient_dim());
    if (spec.kind == ManifoldKind::kSphere) c[spec.m] = 1.0;
    if (spec.kind == ManifoldKind::kHyperboloid) c[0] = 1.0;
    return ManifoldPoint(TrustedTag{}, spec, std::move(c));
  }

  ManifoldPoint(TrustedTag, const ManifoldSpec& spec, Eigen::VectorXd coords)
      : spec_(spec), coords_(std::move(coords)) {}

  const ManifoldSpec& spec() const { return spec_; }
  const Eigen::VectorXd& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }

 private:
  ManifoldSpec spec_;
  Eigen::VectorXd coords_;
};

inline void RequireSameSpec(const ManifoldPoint& a, const ManifoldPoint& b) {
  if (!(a.spec() == b.spec())) {
    throw Error(ErrorCode::kSpecMismatch,
                "points live on " + ToString(a.spec()) + " and " + ToString(b.spec()));
  }
}

class TangentVector {
 public:
  static TangentVector FromCoords(const ManifoldPoint& base, Eigen::VectorXd coords) {
    if (coords.size() != base.coords().size()) {
      throw Error(ErrorCode::kInvalidTangent, "tangent coordinate count differs from base point");
    }
    const double scale = std::max(1.0, coords.lpNorm<Eigen::Infinity>() *
                                           base.coords().lpNorm<Eigen::Infinity>());
    const ManifoldKind kind = base.spec().kind;
    if (kind != ManifoldKind::kEuclidean &&
        std::abs(detail::Inner(kind, base.coords(), coords)) > kPointTolerance * scale) {
      throw Error(ErrorCode::kInvalidTangent, "vector is not tangent at its base point");
    }
    return TangentVector(TrustedTag{}, base, std::move(coords));
  }

  static TangentVector Zero(const ManifoldPoint& base) {
    return TangentVector(TrustedTag{}, base, Eigen::VectorXd::Zero(base.coords().size()));
  }

  TangentVector(TrustedTag, ManifoldPoint base, Eigen::VectorXd coords)
      : base_(std::move(base)), coords_(std::move(coords)) {}

  const ManifoldPoint& base() const { return base_; }
  const Eigen::VectorXd& coords() const { return coords_; }

  double Norm() const {
    return detail::TangentNormAt(base_.spec().kind, base_.coords(), coords_);
  }

  TangentVector operator*(double s) const { return {TrustedTag{}, base_, s * coords_}; }
  TangentVector operator-() const { return {TrustedTag{}, base_, -coords_}; }
  TangentVector operator+(const TangentVector& other) const {
    RequireSameBase(other);
    return {TrustedTag{}, base_, coords_ + other.coords_};
  }
  TangentVector operator-(const TangentVector& other) const {
    RequireSameBase(other);
    return {TrustedTag{}, base_, coords_ - other.coords_};
  }

 private:
  void RequireSameBase(const TangentVector& other) const {
    RequireSameSpec(base_, other.base_);
    if (base_.coords() != other.base_.coords()) {
      throw Error(ErrorCode::kInvalidTangent, "tangent vectors have different base points");
    }
  }

  ManifoldPoint base_;
  Eigen::VectorXd coords_;
};

inline TangentVector operator*(double s, const TangentVector& v) { return v * s; }

// Riemannian inner product of two tangent vectors at the same point.
inline double Metric(const TangentVector& u, const TangentVector& v) {
  return detail::Inner(u.base().spec().kind, u.coords(), v.coords());
}

inline double Distance(const ManifoldPoint& x, const ManifoldPoint& y) {
  RequireSameSpec(x, y);
  return detail::Distance(x.spec().kind, x.coords(), y.coords());
}

inline ManifoldPoint ExpMap(const TangentVector& v) {
  const ManifoldPoint& x = v.base();
  return {TrustedTag{}, x.spec(), detail::Exp(x.spec().kind, x.coords(), v.coords())};
}

inline ManifoldPoint ExpMap(const ManifoldPoint& x, const TangentVector& v) {
  RequireSameSpec(x, v.base());
  if (x.coords() != v.base().coords()) {
    throw Error(ErrorCode::kInvalidTangent, "exp map called with a vector based elsewhere");
  }
  return ExpMap(v);
}

// Throws kCutLocus on the sphere when y is within 1e-9 of the antipode of x.
inline TangentVector LogMap(const ManifoldPoint& x, const ManifoldPoint& y) {
  RequireSameSpec(x, y);
  return {TrustedTag{}, x, detail::Log(x.spec().kind, x.coords(), y.coords())};
}

// The point a fraction `s` of the way along the minimizing geodesic from x to y.
inline ManifoldPoint Geodesic(const ManifoldPoint& x, const ManifoldPoint& y, double s) {
  return ExpMap(LogMap(x, y) * s);
}

inline Eigen::MatrixXd OrthonormalFrame(const ManifoldPoint& x) {
  return detail::Frame(x.spec().kind, x.spec().m, x.coords());
}

// u * Z with Z ~ N(0, I_m) and u the deterministic orthonormal frame at x.
inline TangentVector TangentGaussian(const ManifoldPoint& x, Rng& rng) {
  return {TrustedTag{}, x, detail::TangentGaussian(x.spec().kind, x.spec().m, x.coords(), rng)};
}

// Unit tangent direction, uniform on the sphere of T_xM.
inline TangentVector UniformDirection(const ManifoldPoint& x, Rng& rng) {
  while (true) {
    TangentVector z = TangentGaussian(x, rng);
    const double n = z.Norm();
    if (n > 1e-300) return z * (1.0 / n);
  }
}

// Volume-uniform draw from the closed geodesic ball B(o, r).
inline ManifoldPoint UniformBallSample(const ManifoldPoint& o, double r, Rng& rng) {
  const ManifoldSpec& spec = o.spec();
  if (!(r > 0.0)) throw Error(ErrorCode::kDomain, "ball radius must be positive");
  if (spec.kind == ManifoldKind::kSphere && !(r < std::numbers::pi)) {
    throw Error(ErrorCode::kDomain, "sphere ball radius must be < pi");
  }
  const TangentVector dir = UniformDirection(o, rng);
  const double s = detail::UniformBallRadius(spec.kind, spec.m, r, rng.UniformOpen());
  return ExpMap(dir * s);
}

}  // namespace geodp
