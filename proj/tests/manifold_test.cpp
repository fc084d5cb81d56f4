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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "geodp/manifold.hpp"

namespace geodp {
namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd Vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

ManifoldPoint Pt(const ManifoldSpec& spec, std::initializer_list<double> xs) {
  return ManifoldPoint::FromCoords(spec, Vec(xs));
}

// Random point within `radius` of the origin.
ManifoldPoint RandomPoint(const ManifoldSpec& spec, double radius, Rng& rng) {
  const ManifoldPoint o = ManifoldPoint::Origin(spec);
  return ExpMap(UniformDirection(o, rng) * (radius * rng.Uniform()));
}

bool SatisfiesInvariant(const ManifoldPoint& x) {
  try {
    ManifoldPoint::FromCoords(x.spec(), x.coords());
    return true;
  } catch (const Error&) {
    return false;
  }
}

double Ks(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    worst = std::max({worst, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return worst;
}

TEST(ManifoldSpecTest, CurvatureConstants) {
  const auto e = ManifoldSpec::Euclidean(3);
  EXPECT_EQ(e.ric_lower_K, 0.0);
  EXPECT_EQ(e.sec_upper_kappa, 0.0);
  EXPECT_EQ(e.sec_lower, 0.0);
  EXPECT_TRUE(std::isinf(e.inj_radius));

  const auto s = ManifoldSpec::Sphere(4);
  EXPECT_EQ(s.ric_lower_K, -3.0);
  EXPECT_EQ(s.sec_upper_kappa, 1.0);
  EXPECT_EQ(s.sec_lower, 1.0);
  EXPECT_EQ(s.inj_radius, kPi);
  EXPECT_FALSE(s.is_hadamard());

  const auto h = ManifoldSpec::Hyperboloid(2);
  EXPECT_EQ(h.ric_lower_K, 1.0);
  EXPECT_EQ(h.sec_upper_kappa, -1.0);
  EXPECT_EQ(h.sec_lower, -1.0);
  EXPECT_TRUE(std::isinf(h.inj_radius));
  EXPECT_TRUE(h.is_hadamard());
}

TEST(ManifoldSpecTest, ParseRoundTrip) {
  for (const auto& spec : {ManifoldSpec::Euclidean(1), ManifoldSpec::Sphere(2),
                           ManifoldSpec::Hyperboloid(5)}) {
    EXPECT_EQ(ParseManifold(ToString(spec)), spec);
  }
  EXPECT_EQ(ToString(ManifoldSpec::Sphere(2)), "sphere:2");
}

TEST(ManifoldSpecTest, ParseRejectsGarbage) {
  for (const char* bad : {"sphere", "sphere:0", "sphere:x", "torus:2", "sphere:2x", ""}) {
    try {
      ParseManifold(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfig) << bad;
    }
  }
  EXPECT_THROW(ManifoldSpec::Sphere(0), Error);
}

TEST(ManifoldPointTest, ValidatesConstraints) {
  const auto s2 = ManifoldSpec::Sphere(2);
  const auto h2 = ManifoldSpec::Hyperboloid(2);
  EXPECT_NO_THROW(Pt(s2, {0, 0, 1}));
  EXPECT_THROW(Pt(s2, {0, 0, 1.001}), Error);
  EXPECT_THROW(Pt(s2, {0, 1}), Error);
  EXPECT_NO_THROW(Pt(h2, {std::cosh(2.0), std::sinh(2.0), 0}));
  // Lower sheet.
  EXPECT_THROW(Pt(h2, {-1, 0, 0}), Error);
  EXPECT_THROW(Pt(h2, {1, 0.1, 0}), Error);
  try {
    Pt(s2, {1, 1, 0});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPoint);
  }
}

TEST(ManifoldPointTest, ProjectLandsOnManifold) {
  const auto h3 = ManifoldSpec::Hyperboloid(3);
  EXPECT_TRUE(SatisfiesInvariant(ManifoldPoint::Project(h3, Vec({0, 1, 2, 3}))));
  const auto s3 = ManifoldSpec::Sphere(3);
  EXPECT_TRUE(SatisfiesInvariant(ManifoldPoint::Project(s3, Vec({1, 2, 3, 4}))));
  EXPECT_THROW(ManifoldPoint::Project(s3, Vec({0, 0, 0, 0})), Error);
}

TEST(TangentVectorTest, RejectsNonTangent) {
  const auto s2 = ManifoldSpec::Sphere(2);
  const auto x = Pt(s2, {1, 0, 0});
  EXPECT_NO_THROW(TangentVector::FromCoords(x, Vec({0, 1, 2})));
  try {
    TangentVector::FromCoords(x, Vec({0.1, 1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidTangent);
  }
  const auto h2 = ManifoldSpec::Hyperboloid(2);
  const auto o = ManifoldPoint::Origin(h2);
  EXPECT_THROW(TangentVector::FromCoords(o, Vec({1, 0, 0})), Error);
}

TEST(DistanceTest, Examples) {
  const auto s2 = ManifoldSpec::Sphere(2);
  EXPECT_NEAR(Distance(Pt(s2, {1, 0, 0}), Pt(s2, {0, 1, 0})), kPi / 2, 1e-15);
  const auto h2 = ManifoldSpec::Hyperboloid(2);
  EXPECT_NEAR(Distance(Pt(h2, {1, 0, 0}), Pt(h2, {std::cosh(1.0), std::sinh(1.0), 0})), 1.0,
              1e-12);
  const auto e2 = ManifoldSpec::Euclidean(2);
  EXPECT_DOUBLE_EQ(Distance(Pt(e2, {0, 0}), Pt(e2, {3, 4})), 5.0);
}

TEST(DistanceTest, ZeroOnDiagonalAndSmallSeparations) {
  const auto s2 = ManifoldSpec::Sphere(2);
  const auto x = Pt(s2, {0.6, 0, 0.8});
  EXPECT_EQ(Distance(x, x), 0.0);
  const auto h2 = ManifoldSpec::Hyperboloid(2);
  const auto o = ManifoldPoint::Origin(h2);
  EXPECT_EQ(Distance(o, o), 0.0);
  // Tiny separations should not collapse to zero through arccos/arccosh.
  const auto y = Pt(s2, {std::sin(1e-9), 0, std::cos(1e-9)});
  EXPECT_NEAR(Distance(ManifoldPoint::Origin(s2), y), 1e-9, 1e-17);
  const auto z = Pt(h2, {std::cosh(1e-9), std::sinh(1e-9), 0});
  EXPECT_NEAR(Distance(o, z), 1e-9, 1e-17);
}

TEST(DistanceTest, SpecMismatchThrows) {
  try {
    Distance(ManifoldPoint::Origin(ManifoldSpec::Sphere(2)),
             ManifoldPoint::Origin(ManifoldSpec::Hyperboloid(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpecMismatch);
  }
  EXPECT_THROW(Distance(ManifoldPoint::Origin(ManifoldSpec::Sphere(2)),
                        ManifoldPoint::Origin(ManifoldSpec::Sphere(3))),
               Error);
}

TEST(ExpLogTest, ExpOfZeroIsIdentity) {
  Rng rng({3, 0});
  for (const auto& spec : {ManifoldSpec::Euclidean(3), ManifoldSpec::Sphere(2),
                           ManifoldSpec::Hyperboloid(3)}) {
    const auto x = RandomPoint(spec, 1.0, rng);
    const auto y = ExpMap(TangentVector::Zero(x));
    EXPECT_LT((y.coords() - x.coords()).norm(), 1e-15);
  }
}

TEST(ExpLogTest, Examples) {
  const auto s2 = ManifoldSpec::Sphere(2);
  const auto x = Pt(s2, {1, 0, 0});
  const auto y = ExpMap(TangentVector::FromCoords(x, Vec({0, kPi / 2, 0})));
  EXPECT_LT((y.coords() - Vec({0, 1, 0})).norm(), 1e-15);
  const auto v = LogMap(x, Pt(s2, {0, 1, 0}));
  EXPECT_LT((v.coords() - Vec({0, kPi / 2, 0})).norm(), 1e-15);

  const auto h2 = ManifoldSpec::Hyperboloid(2);
  const auto o = ManifoldPoint::Origin(h2);
  const auto z = ExpMap(TangentVector::FromCoords(o, Vec({0, 1, 0})));
  EXPECT_LT((z.coords() - Vec({std::cosh(1.0), std::sinh(1.0), 0})).norm(), 1e-15);
  const auto w = LogMap(o, Pt(h2, {std::cosh(1.0), std::sinh(1.0), 0}));
  EXPECT_LT((w.coords() - Vec({0, 1, 0})).norm(), 1e-12);

  const auto e2 = ManifoldSpec::Euclidean(2);
  EXPECT_EQ(ExpMap(TangentVector::FromCoords(Pt(e2, {1, 2}), Vec({3, 4}))).coords(), Vec({4, 6}));
}

TEST(ExpLogTest, LogOfSelfIsZero) {
  for (const auto& spec : {ManifoldSpec::Euclidean(2), ManifoldSpec::Sphere(2),
                           ManifoldSpec::Hyperboloid(2)}) {
    const auto x = ManifoldPoint::Origin(spec);
    EXPECT_EQ(LogMap(x, x).Norm(), 0.0);
  }
}

TEST(ExpLogTest, AntipodeIsCutLocus) {
  const auto s2 = ManifoldSpec::Sphere(2);
  try {
    LogMap(Pt(s2, {1, 0, 0}), Pt(s2, {-1, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCutLocus);
  }
  // Just outside the margin still works.
  const double a = kPi - 1e-6;
  const auto y = Pt(s2, {std::cos(a), std::sin(a), 0});
  EXPECT_NEAR(LogMap(Pt(s2, {1, 0, 0}), y).Norm(), a, 1e-9);
}

TEST(ExpLogTest, ExpOfForeignVectorThrows) {
  const auto s2 = ManifoldSpec::Sphere(2);
  const auto x = Pt(s2, {1, 0, 0});
  const auto v = TangentVector::FromCoords(Pt(s2, {0, 1, 0}), Vec({1, 0, 0}));
  EXPECT_THROW(ExpMap(x, v), Error);
}

class GeometryPropertyTest : public ::testing::TestWithParam<ManifoldSpec> {};

TEST_P(GeometryPropertyTest, ExpLogRoundTrip) {
  const auto spec = GetParam();
  Rng rng({11, static_cast<uint64_t>(spec.m)});
  const double reach = spec.kind == ManifoldKind::kSphere ? 1.5 : 3.0;
  double worst = 0.0;
  double norm_gap = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const auto x = RandomPoint(spec, reach, rng);
    const auto y = RandomPoint(spec, reach, rng);
    const auto v = LogMap(x, y);
    const auto back = ExpMap(v);
    ASSERT_TRUE(SatisfiesInvariant(back));
    worst = std::max(worst, Distance(back, y));
    norm_gap = std::max(norm_gap, std::abs(v.Norm() - Distance(x, y)));
  }
  EXPECT_LT(worst, 1e-9);
  EXPECT_LT(norm_gap, 1e-9);
}

TEST_P(GeometryPropertyTest, SymmetryAndTriangleInequality) {
  const auto spec = GetParam();
  Rng rng({12, static_cast<uint64_t>(spec.m)});
  for (int i = 0; i < 2000; ++i) {
    const auto x = RandomPoint(spec, 3.0, rng);
    const auto y = RandomPoint(spec, 3.0, rng);
    const auto z = RandomPoint(spec, 3.0, rng);
    ASSERT_NEAR(Distance(x, y), Distance(y, x), 1e-12);
    ASSERT_LE(Distance(x, z), Distance(x, y) + Distance(y, z) + 1e-9);
  }
}

TEST_P(GeometryPropertyTest, OutputsSatisfyInvariants) {
  const auto spec = GetParam();
  Rng rng({13, static_cast<uint64_t>(spec.m)});
  for (int i = 0; i < 500; ++i) {
    const auto x = RandomPoint(spec, 2.0, rng);
    const auto v = TangentGaussian(x, rng) * 3.0;
    ASSERT_TRUE(SatisfiesInvariant(ExpMap(v)));
    ASSERT_NO_THROW(TangentVector::FromCoords(x, v.coords()));
    const auto y = UniformBallSample(x, 1.0, rng);
    ASSERT_TRUE(SatisfiesInvariant(y));
    ASSERT_TRUE(SatisfiesInvariant(Geodesic(x, y, 0.3)));
  }
}

TEST_P(GeometryPropertyTest, FrameIsOrthonormal) {
  const auto spec = GetParam();
  Rng rng({14, static_cast<uint64_t>(spec.m)});
  for (int i = 0; i < 50; ++i) {
    const auto x = RandomPoint(spec, 2.0, rng);
    const Eigen::MatrixXd u = OrthonormalFrame(x);
    ASSERT_EQ(u.cols(), spec.m);
    for (int a = 0; a < spec.m; ++a) {
      const auto ua = TangentVector::FromCoords(x, u.col(a));
      for (int b = 0; b < spec.m; ++b) {
        const auto ub = TangentVector::FromCoords(x, u.col(b));
        ASSERT_NEAR(Metric(ua, ub), a == b ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

// Far out on H^3 the Lorentz products carry rounding of order x0^2 eps.
TEST(FrameTest, HyperboloidFrameFarFromOrigin) {
  const auto spec = ManifoldSpec::Hyperboloid(3);
  const auto o = ManifoldPoint::Origin(spec);
  Rng rng({16, 0});
  for (double dist : {4.0, 8.0, 12.0}) {
    for (int i = 0; i < 20; ++i) {
      const auto x = ExpMap(UniformDirection(o, rng) * dist);
      const Eigen::MatrixXd u = OrthonormalFrame(x);
      const double tol = 1e-14 * x[0] * x[0];
      for (int a = 0; a < 3; ++a) {
        const auto ua = TangentVector::FromCoords(x, u.col(a));
        for (int b = 0; b < 3; ++b) {
          const auto ub = TangentVector::FromCoords(x, u.col(b));
          ASSERT_NEAR(Metric(ua, ub), a == b ? 1.0 : 0.0, tol) << "d=" << dist;
        }
      }
    }
  }
}

TEST_P(GeometryPropertyTest, TangentGaussianSquaredNormHasMeanM) {
  const auto spec = GetParam();
  Rng rng({15, static_cast<uint64_t>(spec.m)});
  const auto x = RandomPoint(spec, 1.0, rng);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = TangentGaussian(x, rng).Norm();
    sum += r * r;
  }
  EXPECT_NEAR(sum / n / spec.m, 1.0, 0.01);
}

INSTANTIATE_TEST_SUITE_P(Manifolds, GeometryPropertyTest,
                         ::testing::Values(ManifoldSpec::Euclidean(2), ManifoldSpec::Euclidean(3),
                                           ManifoldSpec::Sphere(2), ManifoldSpec::Sphere(3),
                                           ManifoldSpec::Hyperboloid(2),
                                           ManifoldSpec::Hyperboloid(3)),
                         [](const auto& info) {
                           std::string s = ToString(info.param);
                           s[s.find(':')] = '_';
                           return s;
                         });

// Covariance of frame coefficients in a frame rotated away from the sampler's.
Eigen::MatrixXd RotatedFrameCovariance(const ManifoldPoint& x, double angle, int draws, Rng& rng) {
  const ManifoldKind kind = x.spec().kind;
  Eigen::MatrixXd u = OrthonormalFrame(x);
  const Eigen::VectorXd c0 = u.col(0);
  const Eigen::VectorXd c1 = u.col(1);
  u.col(0) = std::cos(angle) * c0 + std::sin(angle) * c1;
  u.col(1) = -std::sin(angle) * c0 + std::cos(angle) * c1;
  const int m = x.spec().m;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd c(m);
  for (int i = 0; i < draws; ++i) {
    const auto z = TangentGaussian(x, rng);
    for (int a = 0; a < m; ++a) c[a] = detail::Inner(kind, u.col(a), z.coords());
    cov += c * c.transpose();
  }
  return cov / draws;
}

TEST(TangentGaussianTest, EuclideanCovarianceIsIdentity) {
  Rng rng({21, 0});
  const auto x = ManifoldPoint::Origin(ManifoldSpec::Euclidean(2));
  const Eigen::MatrixXd cov = RotatedFrameCovariance(x, 0.0, 1000000, rng);
  EXPECT_LT((cov - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.02);
}

TEST(TangentGaussianTest, IsotropicInRotatedFrames) {
  Rng rng({22, 0});
  const auto s2 = ManifoldSpec::Sphere(2);
  const auto h2 = ManifoldSpec::Hyperboloid(2);
  const auto xs = Pt(s2, {0.6, 0, 0.8});
  const auto xh = Pt(h2, {std::cosh(1.5), std::sinh(1.5) * 0.6, std::sinh(1.5) * 0.8});
  for (const auto& x : {xs, xh}) {
    const Eigen::MatrixXd cov = RotatedFrameCovariance(x, 0.7, 1000000, rng);
    EXPECT_LT((cov - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.02);
  }
}

TEST(TangentGaussianTest, NorthPoleTangentPlane) {
  Rng rng({23, 0});
  const auto x = Pt(ManifoldSpec::Sphere(2), {0, 0, 1});
  const int n = 100000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto z = TangentGaussian(x, rng);
    ASSERT_EQ(z.coords()[2], 0.0);
    s1 += z.coords()[0] * z.coords()[0];
    s2 += z.coords()[1] * z.coords()[1];
  }
  EXPECT_NEAR(s1 / n, 1.0, 0.02);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(UniformBallTest, MedianRadiusExamples) {
  EXPECT_NEAR(detail::UniformBallRadius(ManifoldKind::kSphere, 2, kPi / 2, 0.5), kPi / 3, 1e-15);
  EXPECT_NEAR(detail::UniformBallRadius(ManifoldKind::kEuclidean, 2, 1.0, 0.5), std::sqrt(0.5),
              1e-15);
  // cosh s - 1 = (cosh 3 - 1) / 2.
  EXPECT_NEAR(detail::UniformBallRadius(ManifoldKind::kHyperboloid, 2, 3.0, 0.5),
              std::acosh(1.0 + 0.5 * (std::cosh(3.0) - 1.0)), 1e-13);
}

TEST(UniformBallTest, NumericInversionMatchesClosedFormCdf) {
  // Sphere m = 3: int_0^s sin^2 = s/2 - sin(2s)/4.
  auto f = [](double s) { return s / 2 - std::sin(2 * s) / 4; };
  const double r = 2.0;
  for (double u : {0.01, 0.25, 0.5, 0.9, 0.999}) {
    const double s = detail::UniformBallRadius(ManifoldKind::kSphere, 3, r, u);
    EXPECT_NEAR(f(s) / f(r), u, 1e-11);
  }
  // Hyperboloid m = 3: int_0^s sinh^2 = sinh(2s)/4 - s/2.
  auto g = [](double s) { return std::sinh(2 * s) / 4 - s / 2; };
  for (double u : {0.01, 0.25, 0.5, 0.9, 0.999}) {
    const double s = detail::UniformBallRadius(ManifoldKind::kHyperboloid, 3, r, u);
    EXPECT_NEAR(g(s) / g(r), u, 1e-11);
  }
}

TEST(UniformBallTest, RadialLawKs) {
  const int n = 100000;
  struct Case {
    ManifoldSpec spec;
    double r;
    std::function<double(double)> cdf;
  };
  const std::vector<Case> cases{
      {ManifoldSpec::Euclidean(2), 1.0, [](double s) { return s * s; }},
      {ManifoldSpec::Sphere(2), kPi / 2,
       [](double s) { return (1 - std::cos(s)) / (1 - std::cos(kPi / 2)); }},
      {ManifoldSpec::Hyperboloid(2), 3.0,
       [](double s) { return (std::cosh(s) - 1) / (std::cosh(3.0) - 1); }},
  };
  Rng rng({31, 0});
  for (const auto& c : cases) {
    const auto o = ManifoldPoint::Origin(c.spec);
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i) {
      const auto x = UniformBallSample(o, c.r, rng);
      radii[i] = Distance(o, x);
      ASSERT_LE(radii[i], c.r + 1e-12);
    }
    EXPECT_LT(Ks(radii, c.cdf), 0.01) << ToString(c.spec);
  }
}

TEST(UniformBallTest, DirectionIsUniformOnSphere) {
  // Mean of the ambient coordinates around the north pole should be on the axis.
  Rng rng({32, 0});
  const auto o = ManifoldPoint::Origin(ManifoldSpec::Sphere(2));
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  const int n = 100000;
  for (int i = 0; i < n; ++i) mean += UniformBallSample(o, 1.0, rng).coords();
  mean /= n;
  EXPECT_LT(std::abs(mean[0]), 0.01);
  EXPECT_LT(std::abs(mean[1]), 0.01);
}

TEST(UniformBallTest, DomainErrors) {
  Rng rng({33, 0});
  const auto o = ManifoldPoint::Origin(ManifoldSpec::Sphere(2));
  for (double r : {0.0, -1.0, kPi}) {
    try {
      UniformBallSample(o, r, rng);
      FAIL() << r;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDomain);
    }
  }
}

}  // namespace
}  // namespace geodp
