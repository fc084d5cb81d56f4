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
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "geodp/calibration.hpp"
#include "geodp/divergence.hpp"
#include "geodp/error.hpp"
#include "geodp/frechet.hpp"
#include "geodp/heat_kernel.hpp"
#include "geodp/manifold.hpp"
#include "geodp/mechanisms.hpp"
#include "geodp/rng.hpp"
#include "json.hpp"

namespace geodp::bench {

enum class Suite { kCalibration, kGeometry, kKernelOracle, kSensitivity, kDivergenceBound };

inline std::string_view SuiteName(Suite suite) {
  switch (suite) {
    case Suite::kCalibration: return "calibration";
    case Suite::kGeometry: return "geometry";
    case Suite::kKernelOracle: return "kernel-oracle";
    case Suite::kSensitivity: return "sensitivity";
    case Suite::kDivergenceBound: return "divergence-bound";
  }
  return "unknown";
}

inline Suite ParseSuite(std::string_view text) {
  for (Suite s : {Suite::kCalibration, Suite::kGeometry, Suite::kKernelOracle,
                  Suite::kSensitivity, Suite::kDivergenceBound}) {
    if (SuiteName(s) == text) return s;
  }
  throw Error(ErrorCode::kConfig, "unknown validation suite '" + std::string(text) + "'");
}

inline const std::vector<Suite>& AllSuites() {
  static const std::vector<Suite> all{Suite::kCalibration, Suite::kGeometry,
                                      Suite::kKernelOracle, Suite::kSensitivity,
                                      Suite::kDivergenceBound};
  return all;
}

// One property check. `comparison` is how observed must relate to threshold.
struct Check {
  std::string suite;
  std::string property;
  double observed = 0.0;
  std::string comparison = "<=";
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

inline Check MakeCheck(std::string_view suite, std::string property, double observed,
                       std::string_view comparison, double threshold, std::string detail = {}) {
  Check c;
  c.suite = std::string(suite);
  c.property = std::move(property);
  c.observed = observed;
  c.comparison = std::string(comparison);
  c.threshold = threshold;
  c.detail = std::move(detail);
  if (comparison == "<=") c.pass = observed <= threshold;
  else if (comparison == "<") c.pass = observed < threshold;
  else if (comparison == ">=") c.pass = observed >= threshold;
  else if (comparison == "==") c.pass = observed == threshold;
  else throw Error(ErrorCode::kDomain, "unknown comparison " + std::string(comparison));
  return c;
}

inline bool AllPass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

inline nlohmann::json ReportJson(const std::vector<Check>& checks) {
  nlohmann::json entries = nlohmann::json::array();
  for (const Check& c : checks) {
    entries.push_back({{"suite", c.suite},
                       {"property", c.property},
                       {"observed", c.observed},
                       {"comparison", c.comparison},
                       {"threshold", c.threshold},
                       {"verdict", c.pass ? "pass" : "fail"},
                       {"detail", c.detail}});
  }
  return {{"pass", AllPass(checks)}, {"checks", entries}};
}

// Kolmogorov-Smirnov distance between the empirical law of `samples` and a
// continuous CDF. Sorts `samples`.
inline double KsStatistic(std::vector<double>& samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw Error(ErrorCode::kDomain, "no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    worst = std::max({worst, (i + 1) / n - f, f - i / n});
  }
  return worst;
}

// ---------------------------------------------------------------- calibration

struct CalibrationTuple {
  double K, alpha, delta, epsilon;
};

// 10 x 5 x 4 x 5 = 1000 tuples.
inline std::vector<CalibrationTuple> CalibrationGrid() {
  std::vector<CalibrationTuple> grid;
  for (double K : {-1.0, -0.5, -0.1, -0.01, 0.0, 0.01, 0.1, 0.5, 1.0, 2.0}) {
    for (double alpha : {1.5, 2.0, 3.0, 5.0, 10.0}) {
      for (double delta : {0.01, 0.1, 0.5, 1.0}) {
        for (double eps : {0.01, 0.1, 0.5, 1.0, 2.0}) grid.push_back({K, alpha, delta, eps});
      }
    }
  }
  return grid;
}

inline double RelativeError(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
}

inline std::vector<Check> CalibrationChecks(const std::vector<CalibrationTuple>& grid) {
  constexpr std::string_view kSuite = "calibration";
  std::vector<Check> out;
  double bm_trip = 0.0;
  double langevin_trip = 0.0;
  int floor_mismatch = 0;
  int feasible = 0;
  double k0_gap = 0.0;
  double lambda_gap = 0.0;
  for (const auto& g : grid) {
    const RdpBudget budget = RdpBudget::Make(g.alpha, g.epsilon);
    const bool expect_feasible = !(g.K > 0.0) || 2.0 * g.epsilon > g.K * g.alpha * g.delta * g.delta;
    try {
      const double t = BmTimeForBudget(g.K, budget, g.delta);
      bm_trip = std::max(bm_trip, RelativeError(BmEpsilon(g.K, g.alpha, g.delta, t), g.epsilon));
      ++feasible;
      if (!expect_feasible) ++floor_mismatch;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasibleBudget || expect_feasible) ++floor_mismatch;
    }
    const double lambda = std::max(g.K, 0.0) + 0.1;
    const double tl = LangevinTimeForBudget(g.K, lambda, budget, g.delta);
    langevin_trip = std::max(
        langevin_trip, RelativeError(LangevinEpsilon(g.K, lambda, g.alpha, g.delta, tl), g.epsilon));

    const double t_flat = g.alpha * g.delta * g.delta / (4.0 * g.epsilon);
    for (double k : {-1e-9, 1e-9}) {
      k0_gap = std::max(k0_gap, RelativeError(BmEpsilon(k, g.alpha, g.delta, t_flat),
                                              BmEpsilon(0.0, g.alpha, g.delta, t_flat)));
    }
    if (g.K >= 0.0) {
      const double near = LangevinTimeForBudget(g.K, g.K + 1e-9, budget, g.delta);
      lambda_gap = std::max(lambda_gap, RelativeError(near, t_flat));
    }
  }
  const std::string n = std::to_string(grid.size()) + " (K, alpha, Delta, epsilon) tuples";
  out.push_back(MakeCheck(kSuite, "BM epsilon -> t -> epsilon max relative error", bm_trip, "<=",
                          1e-12, n + ", " + std::to_string(feasible) + " feasible"));
  out.push_back(MakeCheck(kSuite, "BM infeasibility exactly when 2 eps <= K alpha Delta^2",
                          floor_mismatch, "==", 0.0, n));
  out.push_back(MakeCheck(kSuite, "Langevin epsilon -> t -> epsilon max relative error",
                          langevin_trip, "<=", 1e-12, n + ", lambda = max(K,0) + 0.1"));
  out.push_back(MakeCheck(kSuite, "BM epsilon continuity at K = 0 (K = +-1e-9)", k0_gap, "<=",
                          1e-6, n));
  out.push_back(MakeCheck(kSuite, "Langevin time as lambda -> K+ vs alpha Delta^2/(4 eps)",
                          lambda_gap, "<=", 1e-6, "lambda = K + 1e-9, K >= 0"));
  return out;
}

// Value of the eps*-DP to RDP conversion at (1, 2) from a 50-digit evaluation
// of log((e^2 + e e^-2)/(e + 1)).
inline constexpr double kDpToRdpOneTwo = 0.73532566405551922;

inline std::vector<Check> DpConversionChecks() {
  constexpr std::string_view kSuite = "calibration";
  std::vector<Check> out;
  out.push_back(MakeCheck(kSuite, "dp_to_rdp(1, 2) vs high-precision value",
                          std::abs(DpToRdp(1.0, 2.0) - kDpToRdpOneTwo), "<=", 1e-6,
                          "value " + std::to_string(DpToRdp(1.0, 2.0))));
  double trip = 0.0;
  for (double eps_star : {0.05, 0.3, 1.0, 2.0, 5.0}) {
    for (double alpha : {1.5, 2.0, 10.0}) {
      const double rdp = DpToRdp(eps_star, alpha);
      trip = std::max(trip, std::abs(RdpToDpBudget(RdpBudget::Make(alpha, rdp)) - eps_star));
    }
  }
  out.push_back(MakeCheck(kSuite, "rdp_to_dp_budget inverse round trip max abs error", trip, "<=",
                          1e-10, "eps* in {0.05,0.3,1,2,5}, alpha in {1.5,2,10}"));
  out.push_back(MakeCheck(kSuite, "dp_to_rdp(1, 1e4) -> eps* = 1", std::abs(DpToRdp(1.0, 1e4) - 1.0),
                          "<=", 1e-3));
  return out;
}

// ------------------------------------------------------------------- geometry

inline std::vector<Check> GeometryChecks(uint64_t seed, int pairs = 2000, int draws = 100000) {
  constexpr std::string_view kSuite = "geometry";
  std::vector<Check> out;
  const std::vector<std::pair<ManifoldSpec, double>> cases{
      {ManifoldSpec::Euclidean(3), 3.0},
      {ManifoldSpec::Sphere(2), std::numbers::pi / 5.0},
      {ManifoldSpec::Hyperboloid(2), 3.0}};
  for (size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& [spec, radius] = cases[ci];
    const std::string name = ToString(spec);
    Rng rng({HashCombine(seed, ci), 0});
    const ManifoldPoint o = ManifoldPoint::Origin(spec);
    // Tangent lengths kept below pi - 0.1 so sphere pairs stay off the cut locus.
    const double max_len = spec.kind == ManifoldKind::kSphere ? std::numbers::pi - 0.1 : 3.0;
    const double base_r = 3.0;
    double log_exp = 0.0;
    double exp_log = 0.0;
    double tri = -kInfinity;
    double sym = 0.0;
    for (int i = 0; i < pairs; ++i) {
      const ManifoldPoint x = UniformBallSample(o, base_r, rng);
      const TangentVector dir = UniformDirection(x, rng);
      const TangentVector v = dir * (max_len * rng.Uniform());
      const ManifoldPoint y = ExpMap(v);
      log_exp = std::max(log_exp, (LogMap(x, y) - v).Norm());
      exp_log = std::max(exp_log, Distance(ExpMap(LogMap(x, y)), y));
      const ManifoldPoint z = UniformBallSample(o, base_r, rng);
      tri = std::max(tri, Distance(x, z) - Distance(x, y) - Distance(y, z));
      sym = std::max(sym, std::abs(Distance(x, y) - Distance(y, x)));
    }
    out.push_back(MakeCheck(kSuite, name + " |Log_x(Exp_x v) - v| max", log_exp, "<=", 1e-9,
                            std::to_string(pairs) + " random (x, v)"));
    out.push_back(MakeCheck(kSuite, name + " d(Exp_x(Log_x y), y) max", exp_log, "<=", 1e-9));
    out.push_back(MakeCheck(kSuite, name + " triangle inequality max violation", tri, "<=", 1e-12));
    out.push_back(MakeCheck(kSuite, name + " distance symmetry max gap", sym, "<=", 1e-12));

    // Isotropy of the tangent Gaussian in an independent frame at a random point.
    const ManifoldPoint x = UniformBallSample(o, base_r, rng);
    const Eigen::MatrixXd frame = OrthonormalFrame(x);
    Eigen::MatrixXd moment = Eigen::MatrixXd::Zero(spec.m, spec.m);
    Eigen::VectorXd metric_diag = Eigen::VectorXd::Ones(spec.ambient_dim());
    if (spec.kind == ManifoldKind::kHyperboloid) metric_diag[0] = -1.0;
    for (int i = 0; i < draws; ++i) {
      const TangentVector g = TangentGaussian(x, rng);
      const Eigen::VectorXd c = frame.transpose() * metric_diag.asDiagonal() * g.coords();
      moment += c * c.transpose();
    }
    moment /= draws;
    const double iso = (moment - Eigen::MatrixXd::Identity(spec.m, spec.m)).cwiseAbs().maxCoeff();
    out.push_back(MakeCheck(kSuite, name + " tangent Gaussian second moment vs I", iso, "<=", 0.02,
                            std::to_string(draws) + " draws"));

    std::vector<double> radii(draws);
    for (int i = 0; i < draws; ++i) radii[i] = Distance(o, UniformBallSample(o, radius, rng));
    const int m = spec.m;
    const double r = radius;
    // Volume of B(o, s) relative to B(o, r).
    std::function<double(double)> cdf;
    if (spec.kind == ManifoldKind::kEuclidean) {
      cdf = [m, r](double s) { return std::pow(s / r, m); };
    } else if (spec.kind == ManifoldKind::kSphere && m == 2) {
      cdf = [r](double s) { return (1.0 - std::cos(s)) / (1.0 - std::cos(r)); };
    } else if (spec.kind == ManifoldKind::kHyperboloid && m == 2) {
      cdf = [r](double s) { return (std::cosh(s) - 1.0) / (std::cosh(r) - 1.0); };
    } else {
      const ManifoldKind kind = spec.kind;
      auto area = [kind, m](double u) { return geodp::detail::RadialArea(kind, m, u); };
      const double total = geodp::detail::IntegrateSmooth(area, 0.0, r);
      cdf = [area, total](double s) { return geodp::detail::IntegrateSmooth(area, 0.0, s) / total; };
    }
    out.push_back(MakeCheck(kSuite, name + " uniform-ball radial KS statistic",
                            KsStatistic(radii, cdf), "<", 0.01,
                            std::to_string(draws) + " draws, r = " + std::to_string(radius)));
  }
  return out;
}

// -------------------------------------------------------------- kernel oracle

inline double SphereBmKsStatistic(uint64_t seed, double t, int n_step, int draws) {
  const ManifoldSpec spec = ManifoldSpec::Sphere(2);
  const ManifoldPoint o = ManifoldPoint::Origin(spec);
  Rng rng({seed, 0});
  std::vector<double> radii(draws);
  for (int i = 0; i < draws; ++i) radii[i] = Distance(o, BmSample(o, t, n_step, rng));
  return KsStatistic(radii, [t](double s) { return SphereHeatRadialCdf(s, t, 60); });
}

struct OuMoments {
  double mean = 0.0;
  double variance = 0.0;
  double exact_mean = 0.0;
  double exact_variance = 0.0;
};

// Langevin release on R^1 from a with anchor 0 is Ornstein-Uhlenbeck:
// mean a e^{-lambda t}, variance (1 - e^{-2 lambda t}) / lambda.
inline OuMoments LangevinOuMoments(uint64_t seed, double a, double lambda, double t, int n_step,
                                   int draws) {
  const ManifoldSpec spec = ManifoldSpec::Euclidean(1);
  const ManifoldPoint anchor = ManifoldPoint::Origin(spec);
  const ManifoldPoint start = ManifoldPoint::FromCoords(spec, Eigen::VectorXd::Constant(1, a));
  const auto cfg = MechanismConfig::Langevin(t, lambda, anchor, n_step);
  Rng rng({seed, 0});
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = LangevinSample(start, cfg, rng)[0];
    sum += x;
    sq += x * x;
  }
  OuMoments mo;
  mo.mean = sum / draws;
  mo.variance = (sq - draws * mo.mean * mo.mean) / (draws - 1.0);
  mo.exact_mean = a * std::exp(-lambda * t);
  mo.exact_variance = -std::expm1(-2.0 * lambda * t) / lambda;
  return mo;
}

inline std::vector<Check> KernelOracleChecks(uint64_t seed, int draws = 100000) {
  constexpr std::string_view kSuite = "kernel-oracle";
  std::vector<Check> out;
  out.push_back(MakeCheck(kSuite, "S^2 BM radial KS vs spectral heat kernel",
                          SphereBmKsStatistic(HashCombine(seed, 1), 0.2, 200, draws), "<", 0.02,
                          "t = 0.2, n_step = 200, L = 60, " + std::to_string(draws) + " draws"));
  const OuMoments mo = LangevinOuMoments(HashCombine(seed, 2), 2.0, 1.0, 0.5, 500, draws);
  out.push_back(MakeCheck(kSuite, "R^1 Langevin mean vs OU mean (relative)",
                          RelativeError(mo.mean, mo.exact_mean), "<=", 0.02,
                          "a = 2, lambda = 1, t = 0.5, h = 1e-3"));
  out.push_back(MakeCheck(kSuite, "R^1 Langevin variance vs OU variance (relative)",
                          RelativeError(mo.variance, mo.exact_variance), "<=", 0.02,
                          "a = 2, lambda = 1, t = 0.5, h = 1e-3"));
  double norm_err = 0.0;
  const GaussLegendreRule rule(200);
  for (double t : {0.2, 0.5, 1.0}) {
    const double mass = 2.0 * std::numbers::pi *
                        rule.Integrate([t](double u) { return SphereHeatKernelZonal(u, t, 50); },
                                       -1.0, 1.0);
    norm_err = std::max(norm_err, std::abs(mass - 1.0));
  }
  out.push_back(MakeCheck(kSuite, "S^2 heat kernel total mass error", norm_err, "<=", 1e-6,
                          "L = 50, t in {0.2, 0.5, 1}"));
  return out;
}

// ---------------------------------------------------------------- sensitivity

struct SensitivitySetting {
  ManifoldSpec spec;
  double p;
  double r;
  int n;
};

inline std::vector<SensitivitySetting> DefaultSensitivitySettings() {
  std::vector<SensitivitySetting> s;
  for (double p : {1.5, 2.0}) s.push_back({ManifoldSpec::Sphere(2), p, std::numbers::pi / 5.0, 10});
  for (double r : {1.0, 3.0}) {
    for (double p : {1.5, 2.0, 3.0}) s.push_back({ManifoldSpec::Hyperboloid(2), p, r, 10});
  }
  return s;
}

// Largest d(mu(D), mu(D')) over random adjacent pairs, and the bound.
struct AdjacentPairResult {
  double worst = 0.0;
  double bound = 0.0;
};

inline AdjacentPairResult AdjacentPairTrial(const SensitivitySetting& s, uint64_t seed, int trials) {
  const ManifoldPoint o = ManifoldPoint::Origin(s.spec);
  AdjacentPairResult res;
  res.bound = SensitivityBound(SensitivityContext::ForManifold(s.spec, s.p, s.r, s.n));
  Rng rng({seed, 0});
  for (int k = 0; k < trials; ++k) {
    const Dataset d = SampleUniformDataset(o, s.r, static_cast<size_t>(s.n), rng);
    const size_t i = static_cast<size_t>(rng.Uniform() * s.n) % static_cast<size_t>(s.n);
    const Dataset d2 = d.WithReplaced(i, UniformBallSample(o, s.r, rng));
    res.worst = std::max(res.worst, Distance(SolvePMean(d, s.p), SolvePMean(d2, s.p)));
  }
  return res;
}

// Min over random x, z in the ball and t in [0,1] of
// (1-t)F(x) + tF(z) - (k/2)t(1-t)d(x,z)^2 - F(gamma(t)).
inline double StrongConvexitySlack(const ManifoldSpec& spec, double p, double r, int n,
                                   uint64_t seed, int triples) {
  const ManifoldPoint o = ManifoldPoint::Origin(spec);
  Rng rng({seed, 0});
  const double k = StrongConvexityK(spec.sec_upper_kappa, r, p, spec.inj_radius);
  const Dataset data = SampleUniformDataset(o, r, static_cast<size_t>(n), rng);
  double worst = kInfinity;
  for (int i = 0; i < triples; ++i) {
    const ManifoldPoint x = UniformBallSample(o, r, rng);
    const ManifoldPoint z = UniformBallSample(o, r, rng);
    const double t = rng.Uniform();
    const double d = Distance(x, z);
    const double rhs = (1.0 - t) * FrechetObjective(data, x, p) + t * FrechetObjective(data, z, p) -
                       0.5 * k * t * (1.0 - t) * d * d;
    worst = std::min(worst, rhs - FrechetObjective(data, Geodesic(x, z, t), p));
  }
  return worst;
}

// Min over random triples of the NSK p-uniform convexity slack
// (1-t)d(z,x)^p + t d(z,y)^p - (k_p/2) t(1-t) d(x,y)^p - d(z, gamma_t)^p.
inline double NskSlack(const ManifoldSpec& spec, double p, double r, uint64_t seed, int triples) {
  const ManifoldPoint o = ManifoldPoint::Origin(spec);
  Rng rng({seed, 0});
  const double k = NskConstant(p);
  double worst = kInfinity;
  for (int i = 0; i < triples; ++i) {
    const ManifoldPoint x = UniformBallSample(o, r, rng);
    const ManifoldPoint y = UniformBallSample(o, r, rng);
    const ManifoldPoint z = UniformBallSample(o, r, rng);
    const double t = rng.Uniform();
    const double rhs = (1.0 - t) * std::pow(Distance(z, x), p) + t * std::pow(Distance(z, y), p) -
                       0.5 * k * t * (1.0 - t) * std::pow(Distance(x, y), p);
    worst = std::min(worst, rhs - std::pow(Distance(z, Geodesic(x, y, t)), p));
  }
  return worst;
}

// Max |<grad F, u> - central difference of F along Exp_y(s u)| at h = 1e-6.
inline double GradientFdError(const ManifoldSpec& spec, double p, double r, uint64_t seed,
                              int samples) {
  const ManifoldPoint o = ManifoldPoint::Origin(spec);
  Rng rng({seed, 0});
  constexpr double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Dataset data = SampleUniformDataset(o, r, 8, rng);
    const ManifoldPoint y = UniformBallSample(o, r, rng);
    const TangentVector u = UniformDirection(y, rng);
    const double fd = (FrechetObjective(data, ExpMap(u * h), p) -
                       FrechetObjective(data, ExpMap(u * -h), p)) / (2.0 * h);
    worst = std::max(worst, std::abs(Metric(FrechetGradient(data, y, p), u) - fd));
  }
  return worst;
}

inline std::vector<Check> SensitivityChecks(uint64_t seed, int trials = 1000, int triples = 10000) {
  constexpr std::string_view kSuite = "sensitivity";
  std::vector<Check> out;
  const auto settings = DefaultSensitivitySettings();
  for (size_t i = 0; i < settings.size(); ++i) {
    const auto& s = settings[i];
    const auto res = AdjacentPairTrial(s, HashCombine(seed, 100 + i), trials);
    std::ostringstream name;
    name << ToString(s.spec) << " p=" << s.p << " r=" << s.r << " n=" << s.n
         << " adjacent-pair distance minus bound";
    out.push_back(MakeCheck(kSuite, name.str(), res.worst - res.bound, "<=", 1e-6,
                            "worst " + std::to_string(res.worst) + ", bound " +
                                std::to_string(res.bound) + ", " + std::to_string(trials) +
                                " pairs"));
  }

  // p = 2 reductions against their closed forms.
  const double r = std::numbers::pi / 5.0;
  const int n = 10;
  const auto hyp = SensitivityContext::ForManifold(ManifoldSpec::Hyperboloid(2), 2.0, 3.0, 50);
  out.push_back(MakeCheck(kSuite, "Hadamard p=2 bound vs 2r/n",
                          std::abs(SensitivityHadamard(hyp) - 2.0 * 3.0 / 50.0), "<=", 1e-15));
  SensitivityContext sph = SensitivityContext::ForManifold(ManifoldSpec::Sphere(2), 2.0, r, n);
  const double b = BFunc(1.0, 2.0 * r);
  const double small_ball = 2.0 * r * (2.0 - b) / (n * b);
  out.push_back(MakeCheck(kSuite, "small-ball p=2 bound vs 2r(2-b)/(n b)",
                          RelativeError(SensitivityPLe2(sph), small_ball), "<=", 1e-15));
  out.push_back(MakeCheck(kSuite, "compact p=2 bound vs 4x small-ball p=2 bound",
                          RelativeError(SensitivityCompact(sph), 4.0 * SensitivityPLe2(sph)), "<=",
                          1e-15));

  for (double p : {1.5, 2.0}) {
    for (const auto& [spec, rad] : {std::pair{ManifoldSpec::Sphere(2), r},
                                    std::pair{ManifoldSpec::Hyperboloid(2), 1.0}}) {
      std::ostringstream name;
      name << ToString(spec) << " p=" << p << " k-strong-convexity slack (min)";
      out.push_back(MakeCheck(kSuite, name.str(),
                              StrongConvexitySlack(spec, p, rad, 10, HashCombine(seed, static_cast<uint64_t>(300 + p * 10 + rad)),
                                                   triples),
                              ">=", -1e-9, std::to_string(triples) + " triples"));
    }
  }
  out.push_back(MakeCheck(kSuite, "hyperboloid:2 NSK p=3 (k_3 = 1) slack (min)",
                          NskSlack(ManifoldSpec::Hyperboloid(2), 3.0, 3.0, HashCombine(seed, 400),
                                   triples),
                          ">=", -1e-9, std::to_string(triples) + " triples in B(o, 3)"));

  double fd = 0.0;
  double stationarity = 0.0;
  int spec_index = 0;
  for (const auto& [spec, rad] : {std::pair{ManifoldSpec::Euclidean(3), 2.0},
                                  std::pair{ManifoldSpec::Sphere(2), r},
                                  std::pair{ManifoldSpec::Hyperboloid(2), 2.0}}) {
    for (double p : {1.5, 2.0, 3.0}) {
      ++spec_index;
      fd = std::max(fd, GradientFdError(spec, p, rad, HashCombine(seed, 500 + spec_index), 200));
      Rng rng({HashCombine(seed, 600 + spec_index), 0});
      for (int i = 0; i < 20; ++i) {
        const Dataset d = SampleUniformDataset(ManifoldPoint::Origin(spec), rad, 20, rng);
        stationarity = std::max(stationarity, FrechetGradient(d, SolvePMean(d, p), p).Norm());
      }
    }
  }
  out.push_back(MakeCheck(kSuite, "gradient vs central finite difference (h = 1e-6) max error", fd,
                          "<=", 1e-5, "euclidean:3, sphere:2, hyperboloid:2; p in {1.5, 2, 3}"));
  out.push_back(MakeCheck(kSuite, "|grad F| at the solver output (max)", stationarity, "<=", 1e-9,
                          "same manifolds and exponents, 20 datasets each"));
  return out;
}

// ----------------------------------------------------------- divergence bound

struct DivergenceCase {
  double d, t, alpha, divergence, bound;
};

inline DivergenceCase SphereDivergenceCase(double d, double t, double alpha, int order = 60,
                                           SphereGrid grid = {}) {
  const ManifoldSpec spec = ManifoldSpec::Sphere(2);
  const ManifoldPoint x = ManifoldPoint::Origin(spec);
  Eigen::VectorXd yc(3);
  yc << std::sin(d), 0.0, std::cos(d);
  const ManifoldPoint y = ManifoldPoint::FromCoords(spec, yc);
  return {d, t, alpha, RenyiDivergenceSphere(x, y, t, alpha, order, grid),
          BmEpsilon(spec.ric_lower_K, alpha, d, t)};
}

inline std::vector<Check> DivergenceBoundChecks() {
  constexpr std::string_view kSuite = "divergence-bound";
  std::vector<Check> out;
  for (double d : {0.05, 0.1, 0.2, 0.3, 0.4}) {
    for (double t : {0.2, 0.5, 1.0, 1.5, 2.0}) {
      std::ostringstream name;
      name << "S^2 D_2 quadrature minus BM bound, d=" << d << " t=" << t;
      try {
        const auto c = SphereDivergenceCase(d, t, 2.0);
        out.push_back(MakeCheck(kSuite, name.str(), c.divergence - c.bound, "<=", 0.0,
                                "divergence " + std::to_string(c.divergence) + ", bound " +
                                    std::to_string(c.bound)));
      } catch (const Error& e) {
        out.push_back(MakeCheck(kSuite, name.str(), std::numeric_limits<double>::quiet_NaN(),
                                "<=", 0.0, e.what()));
      }
    }
  }
  return out;
}

struct ValidateOptions {
  uint64_t seed = 20260101;
  int draws = 100000;
  int sensitivity_trials = 1000;
  int convexity_triples = 10000;
};

inline std::vector<Check> RunSuite(Suite suite, const ValidateOptions& opt = {}) {
  switch (suite) {
    case Suite::kCalibration: {
      auto checks = CalibrationChecks(CalibrationGrid());
      auto dp = DpConversionChecks();
      checks.insert(checks.end(), dp.begin(), dp.end());
      return checks;
    }
    case Suite::kGeometry: return GeometryChecks(opt.seed, 2000, opt.draws);
    case Suite::kKernelOracle: return KernelOracleChecks(opt.seed, opt.draws);
    case Suite::kSensitivity:
      return SensitivityChecks(opt.seed, opt.sensitivity_trials, opt.convexity_triples);
    case Suite::kDivergenceBound: return DivergenceBoundChecks();
  }
  return {};
}

}  // namespace geodp::bench
