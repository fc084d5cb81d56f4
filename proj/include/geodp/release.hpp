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

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "geodp/calibration.hpp"
#include "geodp/error.hpp"
#include "geodp/frechet.hpp"
#include "geodp/manifold.hpp"
#include "geodp/mechanisms.hpp"
#include "geodp/rng.hpp"

namespace geodp {

enum class ReleaseMechanism { kBm, kLangevin };

inline std::string_view MechanismName(ReleaseMechanism mechanism) {
  return mechanism == ReleaseMechanism::kBm ? "BM" : "Langevin";
}

struct LangevinOptions {
  double lambda = 1.1;
  ManifoldPoint anchor;
  // Free text recorded with the release. Nothing checks it.
  std::string anchor_provenance;
};

struct ReleaseRequest {
  Dataset dataset;
  double p = 2.0;
  RdpBudget budget;
  ReleaseMechanism mechanism = ReleaseMechanism::kBm;
  std::optional<LangevinOptions> langevin;
  std::optional<int> n_step;
  SolverOptions solver;
};

struct ReleaseRecord {
  ManifoldPoint private_point;
  // Non-private p-mean; kept for auditing, never publish it.
  ManifoldPoint mean;
  double delta_used = 0.0;
  SensitivityRule rule = SensitivityRule::kSmallBall;
  double t_used = 0.0;
  int n_step = 0;
  ReleaseMechanism mechanism = ReleaseMechanism::kBm;
  // Absent when no expected-distance bound covers the manifold (BM on
  // negatively curved spaces).
  std::optional<double> utility_bound;
  std::string anchor_provenance;
  uint64_t seed = 0;
};

namespace detail {

inline void ValidateRequest(const ReleaseRequest& req) {
  detail::CheckExponent(req.p);
  RdpBudget::Make(req.budget.alpha, req.budget.epsilon);
  if (req.n_step && *req.n_step < 1) throw Error(ErrorCode::kDomain, "n_step must be >= 1");
  if (req.mechanism != ReleaseMechanism::kLangevin) return;
  const ManifoldSpec& spec = req.dataset.spec();
  if (!spec.is_hadamard()) {
    throw Error(ErrorCode::kUnsupportedManifold,
                "the Langevin release needs a Hadamard manifold");
  }
  if (!req.langevin) throw Error(ErrorCode::kDomain, "Langevin release needs lambda and an anchor");
  if (!(req.langevin->anchor.spec() == spec)) {
    throw Error(ErrorCode::kSpecMismatch, "anchor lives on a different manifold");
  }
  if (!(req.langevin->lambda > spec.ric_lower_K) || !(req.langevin->lambda > 0.0)) {
    throw Error(ErrorCode::kDriftTooWeak, "Langevin pull lambda must be > 0 and exceed K");
  }
}

}  // namespace detail

// Release steps after the solve: bound the sensitivity, calibrate the
// diffusion time to the budget, then diffuse from `mean`. The caller promises
// `mean` is the p-mean of req.dataset.
inline ReleaseRecord ReleaseFromMean(const ReleaseRequest& req, const ManifoldPoint& mean,
                                     RngState state) {
  detail::ValidateRequest(req);
  const Dataset& data = req.dataset;
  const ManifoldSpec& spec = data.spec();
  RequireSameSpec(data.center(), mean);
  const double K = spec.ric_lower_K;

  const auto ctx = SensitivityContext::ForManifold(spec, req.p, data.radius(),
                                                   static_cast<double>(data.size()));
  const SensitivityChoice choice = ChooseSensitivityBound(ctx);

  Rng rng(state);
  ReleaseRecord record{mean, mean};
  record.delta_used = choice.delta;
  record.rule = choice.rule;
  record.mechanism = req.mechanism;
  record.seed = state.seed;

  if (req.mechanism == ReleaseMechanism::kBm) {
    record.t_used = BmTimeForBudget(K, req.budget, choice.delta);
    const auto cfg = MechanismConfig::Bm(record.t_used, req.n_step);
    record.n_step = cfg.n_step;
    record.private_point = BmSample(mean, cfg.t, cfg.n_step, rng);
    if (K <= 0.0) record.utility_bound = BmUtilityBound(spec.m, record.t_used);
  } else {
    const LangevinOptions& opt = *req.langevin;
    record.t_used = LangevinTimeForBudget(K, opt.lambda, req.budget, choice.delta);
    const auto cfg = MechanismConfig::Langevin(record.t_used, opt.lambda, opt.anchor, req.n_step);
    record.n_step = cfg.n_step;
    record.private_point = LangevinSample(mean, cfg, rng);
    record.utility_bound = LangevinUtilityBound(spec.m, std::max(K, 0.0), opt.lambda,
                                                Distance(opt.anchor, mean), record.t_used);
    record.anchor_provenance = opt.anchor_provenance;
  }
  return record;
}

// Private release of the p-mean of req.dataset.
inline ReleaseRecord PrivatePMean(const ReleaseRequest& req, RngState state) {
  detail::ValidateRequest(req);
  return ReleaseFromMean(req, SolvePMean(req.dataset, req.p, req.solver), state);
}

}  // namespace geodp
