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
#include <cctype>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "geodp/calibration.hpp"
#include "geodp/error.hpp"
#include "geodp/frechet.hpp"
#include "geodp/manifold.hpp"
#include "geodp/mechanisms.hpp"
#include "geodp/release.hpp"
#include "geodp/rng.hpp"

namespace geodp::bench {

enum class Mechanism { kBm, kLangevin, kRl, kEwg };

inline std::string_view MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kBm: return "BM";
    case Mechanism::kLangevin: return "Langevin";
    case Mechanism::kRl: return "RL";
    case Mechanism::kEwg: return "EWG";
  }
  return "unknown";
}

inline Mechanism ParseMechanism(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "bm") return Mechanism::kBm;
  if (lower == "langevin") return Mechanism::kLangevin;
  if (lower == "rl") return Mechanism::kRl;
  if (lower == "ewg") return Mechanism::kEwg;
  throw Error(ErrorCode::kConfig, "unknown mechanism '" + std::string(text) +
                                      "' (expected BM, Langevin, RL or EWG)");
}

// Where the Langevin anchor and the EWG footpoint come from.
enum class Scenario { kAnchorAtCenter, kAnchorRandomInBall };

inline std::string_view ScenarioName(Scenario scenario) {
  return scenario == Scenario::kAnchorAtCenter ? "center" : "random";
}

inline Scenario ParseScenario(std::string_view text) {
  if (text == "center") return Scenario::kAnchorAtCenter;
  if (text == "random") return Scenario::kAnchorRandomInBall;
  throw Error(ErrorCode::kConfig, "unknown anchor scenario '" + std::string(text) +
                                      "' (expected center or random)");
}

inline const std::vector<double>& DefaultEpsilonGrid() {
  static const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 1.0, 1.5, 2.0, 2.5, 3.0};
  return grid;
}

struct ExperimentConfig {
  ManifoldSpec manifold = ManifoldSpec::Sphere(2);
  // Defaults to the manifold origin.
  std::optional<ManifoldPoint> center;
  double r = std::numbers::pi / 5.0;
  std::vector<int> n_list{10, 50, 100};
  double alpha = 2.0;
  std::vector<double> epsilon_list = DefaultEpsilonGrid();
  int trials = 1000;
  std::vector<Mechanism> mechanisms{Mechanism::kBm, Mechanism::kRl};
  Scenario scenario = Scenario::kAnchorAtCenter;
  uint64_t master_seed = 1;
  double lambda = 1.1;
  double p = 2.0;
  // Draw a new dataset for every trial; otherwise one dataset per n.
  bool resample_dataset = true;
  // 0 means one worker per hardware thread.
  int threads = 1;
  std::optional<int> n_step;

  // Ball of radius pi/5 around (0,0,1) on S^2, BM against RL.
  static ExperimentConfig Sphere() { return {}; }

  // Ball of radius 3 around (1,0,0) on H^2, Langevin against RL and EWG.
  static ExperimentConfig Hyperboloid(Scenario scenario) {
    ExperimentConfig cfg;
    cfg.manifold = ManifoldSpec::Hyperboloid(2);
    cfg.r = 3.0;
    cfg.mechanisms = {Mechanism::kLangevin, Mechanism::kRl, Mechanism::kEwg};
    cfg.scenario = scenario;
    return cfg;
  }

  ManifoldPoint CenterPoint() const {
    return center ? *center : ManifoldPoint::Origin(manifold);
  }

  void Validate() const {
    if (center && !(center->spec() == manifold)) {
      throw Error(ErrorCode::kConfig, "center lives on a different manifold");
    }
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kConfig, "r must be finite and > 0");
    if (manifold.kind == ManifoldKind::kSphere && !(r < std::numbers::pi)) {
      throw Error(ErrorCode::kConfig, "sphere ball radius must be < pi");
    }
    if (n_list.empty()) throw Error(ErrorCode::kConfig, "need at least one sample size");
    for (int n : n_list) {
      if (n < 1) throw Error(ErrorCode::kConfig, "sample sizes must be >= 1");
    }
    if (!(alpha > 1.0) || !std::isfinite(alpha)) throw Error(ErrorCode::kConfig, "alpha must be > 1");
    if (epsilon_list.empty()) throw Error(ErrorCode::kConfig, "need at least one epsilon");
    for (double eps : epsilon_list) {
      if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::kConfig, "every epsilon must be > 0");
    }
    if (trials < 1) throw Error(ErrorCode::kConfig, "trials must be >= 1");
    if (mechanisms.empty()) throw Error(ErrorCode::kConfig, "need at least one mechanism");
    if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::kConfig, "p must be > 1");
    if (!(lambda > 0.0)) throw Error(ErrorCode::kConfig, "lambda must be > 0");
    if (threads < 0) throw Error(ErrorCode::kConfig, "threads must be >= 0");
    if (n_step && *n_step < 1) throw Error(ErrorCode::kConfig, "steps must be >= 1");
  }
};

struct TrialRow {
  Mechanism mechanism = Mechanism::kBm;
  std::string manifold;
  Scenario scenario = Scenario::kAnchorAtCenter;
  int n = 0;
  double p = 2.0;
  double alpha = 2.0;
  double epsilon = 1.0;
  int trial = 0;
  // d(non-private mean, release); meaningless when `error` is set.
  double distance = 0.0;
  std::optional<ErrorCode> error;
  uint64_t seed = 0;
};

struct AggregateRow {
  Mechanism mechanism = Mechanism::kBm;
  std::string manifold;
  Scenario scenario = Scenario::kAnchorAtCenter;
  int n = 0;
  double p = 2.0;
  double alpha = 2.0;
  double epsilon = 1.0;
  double mean_distance = 0.0;
  double stderr_distance = 0.0;
  int trials = 0;
  std::optional<ErrorCode> error;
  // Calibration actually used: sensitivity, and t (BM, Langevin) or sigma
  // (RL, EWG). NaN when the cell failed before calibrating.
  double delta = std::numeric_limits<double>::quiet_NaN();
  double scale = std::numeric_limits<double>::quiet_NaN();
  std::string message;
};

struct ExperimentResult {
  std::vector<TrialRow> rows;
  std::vector<AggregateRow> aggregates;
};

// Mean and standard error s / sqrt(k) with the (k-1) sample deviation; a
// single value has standard error 0.
inline void MeanAndStderr(const std::vector<double>& values, double& mean, double& stderr_out) {
  if (values.empty()) throw Error(ErrorCode::kDomain, "no values to aggregate");
  // Shifted by the first value so identical inputs aggregate exactly.
  const double shift = values.front();
  const double k = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v - shift;
  const double offset = sum / k;
  mean = shift + offset;
  if (values.size() < 2) {
    stderr_out = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - shift - offset) * (v - shift - offset);
  stderr_out = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
}

// Per-trial seed: master XOR hash(cell index, trial index).
inline uint64_t TrialSeed(uint64_t master, uint64_t cell, uint64_t trial) {
  return master ^ HashCombine(cell, trial);
}

namespace detail {

inline constexpr uint64_t kDatasetStream = 0xd5a7a5e7ULL;
inline constexpr uint64_t kAnchorStream = 0xa2c40fULL;

struct Slot {
  std::optional<Dataset> data;
  std::optional<ManifoldPoint> mean;
  std::optional<ManifoldPoint> anchor;
  std::optional<ErrorCode> error;
};

struct CellPlan {
  Mechanism mechanism = Mechanism::kBm;
  size_t n_index = 0;
  double epsilon = 1.0;
  double delta = std::numeric_limits<double>::quiet_NaN();
  double scale = std::numeric_limits<double>::quiet_NaN();
  std::optional<ErrorCode> error;
  std::string message;
  size_t first_row = 0;
  size_t row_count = 0;
};

// Runs body(i) for i in [0, count) on `threads` workers. Work is claimed
// dynamically, so body must write only to slot i.
template <typename Body>
void ParallelFor(size_t count, int threads, Body body) {
  size_t workers = threads > 0 ? static_cast<size_t>(threads)
                               : std::max<size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<size_t>(count, 1));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

inline void PlanCell(const ExperimentConfig& cfg, CellPlan& plan) {
  const ManifoldSpec& spec = cfg.manifold;
  const int n = cfg.n_list[plan.n_index];
  try {
    const auto ctx = SensitivityContext::ForManifold(spec, cfg.p, cfg.r, n);
    plan.delta = ChooseSensitivityBound(ctx).delta;
    const RdpBudget budget = RdpBudget::Make(cfg.alpha, plan.epsilon);
    switch (plan.mechanism) {
      case Mechanism::kBm:
        plan.scale = BmTimeForBudget(spec.ric_lower_K, budget, plan.delta);
        break;
      case Mechanism::kLangevin:
        if (!spec.is_hadamard()) {
          throw Error(ErrorCode::kUnsupportedManifold,
                      "the Langevin mechanism needs a Hadamard manifold");
        }
        plan.scale = LangevinTimeForBudget(spec.ric_lower_K, cfg.lambda, budget, plan.delta);
        break;
      case Mechanism::kRl:
        plan.scale = RlRate(plan.delta, RdpToDpBudget(budget), true);
        CheckLaplaceNormalizable(spec, plan.scale);
        break;
      case Mechanism::kEwg:
        plan.scale = EwgRate(plan.delta, budget);
        break;
    }
  } catch (const Error& e) {
    plan.error = e.code();
    plan.message = e.what();
  }
}

inline void FillSlot(const ExperimentConfig& cfg, const ManifoldPoint& center, int n,
                     uint64_t data_seed, uint64_t anchor_seed, Slot& slot) {
  try {
    Rng data_rng({data_seed, 0});
    slot.data = SampleUniformDataset(center, cfg.r, static_cast<size_t>(n), data_rng);
    if (cfg.scenario == Scenario::kAnchorRandomInBall) {
      Rng anchor_rng({anchor_seed, 0});
      slot.anchor = UniformBallSample(center, cfg.r, anchor_rng);
    } else {
      slot.anchor = center;
    }
    slot.mean = SolvePMean(*slot.data, cfg.p);
  } catch (const Error& e) {
    slot.error = e.code();
  }
}

inline double RunTrial(const ExperimentConfig& cfg, const CellPlan& plan, const Slot& slot,
                       uint64_t seed) {
  const ManifoldPoint& mean = *slot.mean;
  const RdpBudget budget = RdpBudget::Make(cfg.alpha, plan.epsilon);
  switch (plan.mechanism) {
    case Mechanism::kBm:
    case Mechanism::kLangevin: {
      ReleaseRequest req{*slot.data, cfg.p, budget};
      req.n_step = cfg.n_step;
      if (plan.mechanism == Mechanism::kLangevin) {
        req.mechanism = ReleaseMechanism::kLangevin;
        req.langevin = LangevinOptions{cfg.lambda, *slot.anchor,
                                       std::string(ScenarioName(cfg.scenario))};
      }
      const ReleaseRecord rec = ReleaseFromMean(req, mean, {seed, 0});
      return Distance(mean, rec.private_point);
    }
    case Mechanism::kRl: {
      Rng rng({seed, 0});
      return Distance(mean, RlSample(mean, plan.scale, rng));
    }
    case Mechanism::kEwg: {
      Rng rng({seed, 0});
      return Distance(mean, EwgSample(*slot.anchor, mean, plan.scale, rng));
    }
  }
  return 0.0;
}

}  // namespace detail

// Runs every (mechanism, n, epsilon) cell for cfg.trials trials. The output is
// a pure function of cfg minus cfg.threads.
inline ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  const ManifoldPoint center = cfg.CenterPoint();
  const std::string manifold_name = ToString(cfg.manifold);
  const size_t n_count = cfg.n_list.size();
  const size_t per_n = cfg.resample_dataset ? static_cast<size_t>(cfg.trials) : 1;

  // Datasets, anchors and means are shared by all cells with the same n so
  // mechanisms and budgets are compared on the same data.
  std::vector<detail::Slot> slots(n_count * per_n);
  detail::ParallelFor(slots.size(), cfg.threads, [&](size_t i) {
    const size_t n_index = i / per_n;
    const uint64_t key = HashCombine(static_cast<uint64_t>(cfg.n_list[n_index]), i % per_n);
    detail::FillSlot(cfg, center, cfg.n_list[n_index],
                     HashCombine(cfg.master_seed, HashCombine(detail::kDatasetStream, key)),
                     HashCombine(cfg.master_seed, HashCombine(detail::kAnchorStream, key)),
                     slots[i]);
  });

  std::vector<detail::CellPlan> plans;
  size_t total_rows = 0;
  for (Mechanism mechanism : cfg.mechanisms) {
    for (size_t ni = 0; ni < n_count; ++ni) {
      for (double eps : cfg.epsilon_list) {
        detail::CellPlan plan;
        plan.mechanism = mechanism;
        plan.n_index = ni;
        plan.epsilon = eps;
        detail::PlanCell(cfg, plan);
        plan.first_row = total_rows;
        plan.row_count = plan.error ? 1 : static_cast<size_t>(cfg.trials);
        total_rows += plan.row_count;
        plans.push_back(std::move(plan));
      }
    }
  }

  ExperimentResult result;
  result.rows.resize(total_rows);
  for (size_t c = 0; c < plans.size(); ++c) {
    const auto& plan = plans[c];
    for (size_t k = 0; k < plan.row_count; ++k) {
      TrialRow& row = result.rows[plan.first_row + k];
      row.mechanism = plan.mechanism;
      row.manifold = manifold_name;
      row.scenario = cfg.scenario;
      row.n = cfg.n_list[plan.n_index];
      row.p = cfg.p;
      row.alpha = cfg.alpha;
      row.epsilon = plan.epsilon;
      row.trial = static_cast<int>(k);
      row.seed = TrialSeed(cfg.master_seed, c, k);
      row.error = plan.error;
    }
  }

  std::vector<size_t> row_cell(total_rows);
  for (size_t c = 0; c < plans.size(); ++c) {
    for (size_t k = 0; k < plans[c].row_count; ++k) row_cell[plans[c].first_row + k] = c;
  }
  detail::ParallelFor(total_rows, cfg.threads, [&](size_t i) {
    TrialRow& row = result.rows[i];
    if (row.error) return;
    const auto& plan = plans[row_cell[i]];
    const auto& slot =
        slots[plan.n_index * per_n + (cfg.resample_dataset ? static_cast<size_t>(row.trial) : 0)];
    if (slot.error) {
      row.error = slot.error;
      return;
    }
    try {
      row.distance = detail::RunTrial(cfg, plan, slot, row.seed);
    } catch (const Error& e) {
      row.error = e.code();
    }
  });

  for (const auto& plan : plans) {
    AggregateRow agg;
    agg.mechanism = plan.mechanism;
    agg.manifold = manifold_name;
    agg.scenario = cfg.scenario;
    agg.n = cfg.n_list[plan.n_index];
    agg.p = cfg.p;
    agg.alpha = cfg.alpha;
    agg.epsilon = plan.epsilon;
    agg.delta = plan.delta;
    agg.scale = plan.scale;
    agg.error = plan.error;
    agg.message = plan.message;
    std::vector<double> distances;
    for (size_t k = 0; k < plan.row_count && !agg.error; ++k) {
      const TrialRow& row = result.rows[plan.first_row + k];
      if (row.error) {
        agg.error = row.error;
        agg.message = "trial " + std::to_string(k) + " failed";
      } else {
        distances.push_back(row.distance);
      }
    }
    if (!agg.error) {
      MeanAndStderr(distances, agg.mean_distance, agg.stderr_distance);
      agg.trials = static_cast<int>(distances.size());
    }
    result.aggregates.push_back(std::move(agg));
  }
  return result;
}

}  // namespace geodp::bench
