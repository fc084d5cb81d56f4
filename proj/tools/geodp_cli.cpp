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


// Command-line front end: release, calibrate, sensitivity, experiment, validate.
// Exit status: 0 success, 1 a validation check failed, 2 bad configuration or
// a request the library rejects.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "geodp/bench/csv.hpp"
#include "geodp/bench/experiment.hpp"
#include "geodp/bench/validate.hpp"
#include "geodp/calibration.hpp"
#include "geodp/error.hpp"
#include "geodp/frechet.hpp"
#include "geodp/manifold.hpp"
#include "geodp/release.hpp"

namespace {

using geodp::Error;
using geodp::ErrorCode;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string manifold = "sphere:2";
  double alpha = 2.0;
  std::vector<double> eps;
  double p = 2.0;
  std::vector<int> n;
  std::optional<double> r;
  double lambda = 1.1;
  std::string anchor = "center";
  std::optional<int> steps;
  std::optional<int> trials;
  uint64_t seed = 1;
  std::string out;
  std::vector<std::string> mechanisms;
  bool resample_dataset = true;
  int threads = 0;
  std::optional<double> delta;
  std::string data;
  std::vector<std::string> suites;
};

double DefaultRadius(const geodp::ManifoldSpec& spec) {
  return spec.kind == geodp::ManifoldKind::kSphere ? std::numbers::pi / 5.0 : 3.0;
}

std::vector<double> Epsilons(const Flags& f) {
  return f.eps.empty() ? geodp::bench::DefaultEpsilonGrid() : f.eps;
}

std::vector<int> SampleSizes(const Flags& f) {
  return f.n.empty() ? std::vector<int>{10, 50, 100} : f.n;
}

json PointJson(const geodp::ManifoldPoint& x) {
  json coords = json::array();
  for (Eigen::Index i = 0; i < x.coords().size(); ++i) coords.push_back(x[i]);
  return coords;
}

void WriteJson(const json& doc, const std::string& dir, const std::string& name) {
  std::cout << doc.dump(2) << '\n';
  if (dir.empty()) return;
  const auto path = std::filesystem::path(dir) / name;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

// One point per line, comma- or space-separated ambient coordinates.
std::vector<geodp::ManifoldPoint> ReadPoints(const std::string& path,
                                             const geodp::ManifoldSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<geodp::ManifoldPoint> points;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<double> values;
    double v = 0.0;
    while (fields >> v) values.push_back(v);
    points.push_back(geodp::ManifoldPoint::FromCoords(
        spec, Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()))));
  }
  return points;
}

int RunRelease(const Flags& f) {
  const auto spec = geodp::ParseManifold(f.manifold);
  const auto center = geodp::ManifoldPoint::Origin(spec);
  const double r = f.r.value_or(DefaultRadius(spec));
  const auto eps = Epsilons(f);
  if (f.eps.size() > 1 || f.n.size() > 1) {
    throw Error(ErrorCode::kConfig, "release takes a single --eps and a single --n");
  }
  const double epsilon = f.eps.empty() ? 1.0 : f.eps.front();
  geodp::Rng data_rng({geodp::HashCombine(f.seed, 0xda7a), 0});
  std::string source;
  std::optional<geodp::Dataset> data;
  if (!f.data.empty()) {
    data = geodp::Dataset::Make(ReadPoints(f.data, spec), center, r);
    source = f.data;
  } else {
    const int n = f.n.empty() ? 100 : f.n.front();
    if (n < 1) throw Error(ErrorCode::kConfig, "--n must be >= 1");
    data = geodp::SampleUniformDataset(center, r, static_cast<size_t>(n), data_rng);
    source = "synthetic uniform sample in B(origin, r)";
  }

  geodp::ReleaseRequest req{*data, f.p, geodp::RdpBudget::Make(f.alpha, epsilon)};
  req.n_step = f.steps;
  std::string mechanism = f.mechanisms.empty() ? (spec.is_hadamard() && spec.kind !=
                                                  geodp::ManifoldKind::kEuclidean
                                                      ? "Langevin"
                                                      : "BM")
                                               : f.mechanisms.front();
  const auto parsed = geodp::bench::ParseMechanism(mechanism);
  if (parsed == geodp::bench::Mechanism::kLangevin) {
    req.mechanism = geodp::ReleaseMechanism::kLangevin;
    if (f.anchor == "center") {
      req.langevin = geodp::LangevinOptions{f.lambda, center, "center of B(o, r)"};
    } else if (f.anchor == "random") {
      geodp::Rng anchor_rng({geodp::HashCombine(f.seed, 0xa2c4), 0});
      req.langevin = geodp::LangevinOptions{f.lambda, geodp::UniformBallSample(center, r, anchor_rng),
                                            "uniform draw in B(o, r), seed " + std::to_string(f.seed)};
    } else {
      throw Error(ErrorCode::kConfig, "--anchor must be center or random");
    }
  } else if (parsed != geodp::bench::Mechanism::kBm) {
    throw Error(ErrorCode::kConfig, "release supports BM and Langevin only");
  }

  const auto rec = geodp::PrivatePMean(req, {f.seed, 1});
  json doc{{"manifold", geodp::ToString(spec)},
           {"mechanism", geodp::MechanismName(rec.mechanism)},
           {"n", data->size()},
           {"p", f.p},
           {"alpha", f.alpha},
           {"epsilon", epsilon},
           {"r", r},
           {"dataset", source},
           {"private_point", PointJson(rec.private_point)},
           {"delta_used", rec.delta_used},
           {"sensitivity_rule", geodp::RuleName(rec.rule)},
           {"t_used", rec.t_used},
           {"n_step", rec.n_step},
           {"seed", rec.seed}};
  doc["utility_bound"] = rec.utility_bound ? json(*rec.utility_bound) : json(nullptr);
  if (req.langevin) {
    doc["lambda"] = f.lambda;
    doc["anchor"] = PointJson(req.langevin->anchor);
    doc["anchor_provenance"] = rec.anchor_provenance;
  }
  WriteJson(doc, f.out, "release.json");
  return kExitOk;
}

int RunCalibrate(const Flags& f) {
  const auto spec = geodp::ParseManifold(f.manifold);
  const double K = spec.ric_lower_K;
  json rows = json::array();
  std::vector<std::pair<int, double>> deltas;
  if (f.delta) {
    deltas.push_back({0, *f.delta});
  } else {
    const double r = f.r.value_or(DefaultRadius(spec));
    for (int n : SampleSizes(f)) {
      deltas.push_back(
          {n, geodp::SensitivityBound(geodp::SensitivityContext::ForManifold(spec, f.p, r, n))});
    }
  }
  auto attempt = [](auto fn) -> json {
    try {
      return fn();
    } catch (const Error& e) {
      return "error:" + std::string(geodp::ErrorCodeName(e.code()));
    }
  };
  for (const auto& [n, delta] : deltas) {
    for (double eps : Epsilons(f)) {
      const auto budget = geodp::RdpBudget::Make(f.alpha, eps);
      json row{{"alpha", f.alpha}, {"epsilon", eps}, {"delta", delta}};
      if (n > 0) row["n"] = n;
      row["bm_t"] = attempt([&] { return geodp::BmTimeForBudget(K, budget, delta); });
      row["langevin_t"] =
          attempt([&] { return geodp::LangevinTimeForBudget(K, f.lambda, budget, delta); });
      row["dp_epsilon"] = geodp::RdpToDpBudget(budget);
      row["rl_sigma"] = geodp::RlRate(delta, geodp::RdpToDpBudget(budget));
      row["ewg_sigma"] = geodp::EwgRate(delta, budget);
      rows.push_back(row);
    }
  }
  json doc{{"manifold", geodp::ToString(spec)},
           {"K", K},
           {"lambda", f.lambda},
           {"bm_privacy_floor_per_unit_delta2", geodp::BmPrivacyFloor(K, f.alpha, 1.0)},
           {"rows", rows}};
  WriteJson(doc, f.out, "calibration.json");
  return kExitOk;
}

int RunSensitivity(const Flags& f) {
  const auto spec = geodp::ParseManifold(f.manifold);
  const double r = f.r.value_or(DefaultRadius(spec));
  json rows = json::array();
  for (int n : SampleSizes(f)) {
    const auto ctx = geodp::SensitivityContext::ForManifold(spec, f.p, r, n);
    const auto choice = geodp::ChooseSensitivityBound(ctx);
    rows.push_back({{"n", n}, {"delta", choice.delta}, {"rule", geodp::RuleName(choice.rule)}});
  }
  json doc{{"manifold", geodp::ToString(spec)}, {"p", f.p}, {"r", r}, {"rows", rows}};
  WriteJson(doc, f.out, "sensitivity.json");
  return kExitOk;
}

int RunExperimentCommand(const Flags& f) {
  namespace bench = geodp::bench;
  const auto spec = geodp::ParseManifold(f.manifold);
  const auto scenario = bench::ParseScenario(f.anchor);
  bench::ExperimentConfig cfg = spec.kind == geodp::ManifoldKind::kSphere
                                    ? bench::ExperimentConfig::Sphere()
                                    : bench::ExperimentConfig::Hyperboloid(scenario);
  cfg.manifold = spec;
  cfg.r = f.r.value_or(DefaultRadius(spec));
  cfg.n_list = SampleSizes(f);
  cfg.alpha = f.alpha;
  cfg.epsilon_list = Epsilons(f);
  cfg.trials = f.trials.value_or(1000);
  if (!f.mechanisms.empty()) {
    cfg.mechanisms.clear();
    for (const auto& m : f.mechanisms) cfg.mechanisms.push_back(bench::ParseMechanism(m));
  }
  cfg.scenario = scenario;
  cfg.master_seed = f.seed;
  cfg.lambda = f.lambda;
  cfg.p = f.p;
  cfg.resample_dataset = f.resample_dataset;
  cfg.threads = f.threads;
  cfg.n_step = f.steps;
  const auto result = bench::RunExperiment(cfg);

  const std::filesystem::path dir = f.out.empty() ? "." : f.out;
  bench::EmitTrialCsv(dir / "trials.csv", result.rows);
  bench::EmitAggregateCsv(dir / "aggregates.csv", result.aggregates);
  bench::EmitCellCsv(dir / "cells.csv", result.aggregates);
  const auto plots = bench::EmitPlotData(dir, result.aggregates);
  int failed = 0;
  for (const auto& a : result.aggregates) failed += a.error ? 1 : 0;
  std::cout << "wrote " << result.rows.size() << " trial rows, " << result.aggregates.size()
            << " cells (" << failed << " error cells), " << plots.size() << " plot files to "
            << dir.string() << '\n';
  return kExitOk;
}

int RunValidate(const Flags& f) {
  namespace bench = geodp::bench;
  std::vector<bench::Suite> suites;
  for (const auto& s : f.suites) suites.push_back(bench::ParseSuite(s));
  if (suites.empty()) suites = bench::AllSuites();
  bench::ValidateOptions opt;
  opt.seed = f.seed;
  std::vector<bench::Check> checks;
  for (bench::Suite s : suites) {
    auto part = bench::RunSuite(s, opt);
    checks.insert(checks.end(), part.begin(), part.end());
  }
  WriteJson(bench::ReportJson(checks), f.out, "validate.json");
  return bench::AllPass(checks) ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion-based Renyi-DP release of Frechet means on manifolds"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file; keys are flag names, flags override it");

  Flags f;
  app.add_option("--manifold", f.manifold, "euclidean:m, sphere:2 or hyperboloid:2");
  app.add_option("--alpha", f.alpha, "Renyi order");
  app.add_option("--eps", f.eps, "Privacy budget(s); repeatable");
  app.add_option("--p", f.p, "Frechet exponent p > 1");
  app.add_option("--n", f.n, "Sample size(s); repeatable");
  app.add_option("--r", f.r, "Ball radius (default pi/5 on spheres, 3 otherwise)");
  app.add_option("--lambda", f.lambda, "Langevin pull strength");
  app.add_option("--anchor", f.anchor, "Anchor/footpoint: center or random")
      ->check(CLI::IsMember({"center", "random"}));
  app.add_option("--steps", f.steps, "Sampler step count override");
  app.add_option("--trials", f.trials, "Trials per experiment cell");
  app.add_option("--seed", f.seed, "Master seed");
  app.add_option("--out", f.out, "Output directory");
  app.add_option("--mechanisms", f.mechanisms, "BM, Langevin, RL, EWG")->delimiter(',');
  app.add_option("--resample-dataset", f.resample_dataset, "Fresh dataset per trial (true/false)");
  app.add_option("--threads", f.threads, "Worker threads, 0 = all cores");
  app.add_option("--delta", f.delta, "calibrate: use this sensitivity instead of the bound");
  app.add_option("--data", f.data, "release: file of ambient coordinates, one point per line");
  app.add_option("--suite", f.suites, "validate: suite(s) to run (default all)");

  auto* release = app.add_subcommand("release", "Privately release the p-mean of a dataset");
  auto* calibrate = app.add_subcommand("calibrate", "Diffusion times and noise rates per budget");
  auto* sensitivity = app.add_subcommand("sensitivity", "Sensitivity bound of the p-mean");
  auto* experiment = app.add_subcommand("experiment", "Mechanism comparison experiment");
  auto* validate = app.add_subcommand("validate", "Property and oracle checks, JSON report");
  for (auto* sub : {release, calibrate, sensitivity, experiment, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*release) return RunRelease(f);
    if (*calibrate) return RunCalibrate(f);
    if (*sensitivity) return RunSensitivity(f);
    if (*experiment) return RunExperimentCommand(f);
    if (*validate) return RunValidate(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
