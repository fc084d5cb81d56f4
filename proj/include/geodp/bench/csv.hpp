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
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <vector>

#include "geodp/bench/experiment.hpp"
#include "geodp/error.hpp"

namespace geodp::bench {

inline constexpr std::string_view kTrialHeader =
    "mechanism,manifold,scenario,n,p,alpha,epsilon,trial,distance,seed";
inline constexpr std::string_view kAggregateHeader =
    "mechanism,manifold,scenario,n,p,alpha,epsilon,mean_distance,stderr,trials";

// Shortest-safe text for a double: 17 significant digits, decimal dot,
// independent of the global locale.
inline std::string FormatReal(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double ParseReal(std::string_view text) {
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kIo, "not a number: '" + std::string(text) + "'");
  }
  return x;
}

template <typename Int>
Int ParseInteger(std::string_view text) {
  Int x = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kIo, "not an integer: '" + std::string(text) + "'");
  }
  return x;
}

inline std::string ErrorField(ErrorCode code) {
  return "error:" + std::string(ErrorCodeName(code));
}

inline void WriteTrialCsv(std::ostream& out, const std::vector<TrialRow>& rows) {
  out << kTrialHeader << '\n';
  for (const TrialRow& row : rows) {
    out << MechanismName(row.mechanism) << ',' << row.manifold << ','
        << ScenarioName(row.scenario) << ',' << row.n << ',' << FormatReal(row.p) << ','
        << FormatReal(row.alpha) << ',' << FormatReal(row.epsilon) << ',' << row.trial << ','
        << (row.error ? ErrorField(*row.error) : FormatReal(row.distance)) << ',' << row.seed
        << '\n';
  }
}

inline void WriteAggregateCsv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << kAggregateHeader << '\n';
  for (const AggregateRow& row : rows) {
    out << MechanismName(row.mechanism) << ',' << row.manifold << ','
        << ScenarioName(row.scenario) << ',' << row.n << ',' << FormatReal(row.p) << ','
        << FormatReal(row.alpha) << ',' << FormatReal(row.epsilon) << ',';
    if (row.error) {
      out << ErrorField(*row.error) << ',' << ErrorField(*row.error) << ",0\n";
    } else {
      out << FormatReal(row.mean_distance) << ',' << FormatReal(row.stderr_distance) << ','
          << row.trials << '\n';
    }
  }
}

// Calibration used by each cell; the aggregate file has no room for it.
inline void WriteCellCsv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "mechanism,manifold,scenario,n,p,alpha,epsilon,delta,scale,status\n";
  for (const AggregateRow& row : rows) {
    out << MechanismName(row.mechanism) << ',' << row.manifold << ','
        << ScenarioName(row.scenario) << ',' << row.n << ',' << FormatReal(row.p) << ','
        << FormatReal(row.alpha) << ',' << FormatReal(row.epsilon) << ','
        << FormatReal(row.delta) << ',' << FormatReal(row.scale) << ','
        << (row.error ? ErrorField(*row.error) : std::string("ok")) << '\n';
  }
}

namespace detail {

inline std::vector<std::string_view> SplitCsvLine(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline std::ofstream OpenForWrite(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  return out;
}

inline void FinishWrite(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace detail

inline std::vector<TrialRow> ParseTrialCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrialHeader) {
    throw Error(ErrorCode::kIo, "missing or unexpected trial CSV header");
  }
  std::vector<TrialRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::SplitCsvLine(line);
    if (f.size() != 10) throw Error(ErrorCode::kIo, "trial CSV row needs 10 fields: " + line);
    TrialRow row;
    row.mechanism = ParseMechanism(f[0]);
    row.manifold = std::string(f[1]);
    row.scenario = ParseScenario(f[2]);
    row.n = ParseInteger<int>(f[3]);
    row.p = ParseReal(f[4]);
    row.alpha = ParseReal(f[5]);
    row.epsilon = ParseReal(f[6]);
    row.trial = ParseInteger<int>(f[7]);
    if (f[8].substr(0, 6) == "error:") {
      row.error = ParseErrorCode(f[8].substr(6));
      if (!row.error) throw Error(ErrorCode::kIo, "unknown error code in: " + line);
    } else {
      row.distance = ParseReal(f[8]);
    }
    row.seed = ParseInteger<uint64_t>(f[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Groups rows by (mechanism, manifold, scenario, n, p, alpha, epsilon) in
// order of first appearance. A group with any failed trial is reported as
// failed with the first error code.
inline std::vector<AggregateRow> Aggregate(const std::vector<TrialRow>& rows) {
  using Key = std::tuple<int, std::string, int, int, double, double, double>;
  std::map<Key, size_t> index;
  std::vector<AggregateRow> out;
  std::vector<std::vector<double>> values;
  for (const TrialRow& row : rows) {
    const Key key{static_cast<int>(row.mechanism), row.manifold, static_cast<int>(row.scenario),
                  row.n, row.p, row.alpha, row.epsilon};
    auto [it, inserted] = index.try_emplace(key, out.size());
    if (inserted) {
      AggregateRow agg;
      agg.mechanism = row.mechanism;
      agg.manifold = row.manifold;
      agg.scenario = row.scenario;
      agg.n = row.n;
      agg.p = row.p;
      agg.alpha = row.alpha;
      agg.epsilon = row.epsilon;
      out.push_back(std::move(agg));
      values.emplace_back();
    }
    AggregateRow& agg = out[it->second];
    if (row.error) {
      if (!agg.error) agg.error = row.error;
    } else {
      values[it->second].push_back(row.distance);
    }
  }
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i].error) continue;
    MeanAndStderr(values[i], out[i].mean_distance, out[i].stderr_distance);
    out[i].trials = static_cast<int>(values[i].size());
  }
  return out;
}

inline void EmitTrialCsv(const std::filesystem::path& path, const std::vector<TrialRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kDomain, "no trial rows to write");
  auto out = detail::OpenForWrite(path);
  WriteTrialCsv(out, rows);
  detail::FinishWrite(out, path);
}

inline void EmitAggregateCsv(const std::filesystem::path& path,
                             const std::vector<AggregateRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kDomain, "no aggregate rows to write");
  auto out = detail::OpenForWrite(path);
  WriteAggregateCsv(out, rows);
  detail::FinishWrite(out, path);
}

inline void EmitCellCsv(const std::filesystem::path& path, const std::vector<AggregateRow>& rows) {
  auto out = detail::OpenForWrite(path);
  WriteCellCsv(out, rows);
  detail::FinishWrite(out, path);
}

// One whitespace-separated data file per (manifold, scenario, n) panel:
// epsilon followed by mean and stderr for each mechanism, "nan" for failed
// cells. Returns the files written.
inline std::vector<std::filesystem::path> EmitPlotData(const std::filesystem::path& dir,
                                                       const std::vector<AggregateRow>& rows) {
  using Panel = std::tuple<std::string, int, int>;
  std::map<Panel, std::vector<const AggregateRow*>> panels;
  std::vector<Panel> order;
  for (const AggregateRow& row : rows) {
    const Panel key{row.manifold, static_cast<int>(row.scenario), row.n};
    auto [it, inserted] = panels.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&row);
  }
  std::vector<std::filesystem::path> written;
  for (const Panel& key : order) {
    const auto& cells = panels[key];
    std::vector<Mechanism> mechs;
    std::vector<double> eps;
    for (const AggregateRow* row : cells) {
      if (std::find(mechs.begin(), mechs.end(), row->mechanism) == mechs.end()) {
        mechs.push_back(row->mechanism);
      }
      if (std::find(eps.begin(), eps.end(), row->epsilon) == eps.end()) eps.push_back(row->epsilon);
    }
    std::sort(eps.begin(), eps.end());
    std::string manifold = std::get<0>(key);
    std::replace(manifold.begin(), manifold.end(), ':', '-');
    const auto path = dir / ("plot_" + manifold + "_" +
                             std::string(ScenarioName(static_cast<Scenario>(std::get<1>(key)))) +
                             "_n" + std::to_string(std::get<2>(key)) + ".dat");
    auto out = detail::OpenForWrite(path);
    out << "# epsilon";
    for (Mechanism m : mechs) out << ' ' << MechanismName(m) << "_mean " << MechanismName(m) << "_stderr";
    out << '\n';
    for (double e : eps) {
      out << FormatReal(e);
      for (Mechanism m : mechs) {
        const AggregateRow* hit = nullptr;
        for (const AggregateRow* row : cells) {
          if (row->mechanism == m && row->epsilon == e) hit = row;
        }
        if (hit == nullptr || hit->error) {
          out << " nan nan";
        } else {
          out << ' ' << FormatReal(hit->mean_distance) << ' ' << FormatReal(hit->stderr_distance);
        }
      }
      out << '\n';
    }
    detail::FinishWrite(out, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace geodp::bench
