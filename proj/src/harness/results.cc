// Copyright 2026 The certun Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "certun/harness/results.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "certun/status.h"

namespace certun {
namespace {

std::string Real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Real(const std::optional<double>& v) {
  return v ? Real(*v) : "nan";
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return IoError(absl::StrCat("cannot write '", path, "'"));
  out << content;
  out.close();
  if (!out) return IoError(absl::StrCat("error writing '", path, "'"));
  return absl::OkStatus();
}

}  // namespace

AccuracyStats Aggregate(absl::Span<const double> values) {
  AccuracyStats s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::string FormatResultsCsv(absl::Span<const ResultRow> rows) {
  std::string out =
      "method,sigma,epsilon_target,epsilon_achieved,K_total,acc_mean,acc_std,"
      "wall_ms,seed\n";
  for (const ResultRow& r : rows) {
    absl::StrAppend(&out, r.method, ",", Real(r.sigma), ",",
                    Real(r.epsilon_target), ",", Real(r.epsilon_achieved), ",",
                    r.k_total ? absl::StrCat(*r.k_total) : "nan", ",",
                    Real(r.acc_mean), ",", Real(r.acc_std), ",",
                    Real(r.wall_ms), ",", r.seed, "\n");
  }
  return out;
}

std::string FormatTrialsCsv(const ResultTable& table) {
  std::string out = "row,method,sigma,epsilon_target,trial,accuracy\n";
  for (const TrialRecord& t : table.trials) {
    const ResultRow& r = table.rows.at(static_cast<size_t>(t.row));
    absl::StrAppend(&out, t.row, ",", r.method, ",", Real(r.sigma), ",",
                    Real(r.epsilon_target), ",", t.trial, ",",
                    Real(t.accuracy), "\n");
  }
  return out;
}

std::string FormatPlotCsv(const PlotTable& plot) {
  std::string out = absl::StrCat("series,", absl::StrJoin(plot.columns, ","),
                                 "\n");
  for (const PlotRow& r : plot.rows) {
    absl::StrAppend(&out, r.series);
    for (double v : r.values) absl::StrAppend(&out, ",", Real(v));
    absl::StrAppend(&out, "\n");
  }
  return out;
}

absl::Status WriteResults(const ResultTable& table, const std::string& out_path,
                          const std::string& plot_path) {
  if (table.rows.empty()) {
    return absl::InvalidArgumentError("no result rows to write");
  }
  CERTUN_RETURN_IF_ERROR(WriteFile(out_path, FormatResultsCsv(table.rows)));
  if (!table.trials.empty()) {
    CERTUN_RETURN_IF_ERROR(
        WriteFile(out_path + ".trials.csv", FormatTrialsCsv(table)));
  }
  if (!plot_path.empty()) {
    CERTUN_RETURN_IF_ERROR(WriteFile(plot_path, FormatPlotCsv(table.plot)));
  }
  return absl::OkStatus();
}

}  // namespace certun
