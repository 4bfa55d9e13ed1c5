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

#ifndef CERTUN_HARNESS_RESULTS_H_
#define CERTUN_HARNESS_RESULTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/types/span.h"

namespace certun {

// One line of the results CSV. Unset fields are written as "nan".
struct ResultRow {
  std::string method;
  std::optional<double> sigma;
  std::optional<double> epsilon_target;
  std::optional<double> epsilon_achieved;
  std::optional<int64_t> k_total;
  std::optional<double> acc_mean;
  std::optional<double> acc_std;
  double wall_ms = 0.0;
  uint64_t seed = 0;
};

// Accuracy of one trial, tied to the row it was aggregated into.
struct TrialRecord {
  int64_t row = 0;
  int64_t trial = 0;
  double accuracy = 0.0;
};

// Figure data: a series label followed by numeric columns.
struct PlotRow {
  std::string series;
  std::vector<double> values;
};

struct PlotTable {
  std::vector<std::string> columns;  // excluding the leading "series"
  std::vector<PlotRow> rows;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<TrialRecord> trials;
  PlotTable plot;
  // Rows whose calibration failed; they are kept with "nan" fields.
  int64_t infeasible_rows = 0;
};

struct AccuracyStats {
  double mean = 0.0;
  // Sample standard deviation (n − 1 denominator); 0 for a single trial.
  double std = 0.0;
};

AccuracyStats Aggregate(absl::Span<const double> values);

// Header: method,sigma,epsilon_target,epsilon_achieved,K_total,acc_mean,
// acc_std,wall_ms,seed. Reals use 17 significant digits.
std::string FormatResultsCsv(absl::Span<const ResultRow> rows);
// Header: row,method,sigma,epsilon_target,trial,accuracy.
std::string FormatTrialsCsv(const ResultTable& table);
std::string FormatPlotCsv(const PlotTable& plot);

// Writes the results to `out_path`, the per-trial log to
// `<out_path>.trials.csv` when there are trials, and the plot data to
// `plot_path` when given. I/O failures carry ErrorKind::kIo and the path.
absl::Status WriteResults(const ResultTable& table, const std::string& out_path,
                          const std::string& plot_path);

}  // namespace certun

#endif  // CERTUN_HARNESS_RESULTS_H_
