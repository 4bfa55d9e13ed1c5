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

#include "certun/harness/experiments.h"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>

#include "absl/strings/str_cat.h"
#include "certun/d2d/d2d.h"
#include "certun/erm/dataset_io.h"
#include "certun/harness/synthetic.h"
#include "certun/privacy/accountant.h"
#include "certun/privacy/conversion.h"
#include "certun/privacy/sequential.h"
#include "certun/random.h"
#include "certun/status.h"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace certun {
namespace {

const std::vector<double> kDefaultSweepSigmas = {0.01, 0.02, 0.05, 0.1,
                                                 0.2,  0.5,  1.0};

class RowTimer {
 public:
  explicit RowTimer(bool enabled)
      : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double ElapsedMs() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

bool IsCalibrationFailure(const absl::Status& s) {
  return HasErrorKind(s, ErrorKind::kBudgetUnreachable) ||
         HasErrorKind(s, ErrorKind::kNoFeasibleSigma) ||
         HasErrorKind(s, ErrorKind::kInfeasibleBudget) ||
         HasErrorKind(s, ErrorKind::kCapOverflow);
}

// Keeps a row for a failed calibration, or propagates other errors.
absl::Status RecordFailure(const absl::Status& status, ResultRow row,
                           ResultTable* table) {
  if (!IsCalibrationFailure(status)) return status;
  spdlog::error("{} at epsilon={}: {}", row.method,
                row.epsilon_target.value_or(0.0), status.ToString());
  table->rows.push_back(std::move(row));
  ++table->infeasible_rows;
  return absl::OkStatus();
}

// Runs the trials of the row at `row_index` and fills its accuracy.
absl::Status RunTrials(const ExperimentConfig& config, ResultTable* table,
                       size_t row_index,
                       const std::function<absl::StatusOr<double>(int64_t)>& trial) {
  std::vector<double> acc;
  acc.reserve(static_cast<size_t>(config.trials));
  for (int64_t t = 0; t < config.trials; ++t) {
    CERTUN_ASSIGN_OR_RETURN(double a, trial(t));
    acc.push_back(a);
    table->trials.push_back(
        TrialRecord{static_cast<int64_t>(row_index), t, a});
  }
  const AccuracyStats stats = Aggregate(acc);
  table->rows[row_index].acc_mean = stats.mean;
  table->rows[row_index].acc_std = stats.std;
  spdlog::info("{} sigma={} K={} acc={} +/- {}", table->rows[row_index].method,
               table->rows[row_index].sigma.value_or(0.0),
               table->rows[row_index].k_total.value_or(-1), stats.mean,
               stats.std);
  return absl::OkStatus();
}

ResultRow BaseRow(const ExperimentConfig& config, Method method) {
  ResultRow row;
  row.method = std::string(MethodName(method));
  row.seed = config.seed;
  return row;
}

uint64_t ReplacementSeed(const ExperimentConfig& config, int64_t trial,
                         size_t batch_index) {
  Rng rng(config.seed, TrialStream(static_cast<uint64_t>(trial),
                                   StreamPurpose::kReplacement));
  uint64_t seed = 0;
  for (size_t i = 0; i <= batch_index; ++i) seed = rng.NextU64();
  return seed;
}

absl::StatusOr<double> TestAccuracy(const ExperimentSetup& setup,
                                    const Eigen::MatrixXd& w) {
  CERTUN_ASSIGN_OR_RETURN(Evaluation e,
                          Evaluate(*setup.objective, w, *setup.test));
  return e.accuracy;
}

NoiseSchedule TrainingSchedule(const ExperimentConfig& config,
                               const ExperimentSetup& setup, double sigma) {
  NoiseSchedule ns;
  ns.step = setup.step;
  ns.noise_std = sigma;
  ns.learn_iters = Horizon::Finite(config.learn_iters);
  return ns;
}

absl::StatusOr<ModelParams> TrainFresh(const ExperimentConfig& config,
                                       const ExperimentSetup& setup,
                                       const Dataset& data, double sigma,
                                       uint64_t stream) {
  const NoiseSchedule ns = TrainingSchedule(config, setup, sigma);
  const InitSpec init{config.init_mean,
                      DefaultInitialLsi(setup.constants, ns, config.regime)};
  Rng rng(config.seed, stream);
  return Train(data, *setup.objective, ns, config.radius, init, rng);
}

// D2D: noiseless training from the origin at step 2/(L+m).
ModelParams D2DTrained(const ExperimentConfig& config,
                       const ExperimentSetup& setup) {
  const ProblemConstants pc =
      setup.objective->Constants(setup.train->n(), config.radius);
  const ModelParams zero{Eigen::MatrixXd::Zero(setup.objective->dim(),
                                               setup.objective->outputs())};
  return D2DTrain(*setup.train, *setup.objective, config.learn_iters,
                  D2DStepSize(pc.smoothness, pc.strong_convexity),
                  config.radius, zero);
}

absl::StatusOr<double> RunD2DTrial(const ExperimentConfig& config,
                                   const ExperimentSetup& setup,
                                   const ModelParams& trained, double sigma,
                                   const std::vector<int64_t>& iters,
                                   bool internal_state, int64_t total,
                                   int64_t batch, int64_t trial) {
  const ProblemConstants pc =
      setup.objective->Constants(setup.train->n(), config.radius);
  const double step = D2DStepSize(pc.smoothness, pc.strong_convexity);
  const auto t = static_cast<uint64_t>(trial);
  Rng rng(config.seed, TrialStream(t, StreamPurpose::kUnlearn));
  D2DState state = D2DInitialState(trained, sigma, internal_state, rng);
  Dataset data = *setup.train;
  const auto removals =
      TrialRemovals(config, data.n(), total, batch, trial);
  for (size_t i = 0; i < removals.size(); ++i) {
    CERTUN_ASSIGN_OR_RETURN(
        data, ApplyRequest(data,
                           UnlearningRequest{removals[i],
                                             ReplacementSeed(config, trial, i)},
                           config.renormalize_replacements));
    state = D2DUnlearn(state, data, *setup.objective, iters.at(i), step, sigma,
                       config.radius, internal_state, rng);
  }
  return TestAccuracy(setup, state.published.weights);
}

double SingleEpsilonOrNan(const AccountingContext& ctx, int64_t group,
                          int64_t steps, double delta) {
  absl::StatusOr<DpConversion> dp =
      SingleRequestEpsilon(ctx, group, steps, delta);
  return dp.ok() ? dp->epsilon : std::nan("");
}

}  // namespace

absl::StatusOr<ExperimentSetup> PrepareSetup(const ExperimentConfig& config,
                                             bool with_data) {
  ExperimentSetup setup;
  CERTUN_ASSIGN_OR_RETURN(setup.preset, LookupPreset(config.preset));
  int64_t n = setup.preset.n;
  int64_t dim = setup.preset.dim;
  int classes = setup.preset.num_classes;

  if (with_data) {
    if (!config.data_path.empty()) {
      CERTUN_ASSIGN_OR_RETURN(setup.train, LoadDatasetCsv(config.data_path));
      if (!config.test_data_path.empty()) {
        CERTUN_ASSIGN_OR_RETURN(setup.test,
                                LoadDatasetCsv(config.test_data_path));
      } else {
        spdlog::warn("no --test-data; reporting accuracy on the training set");
        setup.test = setup.train;
      }
    } else if (setup.preset.synthetic) {
      SyntheticSpec spec{n, dim, classes, config.synthetic_separation};
      CERTUN_ASSIGN_OR_RETURN(
          setup.train,
          GenerateSynthetic(spec, config.seed,
                            TrialStream(0, StreamPurpose::kData)));
      spec.n = config.synthetic_test_n;
      CERTUN_ASSIGN_OR_RETURN(
          setup.test, GenerateSynthetic(spec, config.seed,
                                        TrialStream(1, StreamPurpose::kData)));
    } else {
      return InvalidConfigError(absl::StrCat(
          "preset '", config.preset, "' needs --data"));
    }
    if (setup.test->dim() != setup.train->dim() ||
        setup.test->num_classes() != setup.train->num_classes()) {
      return InvalidConfigError("test data shape differs from training data");
    }
    n = setup.train->n();
    dim = setup.train->dim();
    classes = setup.train->num_classes();
  }

  double reg = setup.preset.reg;
  if (config.lambda) {
    reg = *config.lambda;
  } else if (setup.preset.synthetic) {
    reg = DefaultRegularization(n);
  }

  if (with_data) {
    absl::StatusOr<std::unique_ptr<Objective>> obj = CreateObjectiveFor(
        *setup.train, LogisticOptions{.reg = reg, .allow_unnormalized = false});
    if (!obj.ok()) return InvalidConfigError(obj.status().message());
    setup.objective = *std::move(obj);
    setup.constants = setup.objective->Constants(n, config.radius);
  } else if (classes == 2) {
    setup.constants = ProblemConstants::BinaryLogistic(n, dim, reg, config.radius);
  } else {
    setup.constants =
        ProblemConstants::MulticlassLogistic(n, dim, reg, config.radius);
  }
  setup.step = 1.0 / setup.constants.smoothness;
  if (config.regime == Regime::kConvex) setup.constants.strong_convexity = 0.0;

  if (config.delta) {
    setup.delta = *config.delta;
  } else if (!with_data || n == setup.preset.n) {
    setup.delta = setup.preset.delta;
  } else {
    setup.delta = 1.0 / static_cast<double>(n);
  }
  absl::Status valid = setup.constants.ValidateFor(config.regime);
  if (!valid.ok()) return InvalidConfigError(valid.message());
  return setup;
}

AccountingContext MakeContext(const ExperimentConfig& config,
                              const ExperimentSetup& setup, double sigma) {
  AccountingContext ctx;
  ctx.constants = setup.constants;
  ctx.regime = config.regime;
  ctx.schedule.step = setup.step;
  ctx.schedule.noise_std = sigma;
  ctx.schedule.learn_iters = config.regime == Regime::kStronglyConvex
                                 ? Horizon::Infinite()
                                 : Horizon::Finite(config.learn_iters);
  return ctx;
}

std::vector<std::vector<int64_t>> TrialRemovals(const ExperimentConfig& config,
                                                int64_t n, int64_t total,
                                                int64_t batch, int64_t trial) {
  const std::vector<int64_t> picked = SampleIndices(
      n, total, config.seed,
      TrialStream(static_cast<uint64_t>(trial), StreamPurpose::kRequest));
  std::vector<std::vector<int64_t>> out;
  for (size_t start = 0; start < picked.size();
       start += static_cast<size_t>(batch)) {
    const size_t end =
        std::min(picked.size(), start + static_cast<size_t>(batch));
    out.emplace_back(picked.begin() + start, picked.begin() + end);
  }
  return out;
}

absl::StatusOr<double> RunLangevinTrial(const ExperimentConfig& config,
                                        const ExperimentSetup& setup,
                                        double sigma,
                                        const std::vector<int64_t>& steps,
                                        int64_t total, int64_t batch,
                                        int64_t trial) {
  const auto t = static_cast<uint64_t>(trial);
  CERTUN_ASSIGN_OR_RETURN(
      ModelParams model,
      TrainFresh(config, setup, *setup.train, sigma,
                 TrialStream(t, StreamPurpose::kLearn)));
  Rng rng(config.seed, TrialStream(t, StreamPurpose::kUnlearn));
  Dataset data = *setup.train;
  const auto removals = TrialRemovals(config, data.n(), total, batch, trial);
  if (steps.size() < removals.size()) {
    return absl::InvalidArgumentError("fewer step counts than requests");
  }
  for (size_t i = 0; i < removals.size(); ++i) {
    CERTUN_ASSIGN_OR_RETURN(
        data, ApplyRequest(data,
                           UnlearningRequest{removals[i],
                                             ReplacementSeed(config, trial, i)},
                           config.renormalize_replacements));
    model = Unlearn(model, data, *setup.objective, steps[i], setup.step, sigma,
                    config.radius, rng);
  }
  return TestAccuracy(setup, model.weights);
}

absl::StatusOr<double> RunRetrainTrial(const ExperimentConfig& config,
                                       const ExperimentSetup& setup,
                                       double sigma, int64_t total,
                                       int64_t batch, int64_t trial) {
  Dataset data = *setup.train;
  const auto removals = TrialRemovals(config, data.n(), total, batch, trial);
  for (size_t i = 0; i < removals.size(); ++i) {
    CERTUN_ASSIGN_OR_RETURN(
        data, ApplyRequest(data,
                           UnlearningRequest{removals[i],
                                             ReplacementSeed(config, trial, i)},
                           config.renormalize_replacements));
  }
  CERTUN_ASSIGN_OR_RETURN(
      ModelParams model,
      TrainFresh(config, setup, data, sigma,
                 TrialStream(static_cast<uint64_t>(trial),
                             StreamPurpose::kRetrain)));
  return TestAccuracy(setup, model.weights);
}

absl::StatusOr<ResultTable> RunCalibrateSigma(const ExperimentConfig& config) {
  CERTUN_ASSIGN_OR_RETURN(ExperimentSetup setup, PrepareSetup(config, false));
  const ProblemConstants& pc = setup.constants;
  ResultTable table;
  table.plot.columns = {"epsilon_target", "sigma", "K"};
  for (double eps : config.eps_targets) {
    RowTimer timer(config.wall_clock);
    ResultRow row = BaseRow(config, config.method);
    row.epsilon_target = eps;
    switch (config.method) {
      case Method::kLangevin:
      case Method::kRetrain: {
        absl::StatusOr<SigmaCalibration> cal =
            BinarySearchSigma(eps, setup.delta, config.k_budget,
                              MakeContext(config, setup, 1.0), config.batch);
        if (!cal.ok()) {
          CERTUN_RETURN_IF_ERROR(RecordFailure(cal.status(), row, &table));
          continue;
        }
        row.sigma = cal->sigma;
        row.k_total = cal->steps;
        row.epsilon_achieved =
            SingleEpsilonOrNan(MakeContext(config, setup, cal->sigma),
                               config.batch, cal->steps, setup.delta);
        break;
      }
      case Method::kD2DThm9: {
        absl::StatusOr<double> sigma =
            D2DSigmaThm9(eps, setup.delta, config.k_budget, pc.lipschitz,
                         pc.strong_convexity, pc.n, pc.smoothness);
        if (!sigma.ok()) {
          CERTUN_RETURN_IF_ERROR(RecordFailure(sigma.status(), row, &table));
          continue;
        }
        row.sigma = *sigma;
        row.k_total = config.k_budget;
        row.epsilon_achieved = eps;
        break;
      }
      case Method::kD2DThm28: {
        absl::StatusOr<D2DThm28> cal =
            D2DSigmaThm28(eps, setup.delta, pc.lipschitz, pc.strong_convexity,
                          pc.n, pc.smoothness, pc.dim);
        if (!cal.ok()) {
          CERTUN_RETURN_IF_ERROR(RecordFailure(cal.status(), row, &table));
          continue;
        }
        row.sigma = cal->sigma;
        row.k_total = cal->iters;
        row.epsilon_achieved = eps;
        break;
      }
    }
    row.wall_ms = timer.ElapsedMs();
    table.plot.rows.push_back(
        PlotRow{row.method, {eps, *row.sigma, static_cast<double>(*row.k_total)}});
    table.rows.push_back(row);
  }
  return table;
}

absl::StatusOr<ResultTable> RunUnlearnOne(const ExperimentConfig& config) {
  CERTUN_ASSIGN_OR_RETURN(ExperimentSetup setup, PrepareSetup(config, true));
  const ProblemConstants& pc = setup.constants;
  const int64_t removals = config.batch;
  ResultTable table;
  table.plot.columns = {"epsilon_target", "acc_mean", "acc_std"};

  std::optional<ModelParams> d2d_trained;
  if (config.method == Method::kD2DThm9 || config.method == Method::kD2DThm28) {
    d2d_trained = D2DTrained(config, setup);
  }

  for (double eps : config.eps_targets) {
    RowTimer timer(config.wall_clock);
    ResultRow row = BaseRow(config, config.method);
    row.epsilon_target = eps;
    std::function<absl::StatusOr<double>(int64_t)> trial;

    if (config.method == Method::kLangevin || config.method == Method::kRetrain) {
      absl::StatusOr<SigmaCalibration> cal =
          BinarySearchSigma(eps, setup.delta, config.k_budget,
                            MakeContext(config, setup, 1.0), removals);
      if (!cal.ok()) {
        CERTUN_RETURN_IF_ERROR(RecordFailure(cal.status(), row, &table));
        continue;
      }
      const double sigma = cal->sigma;
      row.sigma = sigma;
      if (config.method == Method::kLangevin) {
        const int64_t k = config.k_budget;
        row.k_total = k;
        row.epsilon_achieved = SingleEpsilonOrNan(
            MakeContext(config, setup, sigma), removals, k, setup.delta);
        trial = [&, sigma, k](int64_t t) {
          return RunLangevinTrial(config, setup, sigma, {k}, removals,
                                  removals, t);
        };
      } else {
        row.k_total = config.learn_iters;
        row.epsilon_achieved = 0.0;
        trial = [&, sigma](int64_t t) {
          return RunRetrainTrial(config, setup, sigma, removals, removals, t);
        };
      }
    } else {
      const bool thm9 = config.method == Method::kD2DThm9;
      int64_t iters = config.k_budget;
      absl::StatusOr<double> sigma;
      if (thm9) {
        sigma = D2DSigmaThm9(eps, setup.delta, iters, pc.lipschitz,
                             pc.strong_convexity, pc.n, pc.smoothness);
      } else {
        absl::StatusOr<D2DThm28> cal =
            D2DSigmaThm28(eps, setup.delta, pc.lipschitz, pc.strong_convexity,
                          pc.n, pc.smoothness, pc.dim);
        if (cal.ok()) {
          sigma = cal->sigma;
          iters = D2DRequestIters(*cal, 1, setup.delta, pc.dim, pc.smoothness,
                                  pc.strong_convexity);
        } else {
          sigma = cal.status();
        }
      }
      if (!sigma.ok()) {
        CERTUN_RETURN_IF_ERROR(RecordFailure(sigma.status(), row, &table));
        continue;
      }
      row.sigma = *sigma;
      row.k_total = iters;
      row.epsilon_achieved = eps;
      const double s = *sigma;
      trial = [&, s, iters, thm9](int64_t t) {
        return RunD2DTrial(config, setup, *d2d_trained, s, {iters}, thm9,
                           removals, removals, t);
      };
    }

    table.rows.push_back(row);
    const size_t index = table.rows.size() - 1;
    CERTUN_RETURN_IF_ERROR(RunTrials(config, &table, index, trial));
    table.rows[index].wall_ms = timer.ElapsedMs();
    table.plot.rows.push_back(PlotRow{
        row.method,
        {eps, *table.rows[index].acc_mean, *table.rows[index].acc_std}});
  }
  return table;
}

absl::StatusOr<ResultTable> RunSequential(const ExperimentConfig& config) {
  CERTUN_ASSIGN_OR_RETURN(ExperimentSetup setup, PrepareSetup(config, true));
  const ProblemConstants& pc = setup.constants;
  CERTUN_ASSIGN_OR_RETURN(
      std::vector<int64_t> sizes,
      SplitIntoBatches(config.total_removals, config.batch));
  const int64_t requests = static_cast<int64_t>(sizes.size());
  ResultTable table;
  table.plot.columns = {"epsilon_target", "request", "K", "K_cumulative"};

  std::optional<ModelParams> d2d_trained;
  if (config.method == Method::kD2DThm9 || config.method == Method::kD2DThm28) {
    d2d_trained = D2DTrained(config, setup);
  }

  for (double eps : config.eps_targets) {
    RowTimer timer(config.wall_clock);
    ResultRow row = BaseRow(config, config.method);
    row.epsilon_target = eps;
    std::vector<int64_t> steps;
    std::function<absl::StatusOr<double>(int64_t)> trial;

    switch (config.method) {
      case Method::kLangevin: {
        const double sigma = config.sigmas.front();
        const AccountingContext ctx = MakeContext(config, setup, sigma);
        absl::StatusOr<std::vector<int64_t>> ks = SequentialKSchedule(
            eps, setup.delta, ctx, config.total_removals, config.batch);
        if (!ks.ok()) {
          row.sigma = sigma;
          CERTUN_RETURN_IF_ERROR(RecordFailure(ks.status(), row, &table));
          continue;
        }
        steps = *ks;
        row.sigma = sigma;
        absl::StatusOr<RenyiBound> bound =
            SequentialBound(ctx, sizes, steps, requests);
        if (bound.ok()) {
          absl::StatusOr<DpConversion> dp = RdpToDp(*bound, setup.delta);
          if (dp.ok()) row.epsilon_achieved = dp->epsilon;
        }
        trial = [&, sigma, steps](int64_t t) {
          return RunLangevinTrial(config, setup, sigma, steps,
                                  config.total_removals, config.batch, t);
        };
        break;
      }
      case Method::kRetrain: {
        const double sigma = config.sigmas.front();
        row.sigma = sigma;
        row.epsilon_achieved = 0.0;
        steps.assign(sizes.size(), config.learn_iters);
        trial = [&, sigma](int64_t t) {
          return RunRetrainTrial(config, setup, sigma, config.total_removals,
                                 config.batch, t);
        };
        break;
      }
      case Method::kD2DThm9:
      case Method::kD2DThm28: {
        const bool thm9 = config.method == Method::kD2DThm9;
        absl::StatusOr<double> sigma;
        if (thm9) {
          sigma = D2DSigmaThm9(eps, setup.delta, config.k_budget, pc.lipschitz,
                               pc.strong_convexity, pc.n, pc.smoothness);
          steps.assign(sizes.size(), config.k_budget);
        } else {
          absl::StatusOr<D2DThm28> cal = D2DSigmaThm28(
              eps, setup.delta, pc.lipschitz, pc.strong_convexity, pc.n,
              pc.smoothness, pc.dim);
          if (cal.ok()) {
            sigma = cal->sigma;
            for (int64_t i = 1; i <= requests; ++i) {
              steps.push_back(D2DRequestIters(*cal, i, setup.delta, pc.dim,
                                              pc.smoothness,
                                              pc.strong_convexity));
            }
          } else {
            sigma = cal.status();
          }
        }
        if (!sigma.ok()) {
          CERTUN_RETURN_IF_ERROR(RecordFailure(sigma.status(), row, &table));
          continue;
        }
        row.sigma = *sigma;
        row.epsilon_achieved = eps;
        const double s = *sigma;
        trial = [&, s, steps, thm9](int64_t t) {
          return RunD2DTrial(config, setup, *d2d_trained, s, steps, thm9,
                             config.total_removals, config.batch, t);
        };
        break;
      }
    }

    row.k_total = std::accumulate(steps.begin(), steps.end(), int64_t{0});
    int64_t cumulative = 0;
    for (size_t i = 0; i < steps.size(); ++i) {
      cumulative += steps[i];
      table.plot.rows.push_back(
          PlotRow{row.method,
                  {eps, static_cast<double>(i + 1),
                   static_cast<double>(steps[i]),
                   static_cast<double>(cumulative)}});
    }
    table.rows.push_back(row);
    const size_t index = table.rows.size() - 1;
    CERTUN_RETURN_IF_ERROR(RunTrials(config, &table, index, trial));
    table.rows[index].wall_ms = timer.ElapsedMs();
  }
  return table;
}

absl::StatusOr<ResultTable> RunSweep(const ExperimentConfig& config) {
  CERTUN_ASSIGN_OR_RETURN(ExperimentSetup setup, PrepareSetup(config, true));
  const std::vector<double>& sigmas =
      config.sigmas.empty() ? kDefaultSweepSigmas : config.sigmas;
  const double eps = config.eps_targets.front();
  const int64_t removals = config.batch;
  ResultTable table;
  table.plot.columns = {"sigma", "epsilon0", "K", "acc_mean", "acc_std"};

  for (double sigma : sigmas) {
    RowTimer timer(config.wall_clock);
    ResultRow row = BaseRow(config, Method::kLangevin);
    row.sigma = sigma;
    row.epsilon_target = eps;
    const AccountingContext ctx = MakeContext(config, setup, sigma);
    const double eps0 = SingleEpsilonOrNan(ctx, removals, 0, setup.delta);

    absl::StatusOr<int64_t> k = FindMinK(eps, setup.delta, ctx, removals);
    if (!k.ok()) {
      CERTUN_RETURN_IF_ERROR(RecordFailure(k.status(), row, &table));
      table.plot.rows.push_back(PlotRow{
          row.method, {sigma, eps0, std::nan(""), std::nan(""), std::nan("")}});
      continue;
    }
    row.k_total = *k;
    row.epsilon_achieved = SingleEpsilonOrNan(ctx, removals, *k, setup.delta);
    table.rows.push_back(row);
    const size_t index = table.rows.size() - 1;
    const int64_t steps = *k;
    CERTUN_RETURN_IF_ERROR(RunTrials(
        config, &table, index, [&, sigma, steps](int64_t t) {
          return RunLangevinTrial(config, setup, sigma, {steps}, removals,
                                  removals, t);
        }));
    table.rows[index].wall_ms = timer.ElapsedMs();
    table.plot.rows.push_back(
        PlotRow{row.method,
                {sigma, eps0, static_cast<double>(steps),
                 *table.rows[index].acc_mean, *table.rows[index].acc_std}});
  }
  return table;
}

absl::StatusOr<ResultTable> RunD2DReport(const ExperimentConfig& config) {
  CERTUN_ASSIGN_OR_RETURN(ExperimentSetup setup, PrepareSetup(config, false));
  const ProblemConstants& pc = setup.constants;
  ResultTable table;
  table.plot.columns = {"epsilon_target", "request", "iters", "iters_cumulative"};
  for (double eps : config.eps_targets) {
    RowTimer timer(config.wall_clock);
    ResultRow row = BaseRow(config, config.method);
    row.epsilon_target = eps;
    row.epsilon_achieved = eps;
    if (config.method == Method::kD2DThm9) {
      absl::StatusOr<double> sigma =
          D2DSigmaThm9(eps, setup.delta, config.k_budget, pc.lipschitz,
                       pc.strong_convexity, pc.n, pc.smoothness);
      if (!sigma.ok()) {
        CERTUN_RETURN_IF_ERROR(RecordFailure(sigma.status(), row, &table));
        continue;
      }
      row.sigma = *sigma;
      row.k_total = config.k_budget;
    } else {
      absl::StatusOr<D2DThm28> cal =
          D2DSigmaThm28(eps, setup.delta, pc.lipschitz, pc.strong_convexity,
                        pc.n, pc.smoothness, pc.dim);
      if (!cal.ok()) {
        CERTUN_RETURN_IF_ERROR(RecordFailure(cal.status(), row, &table));
        continue;
      }
      row.sigma = cal->sigma;
      int64_t cumulative = 0;
      for (int64_t i = 1; i <= config.total_removals; ++i) {
        const int64_t it = D2DRequestIters(*cal, i, setup.delta, pc.dim,
                                           pc.smoothness, pc.strong_convexity);
        cumulative += it;
        table.plot.rows.push_back(PlotRow{
            row.method,
            {eps, static_cast<double>(i), static_cast<double>(it),
             static_cast<double>(cumulative)}});
      }
      row.k_total = cumulative;
    }
    row.wall_ms = timer.ElapsedMs();
    table.rows.push_back(row);
  }
  return table;
}

absl::StatusOr<ResultTable> RunEvaluate(const ExperimentConfig& config) {
  CERTUN_ASSIGN_OR_RETURN(ExperimentSetup setup, PrepareSetup(config, true));
  const double sigma = config.sigmas.front();
  RowTimer timer(config.wall_clock);
  ResultTable table;
  ResultRow row = BaseRow(config, config.method);
  row.sigma = sigma;
  row.k_total = 0;
  std::function<absl::StatusOr<double>(int64_t)> trial;
  std::optional<ModelParams> d2d_trained;
  if (config.method == Method::kD2DThm9 || config.method == Method::kD2DThm28) {
    d2d_trained = D2DTrained(config, setup);
    trial = [&](int64_t t) -> absl::StatusOr<double> {
      Rng rng(config.seed, TrialStream(static_cast<uint64_t>(t),
                                       StreamPurpose::kUnlearn));
      const D2DState state = D2DInitialState(*d2d_trained, sigma, false, rng);
      return TestAccuracy(setup, state.published.weights);
    };
  } else {
    row.epsilon_achieved = SingleEpsilonOrNan(
        MakeContext(config, setup, sigma), config.batch, 0, setup.delta);
    trial = [&](int64_t t) -> absl::StatusOr<double> {
      CERTUN_ASSIGN_OR_RETURN(
          ModelParams model,
          TrainFresh(config, setup, *setup.train, sigma,
                     TrialStream(static_cast<uint64_t>(t),
                                 StreamPurpose::kLearn)));
      return TestAccuracy(setup, model.weights);
    };
  }
  table.rows.push_back(row);
  CERTUN_RETURN_IF_ERROR(RunTrials(config, &table, 0, trial));
  table.rows[0].wall_ms = timer.ElapsedMs();
  table.plot.columns = {"sigma", "acc_mean", "acc_std"};
  table.plot.rows.push_back(PlotRow{
      table.rows[0].method,
      {sigma, *table.rows[0].acc_mean, *table.rows[0].acc_std}});
  return table;
}

absl::StatusOr<ResultTable> RunExperiment(const ExperimentConfig& config) {
  CERTUN_RETURN_IF_ERROR(ValidateConfig(config));
  switch (config.command) {
    case Command::kCalibrateSigma:
      return RunCalibrateSigma(config);
    case Command::kUnlearnOne:
      return RunUnlearnOne(config);
    case Command::kSequential:
      return RunSequential(config);
    case Command::kSweep:
      return RunSweep(config);
    case Command::kD2D:
      return RunD2DReport(config);
    case Command::kEvaluate:
      return RunEvaluate(config);
  }
  return absl::InternalError("unknown command");
}

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return 0;
  if (IsCalibrationFailure(status)) return 2;
  if (HasErrorKind(status, ErrorKind::kIo) ||
      HasErrorKind(status, ErrorKind::kParse)) {
    return 3;
  }
  if (HasErrorKind(status, ErrorKind::kInvalidConfig) ||
      absl::IsInvalidArgument(status)) {
    return 4;
  }
  return 1;
}

void ConfigureLogging() {
  auto logger = spdlog::get("certun");
  if (!logger) logger = spdlog::stderr_color_mt("certun");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("UNLEARN_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::err);
  }
}

}  // namespace certun
