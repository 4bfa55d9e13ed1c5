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

// Command-line driver for the unlearning experiments.
//
//   certun <command> [flags]
//
// Commands: calibrate-sigma, unlearn-one, sequential, sweep, d2d, evaluate.
// Any flag may also be set in a key=value file given with --config; flags on
// the command line win.

#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "certun/harness/config.h"
#include "certun/harness/experiments.h"
#include "certun/harness/results.h"
#include "certun/status.h"
#include "spdlog/spdlog.h"

namespace {

struct RawFlags {
  std::string preset = "synthetic";
  std::string method = "langevin";
  std::string regime = "strongly-convex";
  std::string sigma;
  std::string eps;
  std::optional<double> delta;
  std::optional<double> lambda;
};

int Fail(const absl::Status& status) {
  std::fprintf(stderr, "certun: %s\n", std::string(status.message()).c_str());
  return certun::ExitCodeFor(status);
}

}  // namespace

int main(int argc, char** argv) {
  certun::ConfigureLogging();
  certun::ExperimentConfig config;
  RawFlags raw;

  CLI::App app{"Certified unlearning experiments for noisy gradient descent"};
  app.set_config("--config", "", "key=value file setting any flag");
  app.require_subcommand(1);

  app.add_option("--preset", raw.preset,
                 "mnist38, cifar10-binary, cifar10-multi or synthetic");
  app.add_option("--method", raw.method,
                 "langevin, d2d_thm9, d2d_thm28 or retrain");
  app.add_option("--regime", raw.regime,
                 "strongly-convex, convex or non-convex");
  app.add_option("--sigma", raw.sigma, "noise std, or a comma list for sweep");
  app.add_option("--eps", raw.eps, "comma list of target epsilons");
  app.add_option("--delta", raw.delta, "delta (default: preset value or 1/n)");
  app.add_option("--k-budget", config.k_budget, "unlearning step budget");
  app.add_option("--batch", config.batch, "points removed per request");
  app.add_option("--total-removals", config.total_removals,
                 "points removed over a sequence");
  app.add_option("--trials", config.trials, "independent trials");
  app.add_option("--seed", config.seed, "master seed");
  app.add_option("--out", config.out_path, "results CSV");
  app.add_option("--plot", config.plot_path, "plot-data CSV");
  app.add_option("--data", config.data_path, "training data CSV");
  app.add_option("--test-data", config.test_data_path, "test data CSV");
  app.add_option("--iters", config.learn_iters, "learning iterations T");
  app.add_option("--radius", config.radius, "projection radius R");
  app.add_option("--lambda", raw.lambda, "l2 regularization");
  app.add_option("--init-mean", config.init_mean, "initialization mean");
  app.add_option("--separation", config.synthetic_separation,
                 "synthetic cluster separation");
  app.add_flag("--wall-clock", config.wall_clock,
               "fill the wall_ms column (breaks byte-identical output)");
  bool keep_raw_replacements = false;
  app.add_flag("--raw-replacements", keep_raw_replacements,
               "do not renormalize replacement features");

  for (const char* name : {"calibrate-sigma", "unlearn-one", "sequential",
                           "sweep", "d2d", "evaluate"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    std::fprintf(stderr, "certun: %s\n", e.what());
    return 3;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  absl::StatusOr<certun::Command> cmd = certun::ParseCommand(command);
  if (!cmd.ok()) return Fail(cmd.status());
  config.command = *cmd;
  config.preset = raw.preset;
  absl::StatusOr<certun::Method> method = certun::ParseMethod(raw.method);
  if (!method.ok()) return Fail(method.status());
  config.method = *method;
  absl::StatusOr<certun::Regime> regime = certun::ParseRegime(raw.regime);
  if (!regime.ok()) {
    return Fail(certun::InvalidConfigError(regime.status().message()));
  }
  config.regime = *regime;
  if (!raw.sigma.empty()) {
    absl::StatusOr<std::vector<double>> s = certun::ParseNumberList(raw.sigma);
    if (!s.ok()) return Fail(s.status());
    config.sigmas = *s;
  }
  if (!raw.eps.empty()) {
    absl::StatusOr<std::vector<double>> e = certun::ParseNumberList(raw.eps);
    if (!e.ok()) return Fail(e.status());
    config.eps_targets = *e;
  }
  config.delta = raw.delta;
  config.lambda = raw.lambda;
  config.renormalize_replacements = !keep_raw_replacements;
  if (config.out_path.empty()) {
    return Fail(certun::InvalidConfigError("--out is required"));
  }

  absl::StatusOr<certun::ResultTable> table = certun::RunExperiment(config);
  if (!table.ok()) return Fail(table.status());
  if (absl::Status s =
          certun::WriteResults(*table, config.out_path, config.plot_path);
      !s.ok()) {
    return Fail(s);
  }
  if (table->infeasible_rows > 0) {
    spdlog::error("{} row(s) could not be calibrated", table->infeasible_rows);
    return 2;
  }
  return 0;
}
