// Copyright 2026 The ergodrive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ergodrive: command-line front end for the work-extraction experiments.
//
//   ergodrive work-curve  [options]
//   ergodrive gamma-sweep [options]
//   ergodrive beta-scan   [options]
//   ergodrive triad       [options]
//   ergodrive preset <fig1a|fig1b|fig1c|fig2|fig3> [options]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numerical failure.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "ergodrive/experiment.hpp"
#include "ergodrive/parallel.hpp"

namespace {

using namespace ergodrive;

struct SubcommandOptions {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

const std::map<std::string, std::string>& key_help() {
  static const std::map<std::string, std::string> help{
      {"r", "Bloch radius of the initial state"},
      {"theta0", "polar angle of the initial state (accepts pi/2 etc.)"},
      {"phi0", "azimuth of the initial state"},
      {"omega-max", "trace-norm energy budget of the drive"},
      {"noise", "comma list of none,adc,pdc,dpc,attractor (or all, markovian)"},
      {"gamma", "decay rate of the Markovian channels"},
      {"zeta", "attractor strength"},
      {"psi", "attractor state angle: cos(psi)|0> + sin(psi)|1>"},
      {"beta", "pin the drive to the plane family member beta"},
      {"dt", "integration step"},
      {"t-max", "integration horizon (default 10, or 20 with attractor noise)"},
      {"record-stride", "steps between recorded samples"},
      {"gamma-grid", "explicit comma list of gamma values"},
      {"gamma-min", "first gamma of the sweep grid"},
      {"gamma-max", "last gamma of the sweep grid"},
      {"gamma-step", "gamma grid spacing"},
      {"beta-min", "first beta of the drive grid"},
      {"beta-max", "last beta of the drive grid"},
      {"beta-points", "number of beta grid points"},
      {"refine", "golden-section refinement of beta* (true/false)"},
      {"output", "output file, directory for presets, or - for stdout"},
      {"format", "csv or json"},
      {"threads", "worker threads (0 = ERGODRIVE_THREADS or auto)"},
  };
  return help;
}

void add_config_options(CLI::App* sub, SubcommandOptions& opts) {
  sub->add_option("--config,-c", opts.config_file, "flat key = value configuration file");
  for (const auto& key : config_keys()) {
    std::string flag = "--" + key;
    if (key == "output") flag += ",-o";
    opts.options[key] = sub->add_option(flag, opts.values[key], key_help().at(key));
  }
}

ExperimentConfig resolve(const SubcommandOptions& opts) {
  ExperimentConfig cfg;
  cfg.threads = threads_from_env();
  if (!opts.config_file.empty()) apply_config_file(cfg, opts.config_file);
  for (const auto& [key, option] : opts.options) {
    if (option->count() > 0) apply_setting(cfg, key, opts.values.at(key));
  }
  const bool attractor = std::find(cfg.noise.begin(), cfg.noise.end(), NoiseKind::attractor) != cfg.noise.end();
  if (attractor && cfg.zeta < 1.0) std::cerr << "ergodrive: warning: zeta = " << cfg.zeta << " is below 1\n";
  return cfg;
}

int emit(const CommandResult& result, const ExperimentConfig& cfg, bool as_directory) {
  std::cerr << result.summary;
  if (as_directory && cfg.output != "-") std::filesystem::create_directories(cfg.output);
  write_documents(result.documents, output_paths(cfg.output, result.documents, as_directory), std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-constrained work extraction from driven, noisy qubits"};
  app.require_subcommand(1);

  SubcommandOptions work, gamma, beta, triad, preset;
  std::string preset_name;

  auto* work_cmd = app.add_subcommand("work-curve", "W(t) trajectories for each selected noise kind");
  add_config_options(work_cmd, work);
  auto* gamma_cmd = app.add_subcommand("gamma-sweep", "operational ergotropy triad across decay rates");
  add_config_options(gamma_cmd, gamma);
  auto* beta_cmd = app.add_subcommand("beta-scan", "per-drive work maximum and time across the beta family");
  add_config_options(beta_cmd, beta);
  auto* triad_cmd = app.add_subcommand("triad", "optimal (W_O, t*, beta*) for each selected noise kind");
  add_config_options(triad_cmd, triad);
  auto* preset_cmd = app.add_subcommand("preset", "reproduce a figure's data in one command");
  preset_cmd->add_option("name", preset_name, "fig1a, fig1b, fig1c, fig2 or fig3")->required();
  add_config_options(preset_cmd, preset);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*work_cmd) {
      const auto cfg = resolve(work);
      return emit(cmd_work_curve(cfg), cfg, false);
    }
    if (*gamma_cmd) {
      const auto cfg = resolve(gamma);
      return emit(cmd_gamma_sweep(cfg), cfg, false);
    }
    if (*beta_cmd) {
      const auto cfg = resolve(beta);
      return emit(cmd_beta_scan(cfg), cfg, false);
    }
    if (*triad_cmd) {
      const auto cfg = resolve(triad);
      return emit(cmd_triad(cfg), cfg, false);
    }
    if (*preset_cmd) {
      auto cfg = resolve(preset);
      if (!preset.options.at("output")->count() && cfg.output == "-") cfg.output = ".";
      return emit(cmd_preset(preset_name, cfg), cfg, true);
    }
  } catch (const Error& e) {
    std::cerr << "ergodrive: " << e.what() << "\n";
    return e.kind() == ErrorKind::numerical_failure ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "ergodrive: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
