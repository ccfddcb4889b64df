// Copyright 2026 The qwalk Authors
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

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qwalk/experiments.hpp"

namespace {

struct Overrides {
  std::string config;
  std::map<std::string, std::string> values;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "key=value config file");
  auto opt = [&](const char* flag, const char* key, const char* help) {
    sub->add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.values[key] = v; }, help);
  };
  opt("--out", "out_dir", "output directory");
  opt("--name", "name", "output basename");
  opt("--coin", "coin", "hadamard|iswap|dft|grover|single-hadamard");
  opt("--theta", "theta", "root-iSWAP angle");
  opt("--init", "init", "initial coin state c1|c2|c3");
  opt("--delta", "delta", "phase step");
  opt("--steps", "steps", "number of walk steps");
  opt("--walker", "walker", "walker whose marginal is reported (1-based)");
  opt("--fit-window", "fit_window", "scaling fit window a:b");
  opt("--fock-dim", "fock_dim", "cavity Fock truncation");
  opt("--chi", "chi", "dispersive coupling");
  opt("--kappa", "kappa", "cavity loss rate (one value or k1,k2)");
  opt("--gamma", "gamma", "qubit dephasing rate (one value or g1,g2)");
  opt("--dt", "dt", "integrator step");
  opt("--coin-duration", "coin_duration", "dissipation time per coin pulse");
  opt("--grid", "grid", "phase grid size");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-walker quantum walk simulator"};
  app.set_version_flag("--version", std::string(qwalk::kVersion));
  app.require_subcommand(1);

  Overrides o;
  std::string preset;
  const std::map<std::string, std::string> modes{
      {"walk", "ideal-walk"},   {"noisy-walk", "noisy-walk"}, {"afd", "afd"},
      {"synth-check", "synth-check"}, {"baseline", "classical-baseline"}, {"sweep", "sweep"},
  };
  std::map<CLI::App*, std::string> sub_mode;
  for (const auto& [cmd, mode] : modes) {
    auto* sub = app.add_subcommand(cmd, "run mode " + mode);
    add_common(sub, o);
    sub_mode[sub] = mode;
  }
  auto* preset_cmd = app.add_subcommand("preset", "reproduce a stored experiment");
  preset_cmd->add_option("which", preset, "table1|fig2|fig3")
      ->required()
      ->check(CLI::IsMember({"table1", "fig2", "fig3"}));
  add_common(preset_cmd, o);

  CLI11_PARSE(app, argc, argv);

  std::string mode;
  for (const auto& [sub, m] : sub_mode) {
    if (sub->parsed()) mode = m;
  }
  if (preset_cmd->parsed()) mode = "preset-" + preset;

  try {
    qwalk::ExperimentConfig config;
    if (!o.config.empty()) {
      config = qwalk::load_config(o.config, mode);
    } else {
      config.set("mode", mode);
    }
    for (const auto& [k, v] : o.values) config.set(k, v);
    return qwalk::run(config, std::cout);
  } catch (const qwalk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
