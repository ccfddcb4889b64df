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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/gate_synthesis.hpp"
#include "qwalk/open_system.hpp"
#include "qwalk/phase_stats.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a run needs. Loaded from flat key=value text; `[mode]`
/// sections override top-level keys for that mode only.
struct ExperimentConfig {
  std::string mode = "ideal-walk";
  std::string name;  // output basename, defaults to the mode
  std::filesystem::path out_dir = ".";

  // walk
  std::string coin = "dft";
  double theta = 0.7853981633974483;
  std::string init;  // empty: c3 for open-system modes, c1 otherwise
  double delta = 0.8;
  std::optional<int> steps;  // empty: 10 for open-system modes, 25 otherwise
  std::array<double, 2> phi0{0.0, 0.0};
  int walker = 1;  // 1-based
  std::optional<int> fit_min;
  std::optional<int> fit_max;

  // open system
  int fock_dim = 16;
  double chi = 1.0;
  std::array<double, 2> kappa{0.0, 0.0};
  std::array<double, 2> gamma{0.0, 0.0};
  double dt = 0.01;
  double coin_duration = 0.0;
  int grid = 1024;
  bool check_positivity = true;

  // gate synthesis
  DeviceParams device;
  double n_bar = 1.0;
  int grover_m = 0;
  double grover_chi_t = 0.39269908169872414;
  int dft_photons = 4;
  double iswap_photons = 0.0;

  // sweep grid
  std::vector<double> sweep_kappa{0.0, 0.02, 0.05, 0.1};
  std::vector<double> sweep_gamma{0.06};
  std::vector<std::string> sweep_coin{"dft"};
  std::vector<std::string> sweep_init{"c3"};

  /// Sets one key; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  /// Resolved parameters in a stable order; feeding them back through
  /// set() reproduces this config.
  std::vector<std::pair<std::string, std::string>> to_key_values() const;

  std::string output_name() const { return name.empty() ? mode : name; }
  std::pair<int, int> fit_window() const;
  int resolved_steps() const;
  std::string resolved_init() const;
  bool is_open_system_mode() const;

  CoinSpec coin_spec() const;
  WalkConfig walk_config() const;
  OpenSystemConfig open_config() const;
};

/// Parses key=value text with optional [section] headers, '#' comments.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Applies top-level keys, then the keys of section `mode` (if any).
void apply_key_values(ExperimentConfig& config, const std::map<std::string, std::string>& kv);

ExperimentConfig load_config(const std::filesystem::path& path, const std::string& mode);

/// One CSV row; unset fields are written empty.
struct ResultRow {
  std::string experiment;
  std::string coin;
  std::string init;
  std::optional<double> kappa;
  std::optional<double> gamma;
  std::optional<int> steps;
  std::optional<double> sigma;
  std::optional<double> afd;
  std::optional<double> slope;
  std::optional<double> slope_stderr;
  std::optional<int> fit_min;
  std::optional<int> fit_max;
  std::string note;
};

/// 12 significant digits, '.' separator, locale independent.
std::string format_number(double v);
std::string csv_header();
std::string to_csv_line(const ResultRow& row);
void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);

struct IdealCellResult {
  SigmaSeries series;
  std::optional<ScalingFit> fit;
  LocalizationCheck localization;
};

/// Two-walker ideal walk for one coin and initial-coin label.
IdealCellResult run_ideal_cell(const CoinSpec& coin, const std::string& init, double delta,
                               int n_max, int fit_min, int fit_max);

struct OpenRunResult {
  OpenWalkTrace trace;
  std::optional<ScalingFit> fit;
};

OpenRunResult run_open(const OpenSystemConfig& config, int fit_min, int fit_max,
                       const TraceOptions& options = {});

/// Runs independent jobs concurrently and returns results in input order.
std::vector<OpenRunResult> run_open_batch(const std::vector<OpenSystemConfig>& configs,
                                          int fit_min, int fit_max, const TraceOptions& options);

struct Table1Cell {
  std::string coin;
  std::string init;
  IdealCellResult result;
};

std::vector<Table1Cell> preset_table1(double delta, int n_max, int fit_min, int fit_max);

/// Executes `config.mode`, writes <name>.csv and <name>.manifest.txt into
/// out_dir and a human-readable summary to `log`. Returns the exit status:
/// 0 success, 1 configuration error, 2 numerical guard tripped.
int run(const ExperimentConfig& config, std::ostream& log);

}  // namespace qwalk
