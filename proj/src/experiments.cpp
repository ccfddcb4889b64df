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

#include "qwalk/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

namespace qwalk {

namespace {

const std::vector<std::string> kModes{"ideal-walk",   "noisy-walk",    "afd",
                                      "synth-check",  "classical-baseline", "sweep",
                                      "preset-table1", "preset-fig2",  "preset-fig3"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto t = trim(v);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw Error(ErrorCode::ConfigError, "key '" + key + "': not a number: '" + v + "'");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto t = trim(v);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw Error(ErrorCode::ConfigError, "key '" + key + "': not an integer: '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  const auto t = trim(v);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw Error(ErrorCode::ConfigError, "key '" + key + "': not a boolean: '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_double(key, item));
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F f) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + f(xs[i]);
  return s;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }
std::string fmt_opt(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& config) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
  out << "# qwalk run manifest\n";
  out << "qwalk_version=" << kVersion << "\n";
  for (const auto& [k, v] : config.to_key_values()) out << k << "=" << v << "\n";
}

std::optional<ScalingFit> try_fit(const SigmaSeries& series, int fit_min, int fit_max) {
  try {
    return scaling_exponent(series, fit_min, fit_max);
  } catch (const Error& e) {
    std::cerr << "warning: no fit for window " << fit_min << ":" << fit_max << ": " << e.what()
              << "\n";
    return std::nullopt;
  }
}

ResultRow fit_row(const std::string& experiment, const std::optional<ScalingFit>& fit) {
  ResultRow r;
  r.experiment = experiment;
  if (fit) {
    r.slope = fit->regression.slope;
    r.slope_stderr = fit->regression.slope_stderr;
    r.fit_min = fit->n_min;
    r.fit_max = fit->n_max;
  }
  return r;
}

std::vector<ResultRow> open_rows(const std::string& experiment, const std::string& coin,
                                 const std::string& init, const OpenSystemConfig& oc,
                                 const OpenRunResult& result) {
  std::vector<ResultRow> rows;
  for (const auto& rec : result.trace.records) {
    ResultRow r;
    r.experiment = experiment;
    r.coin = coin;
    r.init = init;
    r.kappa = oc.kappa[0];
    r.gamma = oc.gamma[0];
    r.steps = rec.step;
    r.sigma = rec.sigma;
    r.afd = rec.afd;
    if (!rec.sigma) r.note = "unbounded";
    rows.push_back(r);
  }
  if (result.fit) {
    ResultRow r = fit_row(experiment, result.fit);
    r.coin = coin;
    r.init = init;
    r.kappa = oc.kappa[0];
    r.gamma = oc.gamma[0];
    if (result.trace.truncation_suspect) r.note = "truncation-suspect";
    rows.push_back(r);
  }
  return rows;
}

int guard_status(const std::vector<OpenRunResult>& results, std::ostream& log) {
  for (const auto& r : results) {
    if (r.trace.truncation_suspect) {
      log << "guard: " << to_string(ErrorCode::TruncationSuspect)
          << " (population leaked into the top Fock levels)\n";
      return 2;
    }
  }
  return 0;
}

int run_walk_like(const ExperimentConfig& c, bool classical, std::vector<ResultRow>& rows,
                  std::ostream& log) {
  const auto [fmin, fmax] = c.fit_window();
  const int n_max = c.resolved_steps();
  SigmaSeries series;
  const std::string experiment = classical ? "baseline" : "walk";
  std::string coin_name = classical ? "classical" : c.coin;
  if (classical) {
    series = classical_sigma_series(c.delta, n_max);
  } else {
    series = sigma_series(c.walk_config(), c.coin_spec(), c.walker - 1, n_max);
  }
  for (const auto& e : series.entries) {
    ResultRow r;
    r.experiment = experiment;
    r.coin = coin_name;
    r.init = classical ? "" : c.resolved_init();
    r.steps = e.steps;
    r.sigma = e.sigma;
    if (!e.sigma) r.note = "unbounded";
    rows.push_back(r);
  }
  const auto fit = n_max >= 1 ? try_fit(series, fmin, fmax) : std::nullopt;
  if (fit) {
    ResultRow r = fit_row(experiment, fit);
    r.coin = coin_name;
    r.init = classical ? "" : c.resolved_init();
    rows.push_back(r);
    log << experiment << " " << coin_name << " slope=" << format_number(fit->regression.slope)
        << " +- " << format_number(fit->regression.slope_stderr) << " (N=" << fmin << ".." << fmax
        << ")\n";
  }
  return 0;
}

TraceOptions trace_options(const ExperimentConfig& c) {
  TraceOptions o;
  o.grid_size = c.grid;
  o.check_positivity = c.check_positivity && c.fock_dim <= 16;
  return o;
}

int run_open_mode(const ExperimentConfig& c, std::vector<ResultRow>& rows, std::ostream& log) {
  const auto [fmin, fmax] = c.fit_window();
  const OpenSystemConfig oc = c.open_config();
  const OpenRunResult result = run_open(oc, fmin, fmax, trace_options(c));
  const std::string experiment = c.mode == "afd" ? "afd" : "noisy-walk";
  auto r = open_rows(experiment, c.coin, c.resolved_init(), oc, result);
  rows.insert(rows.end(), r.begin(), r.end());
  const auto& last = result.trace.records.back();
  log << experiment << " N=" << last.step << " afd=" << format_number(last.afd);
  if (result.fit) log << " slope=" << format_number(result.fit->regression.slope);
  log << "\n";
  return guard_status({result}, log);
}

struct GridPoint {
  std::string label;
  std::string coin;
  std::string init;
  OpenSystemConfig config;
};

int run_grid(const ExperimentConfig& c, const std::vector<GridPoint>& points,
             std::vector<ResultRow>& rows, std::ostream& log) {
  const auto [fmin, fmax] = c.fit_window();
  std::vector<OpenSystemConfig> configs;
  for (const auto& p : points) configs.push_back(p.config);
  const auto results = run_open_batch(configs, fmin, fmax, trace_options(c));
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto r = open_rows(points[i].label, points[i].coin, points[i].init, points[i].config, results[i]);
    rows.insert(rows.end(), r.begin(), r.end());
    log << points[i].label << " coin=" << points[i].coin << " init=" << points[i].init
        << " kappa=" << format_number(points[i].config.kappa[0])
        << " gamma=" << format_number(points[i].config.gamma[0]);
    if (results[i].fit) log << " slope=" << format_number(results[i].fit->regression.slope);
    log << " afd(N=" << results[i].trace.records.back().step
        << ")=" << format_number(results[i].trace.records.back().afd) << "\n";
  }
  return guard_status(results, log);
}

GridPoint make_point(const ExperimentConfig& c, const std::string& label, const std::string& coin,
                     const std::string& init, double kappa, double gamma) {
  ExperimentConfig local = c;
  local.coin = coin;
  local.init = init;
  local.kappa = {kappa, kappa};
  local.gamma = {gamma, gamma};
  return {label, coin, init, local.open_config()};
}

int run_sweep(const ExperimentConfig& c, std::vector<ResultRow>& rows, std::ostream& log) {
  std::vector<GridPoint> points;
  for (const auto& coin : c.sweep_coin) {
    for (const auto& init : c.sweep_init) {
      for (double k : c.sweep_kappa) {
        for (double g : c.sweep_gamma) points.push_back(make_point(c, "sweep", coin, init, k, g));
      }
    }
  }
  return run_grid(c, points, rows, log);
}

int run_fig2(const ExperimentConfig& c, std::vector<ResultRow>& rows, std::ostream& log) {
  std::vector<GridPoint> points;
  for (double k : {0.0, 0.02, 0.05, 0.1}) points.push_back(make_point(c, "fig2a", "dft", "c3", k, 0.06));
  for (double g : {0.0, 0.02, 0.05, 0.1}) points.push_back(make_point(c, "fig2b", "dft", "c3", 0.01, g));
  return run_grid(c, points, rows, log);
}

int run_fig3(const ExperimentConfig& c, std::vector<ResultRow>& rows, std::ostream& log) {
  std::vector<GridPoint> points{
      make_point(c, "fig3-kappa", "dft", "c3", 0.01, 0.0),
      make_point(c, "fig3-gamma", "dft", "c3", 0.0, 0.02),
      make_point(c, "fig3-kappa", "dft", "c3", 0.1, 0.0),
      make_point(c, "fig3-gamma", "dft", "c3", 0.0, 0.2),
  };
  return run_grid(c, points, rows, log);
}

int run_table1(const ExperimentConfig& c, std::vector<ResultRow>& rows, std::ostream& log) {
  const auto [fmin, fmax] = c.fit_window();
  const auto cells = preset_table1(c.delta, c.resolved_steps(), fmin, fmax);
  log << "coin      c1                    c2                    c3\n";
  std::string line;
  std::string current;
  for (const auto& cell : cells) {
    ResultRow r;
    r.experiment = "table1";
    r.coin = cell.coin;
    r.init = cell.init;
    r.fit_min = fmin;
    r.fit_max = fmax;
    std::string text;
    if (cell.result.localization.localized) {
      r.note = "loc";
      text = "loc";
    } else if (cell.result.fit) {
      r.slope = cell.result.fit->regression.slope;
      r.slope_stderr = cell.result.fit->regression.slope_stderr;
      text = format_number(*r.slope).substr(0, 6) + "+-" + format_number(*r.slope_stderr).substr(0, 6);
    } else {
      r.note = "no-fit";
      text = "no-fit";
    }
    if (cell.result.fit && !r.slope) {
      r.slope = cell.result.fit->regression.slope;
      r.slope_stderr = cell.result.fit->regression.slope_stderr;
    }
    rows.push_back(r);
    if (cell.coin != current) {
      if (!line.empty()) log << line << "\n";
      current = cell.coin;
      line = cell.coin;
      line.resize(10, ' ');
    }
    text.resize(22, ' ');
    line += text;
  }
  if (!line.empty()) log << line << "\n";
  return 0;
}

int run_synth(const ExperimentConfig& c, std::vector<ResultRow>& rows, std::ostream& log) {
  std::vector<GateReport> reports{
      hadamard_pulse_check(c.device, c.n_bar),
      iswap_synthesis_check(c.theta, c.iswap_photons),
      dft_synthesis_check(c.dft_photons),
      grover_synthesis_check(c.grover_m, c.grover_chi_t),
  };
  for (const auto& rep : reports) {
    log << rep.to_text() << "\n";
    ResultRow r;
    r.experiment = "synth-check";
    r.coin = rep.name;
    r.note = "infidelity=" + format_number(rep.infidelity);
    rows.push_back(r);
    for (const auto& [k, v] : rep.notes) {
      ResultRow n;
      n.experiment = "synth-check";
      n.coin = rep.name;
      std::string value = v;
      std::replace(value.begin(), value.end(), ',', ';');
      n.note = k + "=" + value;
      rows.push_back(n);
    }
  }
  ResultRow dev;
  dev.experiment = "synth-check";
  dev.coin = "device";
  dev.note = "cavity_pull=" + format_number(cavity_pull(c.device)) +
             " rabi_frequency=" + format_number(rabi_frequency(c.device));
  rows.push_back(dev);
  log << "[device]\ncavity_pull = " << format_number(cavity_pull(c.device))
      << "\nrabi_frequency = " << format_number(rabi_frequency(c.device)) << "\n";
  return 0;
}

}  // namespace

bool ExperimentConfig::is_open_system_mode() const {
  return mode == "noisy-walk" || mode == "afd" || mode == "sweep" || mode == "preset-fig2" ||
         mode == "preset-fig3";
}

int ExperimentConfig::resolved_steps() const {
  return steps.value_or(is_open_system_mode() ? 10 : 25);
}

std::string ExperimentConfig::resolved_init() const {
  if (!init.empty()) return init;
  return is_open_system_mode() ? "c3" : "c1";
}

std::pair<int, int> ExperimentConfig::fit_window() const {
  const int n = resolved_steps();
  const int lo = fit_min.value_or(is_open_system_mode() ? 2 : 4);
  const int hi = fit_max.value_or(n);
  return {lo, hi};
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "mode") {
    if (std::find(kModes.begin(), kModes.end(), value) == kModes.end()) {
      throw Error(ErrorCode::ConfigError, "unknown mode '" + value + "'");
    }
    mode = value;
  } else if (key == "name") {
    name = value;
  } else if (key == "out_dir") {
    out_dir = value;
  } else if (key == "coin") {
    parse_coin_kind(value);
    coin = value;
  } else if (key == "theta") {
    theta = parse_double(key, value);
  } else if (key == "init") {
    initial_coin_state(value);
    init = value;
  } else if (key == "delta") {
    delta = parse_double(key, value);
  } else if (key == "steps") {
    steps = parse_int(key, value);
  } else if (key == "phi0") {
    const auto v = parse_double_list(key, value);
    if (v.size() == 1) phi0 = {v[0], v[0]};
    else if (v.size() == 2) phi0 = {v[0], v[1]};
    else throw Error(ErrorCode::ConfigError, "phi0 takes one or two values");
  } else if (key == "walker") {
    walker = parse_int(key, value);
  } else if (key == "fit_window") {
    const auto colon = value.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ConfigError, "fit_window must be a:b");
    fit_min = parse_int(key, value.substr(0, colon));
    fit_max = parse_int(key, value.substr(colon + 1));
  } else if (key == "fit_min") {
    fit_min = parse_int(key, value);
  } else if (key == "fit_max") {
    fit_max = parse_int(key, value);
  } else if (key == "fock_dim") {
    fock_dim = parse_int(key, value);
  } else if (key == "chi") {
    chi = parse_double(key, value);
  } else if (key == "kappa" || key == "gamma") {
    const auto v = parse_double_list(key, value);
    std::array<double, 2> pair{};
    if (v.size() == 1) pair = {v[0], v[0]};
    else if (v.size() == 2) pair = {v[0], v[1]};
    else throw Error(ErrorCode::ConfigError, key + " takes one or two values");
    (key == "kappa" ? kappa : gamma) = pair;
  } else if (key == "dt") {
    dt = parse_double(key, value);
  } else if (key == "coin_duration") {
    coin_duration = parse_double(key, value);
  } else if (key == "grid") {
    grid = parse_int(key, value);
  } else if (key == "check_positivity") {
    check_positivity = parse_bool(key, value);
  } else if (key == "omega_a") {
    device.omega_a = parse_double(key, value);
  } else if (key == "omega_c") {
    device.omega_c = parse_double(key, value);
  } else if (key == "omega_d") {
    device.omega_d = parse_double(key, value);
  } else if (key == "g") {
    device.g = parse_double(key, value);
  } else if (key == "epsilon") {
    device.epsilon = parse_double(key, value);
  } else if (key == "n_bar") {
    n_bar = parse_double(key, value);
  } else if (key == "grover_m") {
    grover_m = parse_int(key, value);
  } else if (key == "grover_chi_t") {
    grover_chi_t = parse_double(key, value);
  } else if (key == "dft_photons") {
    dft_photons = parse_int(key, value);
  } else if (key == "iswap_photons") {
    iswap_photons = parse_double(key, value);
  } else if (key == "sweep_kappa") {
    sweep_kappa = parse_double_list(key, value);
  } else if (key == "sweep_gamma") {
    sweep_gamma = parse_double_list(key, value);
  } else if (key == "sweep_coin") {
    sweep_coin = split_list(value);
    for (const auto& c : sweep_coin) parse_coin_kind(c);
  } else if (key == "sweep_init") {
    sweep_init = split_list(value);
    for (const auto& i : sweep_init) initial_coin_state(i);
  } else if (key == "qwalk_version") {
    // manifest echo
  } else {
    throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::to_key_values() const {
  const auto [fmin, fmax] = fit_window();
  auto num = [](double v) { return format_number(v); };
  return {
      {"mode", mode},
      {"name", output_name()},
      {"coin", coin},
      {"theta", num(theta)},
      {"init", resolved_init()},
      {"delta", num(delta)},
      {"steps", std::to_string(resolved_steps())},
      {"phi0", num(phi0[0]) + "," + num(phi0[1])},
      {"walker", std::to_string(walker)},
      {"fit_window", std::to_string(fmin) + ":" + std::to_string(fmax)},
      {"fock_dim", std::to_string(fock_dim)},
      {"chi", num(chi)},
      {"kappa", num(kappa[0]) + "," + num(kappa[1])},
      {"gamma", num(gamma[0]) + "," + num(gamma[1])},
      {"dt", num(dt)},
      {"coin_duration", num(coin_duration)},
      {"grid", std::to_string(grid)},
      {"check_positivity", check_positivity ? "true" : "false"},
      {"omega_a", num(device.omega_a)},
      {"omega_c", num(device.omega_c)},
      {"omega_d", num(device.omega_d)},
      {"g", num(device.g)},
      {"epsilon", num(device.epsilon)},
      {"n_bar", num(n_bar)},
      {"grover_m", std::to_string(grover_m)},
      {"grover_chi_t", num(grover_chi_t)},
      {"dft_photons", std::to_string(dft_photons)},
      {"iswap_photons", num(iswap_photons)},
      {"sweep_kappa", join(sweep_kappa, num)},
      {"sweep_gamma", join(sweep_gamma, num)},
      {"sweep_coin", join(sweep_coin, [](const std::string& s) { return s; })},
      {"sweep_init", join(sweep_init, [](const std::string& s) { return s; })},
  };
}

CoinSpec ExperimentConfig::coin_spec() const {
  CoinSpec spec;
  spec.kind = parse_coin_kind(coin);
  spec.theta = theta;
  spec.num_walkers = spec.kind == CoinKind::SingleHadamard ? 1 : 2;
  return spec;
}

WalkConfig ExperimentConfig::walk_config() const {
  const CoinSpec spec = coin_spec();
  WalkConfig w;
  w.num_walkers = spec.walkers();
  w.delta = delta;
  w.steps = resolved_steps();
  if (w.num_walkers == 2) {
    w.initial_coin = initial_coin_state(resolved_init());
    w.phi0 = {phi0[0], phi0[1]};
  } else {
    // single walker: one factor of the labelled product state
    const ComplexVector pair = initial_coin_state(resolved_init());
    w.initial_coin = pair.segment(0, 2);
    if (w.initial_coin.norm() == 0.0) w.initial_coin = pair.segment(2, 2);
    w.initial_coin.normalize();
    w.phi0 = {phi0[0]};
  }
  if (walker < 1 || walker > w.num_walkers) {
    throw Error(ErrorCode::ConfigError, "walker must be between 1 and " + std::to_string(w.num_walkers));
  }
  return w;
}

OpenSystemConfig ExperimentConfig::open_config() const {
  OpenSystemConfig o;
  o.fock_dim = fock_dim;
  o.chi = chi;
  o.delta_theta = delta;
  o.kappa = kappa;
  o.gamma = gamma;
  o.coin = coin_spec();
  o.initial_coin = initial_coin_state(resolved_init());
  o.initial_phase = phi0;
  o.steps = resolved_steps();
  o.dt = dt;
  o.coin_duration = coin_duration;
  o.validate();
  return o;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": bad section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    kv[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_key_values(ExperimentConfig& config, const std::map<std::string, std::string>& kv) {
  if (auto it = kv.find("mode"); it != kv.end()) config.set("mode", it->second);
  for (const auto& [k, v] : kv) {
    if (k.find('.') == std::string::npos && k != "mode") config.set(k, v);
  }
  const std::string prefix = config.mode + ".";
  for (const auto& [k, v] : kv) {
    if (k.rfind(prefix, 0) == 0) config.set(k.substr(prefix.size()), v);
  }
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::string& mode) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config " + path.string());
  ExperimentConfig c;
  auto kv = parse_key_values(in);
  if (!mode.empty()) kv["mode"] = mode;
  apply_key_values(c, kv);
  return c;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

std::string csv_header() {
  return "experiment,coin,init,kappa,gamma,N,sigma,afd,slope,slope_stderr,fit_min,fit_max,note";
}

std::string to_csv_line(const ResultRow& r) {
  std::string s;
  s += r.experiment + "," + r.coin + "," + r.init + ",";
  s += fmt_opt(r.kappa) + "," + fmt_opt(r.gamma) + "," + fmt_opt(r.steps) + ",";
  s += fmt_opt(r.sigma) + "," + fmt_opt(r.afd) + ",";
  s += fmt_opt(r.slope) + "," + fmt_opt(r.slope_stderr) + ",";
  s += fmt_opt(r.fit_min) + "," + fmt_opt(r.fit_max) + "," + r.note;
  return s;
}

void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
  out << csv_header() << "\n";
  for (const auto& r : rows) out << to_csv_line(r) << "\n";
}

IdealCellResult run_ideal_cell(const CoinSpec& coin, const std::string& init, double delta,
                               int n_max, int fit_min, int fit_max) {
  WalkConfig w;
  w.num_walkers = 2;
  w.delta = delta;
  w.initial_coin = initial_coin_state(init);
  w.steps = n_max;
  IdealCellResult r;
  r.series = sigma_series(w, coin, 0, n_max);
  r.localization = check_localization(r.series, fit_min, fit_max);
  if (!r.localization.zero_spread) {
    try {
      r.fit = scaling_exponent(r.series, fit_min, fit_max);
    } catch (const Error&) {
      r.fit.reset();
    }
  }
  return r;
}

OpenRunResult run_open(const OpenSystemConfig& config, int fit_min, int fit_max,
                       const TraceOptions& options) {
  OpenRunResult r;
  r.trace = trace_open_walk(config, options);
  r.fit = try_fit(r.trace.sigma_series(), fit_min, fit_max);
  return r;
}

std::vector<OpenRunResult> run_open_batch(const std::vector<OpenSystemConfig>& configs,
                                          int fit_min, int fit_max, const TraceOptions& options) {
  std::vector<OpenRunResult> results(configs.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < configs.size(); begin += workers) {
    const std::size_t end = std::min(configs.size(), begin + workers);
    std::vector<std::future<OpenRunResult>> futures;
    for (std::size_t i = begin; i < end; ++i) {
      futures.push_back(std::async(std::launch::async, [&, i] {
        return run_open(configs[i], fit_min, fit_max, options);
      }));
    }
    for (std::size_t i = begin; i < end; ++i) results[i] = futures[i - begin].get();
  }
  return results;
}

std::vector<Table1Cell> preset_table1(double delta, int n_max, int fit_min, int fit_max) {
  std::vector<Table1Cell> cells;
  for (const std::string coin : {"dft", "hadamard", "iswap", "grover"}) {
    for (const std::string init : {"c1", "c2", "c3"}) {
      CoinSpec spec;
      spec.kind = parse_coin_kind(coin);
      cells.push_back({coin, init, run_ideal_cell(spec, init, delta, n_max, fit_min, fit_max)});
    }
  }
  return cells;
}

int run(const ExperimentConfig& config, std::ostream& log) {
  try {
    std::vector<ResultRow> rows;
    int status = 0;
    const std::string& m = config.mode;
    if (m == "ideal-walk") status = run_walk_like(config, false, rows, log);
    else if (m == "classical-baseline") status = run_walk_like(config, true, rows, log);
    else if (m == "noisy-walk" || m == "afd") status = run_open_mode(config, rows, log);
    else if (m == "synth-check") status = run_synth(config, rows, log);
    else if (m == "sweep") status = run_sweep(config, rows, log);
    else if (m == "preset-table1") status = run_table1(config, rows, log);
    else if (m == "preset-fig2") status = run_fig2(config, rows, log);
    else if (m == "preset-fig3") status = run_fig3(config, rows, log);
    else throw Error(ErrorCode::ConfigError, "unknown mode '" + m + "'");

    std::filesystem::create_directories(config.out_dir);
    const std::string base = config.output_name();
    write_csv(config.out_dir / (base + ".csv"), rows);
    write_manifest(config.out_dir / (base + ".manifest.txt"), config);
    return status;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::StepTooLarge:
      case ErrorCode::TruncationSuspect:
        return 2;
      default:
        return 1;
    }
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qwalk
