#pragma once

#include "parspec/contour.hpp"
#include "parspec/cutoff.hpp"
#include "parspec/symbol.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace parspec {

// Resolved run configuration. Every field has a default; a config file only
// overrides. Tables: run, model, grid, cutoff, contour, profile, spectrum,
// scan, evolve, fit, norms, counterexample. Unknown tables or keys are errors.
struct RunConfig {
  // [run]
  std::string command;
  std::uint64_t seed = 1;
  std::string out = "out";
  int threads = 0;  // 0 leaves the OpenMP default

  // [model]
  std::string system = "cns";  // cns | dwe
  ModelParams cns;
  DweParams dwe;

  // [grid] cubic, dimension taken from the model
  int points = 64;
  double length = 40.0 * kPi;

  CutoffSpec cutoff;  // [cutoff]

  // [contour]
  ContourSpec contour;
  std::vector<double> contour_times{0.1, 1.0, 10.0, 100.0};
  int contour_xi_count = 12;

  double epsilon = 0.0;  // [profile] 0 runs the unperturbed system

  // [spectrum]
  double spectrum_xi_min = 0.01;
  double spectrum_xi_max = 10.0;
  int spectrum_xi_count = 100;

  // [scan]
  std::vector<double> scan_c0{0.1, 1.0, 10.0};
  int scan_n_xi = 40, scan_n_a = 40, scan_n_re = 16, scan_n_im = 16;

  // [evolve]
  std::string data = "l1";  // l1 | lp | high
  double sigma = 0.0;       // 0 means sqrt(alpha + beta)
  double data_p = 1.5;
  int component = 1;
  double t_first = 0.5;
  double t_end = 50.0;
  int per_decade = 8;
  double dt0 = 0.05, dt_rel = 0.0, dt_max = 0.05;

  // [fit]
  double fit_t_lo = 5.0;
  double fit_t_hi = 50.0;
  std::vector<std::string> fit_series{"l2", "h1"};
  std::string fit_input;  // trajectory CSV; empty runs [evolve] first

  // [norms]
  std::string norms_field = "gaussian";  // gaussian | power | random
  double norms_sigma = 2.0;
  double norms_power = 2.0;  // |x|^-power for the power field
  std::vector<double> norms_lp{2.0, 3.0};
  std::vector<double> norms_lorentz_q{1.0, 2.0, INFINITY};
  double norms_sobolev_s = 1.0;
  double norms_besov_s = 0.5;
  int norms_trials = 4;

  // [counterexample]
  std::vector<int> ce_N{8, 32, 128, 512};
  double ce_L = 16.0;
  int ce_steps_per_L = 48;
  double ce_transverse = 16.0 / 3.0;
  double ce_radius = 1.0;
  double ce_amplitude_power = 1.0 / 3.0;
  bool ce_weighted = true;
  int ce_weighted_points = 64;
  double ce_weighted_length = 32.0;
  double ce_M1 = 1.0, ce_M2 = 10.0;

  void validate() const;
  nlohmann::json to_json() const;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> v{"spectrum", "resolvent-scan", "evolve", "decay-fit",
                                          "norms", "counterexample", "contour-check"};
  return v;
}

// Errors carry ConfigError and "source:line:column" context when available.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace parspec
