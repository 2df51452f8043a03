#pragma once

#include "parspec/exec.hpp"
#include "parspec/symbol.hpp"

#include <string>
#include <vector>

namespace parspec {

enum class SetFamily { R1Plus, R1Minus, R2 };
const char* family_name(SetFamily f);

// R1+/-: lambda = -a^2 +/- (a + c0) i for a in a_grid. R2: lambda_grid (Re > 0).
struct ResolventSetSpec {
  SetFamily family = SetFamily::R1Plus;
  double c0 = 1.0;
  std::vector<double> a_grid;
  std::vector<Complex> lambda_grid;

  std::vector<Complex> points() const;
};

struct ScanGrid {
  std::vector<double> xi;
  std::vector<double> a;
  std::vector<Complex> r2;
};

std::vector<double> log_space(double lo, double hi, int count);

// Log-spaced |xi| in [1e-4, r_infty], a in [1e-4, 10], and an R2 grid with
// log-spaced real parts times {0, +/- log-spaced} imaginary parts.
ScanGrid make_scan_grid(double r_infty, int n_xi = 200, int n_a = 200, int n_re = 100, int n_im = 100);

double default_r_infty(const ModelParams& p);
double default_r_infty(const DweParams& p);

struct BoundRecord {
  std::string bound;
  SetFamily family = SetFamily::R1Plus;
  double c0 = 0.0;
  double sup = 0.0;
  double argmax_xi = 0.0;
  Complex argmax_lambda;
  int argmax_basis = -1;
  double case_a_sup = 0.0;
  double case_b_sup = 0.0;
  long long evaluated = 0;
  long long skipped = 0;
  double spectral_margin = 0.0;  // min |lambda - eigenvalue| over evaluated pairs
};

// One CSV row: sup over |xi| and basis directions for one a (R1) or one Re lambda (R2).
struct ScanRow {
  std::string bound;
  SetFamily family = SetFamily::R1Plus;
  double c0 = 0.0;
  double a = 0.0;
  double xi = 0.0;
  double ratio = 0.0;
};

struct BoundScanReport {
  std::string system;
  int n = 3;
  double r_infty = 0.0;
  bool conforming = true;
  std::vector<std::string> warnings;
  std::vector<std::string> bound_ids;
  std::vector<double> c0_values;
  std::vector<BoundRecord> records;
  // constants[b][k]: sup of bound b over R1+ u R1- u R2 at c0_values[k]
  std::vector<std::vector<double>> constants;
  std::vector<ScanRow> rows;
  double spectral_margin = 0.0;

  double constant(std::size_t b) const;           // max over c0
  double c0_variation(std::size_t b) const;       // max/min over c0
  double family_sup(std::size_t b, SetFamily f) const;  // max over c0
};

std::vector<std::string> cns_bound_ids();
std::vector<std::string> dwe_bound_ids();

std::vector<BoundRecord> scan_cns_set(const ModelParams& p, const ResolventSetSpec& set,
                                      const std::vector<double>& xi_mags, double r_infty,
                                      std::vector<ScanRow>* rows = nullptr, Exec ex = default_exec());
std::vector<BoundRecord> scan_dwe_set(const DweParams& p, const ResolventSetSpec& set,
                                      const std::vector<double>& xi_mags, double r_infty,
                                      std::vector<ScanRow>* rows = nullptr, Exec ex = default_exec());

// Runs R1+, R1- for every c0 and R2 once; assembles the c0 sweep.
BoundScanReport scan_cns_bounds(const ModelParams& p, const std::vector<double>& c0_values, const ScanGrid& grid,
                                double r_infty, Exec ex = default_exec());
BoundScanReport scan_dwe_bounds(const DweParams& p, const std::vector<double>& c0_values, const ScanGrid& grid,
                                double r_infty, Exec ex = default_exec());

// sup (|lambda| + m) / |lambda + m| over |arg lambda| <= pi - delta, m > 0.
double sectorial_constant(double delta, int n_angle = 721, int n_ratio = 401);

}  // namespace parspec
