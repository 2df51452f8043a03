#pragma once

#include "parspec/grid.hpp"

#include <functional>
#include <string>
#include <vector>

namespace parspec {

// Non-increasing rearrangement of |f| on the uniform cell measure.
class RearrangementTable {
 public:
  RearrangementTable(std::vector<double> magnitudes, double cell_volume);
  static RearrangementTable of(const Field& f);

  std::size_t size() const { return values_.size(); }
  double cell_volume() const { return cell_; }
  // f*(s), right-continuous step function
  double rearranged(double s) const;
  // d_f(lambda) = |{ |f| > lambda }|
  double distribution(double lambda) const;
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;  // descending
  double cell_;
};

struct LorentzExp {
  double p = 2.0;
  double q = 2.0;  // infinity allowed
  void validate() const;
};

double lorentz_norm(const RearrangementTable& t, const LorentzExp& e);
double lorentz_norm(const Field& f, const LorentzExp& e);

// Pointwise magnitude, Euclidean over components.
std::vector<double> magnitudes(const Field& f);

double weighted_linf_norm(const Field& f, double s);

// (int |xi|^{2s} |f^|^2)^{1/2}
double homogeneous_sobolev_norm(const Field& f, double s);
double homogeneous_sobolev_norm(const SpectralField& f, double s);
// inhomogeneous H^s
double sobolev_norm(const SpectralField& f, double s);

struct BesovProfile {
  std::vector<int> j;
  std::vector<double> block_l2;  // ||Delta_j f||_{L2}
  double value = 0.0;
  int j_at_sup = 0;
};

// Homogeneous B^s_{2,inf}: sup_j 2^{js} ||Delta_j f||_{L2} over resolved shells.
BesovProfile besov_profile(const SpectralField& f, double s);
double besov_norm_dyadic(const Field& f, double s);

struct FdBesovReport {
  double value = 0.0;
  double h_at_sup = 0.0;
  std::vector<double> h;
  std::vector<double> ratio;
  // true when the sup sits at the smallest sampled shift, so the sampled value may undershoot
  bool may_undershoot = false;
};

// sup over at most 64 lattice shifts of |h|^{-s} ||f(. + h) - f||_{L2}
FdBesovReport besov_fd_report(const Field& f, double s);
double besov_halfnorm_fd(const Field& f, double s);

struct NormReport {
  std::string id;
  double value = 0.0;
  std::string grid;
  double refined_value = 0.0;
  bool refinement_stable = false;
};

std::string describe(const Grid& g);

// Evaluates a norm on a generated field at g and at g refined twice over.
NormReport refinement_study(const std::string& id, const Grid& g, const std::function<Field(const Grid&)>& gen,
                            const std::function<double(const Field&)>& norm, double tol = 0.05);

struct HolderReport {
  double lhs = 0.0;     // ||fg||_{p,q}
  double f_norm = 0.0;  // ||f||_{p1,q1}
  double g_norm = 0.0;  // ||g||_{p2,q2}
  double constant = 0.0;
};

HolderReport holder_lorentz_check(const Field& f, const Field& g, const LorentzExp& ef, const LorentzExp& eg,
                                  const LorentzExp& eprod);

struct EmbeddingReport {
  double delta = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// ||u||_{L^q} against ||(-Delta)^delta u||_{L^p}, delta = (n/2)(1/p - 1/q)
EmbeddingReport sobolev_embedding_check(const Field& u, double p, double q);

enum class TrilinearVariant { HalfDimWeak, DimWeak };

struct TrilinearReport {
  double lhs = 0.0;
  double f_norm = 0.0;
  double g_norm = 0.0;
  double h_norm = 0.0;
  double ratio = 0.0;
};

// |int f g h| against ||f||_{weak} ||g||_{H^s1} ||h||_{H^s2}. The balanced
// exponent sum is 2 for the L^{n/2,inf} variant and 1 for L^{n,inf}; set
// enforce_scaling = false to probe other sums.
TrilinearReport trilinear_fgh_check(const Field& f, const Field& g, const Field& h, double s1, double s2,
                                    TrilinearVariant v, bool enforce_scaling = true);

}  // namespace parspec
