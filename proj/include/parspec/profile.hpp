#pragma once

#include "parspec/grid.hpp"

#include <string>
#include <utility>
#include <vector>

namespace parspec {

enum class ProfileKind { CnsStationary, DweCoefficients };
const char* profile_kind_name(ProfileKind k);

struct ProfileOptions {
  double epsilon = 0.01;
  double sobolev_s = 3.0;  // H^s index in the CNS smallness quantity
  double p0 = 3.0;         // L^{p0} exponent in the damped-wave smallness quantity
  void validate() const;
};

// Stationary state (phi_w, w_w) or damped-wave coefficients (b1, b2, b3) with
// values ~ eps/<x> and gradients ~ eps/<x>^2, cut off smoothly between 0.35L
// and 0.45L so the periodic extension stays smooth.
struct SyntheticProfile {
  ProfileKind kind = ProfileKind::CnsStationary;
  double epsilon = 0.0;
  Grid grid;
  Field phi;  // CNS: 1 component
  Field w;    // CNS: n components, divergence-free
  Field b1;   // DWE: n components
  Field b2;   // DWE: n components
  Field b3;   // DWE: 1 component
  double amplitude = 0.0;  // factor applied to the unit-shape fields
  // measured norms after scaling, in a fixed order
  std::vector<std::pair<std::string, double>> invariants;
  double smallness = 0.0;  // the combined quantity that the hypothesis bounds by eps

  double invariant(const std::string& name) const;
};

// 1 for r <= 0.35 L, 0 for r >= 0.45 L, C-infinity in between
double periodizing_cutoff(double r, double L);

SyntheticProfile make_cns_profile(const Grid& g, const ProfileOptions& o);
SyntheticProfile make_dwe_profile(const Grid& g, const ProfileOptions& o);

// The same profile with every field multiplied by s (invariants rescaled).
SyntheticProfile scaled(const SyntheticProfile& p, double s);

}  // namespace parspec
