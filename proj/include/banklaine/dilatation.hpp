#pragma once

#include <complex>
#include <string>
#include <vector>

#include "banklaine/exec.hpp"
#include "banklaine/glue_maps.hpp"

namespace bl {

enum class Region { UStrip, VStrip, QStretch, QInterp, Holomorphic };

const char* region_name(Region r);

struct DilatationSample {
  std::complex<double> z;
  Region region = Region::Holomorphic;
  std::complex<double> mu;
  double K = 1.0;
};

// Beltrami coefficient of G at z from the analytic a, b formulas.
DilatationSample mu_at(const GluedMapCtx& ctx, std::complex<double> z, bool fast = false);

// Beltrami coefficient of the quasiconformal part of G by central differences.
std::complex<double> mu_finite_difference(const GluedMapCtx& ctx, std::complex<double> z);
// The quasiconformal part itself: G = g_k(quasi_part(z)) up to an affine change.
std::complex<double> quasi_part(const GluedMapCtx& ctx, std::complex<double> z);

struct KBoundReport {
  int k = 0;
  int points = 0;
  int violations = 0;
  double max_excess = 0;  // max of (K_U - 1) - bound
  double max_K = 1;
  double max_ratio = 0;   // max of (K_U - 1)/bound where bound > 0
};

// K_U - 1 <= 4(1+r)r/min(1,psi'), r = |psi'-1| + |psi-x|, over t in {0,1/4,1/2,3/4,1}.
KBoundReport K_U_bound_check(const GluedMapCtx& ctx, int k, const std::vector<double>& xgrid);

struct AnnulusIntegral {
  double value = 0;
  double coarse = 0;  // same rule at half resolution
  double err_estimate = 0;
};

// Midpoint rule for the integral of (K_G - 1)/|z|^2 over r_lo < |z| < r_hi.
AnnulusIntegral dilatation_integral(const GluedMapCtx& ctx, double r_lo, double r_hi,
                                    int n_r, int n_theta,
                                    ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace bl
