#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "banklaine/exact_coeffs.hpp"
#include "banklaine/exec.hpp"
#include "banklaine/fitting.hpp"
#include "banklaine/glue_maps.hpp"
#include "banklaine/poly_exact.hpp"

namespace bl {

// ---- ODE layer over rational functions of w = e^z ----

// The theta-derivatives (theta = w d/dw = d/dz) of kappa1 and kappa2 with exact
// coefficients; identities are assembled from their double values.
struct OdeAlgebra {
  SolutionSpec spec;
  RatPoly d1[4], d2[4];  // theta^j kappa1, theta^j kappa2, j = 0..3
  RatPoly wronski;       // kappa1 theta kappa2 - theta kappa1 kappa2 + w kappa1 kappa2
  explicit OdeAlgebra(SolutionSpec s);
  int K() const { return spec.k1 + spec.k2 + 1; }
  // w^2/4 + (k2-k1)w/2 + K^2/4, so that f'' = coeff f and A = -coeff
  std::complex<double> coeff(std::complex<double> w) const;
};

// max over f1, f2 of |f''/f - coeff| / (1 + |coeff|); sets *pole at a zero of kappa
double ode_residual(const OdeAlgebra& alg, std::complex<double> z, bool* pole = nullptr);
double ode_residual(const SolutionSpec& spec, std::complex<double> z, bool* pole = nullptr);
// f1 f2' - f1' f2 assembled numerically from the factors f1 f2 and (L2 - L1)
std::complex<double> wronskian(const OdeAlgebra& alg, std::complex<double> z);
std::complex<double> wronskian(const SolutionSpec& spec, std::complex<double> z);

struct BankLaineReport {
  int zeros = 0;
  double max_deviation = 0;  // max over zeros of min |E'(z0) -+ 1|
  double max_root_residual = 0;
  int plus_ones = 0;  // zeros with E' closer to +1
};

BankLaineReport banklaine_check(const SolutionSpec& spec, double im_limit = 10 * 3.141592653589793);

// |S(F) - 2A| / (1 + |2A|)
double schwarzian_check(const OdeAlgebra& alg, std::complex<double> z, bool* pole = nullptr);
double schwarzian_check(const SolutionSpec& spec, std::complex<double> z, bool* pole = nullptr);
// |S((aF+b)/(cF+d)) - S(F)| / (1 + |S(F)|) with the chain rule applied to numeric F, F', F'', F'''
double schwarzian_mobius_check(const OdeAlgebra& alg, std::complex<double> z,
                               const std::array<std::complex<double>, 4>& abcd);
// |4A + 2E''/E - (E'/E)^2 + 1/E^2| / (1 + |4A|) for E replaced by scale * E
double bank_identity_check(const OdeAlgebra& alg, std::complex<double> z, double scale = 1.0);
double bank_identity_check(const SolutionSpec& spec, std::complex<double> z, double scale = 1.0);

struct OdeSweep {
  double ode = 0, wronskian = 0, schwarzian = 0, identity = 0, mobius = 0;
  int points = 0, poles = 0;
};

// 21 x 21 grid over [-3,2] x [-pi,pi] unless given otherwise.
OdeSweep ode_sweep(const SolutionSpec& spec, int nx = 21, int ny = 21);

// ---- zeros and poles of U, V, G ----

enum class CountKind { ZerosU, ZerosV, ZerosG, PolesU, PolesV, PolesG };
const char* count_kind_name(CountKind k);
CountKind count_kind_from_name(const std::string& s);

// Radii of all zeros and poles of U, V, G out to the materialized depth.
class ZeroCatalog {
 public:
  // with_zeros = false skips the P roots (degree 2n_k) and catalogs poles only.
  explicit ZeroCatalog(const GluedMapCtx& ctx, ExecPolicy policy = ExecPolicy::Parallel,
                       bool with_zeros = true);
  // Largest r for which counts of this kind are complete.
  double depth(CountKind k) const;
  int count(CountKind k, double r) const;
  const std::vector<double>& radii(CountKind k) const { return radii_[size_t(k)]; }
  double max_root_residual() const { return max_residual_; }

 private:
  std::vector<double> radii_[6];
  double depth_[6] = {0, 0, 0, 0, 0, 0};
  double max_residual_ = 0;
};

int count_zeros(const GluedMapCtx& ctx, CountKind kind, double r);

struct CountingCurve {
  std::vector<double> radii;
  std::vector<int> counts;
  CountKind kind = CountKind::ZerosG;
};

CountingCurve counting_curve(const ZeroCatalog& cat, CountKind kind, const std::vector<double>& radii);
std::vector<double> log_spaced(double lo, double hi, int n);

struct ExponentFit {
  LinearFit fit;
  bool log2_corrected = false;
  double decades = 0;
};

// Slope of log n(r) against log r, optionally of log(n(r) (log r)^2).
ExponentFit counting_exponent_fit(const CountingCurve& curve, bool log2_correction = false,
                                  double min_decades = 1.5, int min_points = 10);

// ---- ray asymptotics ----

struct RayReport {
  Side side = Side::U;
  std::vector<double> theta, log_r, ratio;
  double max_deviation = 0;  // max |ratio - 1|
  int skipped = 0;           // points beyond the materialized depth
};

// U: log|log G(r e^{i th})| / (r^rho cos(rho th)); V: log|G(-r e^{i th}) - 1| / (-r^sigma cos(sigma th)).
RayReport ray_asymptotics_check(const GluedMapCtx& ctx, Side side, const std::vector<double>& thetas,
                                const std::vector<double>& log_r, double eps = 0.1);

// Largest |theta| (within the sector) at which the ray stays inside the plan at radius e^{log_r}.
double ray_theta_limit(const GluedMapCtx& ctx, Side side, double log_r, double eps = 0.1);

struct AnchorReport {
  double max_dev_E_right = 0;  // log(1/|E(re^{it})|) against r cos t
  double max_dev_E_left = 0;   // log|E(-re^{it})| against r cos t
  double max_dev_A_right = 0;  // (1/2) log|A(re^{it})| against its closed form
  double max_dev_A_left = 0;   // |A(-re^{it})| against its closed form
  double ratio_E_right = 0;    // worst |log(1/|E|)/(r cos t) - 1| at the largest r
  double ratio_A_right = 0;
  double ratio_A_left = 0;     // worst ||A(-re^{it})|/(1/4) - 1| at the largest r
};

// The explicit rho = sigma = 1 case: spec (0,0), E = e^{-z}, A = -(e^{2z}+1)/4.
AnchorReport rho_one_anchor(const std::vector<double>& radii, const std::vector<double>& thetas);

// ---- fitted constants ----

struct VerificationReport {
  std::map<std::string, double> constants;
  std::map<std::string, bool> pass;
  std::vector<BoundFit> fits;
  nlohmann::json to_json() const;
};

struct Lemma3Options {
  int N_max = 400;
  int y_points = 40;     // log-spaced over [0.1, 10N]
  int m_per_N = 0;       // m values sampled in [1, N/8]; 0 takes all admissible m
};

// R(y,N) <= 4 B m y / (N (y + N - 2m)): B fitted on even N, validated on odd N.
VerificationReport lemma3_fit(const Lemma3Options& opt = {});

// Transition-map constants c1..c8 and the s-shift deviation over consecutive pairs k <= k_max.
// Pairs with phi != id and N_k >= N0 alternate between fitting and validation.
VerificationReport lemma5_fit(const GluedMapCtx& ctx, int k_max, int N0 = 8);

// d_lo r^e <= n(r) <= d_hi r^e, fitted on alternate radii.
VerificationReport counting_constants(const CountingCurve& curve, double exponent,
                                      const std::string& prefix, bool log2_correction = false);

}  // namespace bl
