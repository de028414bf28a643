#include "banklaine/sequence_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "banklaine/errors.hpp"

namespace bl {

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;

double T_of(int k, double dg) {
  const double x = kTwoPi * k;
  return alpha(x) * std::pow(x, dg);
}

// Parity-constrained nearest integer to target; larger on tie, strictly above floor.
long long nearest_with_parity(double target, long long parity_of, long long floor_excl) {
  const long long want = (parity_of + 1) & 1;  // opposite parity
  long long lo = (long long)std::floor(target);
  if (((lo % 2) + 2) % 2 != want) --lo;
  const long long hi = lo + 2;
  long long best = (target - double(lo) < double(hi) - target) ? lo : hi;
  while (best <= floor_excl) best += 2;
  return best;
}
}  // namespace

double alpha(double x) {
  const double l = std::log(x + kTwoPi);
  return 1.0 / (l * l);
}

double rho_from_gamma(double gamma) { return (gamma + 1) / (2 * gamma); }
double gamma_from_lambda(double lambda) { return 2 * lambda - 1; }

std::vector<int> build_n_sequence(double gamma, int K) {
  if (gamma < 1) throw PreconditionError("gamma must be >= 1");
  if (K < 1) throw PreconditionError("K must be positive");
  std::vector<int> n(size_t(K), 0);
  if (gamma == 1.0) {
    for (int k = 2; k <= K; ++k) n[size_t(k - 1)] = 1;
    return n;
  }
  long long prev = 1;  // h(2 pi) = 2 pi
  for (int k = 2; k <= K; ++k) {
    const double target = std::pow(kTwoPi * k, gamma) / kTwoPi;
    const long long p = nearest_with_parity(target, prev, prev);
    n[size_t(k - 1)] = int((p - prev - 1) / 2);
    prev = p;
  }
  return n;
}

int m_threshold(double dg, int cap) {
  // increments are eventually increasing; accept the start of a long passing run
  auto ok = [&](int k) { return T_of(k, dg) - T_of(k - 1, dg) >= 4 * std::numbers::pi; };
  constexpr int run_needed = 20000;
  int start = -1;
  for (int k = 2; k <= cap; ++k) {
    if (!ok(k)) {
      start = -1;
      continue;
    }
    if (start < 0) start = k;
    if (k - start >= run_needed) return start;
  }
  return start;
}

std::vector<int> build_m_sequence(double gamma, double delta, int K) {
  if (delta < 0 || delta > 1) throw PreconditionError("delta must lie in [0,1]");
  if (K < 1) throw PreconditionError("K must be positive");
  std::vector<int> m(size_t(K), 0);
  const double dg = delta * gamma;
  if (dg == 0) return m;
  if (dg <= 1) {
    for (int i = 1;; ++i) {
      const double k = std::ceil(std::pow(kTwoPi * i, 1.0 / dg) / kTwoPi - 1e-12);
      if (k > K) break;
      if (k >= 2) m[size_t(k) - 1] = 1;
    }
    return m;
  }
  const int k0 = m_threshold(dg);
  if (k0 < 0 || k0 >= K) return m;
  // Damped tracking of alpha(x) x^dg with nondecreasing m and odd jumps.
  constexpr double damp = 0.2;
  double H = 0.0;
  int prev = 0;
  for (int k = k0 + 1; k <= K; ++k) {
    const double t = (T_of(k, dg) - T_of(k - 1, dg)) / kTwoPi;
    const double d = t - damp * (H - T_of(k - 1, dg)) / kTwoPi;
    int best = prev;
    double best_dist = std::abs(d - prev);
    const int j = std::max(1, int(std::floor(d - prev)));
    for (int jj = j - 2; jj <= j + 2; ++jj) {
      if (jj < 1 || jj % 2 == 0) continue;
      const int c = prev + jj;
      const double dist = std::abs(d - c);
      if (dist < best_dist || (dist == best_dist && c > best)) {
        best = c;
        best_dist = dist;
      }
    }
    m[size_t(k - 1)] = best;
    prev = best;
    H += kTwoPi * best;
  }
  return m;
}

SequencePlan plan_from_sequences(double gamma, double delta, std::vector<int> n_seq,
                                 std::vector<int> m_seq) {
  if (gamma < 1) throw PreconditionError("gamma must be >= 1");
  if (delta < 0 || delta > 1) throw PreconditionError("delta must lie in [0,1]");
  if (n_seq.empty() || n_seq.size() != m_seq.size())
    throw PreconditionError("n_seq and m_seq must be nonempty and of equal length");
  SequencePlan p;
  p.gamma = gamma;
  p.delta = delta;
  p.rho = rho_from_gamma(gamma);
  p.sigma = p.rho * gamma;
  p.K = int(n_seq.size());
  const double dg = delta * gamma;
  p.k0 = dg > 1 ? std::max(0, m_threshold(dg)) : 0;
  p.n_seq = std::move(n_seq);
  p.m_seq = std::move(m_seq);
  p.h_breaks.assign(size_t(p.K) + 1, 0.0);
  p.frakh_breaks.assign(size_t(p.K) + 1, 0.0);
  std::int64_t acc = 0, hsum = 0, msum = 0;
  for (int k = 1; k <= p.K; ++k) {
    const int n = p.n_seq[size_t(k - 1)], m = p.m_seq[size_t(k - 1)];
    if (n < 0 || m < 0) throw PreconditionError("sequences must be nonnegative");
    const std::int64_t N = m + 2 * std::int64_t(n) + 1;
    acc += N;
    hsum += 2 * std::int64_t(n) + 1;
    msum += m;
    p.N_seq.push_back(N);
    p.calN_seq.push_back(acc);
    p.h_breaks[size_t(k)] = kTwoPi * double(hsum);
    p.frakh_breaks[size_t(k)] = kTwoPi * double(msum);
  }
  return p;
}

SequencePlan make_plan(double gamma, double delta, int K) {
  return plan_from_sequences(gamma, delta, build_n_sequence(gamma, K),
                             build_m_sequence(gamma, delta, K));
}

namespace {
int strip_of(const SequencePlan& p, double x) {
  if (x < 0 || x > kTwoPi * p.K * (1 + 1e-15)) throw DepthError("x outside materialized strips");
  return std::clamp(int(std::floor(x / kTwoPi)) + 1, 1, p.K);
}
}  // namespace

double h_eval(const SequencePlan& p, double x) {
  const int k = strip_of(p, x);
  return p.h_breaks[size_t(k - 1)] + (2.0 * p.n(k) + 1) * (x - kTwoPi * (k - 1));
}

double frakh_eval(const SequencePlan& p, double x) {
  const int k = strip_of(p, x);
  return p.frakh_breaks[size_t(k - 1)] + double(p.m(k)) * (x - kTwoPi * (k - 1));
}

namespace {
int strip_of_value(const SequencePlan& p, double y) {
  // strip k with 2 pi calN_{k-1} <= y < 2 pi calN_k
  if (y < 0) throw PreconditionError("negative argument");
  if (y > kTwoPi * double(p.calN(p.K))) throw DepthError("plan depth exhausted");
  const auto it = std::upper_bound(p.calN_seq.begin(), p.calN_seq.end(), y / kTwoPi,
                                   [](double v, std::int64_t c) { return v < double(c); });
  return std::min(int(it - p.calN_seq.begin()) + 1, p.K);
}
}  // namespace

double g_inverse_eval(const SequencePlan& p, double x) {
  if (x < 0) throw PreconditionError("x must be nonnegative");
  const double y = std::pow(x, p.gamma);
  const int k = strip_of_value(p, y);
  return kTwoPi * (k - 1) + (y - kTwoPi * double(p.calN(k - 1))) / double(p.N(k));
}

double g_inverse_derivative(const SequencePlan& p, double x) {
  if (x <= 0) return p.gamma == 1.0 ? 1.0 / double(p.N(1)) : 0.0;
  const double y = std::pow(x, p.gamma);
  const int k = strip_of_value(p, y);
  return p.gamma * y / x / double(p.N(k));
}

double g_forward_inverse(const SequencePlan& p, double u) {
  return std::pow(h_eval(p, u) + frakh_eval(p, u), 1.0 / p.gamma);
}

PlanEstimates verify_plan_estimates(const SequencePlan& p) {
  PlanEstimates r;
  const double g = p.gamma, dg = p.delta * p.gamma;
  for (int k = 1; k <= p.K; ++k) {
    const double x = kTwoPi * k;
    const double dev = std::abs(p.h_breaks[size_t(k)] - std::pow(x, g));
    if (k == 1) {
      r.h_dev_k1 = dev;
    } else {
      r.h_dev_abs_sup = std::max(r.h_dev_abs_sup, dev);
      r.h_dev_scaled_sup = std::max(r.h_dev_scaled_sup, dev / (std::pow(x, g - 2) + 1));
      r.slope_err_sup =
          std::max(r.slope_err_sup, std::abs(2.0 * p.n(k) + 1 - g * std::pow(x, g - 1)));
    }
    const double l = std::log(k + 2.0);
    r.m_ratio_sup = std::max(r.m_ratio_sup, p.m(k) * l * l / (2.0 * p.n(k) + 1));
    if (dg > 1 && k > p.k0 && p.k0 > 0)
      r.frakh_drift_sup =
          std::max(r.frakh_drift_sup, std::abs(p.frakh_breaks[size_t(k)] - T_of(k, dg)));
    const double ref = std::pow(kTwoPi, g - 1) * std::pow(double(k), g);
    if (k == p.K) r.calN_ratio_last = double(p.calN(k)) / ref;
    if (2 * k >= p.K) {
      r.calN_ratio_maxdev = std::max(r.calN_ratio_maxdev, std::abs(double(p.calN(k)) / ref - 1));
      if (k < p.K) {
        const double ratio = double(p.N(k + 1)) / double(p.N(k));
        r.N_ratio_beta_sup = std::max(
            r.N_ratio_beta_sup, std::abs(ratio / std::pow((k + 1.0) / k, g - 1) - 1));
      }
    }
    const double xs = std::pow(kTwoPi * double(p.calN(k)), 1.0 / g);
    if (xs >= kTwoPi && k < p.K) {
      const double gx = g_inverse_eval(p, xs);
      r.g_dev_sup = std::max(r.g_dev_sup, std::abs(gx - xs) /
                                              (xs * alpha(xs) + 1 / xs + std::pow(xs, 1 - g)));
    }
  }
  for (double v : {r.h_dev_scaled_sup, r.h_dev_abs_sup, r.slope_err_sup, r.m_ratio_sup,
                   r.calN_ratio_last, r.calN_ratio_maxdev, r.N_ratio_beta_sup,
                   r.frakh_drift_sup, r.g_dev_sup})
    if (!std::isfinite(v)) r.all_finite = false;
  return r;
}

nlohmann::json plan_to_json(const SequencePlan& p) {
  return {{"gamma", p.gamma}, {"delta", p.delta}, {"K", p.K},
          {"rho", p.rho},     {"sigma", p.sigma}, {"n_seq", p.n_seq},
          {"m_seq", p.m_seq}};
}

SequencePlan plan_from_json(const nlohmann::json& j) {
  auto plan = plan_from_sequences(j.at("gamma").get<double>(), j.at("delta").get<double>(),
                                  j.at("n_seq").get<std::vector<int>>(),
                                  j.at("m_seq").get<std::vector<int>>());
  if (j.contains("K") && j.at("K").get<int>() != plan.K)
    throw PreconditionError("K does not match sequence length");
  return plan;
}

bool operator==(const SequencePlan& a, const SequencePlan& b) {
  return a.gamma == b.gamma && a.delta == b.delta && a.rho == b.rho && a.sigma == b.sigma &&
         a.K == b.K && a.k0 == b.k0 && a.n_seq == b.n_seq && a.m_seq == b.m_seq &&
         a.N_seq == b.N_seq && a.calN_seq == b.calN_seq && a.h_breaks == b.h_breaks &&
         a.frakh_breaks == b.frakh_breaks;
}

}  // namespace bl
