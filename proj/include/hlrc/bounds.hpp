#pragma once

// Parameter predictors, MDS weight enumerators, GV-type rate and asymptotic rates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hlrc/error.hpp"
#include "hlrc/singleton.hpp"

namespace hlrc {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {
inline std::int64_t ipow64(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}
}  // namespace detail

struct GeneralParams {
  std::int64_t t = 0, r2 = 0, s = 0;
  std::int64_t deg_y = 1, deg_x = 1, deg_psi_x = 1;
  std::int64_t g_Z = 0, deg_Qinf = 0, n = 0;
};

struct GeneralPrediction {
  std::int64_t nu, r1, rho1_lower, k, k_lower, d_lower;
};

inline GeneralPrediction predict_general(const GeneralParams& p) {
  require_param(p.t >= 0 && p.r2 >= 1 && p.s >= 1 && p.deg_y >= 0 && p.deg_x >= 0 && p.g_Z >= 0 && p.deg_Qinf >= 0 &&
                    p.n >= 0,
                "predict_general: parameters must be nonnegative with r2, s >= 1");
  require_param(p.deg_psi_x >= 1, "predict_general: deg_psi(x) must be >= 1");
  GeneralPrediction out{};
  out.nu = (p.s + 1) * (p.r2 + 1);
  out.r1 = p.s * p.r2;
  out.rho1_lower = std::max<std::int64_t>(2 * (p.r2 + 1) - p.deg_psi_x * (p.r2 - 1), 4);
  out.k = p.t * p.r2 * p.s;
  out.k_lower = std::max<std::int64_t>(out.r1 * (p.deg_Qinf - p.g_Z + 1), 0);
  out.d_lower = p.n - (p.deg_Qinf * (p.s + 1) + p.deg_y * (p.s - 1)) * (p.r2 + 1) - p.deg_x * (p.r2 - 1);
  return out;
}

struct GsPrediction {
  std::int64_t n, r1, r2, rho2, genus_upper, k_lower, d_lower, rho1_lower;
  bool rho1_from_deg_psi;
};

/// Garcia-Stichtenoth sub-tower parameters. deg_psi(x) is not computable here;
/// without it the middle-distance bound falls back to the clamp value 4.
inline GsPrediction predict_gs(std::int64_t q0, std::int64_t j, std::int64_t ell,
                               std::optional<std::int64_t> deg_psi = std::nullopt) {
  require_param(q0 >= 2 && j >= 1 && ell >= 0, "predict_gs: need q0 >= 2, j >= 1, ell >= 0");
  GsPrediction out{};
  out.n = detail::ipow64(q0, static_cast<unsigned>(j + 1)) * (q0 * q0 - 1);
  out.r1 = (q0 - 1) * (q0 - 1);
  out.r2 = q0 - 1;
  out.rho2 = 2;
  const std::int64_t nj = detail::ipow64(q0, static_cast<unsigned>(j - 1)) * (q0 * q0 - 1);
  out.genus_upper = nj / (q0 - 1);
  out.k_lower = std::max<std::int64_t>(ell - out.genus_upper + 1, 0) * out.r1;
  out.d_lower = out.n - ell * q0 * q0 - 2 * detail::ipow64(q0, static_cast<unsigned>(j + 1)) * (q0 - 2);
  out.rho1_from_deg_psi = deg_psi.has_value();
  out.rho1_lower = deg_psi ? std::max<std::int64_t>(2 * q0 - *deg_psi * (q0 - 2), 4) : 4;
  return out;
}

struct PowPrediction {
  std::int64_t n, nu, t, k, d_lower, r1, rho1, r2, rho2;
  bool t_exact;
};

/// Number of pole orders alpha*q0 + beta*e <= ell with 0 <= beta < q0.
inline std::int64_t hermitian_quotient_dim(std::int64_t q0, std::int64_t e, std::int64_t ell) {
  std::int64_t t = 0;
  for (std::int64_t beta = 0; beta < q0; ++beta)
    for (std::int64_t alpha = 0; alpha * q0 + beta * e <= ell; ++alpha) ++t;
  return t;
}

inline PowPrediction predict_pow(std::int64_t q0, std::int64_t j, std::int64_t a, std::int64_t b, std::int64_t ell) {
  require_param(q0 >= 2 && j >= 1 && a >= 1 && b >= 1 && ell >= 0, "predict_pow: need q0 >= 2, j >= 1, a, b >= 1, ell >= 0");
  require_param((q0 + 1) % ((a + 1) * (b + 1)) == 0, "predict_pow: (a+1)(b+1) must divide q0+1");
  PowPrediction out{};
  out.nu = (a + 1) * (b + 1);
  out.n = detail::ipow64(q0, static_cast<unsigned>(j - 1)) * (q0 * q0 - 1);
  if (j == 1) {
    out.t = ell + 1;
    out.t_exact = true;
  } else if (j == 2) {
    out.t = hermitian_quotient_dim(q0, (q0 + 1) / out.nu, ell);
    out.t_exact = true;
  } else {
    const std::int64_t genus_upper = out.n / (q0 - 1);
    out.t = std::max<std::int64_t>(ell - genus_upper + 1, 0);
    out.t_exact = false;
  }
  out.k = out.t * a * b;
  out.d_lower = out.n - ell * out.nu - detail::ipow64(q0, static_cast<unsigned>(j - 1)) * (a * b + b - 2);
  out.r1 = a * b;
  out.rho1 = a + 3;
  out.r2 = a;
  out.rho2 = 2;
  return out;
}

struct AvailabilityParams {
  std::int64_t c = 0, s1 = 0, s2 = 0, t1 = 0, t2 = 0, m = 1;
  std::int64_t h_x1 = 0, h_x2 = 0, h_y1 = 0, h_y2 = 0;
  std::int64_t hp11 = 0, hp12 = 0, hp21 = 0, hp22 = 0;
};

/// Degree data of the multiplicative (RS) instance.
inline AvailabilityParams rs_availability_params(std::int64_t c, std::int64_t s1, std::int64_t s2, std::int64_t t1,
                                                 std::int64_t t2, std::int64_t m) {
  AvailabilityParams p;
  p.c = c;
  p.s1 = s1;
  p.s2 = s2;
  p.t1 = t1;
  p.t2 = t2;
  p.m = m;
  p.h_x1 = s2 * t1 * t2;
  p.h_x2 = s1 * t1 * t2;
  p.h_y1 = t2;
  p.h_y2 = t1;
  p.hp11 = s1;
  p.hp22 = s2;
  p.hp12 = p.hp21 = 1;
  return p;
}

struct AvailabilityPrediction {
  std::int64_t n, k, d_lower, nu1, nu2, r11, r12, rho11_lower, rho12_lower;
};

inline AvailabilityPrediction predict_availability(const AvailabilityParams& p) {
  require_param(p.c >= 1 && p.s1 >= 2 && p.s2 >= 2 && p.t1 >= 2 && p.t2 >= 2 && p.m >= 1,
                "predict_availability: need c, m >= 1 and s_i, t_i >= 2");
  require_param(std::gcd(p.s1, p.s2) == 1 && std::gcd(p.t1, p.t2) == 1,
                "predict_availability: need gcd(s1, s2) = gcd(t1, t2) = 1");
  require_param(p.hp11 >= 1 && p.hp12 >= 1 && p.hp21 >= 1 && p.hp22 >= 1, "predict_availability: h' values must be >= 1");
  AvailabilityPrediction out{};
  const std::int64_t st = p.s1 * p.s2 * p.t1 * p.t2;
  const std::int64_t ss = p.s1 * p.s2;
  out.n = p.c * st;
  out.k = p.m * (p.s1 - 1) * (p.s2 - 1) * (p.t1 - 1) * (p.t2 - 1);
  out.d_lower = out.n - (p.m - 1) * st - (p.h_y1 * (p.t1 - 2) + p.h_y2 * (p.t2 - 2)) * ss - p.h_x1 * (p.s1 - 2) -
                p.h_x2 * (p.s2 - 2);
  out.nu1 = ss * p.t2;
  out.nu2 = ss * p.t1;
  out.r11 = (p.s1 - 1) * (p.s2 - 1) * (p.t1 - 1);
  out.r12 = (p.s1 - 1) * (p.s2 - 1) * (p.t2 - 1);
  out.rho11_lower = std::max<std::int64_t>(ss * (p.t2 - p.t1 + 2) - p.hp11 * (p.s1 - 2) - p.hp21 * (p.s2 - 2), 4);
  out.rho12_lower = std::max<std::int64_t>(ss * (p.t1 - p.t2 + 2) - p.hp12 * (p.s1 - 2) - p.hp22 * (p.s2 - 2), 4);
  return out;
}

// ---------------------------------------------------------------------------

struct WeightEnum {
  std::vector<BigInt> A;  // A[w], w = 0..n
  std::uint64_t q = 0;

  BigInt total() const {
    BigInt s = 0;
    for (const auto& a : A) s += a;
    return s;
  }
};

inline BigInt binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Weight distribution of an [n, k] MDS code over GF(q).
inline WeightEnum rs_weight_enumerator(std::int64_t n, std::int64_t k, std::uint64_t q) {
  require_param(k >= 1 && k <= n, "rs_weight_enumerator: need 1 <= k <= n");
  require_param(q >= 2 && static_cast<std::uint64_t>(n) <= q + 1, "rs_weight_enumerator: need n <= q + 1");
  WeightEnum we;
  we.q = q;
  we.A.assign(n + 1, 0);
  we.A[0] = 1;
  const std::int64_t d = n - k + 1;
  for (std::int64_t w = d; w <= n; ++w) {
    BigInt sum = 0;
    for (std::int64_t j = 0; j <= w - d; ++j) {
      BigInt term = binom(w - 1, j) * boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(w - d - j));
      if (j % 2) sum -= term;
      else sum += term;
    }
    we.A[w] = binom(n, w) * (q - 1) * sum;
  }
  return we;
}

namespace detail {

inline double log_big(const BigInt& v) {
  if (v <= 0) return -INFINITY;
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits < 60) return std::log(v.convert_to<double>());
  const unsigned shift = bits - 60;
  BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

}  // namespace detail

struct GvResult {
  double rate;
  double s_star;     // minimizing s
  double objective;  // minimized bracket
  double objective_lo, objective_hi;  // bracket at the search endpoints
};

/// R < r1/nu - min_{s>0} ((1/nu) log_q B(s) - delta log_q s), B the local code's weight enumerator.
inline GvResult gv_rate(std::int64_t nu, std::int64_t r1, const WeightEnum& we, double delta, std::uint64_t q) {
  require_param(delta > 0 && delta < 1, "gv_rate: need 0 < delta < 1");
  require_param(nu >= 1 && r1 >= 1 && r1 <= nu, "gv_rate: need 1 <= r1 <= nu");
  require_param(q >= 2, "gv_rate: need q >= 2");
  std::vector<double> logA(we.A.size());
  for (std::size_t w = 0; w < we.A.size(); ++w) logA[w] = detail::log_big(we.A[w]);
  const double lnq = std::log(static_cast<double>(q));
  auto objective = [&](double u) {
    const double ls = u * std::log(10.0);
    double mx = -INFINITY;
    for (std::size_t w = 0; w < logA.size(); ++w)
      if (std::isfinite(logA[w])) mx = std::max(mx, logA[w] + w * ls);
    double acc = 0;
    for (std::size_t w = 0; w < logA.size(); ++w)
      if (std::isfinite(logA[w])) acc += std::exp(logA[w] + w * ls - mx);
    const double logB = mx + std::log(acc);
    return (logB / nu - delta * ls) / lnq;
  };
  double lo = -30, hi = 30;
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > 1e-8 * std::max(1.0, std::abs(x1))) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double u = (lo + hi) / 2;
  GvResult r{};
  r.objective = objective(u);
  r.s_star = std::pow(10.0, u);
  r.rate = static_cast<double>(r1) / nu - r.objective;
  r.objective_lo = objective(-30);
  r.objective_hi = objective(30);
  return r;
}

inline double asympt_ab(double q0, double delta) {
  return std::max(0.0, std::pow((q0 - 1) / q0, 2) * (1 - delta - 3 / (q0 + 1)));
}

inline double asympt_prop2(double q0, double s, double r2, double delta) {
  return std::max(0.0, s * r2 / (q0 * q0) * (1 - delta - (q0 + s + r2 - 1) / (q0 * q0 - 1)));
}

inline double asympt_pa(double q0, double a, double b, double delta) {
  return std::max(0.0, a * b / ((a + 1) * (b + 1)) * (1 - delta - (q0 + a * b + b - 1) / (q0 * q0 - 1)));
}

}  // namespace hlrc
