#pragma once

// Limit objects of the three Stirling families: L1/L2/L3, the mod-phi pair
// (phi_i, Psi_i), closed-form derivatives, asymptotic mean/variance mu_i and
// sigma_i^2 with their inverses, and the large-deviation rate functions.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <mutex>

#include "stirlim/lambert.hpp"
#include "stirlim/mp.hpp"

namespace stirlim {

namespace detail {

inline double re_of(double x) { return x; }
inline double im_of(double) { return 0.0; }
inline double re_of(const std::complex<double>& z) { return z.real(); }
inline double im_of(const std::complex<double>& z) { return z.imag(); }
inline double re_of(const MpReal& x) { return x.to_double(); }
inline double im_of(const MpReal&) { return 0.0; }
inline double re_of(const MpComplex& z) { return z.real().to_double(); }
inline double im_of(const MpComplex& z) { return z.imag().to_double(); }

template <class C>
void require_off_cut(const C& z, double cut_end, const char* what) {
  if (im_of(z) == 0.0 && re_of(z) <= cut_end) throw domain_error(what);
}

}  // namespace detail

// (z+1) log(z+1) - z log z on the slit plane
template <class C>
C L1(const C& z) {
  using std::log;
  detail::require_off_cut(z, 0.0, "L1: argument on (-inf, 0]");
  const auto one = real_like(real(z), 1.0);
  C zp1 = z + C(one);
  return zp1 * log(zp1) - z * log(z);
}

// W0(1/z) + 1/W0(1/z) - z + log z
template <class C>
C L2(const C& z) {
  using std::log;
  detail::require_off_cut(z, 0.0, "L2: argument on (-inf, 0]");
  const auto one = real_like(real(z), 1.0);
  C w = w0_complex(C(one) / z);
  return w + C(one) / w - z + log(z);
}

// 1/theta + W0(theta^-1 (e^-z - 1) e^{-1/theta})
template <class C, class R>
C L3(const C& z, const R& theta) {
  using std::exp;
  const R one = real_like(theta, 1.0);
  C u = (exp(-z) - C(one)) * C(exp(-one / theta) / theta);
  return C(one / theta) + w0_complex(u);
}

// --- guaranteed evaluation strip -------------------------------------------

namespace detail {

inline bool off_cut(std::complex<double> a, double cut_end) {
  return std::abs(a.imag()) > 1e-12 * (1.0 + std::abs(a)) || a.real() > cut_end + 1e-12;
}

inline bool strip_args_ok(int family, std::complex<double> z, double theta) {
  const std::complex<double> ez = std::exp(z);
  const double bp = -std::exp(-1.0);
  switch (family) {
    case 1:
      return off_cut(theta * ez, 0.0);
    case 2:
      return off_cut(theta * ez, 0.0) && off_cut(std::exp(-z) / theta, bp);
    default: {
      std::complex<double> u = (std::exp(-z) - 1.0) * std::exp(-1.0 / theta) / theta;
      return off_cut(u, bp);
    }
  }
}

}  // namespace detail

// Largest h <= 1 such that every W0/log argument stays off its cut on the
// lines |Im z| = h, Re z in [-4, 4]; shrunk by a 10% safety margin.
inline double domain_halfwidth(int family, double theta) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({family, theta});
    if (it != cache.end()) return it->second;
  }
  auto line_ok = [&](double h) {
    for (int j = 0; j <= 80; ++j) {
      double re = -4.0 + 0.1 * j;
      if (!detail::strip_args_ok(family, {re, h}, theta)) return false;
      if (!detail::strip_args_ok(family, {re, -h}, theta)) return false;
    }
    return true;
  };
  double h;
  if (line_ok(1.0)) {
    h = 1.0;
  } else {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 30; ++it) {
      double mid = 0.5 * (lo + hi);
      (line_ok(mid) ? lo : hi) = mid;
    }
    h = lo;
  }
  h *= 0.9;
  std::lock_guard<std::mutex> lock(mu);
  cache[{family, theta}] = h;
  return h;
}

namespace detail {
template <class C>
void require_in_strip(int family, const C& z, double theta) {
  if (std::abs(im_of(z)) > domain_halfwidth(family, theta)) {
    throw domain_error("phi/psi: z outside the guaranteed strip");
  }
}
}  // namespace detail

template <class C, class R>
C phi(int family, const C& z, const R& theta) {
  using std::exp;
  using std::log;
  detail::require_in_strip(family, z, to_double(theta));
  const R one = real_like(theta, 1.0);
  switch (family) {
    case 1:
      return L1(C(theta) * exp(z)) - C(L1(C(theta)));
    case 2:
      return L2(C(theta) * exp(z)) - C(L2(C(theta)));
    default: {
      C l3 = L3(z, theta);
      return C((theta - one) * log(theta) - one) + C(theta - one) * log(l3) +
             C(theta) * (z + l3);
    }
  }
}

template <class C, class R>
C psi(int family, const C& z, const R& theta) {
  using std::exp;
  using std::sqrt;
  detail::require_in_strip(family, z, to_double(theta));
  const R one = real_like(theta, 1.0);
  switch (family) {
    case 1: {
      C ez = exp(z);
      return exp(z / C(real_like(theta, 2.0))) *
             sqrt(C(theta + one) / (C(theta) * ez + C(one)));
    }
    case 2: {
      R w0t = w0_real(one / theta);
      C wz = w0_complex(exp(-z) / C(theta));
      return sqrt(C(w0t + one) / (wz + C(one)));
    }
    default: {
      C l3 = L3(z, theta);
      return sqrt(C(theta) / (C(theta) * l3 + C(theta - one)));
    }
  }
}

// Closed-form first and second derivatives of phi_i, in a form that stays
// numerically stable through z = 0 for family 3.
template <class C, class R>
std::pair<C, C> phi_derivs(int family, const C& z, const R& theta) {
  using std::exp;
  using std::log;
  detail::require_in_strip(family, z, to_double(theta));
  const R one = real_like(theta, 1.0);
  const C cone(one);
  switch (family) {
    case 1: {
      C ez = exp(z);
      C lg = log(cone + exp(-z) / C(theta));
      C d1 = C(theta) * ez * lg;
      C d2 = d1 - cone / (cone + exp(-z) / C(theta));
      return {d1, d2};
    }
    case 2: {
      C w = w0_complex(exp(-z) / C(theta));
      C d1 = cone / w - C(theta) * exp(z);
      C d2 = cone / (w * (cone + w)) - C(theta) * exp(z);
      return {d1, d2};
    }
    default: {
      // with W = W0(u), u = (e^-z - 1) e^{-1/theta} / theta:
      //   phi3'  = theta - theta e^{-z - 1/theta - W} / (1 + theta W)
      //   phi3'' = theta e^{-z - 1/theta - W}
      //            [(1 + W_z)(1 + theta W) + theta W_z] / (1 + theta W)^2
      //   W_z    = -e^{-z - 1/theta - W} / (theta (1 + W))
      C emz = exp(-z);
      C u = (emz - cone) * C(exp(-one / theta) / theta);
      C w = w0_complex(u);
      C core = emz * C(exp(-one / theta)) * exp(-w);
      C dtw = cone + C(theta) * w;
      C wz = -core / (C(theta) * (cone + w));
      C d1 = C(theta) - C(theta) * core / dtw;
      C d2 = C(theta) * core * ((cone + wz) * dtw + C(theta) * wz) / (dtw * dtw);
      return {d1, d2};
    }
  }
}

template <class R>
R mu(int family, const R& theta) {
  using std::exp;
  using std::log;
  const R one = real_like(theta, 1.0);
  if (!(theta > real_like(theta, 0.0))) throw domain_error("mu: theta must be > 0");
  switch (family) {
    case 1:
      return theta * log(one + one / theta);
    case 2:
      return one / w0_real(one / theta) - theta;
    case 3:
      return theta * (one - exp(-one / theta));
    default:
      throw domain_error("mu: family must be 1, 2 or 3");
  }
}

template <class R>
R sigma2(int family, const R& theta) {
  using std::exp;
  using std::log;
  const R one = real_like(theta, 1.0);
  if (!(theta > real_like(theta, 0.0))) throw domain_error("sigma2: theta must be > 0");
  switch (family) {
    case 1:
      return theta * log(one + one / theta) - theta / (one + theta);
    case 2: {
      R w = w0_real(one / theta);
      return one / (w * (one + w)) - theta;
    }
    case 3: {
      R e = exp(-one / theta);
      return theta * e * (one - e - e / theta);
    }
    default:
      throw domain_error("sigma2: family must be 1, 2 or 3");
  }
}

// inverse of mu_i on (0,1), families 1 and 2 only
inline double mu_inverse(int family, double t) {
  if (!(t > 0.0 && t < 1.0)) throw domain_error("mu_inverse: t must be in (0,1)");
  if (family == 1) {
    double w = wm1_real(-t * std::exp(-t));
    return -t / (t + w);
  }
  if (family == 2) {
    double w = w0_real(-std::exp(-1.0 / t) / t);
    return t / (1.0 + t * w) - t;
  }
  throw domain_error("mu_inverse: family must be 1 or 2");
}

namespace detail {
inline double l1_real(double x) { return detail::re_of(L1(std::complex<double>(x, 0.0))); }
inline double l2_real(double x) { return detail::re_of(L2(std::complex<double>(x, 0.0))); }
}  // namespace detail

// Large-deviation rate functions I_i(t; theta). Boundary values are the
// Legendre-transform limits; outside the admissible interval the rate is
// +infinity.
inline double rate(int family, double t, double theta) {
  const double inf = std::numeric_limits<double>::infinity();
  if (theta <= 0.0) throw domain_error("rate: theta must be > 0");
  if (family == 1 || family == 2) {
    if (t < 0.0 || t > 1.0) return inf;
    if (t == 0.0) return family == 1 ? detail::l1_real(theta) : inf;
    auto L = (family == 1) ? detail::l1_real : detail::l2_real;
    if (t == 1.0) return L(theta) - 1.0 - std::log(theta);
    double m = mu_inverse(family, t);
    return t * std::log(m) - L(m) - (t * std::log(theta) - L(theta));
  }
  if (family != 3) throw domain_error("rate: family must be 1, 2 or 3");
  auto interior = [&](double tt) {
    double m = mu_inverse(2, tt);
    return (tt - 1.0) * std::log(m) - 1.0 / (tt + m) + (theta - tt) * std::log(theta - tt) +
           1.0 - (theta - 1.0) * std::log(theta);
  };
  if (theta >= 1.0) {
    if (t <= 0.0 || t > 1.0) return inf;
    if (t == 1.0) {
      double a = (theta > 1.0) ? (theta - 1.0) * std::log(theta - 1.0) : 0.0;
      return a + 1.0 - (theta - 1.0) * std::log(theta);
    }
    return interior(t);
  }
  // theta in (0,1): mass lives on (0, theta]
  if (t <= 0.0 || t > theta) return inf;
  if (t == theta) {
    double m = mu_inverse(2, theta);
    return (theta - 1.0) * std::log(m) - 1.0 / (theta + m) + 1.0 -
           (theta - 1.0) * std::log(theta);
  }
  return interior(t);
}

// location of the maximum of sigma_i(theta), by coarse scan + golden section
inline double sigma_argmax(int family, double tol = 1e-6) {
  auto f = [&](double th) { return sigma2(family, th); };
  double best = 0.1, bestv = -1.0;
  for (int j = 0; j <= 400; ++j) {
    double th = std::exp(-4.0 + 8.0 * j / 400.0);
    double v = f(th);
    if (v > bestv) {
      bestv = v;
      best = th;
    }
  }
  double a = best * 0.8, b = best * 1.25;
  const double gr = 0.6180339887498949;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Bundled limit description of one family at a fixed tilt.
struct ModPhiLimit {
  int family;
  double theta;
  double halfwidth;

  ModPhiLimit(int family_, double theta_)
      : family(family_), theta(theta_), halfwidth(domain_halfwidth(family_, theta_)) {}

  std::complex<double> phi(const std::complex<double>& z) const {
    return stirlim::phi(family, z, theta);
  }
  std::complex<double> psi(const std::complex<double>& z) const {
    return stirlim::psi(family, z, theta);
  }
};

}  // namespace stirlim
