#pragma once

// Numerical verification harness: mod-phi convergence errors with rate fits,
// local-limit sup errors, large-deviation errors, the mod-Poisson limit, and
// saddle-radius contour integrals checked against exact values.

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <complex>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "stirlim/exact.hpp"
#include "stirlim/gammaz.hpp"
#include "stirlim/mod_phi.hpp"
#include "stirlim/mp.hpp"

namespace stirlim {

struct RateReport {
  int family = 0;
  double theta = 0.0;
  std::string z_or_t;
  std::vector<long> n_values;
  std::vector<double> errors;
  double fitted_slope = 0.0;
  bool passed = false;

  nlohmann::json to_json() const {
    return {{"family", family},   {"theta", theta},
            {"z_or_t", z_or_t},   {"n_values", n_values},
            {"errors", errors},   {"fitted_slope", fitted_slope},
            {"passed", passed}};
  }
};

// OLS slope of log(error) against log(n); errors are floored to keep
// identically-zero sequences (exact agreement) representable.
inline double fit_slope(const std::vector<long>& ns, const std::vector<double>& errs,
                        double floor_at = 1e-60) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(ns.size());
  for (int i = 0; i < n; ++i) {
    double x = std::log(static_cast<double>(ns[i]));
    double y = std::log(std::max(errs[i], floor_at));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

// allows a single non-monotone step
inline bool eventually_decreasing(const std::vector<double>& errs) {
  int bad = 0;
  for (size_t i = 0; i + 1 < errs.size(); ++i) {
    if (errs[i + 1] >= errs[i]) ++bad;
  }
  return bad <= 1;
}

namespace detail {
inline std::string fmt_complex(std::complex<double> z) {
  char buf[64];
  if (z.imag() == 0.0) {
    snprintf(buf, sizeof buf, "%g", z.real());
  } else {
    snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
  }
  return buf;
}

inline mpq_class tilted_theta(int n, const mpq_class& vt) {
  return vt * n;
}
}  // namespace detail

// | MGF(z) e^{-n phi_i(z)} - Psi_i(z) | with exact pmf and extended precision
inline double mod_phi_error(int family, int n, const mpq_class& vt,
                            std::complex<double> z, mpfr_prec_t bits = 256,
                            bool relaxed = false) {
  mpq_class theta_q = detail::tilted_theta(n, vt);
  MpReal vtr(vt, bits);
  MpComplex zz(MpReal(Prec{bits}, z.real()), MpReal(Prec{bits}, z.imag()));
  MpComplex lmgf(MpReal(Prec{bits}, 0.0));
  if (!relaxed || detail::is_integer(theta_q)) {
    DiscreteDist d = dist(family, n, theta_q);
    lmgf = log_mgf(d, z, bits);
  } else {
    if (family != 3) throw domain_error("mod_phi_error: relaxed mode is family-3 only");
    ExactPolynomial g = gen_poly(3, n, theta_q, /*relaxed=*/true);
    MpComplex val = g.eval_mp(exp(zz));
    lmgf = log(val);
  }
  MpComplex ph = phi(family, zz, vtr);
  MpComplex ratio = exp(lmgf - MpReal(Prec{bits}, static_cast<double>(n)) * ph);
  MpComplex ps = psi(family, zz, vtr);
  return abs(ratio - ps).to_double();
}

// sqrt(n) * sup_k | pmf(k) - gaussian(k; mu n, sigma^2 n) |
inline double llt_sup_error(int family, int n, const mpq_class& vt) {
  DiscreteDist d = dist(family, n, detail::tilted_theta(n, vt));
  double vtd = mpq_class(vt).get_d();
  double m = mu(family, vtd) * n;
  double s2 = sigma2(family, vtd) * n;
  double norm = 1.0 / std::sqrt(2.0 * 3.14159265358979323846 * s2);
  double sup = 0.0;
  for (int k = 0; k <= n; ++k) {
    double pk = (k >= 1 && k <= d.support_max()) ? d.pmf[static_cast<size_t>(k)].get_d() : 0.0;
    double gk = norm * std::exp(-(k - m) * (k - m) / (2.0 * s2));
    sup = std::max(sup, std::fabs(pk - gk));
  }
  return std::sqrt(static_cast<double>(n)) * sup;
}

// | -(1/n) log pmf(round(t n)) - I_i(t) |
inline double ldp_error(int family, int n, const mpq_class& vt, double t) {
  DiscreteDist d = dist(family, n, detail::tilted_theta(n, vt));
  long k = std::lround(t * n);
  if (k < 1 || k > d.support_max() || d.pmf[static_cast<size_t>(k)] == 0) {
    throw domain_error("ldp_error: round(t n) outside the support");
  }
  MpReal lp = log(MpReal(d.pmf[static_cast<size_t>(k)], 256));
  double emp = -lp.to_double() / n;
  return std::fabs(emp - rate(family, t, mpq_class(vt).get_d()));
}

// | MGF(z) / e^{(log n)(e^z - 1)} - 1/Gamma(e^z) |
inline double mod_poisson_error(int n, std::complex<double> z, mpfr_prec_t bits = 256) {
  DiscreteDist d = dist(1, n, mpq_class(1));
  MpComplex lmgf = log_mgf(d, z, bits);
  MpComplex zz(MpReal(Prec{bits}, z.real()), MpReal(Prec{bits}, z.imag()));
  MpComplex expo = MpReal(Prec{bits}, std::log(static_cast<double>(n))) * (exp(zz) - MpComplex(1.0));
  std::complex<double> ratio = exp(lmgf - expo).to_complex();
  std::complex<double> target = 1.0 / gamma_complex(std::exp(z));
  return std::abs(ratio - target);
}

// --- contour integrals on the saddle radius --------------------------------

namespace detail {

// trapezoid on the circle |x| = r, doubling until two passes agree
template <class F>
std::complex<double> contour_doubling(F integrand, int min_points) {
  std::complex<double> prev = 0.0;
  for (int m = std::max(min_points, 8); m <= (1 << 16); m *= 2) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < m; ++j) {
      double phi = 2.0 * 3.14159265358979323846 * j / m;
      acc += integrand(phi);
    }
    acc /= static_cast<double>(m);
    if (std::abs(acc - prev) <= 1e-12 * std::abs(acc)) return acc;
    prev = acc;
  }
  return prev;
}

}  // namespace detail

// Cauchy integral for T_n(nz)/n! on the circle through the saddle W0(1/z),
// compared against the exact rational value; returns the relative error.
inline double contour_check_touchard(int n, const mpq_class& z, int min_points = 1 << 10) {
  if (n > 60) throw domain_error("contour_check_touchard: n must be <= 60");
  double zd = z.get_d();
  if (zd >= -2.718281828459045235 && zd <= 0.0) {
    throw domain_error("contour_check_touchard: z inside [-e, 0]");
  }
  double r = w0_real(1.0 / zd);
  auto integrand = [&](double phi) {
    std::complex<double> x = std::polar(r, phi);
    std::complex<double> f = std::exp(zd * (std::exp(x) - 1.0)) / x;
    return std::pow(f, n);
  };
  std::complex<double> I = detail::contour_doubling(integrand, min_points);
  mpq_class exact = touchard_value(n, z * n) / mpq_class(factorial(n));
  double ex = exact.get_d();
  return std::abs(I.real() - ex) / std::fabs(ex);
}

// Cauchy integral for the family-3 MGF at z on the circle through the saddle
// L3(z; vt); relative error against the exact-pmf evaluation.
inline double contour_check_g3(int n, const mpq_class& vt, double z,
                               int min_points = 1 << 10) {
  if (n > 60) throw domain_error("contour_check_g3: n must be <= 60");
  mpq_class theta_q = detail::tilted_theta(n, vt);
  if (!detail::is_integer(theta_q)) {
    throw domain_error("contour_check_g3: vt*n must be an integer");
  }
  double vtd = mpq_class(vt).get_d();
  double theta = theta_q.get_d();
  double arg = (std::exp(-z) - 1.0) * std::exp(-1.0 / vtd) / vtd;
  double r = 1.0 / vtd + w0_real(arg);
  double ez = std::exp(z);
  auto integrand = [&](double phi) {
    std::complex<double> s = std::polar(r, phi);
    std::complex<double> base = 1.0 + ez * (std::exp(s) - 1.0);
    return std::pow(base, theta) * std::pow(s, -n);
  };
  std::complex<double> I = detail::contour_doubling(integrand, min_points);
  mpq_class pref = mpq_class(factorial(n));
  for (int j = 0; j < n; ++j) pref /= theta_q;
  double val = pref.get_d() * I.real();
  // exact route: sum of the exact pmf against e^{zk}
  DiscreteDist d = dist(3, n, theta_q);
  MpComplex lm = log_mgf(d, {z, 0.0}, 256);
  double ex = exp(lm.real()).to_double();
  return std::fabs(val - ex) / ex;
}

// --- linear growth of moments ----------------------------------------------

struct MomentGrowthReport {
  RateReport mean;
  RateReport variance;
  bool passed = false;
};

inline MomentGrowthReport moment_growth_check(int family, const mpq_class& vt,
                                              const std::vector<long>& ns,
                                              bool relaxed = false) {
  MomentGrowthReport rep;
  double vtd = mpq_class(vt).get_d();
  rep.mean.family = rep.variance.family = family;
  rep.mean.theta = rep.variance.theta = vtd;
  rep.mean.z_or_t = "mean";
  rep.variance.z_or_t = "variance";
  rep.mean.n_values = rep.variance.n_values = ns;
  for (long n : ns) {
    mpq_class theta_q = detail::tilted_theta(static_cast<int>(n), vt);
    std::pair<mpq_class, mpq_class> mom;
    if (!relaxed || detail::is_integer(theta_q)) {
      mom = moments(dist(family, static_cast<int>(n), theta_q));
    } else {
      mom = poly_log_moments(gen_poly(3, static_cast<int>(n), theta_q, true));
    }
    double em = mom.first.get_d() / static_cast<double>(n);
    double ev = mom.second.get_d() / static_cast<double>(n);
    rep.mean.errors.push_back(std::fabs(em - mu(family, vtd)));
    rep.variance.errors.push_back(std::fabs(ev - sigma2(family, vtd)));
  }
  rep.mean.fitted_slope = fit_slope(ns, rep.mean.errors);
  rep.variance.fitted_slope = fit_slope(ns, rep.variance.errors);
  rep.mean.passed = rep.mean.fitted_slope <= -0.8;
  rep.variance.passed = rep.variance.fitted_slope <= -0.8;
  rep.passed = rep.mean.passed && rep.variance.passed;
  return rep;
}

// --- tiny deterministic worker pool ----------------------------------------

template <class F>
void parallel_for(int count, F body, int jobs = 0) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::future<void>> fs;
  fs.reserve(static_cast<size_t>(jobs));
  std::atomic<int> next{0};
  for (int w = 0; w < jobs; ++w) {
    fs.push_back(std::async(std::launch::async, [&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    }));
  }
  for (auto& f : fs) f.get();
}

}  // namespace stirlim
