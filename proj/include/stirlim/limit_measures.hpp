#pragma once

// Limit measures of the zero distributions: the Elbert measure on [0, e]
// (scaled Touchard zeros), the allocation limit measure Z^theta with density
// g_theta, and the Marchenko-Pastur law. Masses and transforms that need
// quadrature substitute t = e^{-s} so the 1/(t log^2 t) edge at 0 becomes a
// smooth 1/s^2 tail, which is integrated up to S with the analytic remainder
// h(S)*S.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <complex>
#include <limits>

#include "stirlim/lambert.hpp"
#include "stirlim/mp.hpp"

namespace stirlim {

inline double m_theta(double theta) {
  if (theta <= 0.0) throw domain_error("m_theta: theta must be > 0");
  if (theta == 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (theta * std::exp(1.0 / theta - 1.0) - 1.0);
}

// Stieltjes transform of the Elbert measure, 1 - e^{W0(-1/z)}
inline std::complex<double> stieltjes_limit_elbert(std::complex<double> z) {
  const double e = 2.718281828459045235;
  if (std::fabs(z.imag()) < 1e-14 && z.real() >= -1e-14 && z.real() <= e + 1e-14) {
    throw domain_error("stieltjes_limit_elbert: z on the support [0, e]");
  }
  return 1.0 - std::exp(w0_complex(-1.0 / z));
}

// density of the Elbert measure on (0, e)
inline double elbert_density(double t) {
  const double e = 2.718281828459045235;
  if (t <= 0.0) throw domain_error("elbert_density: t must be > 0");
  if (t >= e) return 0.0;
  auto w = w0_boundary(-1.0 / t, CutSide::above);
  return std::exp(w).imag() / 3.14159265358979323846;
}

// density of Z^theta on (0, m_theta)
inline double density_g(double theta, double t) {
  if (theta <= 0.0) throw domain_error("density_g: theta must be > 0");
  if (t <= 0.0) throw domain_error("density_g: t must be > 0");
  const double pi = 3.14159265358979323846;
  double u = -(1.0 / t + 1.0) / (theta * std::exp(1.0 / theta));
  if (u >= -std::exp(-1.0)) return 0.0;  // t beyond m_theta (theta != 1)
  auto w = w0_boundary(u, CutSide::above);
  auto r = w / (1.0 + theta * w);
  return theta * theta / (pi * t * (t + 1.0)) * r.imag();
}

namespace detail {

inline double log1p_exp(double s) {
  // log(e^s + 1)
  return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
}

// h(s) = f_Elbert(e^{-s}) e^{-s} = Im W / (pi |W|^2), W = W0(-e^s + i0)
inline double elbert_h(double s) {
  if (s < -1.0) return 0.0;
  auto w = w0_boundary_neg_exp(s);
  return w.imag() / (3.14159265358979323846 * std::norm(w));
}

// h(s) = g_theta(e^{-s}) e^{-s} = theta^2 / (pi (1 + e^{-s})) Im W/(1+theta W)
inline double z3_h(double theta, double s) {
  double lu = log1p_exp(s) - std::log(theta) - 1.0 / theta;  // log(-u)
  if (lu <= -1.0 + 1e-15) return 0.0;
  auto w = w0_boundary_neg_exp(lu);
  auto r = w / (1.0 + theta * w);
  double damp = s > 0.0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (std::exp(s) + 1.0);
  return theta * theta / 3.14159265358979323846 * damp * r.imag();
}

template <class F>
double integrate_smooth(F f, double a, double b, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

}  // namespace detail

// total mass of the Elbert measure by quadrature (oracle; should be 1)
inline double elbert_mass_quad(double S = 1e4, double tol = 1e-9) {
  double bulk = detail::integrate_smooth([](double s) { return detail::elbert_h(s); },
                                         -1.0, S, tol);
  return bulk + detail::elbert_h(S) * S;
}

// total mass of Z^theta by quadrature (should be min(theta, 1))
inline double z3_total_mass_quad(double theta, double S = 2000.0, double tol = 1e-8) {
  double lo = (theta == 1.0) ? -40.0 : -std::log(m_theta(theta));
  auto f = [theta](double s) { return detail::z3_h(theta, s); };
  double bulk = detail::integrate_smooth(f, lo, S, tol);
  return bulk + detail::z3_h(theta, S) * S;
}

// Stieltjes transform of the measure with density g_theta by quadrature
inline std::complex<double> z3_stieltjes_quad(double theta, std::complex<double> z,
                                              double S = 2000.0, double tol = 1e-8) {
  double lo = (theta == 1.0) ? -40.0 : -std::log(m_theta(theta));
  auto fre = [theta, z](double s) {
    return (detail::z3_h(theta, s) / (z - std::exp(-s))).real();
  };
  auto fim = [theta, z](double s) {
    return (detail::z3_h(theta, s) / (z - std::exp(-s))).imag();
  };
  std::complex<double> bulk(detail::integrate_smooth(fre, lo, S, tol),
                            detail::integrate_smooth(fim, lo, S, tol));
  return bulk + detail::z3_h(theta, S) * S / z;
}

// Stieltjes transform of Z^theta. Written with W/u = e^{-W} factored out so
// the removable point z = -1 needs no special case:
//   S(z) = theta/z + theta e^{-1/theta} e^{-W(u)} / (z^2 (1 + theta W(u))),
//   u = -(1/z + 1) / (theta e^{1/theta}).
inline std::complex<double> stieltjes_limit_Z3(std::complex<double> z, double theta) {
  if (theta <= 0.0) throw domain_error("stieltjes_limit_Z3: theta must be > 0");
  if (std::fabs(z.imag()) < 1e-14 && z.real() >= -1e-14) {
    throw domain_error("stieltjes_limit_Z3: z on the support [0, inf)");
  }
  std::complex<double> u = -(1.0 / z + 1.0) / (theta * std::exp(1.0 / theta));
  std::complex<double> w = w0_complex(u);
  return theta / z +
         theta * std::exp(-1.0 / theta) * std::exp(-w) / (z * z * (1.0 + theta * w));
}

// ---------------------------------------------------------------------------

inline double mp_density(double theta, double x) {
  if (theta <= 0.0) throw domain_error("mp_density: theta must be > 0");
  double lo = (std::sqrt(theta) - 1.0) * (std::sqrt(theta) - 1.0);
  double hi = (std::sqrt(theta) + 1.0) * (std::sqrt(theta) + 1.0);
  if (x <= lo || x >= hi) return 0.0;
  return std::sqrt((hi - x) * (x - lo)) / (2.0 * 3.14159265358979323846 * x);
}

inline double mp_atom_at_zero(double theta) {
  if (theta <= 0.0) throw domain_error("mp_atom_at_zero: theta must be > 0");
  return theta < 1.0 ? 1.0 - theta : 0.0;
}

inline double mp_mass_quad(double theta, double tol = 1e-9) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  double lo = (std::sqrt(theta) - 1.0) * (std::sqrt(theta) - 1.0);
  double hi = (std::sqrt(theta) + 1.0) * (std::sqrt(theta) + 1.0);
  double v = integrator.integrate([theta](double x) { return mp_density(theta, x); },
                                  lo, hi, tol);
  return v + mp_atom_at_zero(theta);
}

// cdf of the Marchenko-Pastur absolutely continuous part
inline double mp_cdf(double theta, double x, double tol = 1e-9) {
  double lo = (std::sqrt(theta) - 1.0) * (std::sqrt(theta) - 1.0);
  double hi = (std::sqrt(theta) + 1.0) * (std::sqrt(theta) + 1.0);
  double atom = mp_atom_at_zero(theta);
  if (x <= lo) return x >= 0.0 ? atom : 0.0;
  if (x >= hi) return 1.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  return atom + integrator.integrate([theta](double u) { return mp_density(theta, u); },
                                     lo, x, tol);
}

}  // namespace stirlim
