#pragma once

// Real-root isolation for real-rooted exact polynomials, empirical zero
// measures with Stieltjes evaluation, generalized Laguerre polynomials and
// the finite free multiplicative convolution.
//
// Isolation uses a descending Newton-Maehly iteration: for a polynomial with
// only real roots the step x -> x - p/(p' - p * sum 1/(x - r_found)) started
// above the largest remaining root decreases monotonically and converges to
// it. Each computed root is then certified by exact/ball sign changes at
// separating points; on any inconsistency the working precision escalates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "stirlim/exact.hpp"
#include "stirlim/mp.hpp"

namespace stirlim {

struct RootOptions {
  mpfr_prec_t min_prec = 256;
  mpfr_prec_t max_prec = 16384;
};

namespace detail {

inline double log2_abs(const mpq_class& q) {
  if (q == 0) return -1e18;
  signed long ne, de;
  double nm = mpz_get_d_2exp(&ne, q.get_num().get_mpz_t());
  double dm = mpz_get_d_2exp(&de, q.get_den().get_mpz_t());
  return (std::log2(std::fabs(nm)) + static_cast<double>(ne)) -
         (std::log2(std::fabs(dm)) + static_cast<double>(de));
}

// Fujiwara-style upper bound on |roots|
inline double root_bound(const std::vector<mpq_class>& c) {
  int deg = static_cast<int>(c.size()) - 1;
  double lglead = log2_abs(c[static_cast<size_t>(deg)]);
  double best = -1e18;
  for (int k = 0; k < deg; ++k) {
    if (c[static_cast<size_t>(k)] == 0) continue;
    best = std::max(best, (log2_abs(c[static_cast<size_t>(k)]) - lglead) / (deg - k));
  }
  if (best < -1e17) return 1.0;
  return std::ldexp(1.0, static_cast<int>(std::ceil(best)) + 2);
}

inline int sign_changes(const std::vector<mpq_class>& c, bool flip_odd) {
  int prev = 0, changes = 0;
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    int s = sgn(c[k]);
    if (flip_odd && (k & 1)) s = -s;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

struct MpPoly {
  std::vector<MpReal> c;

  void eval2(const MpReal& x, MpReal& p, MpReal& dp) const {
    mpfr_prec_t prec = x.prec();
    p = MpReal(Prec{prec}, 0.0);
    dp = MpReal(Prec{prec}, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      dp = dp * x + p;
      p = p * x + *it;
    }
  }
};

// sign of the exact polynomial at the dyadic point held by x; ball first,
// exact rational evaluation if the ball straddles zero
inline int certified_sign(const std::vector<mpq_class>& c, const MpPoly& cp, const MpReal& x) {
  mpfr_prec_t prec = x.prec();
  MpReal p(Prec{prec}, 0.0), a(Prec{prec}, 0.0);
  MpReal ax = abs(x);
  for (size_t i = cp.c.size(); i-- > 0;) {
    p = p * x + cp.c[i];
    a = a * ax + abs(cp.c[i]);
  }
  MpReal bound = a * MpReal(Prec{prec}, 4.0 * static_cast<double>(cp.c.size()));
  mpfr_mul_2si(bound.raw(), bound.raw(), 1 - static_cast<long>(prec), MPFR_RNDN);
  if (abs(p) > bound) return p.sign();
  // exact fallback
  mpq_class xq;
  mpfr_get_q(xq.get_mpq_t(), x.raw());
  mpq_class v = ExactPolynomial(c).eval(xq);
  return sgn(v);
}

// all roots of the (zero-root-free) polynomial, descending Newton-Maehly
inline bool maehly_all_roots(const std::vector<mpq_class>& cq, mpfr_prec_t prec,
                             std::vector<MpReal>& out) {
  const int deg = static_cast<int>(cq.size()) - 1;
  MpPoly cp;
  cp.c.reserve(cq.size());
  for (auto& q : cq) cp.c.emplace_back(q, prec);
  const double bound = root_bound(cq);
  const MpReal B(Prec{prec}, bound);
  MpReal relstop(Prec{prec}, 1.0);
  mpfr_mul_2si(relstop.raw(), relstop.raw(), 12 - static_cast<long>(prec), MPFR_RNDN);
  MpReal absstop = B * relstop;

  std::vector<MpReal> roots;
  roots.reserve(static_cast<size_t>(deg));
  const int cap = 80 + 3 * deg;
  for (int j = 0; j < deg; ++j) {
    MpReal x(Prec{prec}, 0.0);
    if (j == 0) {
      x = B;
    } else if (j == 1) {
      x = (B + roots[0]) / MpReal(Prec{prec}, 2.0);
    } else {
      x = (roots[static_cast<size_t>(j) - 2] + roots[static_cast<size_t>(j) - 1]) /
          MpReal(Prec{prec}, 2.0);
    }
    MpReal pv(Prec{prec}, 0.0), dv(Prec{prec}, 0.0);
    int it = 0;
    for (; it < cap; ++it) {
      cp.eval2(x, pv, dv);
      MpReal s(Prec{prec}, 0.0);
      for (const auto& r : roots) {
        MpReal diff = x - r;
        if (diff.is_zero()) return false;
        s += MpReal(Prec{prec}, 1.0) / diff;
      }
      MpReal denom = dv - pv * s;
      if (denom.is_zero() || !isfinite(denom)) break;
      MpReal xn = x - pv / denom;
      if (!(xn < x)) break;  // monotone descent finished
      MpReal drop = x - xn;
      x = xn;
      if (drop <= abs(x) * relstop + absstop) break;
    }
    if (it >= cap || !isfinite(x)) return false;
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  for (size_t i = 0; i + 1 < roots.size(); ++i) {
    if (!(roots[i] < roots[i + 1])) return false;
  }
  // certify: strict sign alternation at separating points and outer bounds
  const int lead = sgn(cq.back());
  int expect = lead;  // sign at +B
  MpReal prev = B;
  for (size_t i = roots.size(); i-- > 0;) {
    MpReal sep(Prec{prec}, 0.0);
    const MpReal& hi = prev;
    const MpReal& lo = roots[i];
    if (i + 1 == roots.size()) {
      sep = (B + lo) / MpReal(Prec{prec}, 2.0);
      if (!(sep > lo)) sep = B;
    } else if (lo.sign() > 0 && hi.sign() > 0) {
      sep = sqrt(lo * hi);
    } else if (lo.sign() < 0 && hi.sign() < 0) {
      sep = -sqrt(lo * hi);
    } else {
      sep = (lo + hi) / MpReal(Prec{prec}, 2.0);
    }
    if (!(sep > lo) || !(sep < hi)) return false;
    if (certified_sign(cq, cp, sep) != expect) return false;
    expect = -expect;
    prev = roots[i];
  }
  MpReal below = roots.front() - (MpReal(Prec{prec}, 1.0) + abs(roots.front()));
  if (certified_sign(cq, cp, below) != expect) return false;
  out = std::move(roots);
  return true;
}

}  // namespace detail

// All real roots of an all-real-rooted polynomial, ascending. Throws
// integrity_error if the certified root count cannot be made to match the
// degree at any precision (non-real-rooted input or precision failure).
inline std::vector<double> real_roots(const ExactPolynomial& p, RootOptions opts = {}) {
  if (p.is_zero()) throw domain_error("real_roots: zero polynomial");
  const int deg = p.degree();
  if (deg > 1000) throw domain_error("real_roots: degree > 1000 unsupported");
  std::vector<double> out;
  if (deg == 0) return out;
  // strip roots at the origin
  int m = 0;
  while (p.coeff(m) == 0) ++m;
  std::vector<mpq_class> cq(p.coeffs.begin() + m, p.coeffs.end());
  out.assign(static_cast<size_t>(m), 0.0);
  const int rdeg = static_cast<int>(cq.size()) - 1;
  if (rdeg == 0) return out;
  if (rdeg == 1) {
    mpq_class r = -cq[0] / cq[1];
    out.push_back(r.get_d());
    std::sort(out.begin(), out.end());
    return out;
  }
  // orientation: descend through large-magnitude roots first
  bool flip = false;
  if (detail::sign_changes(cq, false) == 0) {
    flip = true;  // no positive roots; work on p(-y)
    for (size_t k = 1; k < cq.size(); k += 2) cq[k] = -cq[k];
  }
  mpfr_prec_t prec =
      std::max<mpfr_prec_t>(opts.min_prec, 192 + static_cast<mpfr_prec_t>(1.3 * rdeg));
  for (; prec <= opts.max_prec; prec *= 2) {
    std::vector<MpReal> roots;
    if (detail::maehly_all_roots(cq, prec, roots)) {
      for (const auto& r : roots) out.push_back(flip ? -r.to_double() : r.to_double());
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  throw integrity_error(
      "real_roots: could not certify deg-many real roots; input may not be real-rooted");
}

// ---------------------------------------------------------------------------

struct RootMeasure {
  std::vector<double> points;  // negated roots, sorted ascending, all >= 0
  double weight = 0.0;         // 1/w_n
  double total_mass = 0.0;
};

inline RootMeasure empirical_measure(const ExactPolynomial& p, double w_n,
                                     RootOptions opts = {}) {
  auto roots = real_roots(p, opts);
  double scale = 1.0;
  for (double r : roots) scale = std::max(scale, std::fabs(r));
  RootMeasure m;
  m.points.reserve(roots.size());
  for (double r : roots) {
    if (r > 1e-9 * scale) throw integrity_error("empirical_measure: positive root found");
    m.points.push_back(std::max(0.0, -r));
  }
  std::sort(m.points.begin(), m.points.end());
  m.weight = 1.0 / w_n;
  m.total_mass = static_cast<double>(m.points.size()) / w_n;
  return m;
}

inline std::complex<double> stieltjes_empirical(const RootMeasure& m,
                                                std::complex<double> z) {
  if (std::fabs(z.imag()) < 1e-12 && z.real() >= -1e-12) {
    for (double x : m.points) {
      if (std::fabs(z.real() - x) < 1e-12) {
        throw domain_error("stieltjes_empirical: z collides with a mass point");
      }
    }
  }
  std::complex<double> acc = 0.0;
  for (double x : m.points) acc += 1.0 / (z - x);
  return m.weight * acc;
}

// ---------------------------------------------------------------------------

// generalized binomial C(a, k) for rational a
inline mpq_class binomial_rational(const mpq_class& a, int k) {
  if (k < 0) return mpq_class(0);
  mpq_class acc = 1;
  for (int j = 0; j < k; ++j) acc *= (a - j);
  return acc / mpq_class(factorial(k));
}

inline ExactPolynomial laguerre(int n, const mpq_class& alpha) {
  if (n < 0) throw domain_error("laguerre: n must be >= 0");
  std::vector<mpq_class> c(static_cast<size_t>(n) + 1);
  mpq_class na = alpha + n;
  for (int k = 0; k <= n; ++k) {
    mpq_class b = binomial_rational(na, n - k) / mpq_class(factorial(k));
    c[static_cast<size_t>(k)] = (k & 1) ? -b : b;
  }
  return ExactPolynomial(std::move(c));
}

inline ExactPolynomial finite_free_mult_conv(const ExactPolynomial& p,
                                             const ExactPolynomial& q, int n) {
  if (p.degree() > n || q.degree() > n) {
    throw domain_error("finite_free_mult_conv: degree exceeds n");
  }
  std::vector<mpq_class> c(static_cast<size_t>(n) + 1, mpq_class(0));
  for (int k = 0; k <= n; ++k) {
    mpq_class binom = mpq_class(factorial(n)) / (mpq_class(factorial(k)) * factorial(n - k));
    mpq_class v = p.coeff(k) * q.coeff(k) / binom;
    c[static_cast<size_t>(k)] = ((n - k) & 1) ? -v : v;
  }
  return ExactPolynomial(std::move(c));
}

// (x-1)^n, the unit element of the convolution
inline ExactPolynomial ffc_unit(int n) {
  std::vector<mpq_class> c(static_cast<size_t>(n) + 1);
  mpz_class b;
  for (int k = 0; k <= n; ++k) {
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    c[static_cast<size_t>(k)] = ((n - k) & 1) ? mpq_class(-b) : mpq_class(b);
  }
  return ExactPolynomial(std::move(c));
}

}  // namespace stirlim
