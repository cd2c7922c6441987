#pragma once

// Lambert W: real branches W0 and W-1, the principal branch on the slit
// complex plane, one-sided limits on the branch cut (-inf, -1/e], the
// derivative, and the Puiseux expansion near the branch point. All routines
// are templated so the same code path runs in double and MPFR precision.

#include <algorithm>
#include <complex>

#include "stirlim/mp.hpp"

namespace stirlim {

enum class CutSide { above, below };
enum class PuiseuxSide { inside, above_cut, below_cut };

template <class R>
R branch_point_value(const R& like) {
  using std::exp;
  // -1/e at the working precision of `like`
  return -exp(real_like(like, -1.0));
}

namespace detail {

// Halley iteration on w e^w = z from a branch-selecting seed.
template <class C>
C halley_w(const C& z, C w) {
  using R = real_t<C>;
  using std::abs;
  using std::exp;
  const R eps = eps_of(w);
  const R scale = abs(z) + real_like(eps, 1e-290);
  const R tol = real_like(eps, 4.0) * eps * scale;
  R last_f = scale;
  for (int it = 0; it < 200; ++it) {
    C ew = exp(w);
    C f = w * ew - z;
    R af = abs(f);
    if (af <= tol) break;
    C wp1 = w + real_like(eps, 1.0);
    C denom = ew * wp1 - (w + real_like(eps, 2.0)) * f / (real_like(eps, 2.0) * wp1);
    C step = f / denom;
    w = w - step;
    if (af >= last_f && it > 40) break;  // stagnated at rounding level
    last_f = af;
  }
  return w;
}

template <class C>
C puiseux_seed(const C& p) {
  using std::abs;
  using R = real_t<C>;
  R one = real_like(abs(p), 1.0);
  C w = -C(one) + p;
  C p2 = p * p;
  C p3 = p2 * p;
  C p4 = p2 * p2;
  w = w - p2 * (one / real_like(one, 3.0));
  w = w + p3 * (real_like(one, 11.0) / real_like(one, 72.0));
  w = w - p4 * (real_like(one, 43.0) / real_like(one, 540.0));
  return w;
}

}  // namespace detail

template <class R>
R w0_real(const R& x) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::log1p;
  using std::sqrt;
  const R bp = branch_point_value(x);
  const R eps = eps_of(x);
  if (x < bp) {
    if (x > bp * (real_like(x, 1.0) + real_like(x, 64.0) * eps)) return real_like(x, -1.0);
    throw domain_error("w0_real: x below -1/e");
  }
  R w;
  R dist = x - bp;
  if (dist < real_like(x, 0.25)) {
    R p = sqrt(real_like(x, 2.0) * exp(real_like(x, 1.0)) * dist);
    w = detail::puiseux_seed(p);
  } else if (x < real_like(x, 2.5)) {
    w = log1p(x);
  } else {
    R lz = log(x);
    w = lz - log(lz);
  }
  return detail::halley_w(x, w);
}

template <class R>
R wm1_real(const R& x) {
  using std::exp;
  using std::log;
  using std::sqrt;
  const R bp = branch_point_value(x);
  const R eps = eps_of(x);
  if (x >= real_like(x, 0.0)) throw domain_error("wm1_real: x must be negative");
  if (x < bp) {
    if (x > bp * (real_like(x, 1.0) + real_like(x, 64.0) * eps)) return real_like(x, -1.0);
    throw domain_error("wm1_real: x below -1/e");
  }
  R w;
  if (x < real_like(x, -0.3)) {
    R p = -sqrt(real_like(x, 2.0) * exp(real_like(x, 1.0)) * (x - bp));
    w = detail::puiseux_seed(p);
  } else {
    R l1 = log(-x);
    R l2 = log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  // keep iterates on the lower branch
  const R cap = real_like(x, -1.0);
  const R scale = -x + real_like(x, 1e-290);
  const R tol = real_like(x, 4.0) * eps * scale;
  for (int it = 0; it < 200; ++it) {
    R ew = exp(w);
    R f = w * ew - x;
    if (f < tol && -f < tol) break;
    R wp1 = w + real_like(x, 1.0);
    R denom = ew * wp1 - (w + real_like(x, 2.0)) * f / (real_like(x, 2.0) * wp1);
    R wn = w - f / denom;
    if (wn > cap) wn = (w + cap) / real_like(x, 2.0);
    if (wn == w) break;
    w = wn;
  }
  return w;
}

template <class C>
C w0_complex(const C& z) {
  using R = real_t<C>;
  using std::abs;
  using std::exp;
  using std::imag;
  using std::log;
  using std::real;
  R re = real(z);
  R im = imag(z);
  const R zero = real_like(re, 0.0);
  const R bp = branch_point_value(re);
  if (im == zero && re <= bp) {
    throw domain_error("w0_complex: z on the branch cut; use w0_boundary");
  }
  C w;
  C zb = z - C(bp);
  if (abs(zb) < real_like(re, 0.25)) {
    C p = sqrt(real_like(re, 2.0) * exp(real_like(re, 1.0)) * zb);
    w = detail::puiseux_seed(p);
  } else if (abs(z) < real_like(re, 2.5)) {
    w = log(C(real_like(re, 1.0)) + z);
  } else {
    C lz = log(z);
    w = lz - log(lz);
  }
  return detail::halley_w(z, w);
}

// One-sided limit W0(x + i0) (or the conjugate below the cut) for x < -1/e.
template <class R>
complex_t<R> w0_boundary(const R& x, CutSide side) {
  using C = complex_t<R>;
  using std::exp;
  using std::sqrt;
  const R bp = branch_point_value(x);
  if (x >= bp) throw domain_error("w0_boundary: x must be < -1/e");
  const R one = real_like(x, 1.0);
  C w;
  if (bp - x < real_like(x, 1e-3)) {
    // Puiseux-seeded Halley on the upper sheet
    R delta = bp - x;
    C p = complex_like(x, 0.0, 1.0) * C(sqrt(real_like(x, 2.0) * exp(one) * delta));
    w = detail::halley_w(C(x), detail::puiseux_seed(p));
  } else {
    // Richardson extrapolation of W0(x + i eps), then a Halley polish
    const double eh[3] = {1e-6, 1e-7, 1e-8};
    C f[3];
    for (int i = 0; i < 3; ++i) {
      f[i] = w0_complex(C(x) + complex_like(x, 0.0, eh[i]));
    }
    C acc = C(real_like(x, 0.0));
    for (int i = 0; i < 3; ++i) {
      double li = 1.0;
      for (int j = 0; j < 3; ++j) {
        if (j != i) li *= (0.0 - eh[j]) / (eh[i] - eh[j]);
      }
      acc += C(real_like(x, li)) * f[i];
    }
    w = detail::halley_w(C(x), acc);
  }
  if (side == CutSide::below) w = conj(w);
  return w;
}

// W0(-e^s + i0) solved in log form; usable when e^s overflows.
inline std::complex<double> w0_boundary_neg_exp(double s) {
  using C = std::complex<double>;
  if (s <= 80.0) {
    return w0_boundary(-std::exp(s), CutSide::above);
  }
  const double pi = 3.14159265358979323846;
  C rhs(s, pi);
  C w(s - std::log(s), pi * (1.0 - 1.0 / s));
  for (int it = 0; it < 60; ++it) {
    C f = w + std::log(w) - rhs;
    C step = f / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 1e-16 * std::abs(w)) break;
  }
  return w;
}

template <class C>
C w0_derivative(const C& z) {
  using std::abs;
  const auto one = real_like(real(z), 1.0);
  if (abs(z) == real_like(real(z), 0.0)) return C(one);
  C w = w0_complex(z);
  return w / (z * (C(one) + w));
}

inline std::complex<double> w0_puiseux(double delta, PuiseuxSide side) {
  if (!(delta > 0.0 && delta < 0.1)) {
    throw domain_error("w0_puiseux: delta must be in (0, 0.1)");
  }
  double r = std::sqrt(2.0 * 2.718281828459045235 * delta);
  switch (side) {
    case PuiseuxSide::inside:
      return {-1.0 + r, 0.0};
    case PuiseuxSide::above_cut:
      return {-1.0, r};
    case PuiseuxSide::below_cut:
    default:
      return {-1.0, -r};
  }
}

}  // namespace stirlim
