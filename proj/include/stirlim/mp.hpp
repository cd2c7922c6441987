#pragma once

// Extended-precision real and complex arithmetic on top of MPFR, plus the
// small trait layer that lets the special-function code run unchanged in
// double and multi-precision mode.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace stirlim {

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct integrity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline mpfr_prec_t& default_precision() {
  thread_local mpfr_prec_t prec = 256;
  return prec;
}

class ScopedPrecision {
 public:
  explicit ScopedPrecision(mpfr_prec_t bits) : saved_(default_precision()) {
    default_precision() = bits;
  }
  ~ScopedPrecision() { default_precision() = saved_; }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  mpfr_prec_t saved_;
};

// precision tag; distinguishes "make at N bits" from value constructors
struct Prec {
  mpfr_prec_t bits;
};

class MpReal {
 public:
  MpReal() { mpfr_init2(v_, default_precision()); mpfr_set_zero(v_, 1); }
  explicit MpReal(Prec p, double x = 0.0) {
    mpfr_init2(v_, p.bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  MpReal(double x) { mpfr_init2(v_, default_precision()); mpfr_set_d(v_, x, MPFR_RNDN); }
  MpReal(long x) { mpfr_init2(v_, default_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }
  MpReal(int x) : MpReal(static_cast<long>(x)) {}
  MpReal(const mpz_class& z, mpfr_prec_t prec = 0) {
    mpfr_init2(v_, prec ? prec : default_precision());
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  MpReal(const mpq_class& q, mpfr_prec_t prec = 0) {
    mpfr_init2(v_, prec ? prec : default_precision());
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  MpReal(const MpReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpReal(MpReal&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  std::string str(int digits = 20) const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
    return buf;
  }

  static mpfr_prec_t result_prec(const MpReal& a, const MpReal& b) {
    return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
  }

  friend MpReal operator+(const MpReal& a, const MpReal& b) {
    MpReal r(Prec{result_prec(a, b)});
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator-(const MpReal& a, const MpReal& b) {
    MpReal r(Prec{result_prec(a, b)});
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator*(const MpReal& a, const MpReal& b) {
    MpReal r(Prec{result_prec(a, b)});
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator/(const MpReal& a, const MpReal& b) {
    MpReal r(Prec{result_prec(a, b)});
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator-(const MpReal& a) {
    MpReal r(Prec{a.prec()});
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  MpReal& operator+=(const MpReal& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
  MpReal& operator-=(const MpReal& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
  MpReal& operator*=(const MpReal& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
  MpReal& operator/=(const MpReal& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

  friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

#define STIRLIM_MPFR_UNARY(name, fn)            \
  inline MpReal name(const MpReal& a) {         \
    MpReal r(Prec{a.prec()});                         \
    fn(r.raw(), a.raw(), MPFR_RNDN);            \
    return r;                                   \
  }

STIRLIM_MPFR_UNARY(abs, mpfr_abs)
STIRLIM_MPFR_UNARY(sqrt, mpfr_sqrt)
STIRLIM_MPFR_UNARY(exp, mpfr_exp)
STIRLIM_MPFR_UNARY(expm1, mpfr_expm1)
STIRLIM_MPFR_UNARY(log, mpfr_log)
STIRLIM_MPFR_UNARY(log1p, mpfr_log1p)
STIRLIM_MPFR_UNARY(sin, mpfr_sin)
STIRLIM_MPFR_UNARY(cos, mpfr_cos)
#undef STIRLIM_MPFR_UNARY

inline MpReal atan2(const MpReal& y, const MpReal& x) {
  MpReal r(Prec{MpReal::result_prec(y, x)});
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline MpReal hypot(const MpReal& x, const MpReal& y) {
  MpReal r(Prec{MpReal::result_prec(y, x)});
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline MpReal pow(const MpReal& x, long k) {
  MpReal r(Prec{x.prec()});
  mpfr_pow_si(r.raw(), x.raw(), k, MPFR_RNDN);
  return r;
}
inline MpReal mp_pi(mpfr_prec_t prec = 0) {
  MpReal r(Prec{prec ? prec : default_precision()});
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
inline bool isfinite(const MpReal& x) { return mpfr_number_p(x.raw()) != 0; }
inline bool isnan(const MpReal& x) { return x.is_nan(); }
inline double to_double(const MpReal& x) { return x.to_double(); }
inline double to_double(double x) { return x; }

class MpComplex {
 public:
  MpComplex() = default;
  MpComplex(MpReal re, MpReal im) : re_(std::move(re)), im_(std::move(im)) {}
  MpComplex(const MpReal& re) : re_(re), im_(Prec{re.prec()}, 0.0) {}
  MpComplex(double re) : re_(re), im_(0.0) {}
  explicit MpComplex(const std::complex<double>& z)
      : re_(z.real()), im_(z.imag()) {}

  const MpReal& real() const { return re_; }
  const MpReal& imag() const { return im_; }
  MpReal& real() { return re_; }
  MpReal& imag() { return im_; }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend MpComplex operator-(const MpComplex& a, const MpComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend MpComplex operator-(const MpComplex& a) { return {-a.re_, -a.im_}; }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend MpComplex operator*(const MpReal& s, const MpComplex& b) {
    return {s * b.re_, s * b.im_};
  }
  friend MpComplex operator*(const MpComplex& a, const MpReal& s) { return s * a; }
  friend MpComplex operator/(const MpComplex& a, const MpReal& s) {
    return {a.re_ / s, a.im_ / s};
  }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    MpReal d = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
  }
  MpComplex& operator+=(const MpComplex& b) { re_ += b.re_; im_ += b.im_; return *this; }
  MpComplex& operator-=(const MpComplex& b) { re_ -= b.re_; im_ -= b.im_; return *this; }
  MpComplex& operator*=(const MpComplex& b) { *this = *this * b; return *this; }

 private:
  MpReal re_{};
  MpReal im_{};
};

inline MpReal abs(const MpComplex& z) { return hypot(z.real(), z.imag()); }
inline MpReal norm(const MpComplex& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}
inline MpComplex conj(const MpComplex& z) { return {z.real(), -z.imag()}; }
inline MpReal real(const MpComplex& z) { return z.real(); }
inline MpReal imag(const MpComplex& z) { return z.imag(); }
inline MpReal arg(const MpComplex& z) { return atan2(z.imag(), z.real()); }

inline MpComplex exp(const MpComplex& z) {
  MpReal m = exp(z.real());
  MpReal s(Prec{z.imag().prec()}), c(Prec{z.imag().prec()});
  mpfr_sin_cos(s.raw(), c.raw(), z.imag().raw(), MPFR_RNDN);
  return {m * c, m * s};
}
inline MpComplex log(const MpComplex& z) { return {log(abs(z)), arg(z)}; }
inline MpComplex sqrt(const MpComplex& z) {
  if (z.real().is_zero() && z.imag().is_zero()) return MpComplex(MpReal(Prec{z.real().prec()}, 0.0));
  MpReal r = abs(z);
  MpReal two(Prec{z.real().prec()}, 2.0);
  MpReal s = sqrt((r + abs(z.real())) / two);
  if (z.real().sign() >= 0) {
    return {s, z.imag() / (two * s)};
  }
  MpReal t = abs(z.imag()) / (two * s);
  if (z.imag().sign() >= 0) return {t, s};
  return {t, -s};
}

// --- generic numeric helpers shared by double and multi-precision paths ---

template <class R>
struct complex_for;
template <>
struct complex_for<double> {
  using type = std::complex<double>;
};
template <>
struct complex_for<MpReal> {
  using type = MpComplex;
};
template <class R>
using complex_t = typename complex_for<R>::type;

template <class R>
struct real_for {
  using type = R;
};
template <>
struct real_for<std::complex<double>> {
  using type = double;
};
template <>
struct real_for<MpComplex> {
  using type = MpReal;
};
template <class T>
using real_t = typename real_for<T>::type;

// a value of the same type/precision as `like` holding `v`
inline double real_like(double, double v) { return v; }
inline MpReal real_like(const MpReal& like, double v) { return MpReal(Prec{like.prec()}, v); }
inline double real_like(const std::complex<double>&, double v) { return v; }
inline MpReal real_like(const MpComplex& like, double v) {
  return MpReal(Prec{like.real().prec()}, v);
}

inline std::complex<double> complex_like(double, double re, double im) { return {re, im}; }
inline MpComplex complex_like(const MpReal& like, double re, double im) {
  return {MpReal(Prec{like.prec()}, re), MpReal(Prec{like.prec()}, im)};
}
inline MpComplex complex_like(const MpComplex& like, double re, double im) {
  return {MpReal(Prec{like.real().prec()}, re), MpReal(Prec{like.real().prec()}, im)};
}

inline double eps_of(double) { return 2.220446049250313e-16; }
inline double eps_of(const std::complex<double>&) { return 2.220446049250313e-16; }
inline MpReal eps_of(const MpReal& x) {
  MpReal r(Prec{x.prec()}, 1.0);
  mpfr_mul_2si(r.raw(), r.raw(), 1 - static_cast<long>(x.prec()), MPFR_RNDN);
  return r;
}
inline MpReal eps_of(const MpComplex& z) { return eps_of(z.real()); }

inline double pi_like(double) { return 3.14159265358979323846; }
inline MpReal pi_like(const MpReal& x) { return mp_pi(x.prec()); }

}  // namespace stirlim
