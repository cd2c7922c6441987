#pragma once

// Exact integer/rational layer: Stirling triangles of both kinds, Bell
// numbers, generating polynomials, the three Stirling distributions, their
// exact moments and an extended-precision log-MGF.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stirlim/mp.hpp"

namespace stirlim {

enum class StirlingKind { first, second };

class StirlingTriangle {
 public:
  using Row = std::vector<mpz_class>;  // index k, entry 0 unused (= 0)

  explicit StirlingTriangle(StirlingKind kind, int n_max = 2000)
      : kind_(kind), n_max_(n_max) {}

  StirlingKind kind() const { return kind_; }
  int n_max() const { return n_max_; }

  std::shared_ptr<const Row> row(int n) const {
    if (n < 1 || n > n_max_) throw domain_error("StirlingTriangle: n out of range");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rows_.lower_bound(n);
    if (it != rows_.end() && it->first == n) return it->second;
    // roll forward from the largest cached row below n
    Row cur;
    int from;
    if (it == rows_.begin()) {
      cur = {mpz_class(0), mpz_class(1)};
      from = 1;
    } else {
      --it;
      cur = *it->second;
      from = it->first;
    }
    for (int m = from; m < n; ++m) {
      Row next(static_cast<size_t>(m) + 2);
      next[0] = 0;
      for (int k = 1; k <= m + 1; ++k) {
        mpz_class v = 0;
        if (k <= m) {
          v = cur[static_cast<size_t>(k)];
          v *= (kind_ == StirlingKind::first) ? m : k;
        }
        v += cur[static_cast<size_t>(k - 1)];  // cur[0] == 0
        next[static_cast<size_t>(k)] = std::move(v);
      }
      cur = std::move(next);
    }
    auto sp = std::make_shared<const Row>(std::move(cur));
    rows_[n] = sp;
    return sp;
  }

  mpz_class value(int n, int k) const {
    if (n < 1) throw domain_error("stirling: n must be >= 1");
    if (k < 1 || k > n) throw domain_error("stirling: k out of range");
    return (*row(n))[static_cast<size_t>(k)];
  }

 private:
  StirlingKind kind_;
  int n_max_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const Row>> rows_;
};

inline const StirlingTriangle& triangle(StirlingKind kind) {
  static StirlingTriangle first(StirlingKind::first);
  static StirlingTriangle second(StirlingKind::second);
  return kind == StirlingKind::first ? first : second;
}

inline mpz_class stirling(StirlingKind kind, int n, int k) {
  return triangle(kind).value(n, k);
}

inline mpz_class bell(int n) {
  if (n < 1) throw domain_error("bell: n must be >= 1");
  auto row = triangle(StirlingKind::second).row(n);
  mpz_class s = 0;
  for (int k = 1; k <= n; ++k) s += (*row)[static_cast<size_t>(k)];
  return s;
}

inline mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// ---------------------------------------------------------------------------

struct ExactPolynomial {
  std::vector<mpq_class> coeffs;  // index = degree

  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<mpq_class> c) : coeffs(std::move(c)) { trim(); }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  mpq_class coeff(int k) const {
    if (k < 0 || k > degree()) return mpq_class(0);
    return coeffs[static_cast<size_t>(k)];
  }

  mpq_class eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  // double-precision Horner (T = double or std::complex<double>)
  template <class T>
  T eval_d(const T& x) const {
    T acc = x - x;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      acc = acc * x + T(it->get_d());
    }
    return acc;
  }
  MpReal eval_mp(const MpReal& x) const {
    MpReal acc(Prec{x.prec()}, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      acc = acc * x + MpReal(*it, x.prec());
    }
    return acc;
  }
  MpComplex eval_mp(const MpComplex& x) const {
    MpComplex acc(MpReal(Prec{x.real().prec()}, 0.0));
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      acc = acc * x + MpComplex(MpReal(*it, x.real().prec()));
    }
    return acc;
  }

  ExactPolynomial derivative() const {
    std::vector<mpq_class> d;
    for (size_t k = 1; k < coeffs.size(); ++k) d.push_back(coeffs[k] * mpq_class(static_cast<long>(k)));
    return ExactPolynomial(std::move(d));
  }
  // p(c*x)
  ExactPolynomial scale_arg(const mpq_class& c) const {
    std::vector<mpq_class> out(coeffs.size());
    mpq_class ck = 1;
    for (size_t k = 0; k < coeffs.size(); ++k) {
      out[k] = coeffs[k] * ck;
      ck *= c;
    }
    return ExactPolynomial(std::move(out));
  }
  // p(-x)
  ExactPolynomial negate_arg() const { return scale_arg(mpq_class(-1)); }

  friend ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
    std::vector<mpq_class> out(std::max(a.coeffs.size(), b.coeffs.size()), mpq_class(0));
    for (size_t k = 0; k < a.coeffs.size(); ++k) out[k] += a.coeffs[k];
    for (size_t k = 0; k < b.coeffs.size(); ++k) out[k] += b.coeffs[k];
    return ExactPolynomial(std::move(out));
  }
  friend ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b) {
    std::vector<mpq_class> out(std::max(a.coeffs.size(), b.coeffs.size()), mpq_class(0));
    for (size_t k = 0; k < a.coeffs.size(); ++k) out[k] += a.coeffs[k];
    for (size_t k = 0; k < b.coeffs.size(); ++k) out[k] -= b.coeffs[k];
    return ExactPolynomial(std::move(out));
  }
  friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return ExactPolynomial();
    std::vector<mpq_class> out(a.coeffs.size() + b.coeffs.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
      if (a.coeffs[i] == 0) continue;
      for (size_t j = 0; j < b.coeffs.size(); ++j) out[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    return ExactPolynomial(std::move(out));
  }
  friend ExactPolynomial operator*(const mpq_class& s, const ExactPolynomial& a) {
    std::vector<mpq_class> out(a.coeffs.size());
    for (size_t k = 0; k < a.coeffs.size(); ++k) out[k] = s * a.coeffs[k];
    return ExactPolynomial(std::move(out));
  }
};

inline ExactPolynomial monomial(int k, const mpq_class& c = mpq_class(1)) {
  std::vector<mpq_class> v(static_cast<size_t>(k) + 1, mpq_class(0));
  v.back() = c;
  return ExactPolynomial(std::move(v));
}

// x(x-1)...(x-k+1)
inline ExactPolynomial falling_factorial_poly(int k) {
  ExactPolynomial p(std::vector<mpq_class>{mpq_class(1)});
  for (int j = 0; j < k; ++j) {
    p = p * ExactPolynomial(std::vector<mpq_class>{mpq_class(-j), mpq_class(1)});
  }
  return p;
}

// generating polynomial of first-kind numbers: x(x+1)...(x+n-1)
inline ExactPolynomial stirling_first_poly(int n) {
  auto row = triangle(StirlingKind::first).row(n);
  std::vector<mpq_class> c(static_cast<size_t>(n) + 1, mpq_class(0));
  for (int k = 1; k <= n; ++k) c[static_cast<size_t>(k)] = mpq_class((*row)[static_cast<size_t>(k)]);
  return ExactPolynomial(std::move(c));
}

inline ExactPolynomial touchard_poly(int n) {
  auto row = triangle(StirlingKind::second).row(n);
  std::vector<mpq_class> c(static_cast<size_t>(n) + 1, mpq_class(0));
  for (int k = 1; k <= n; ++k) c[static_cast<size_t>(k)] = mpq_class((*row)[static_cast<size_t>(k)]);
  return ExactPolynomial(std::move(c));
}

// S_n(theta) as the rising-factorial product
inline mpq_class stirling_first_norm(int n, const mpq_class& theta) {
  mpq_class acc = 1;
  for (int j = 0; j < n; ++j) acc *= theta + j;
  return acc;
}

inline mpq_class touchard_value(int n, const mpq_class& x) {
  return touchard_poly(n).eval(x);
}

// theta(theta-1)...(theta-k+1)
inline mpq_class falling_factorial(const mpq_class& theta, int k) {
  mpq_class acc = 1;
  for (int j = 0; j < k; ++j) acc *= theta - j;
  return acc;
}

// ---------------------------------------------------------------------------

namespace detail {
inline bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

inline void check_family_theta(int family, int n, const mpq_class& theta, bool relaxed) {
  if (family < 1 || family > 3) throw domain_error("family must be 1, 2 or 3");
  if (n < 1) throw domain_error("n must be >= 1");
  if (theta <= 0) throw domain_error("theta must be > 0");
  if (family == 3 && !relaxed) {
    bool ok = is_integer(theta) || theta > mpq_class(n - 1);
    if (!ok) {
      throw domain_error(
          "family 3: theta must be a positive integer or exceed n-1 "
          "(use relaxed mode for other values)");
    }
  }
}
}  // namespace detail

// Coefficients of the probability generating function of X^(i)_{n,theta}.
// Relaxed mode admits any theta > 0 for family 3; the coefficients may then
// carry signs and no longer form a pmf.
inline ExactPolynomial gen_poly(int family, int n, const mpq_class& theta, bool relaxed = false) {
  detail::check_family_theta(family, n, theta, relaxed);
  std::vector<mpq_class> c(static_cast<size_t>(n) + 1, mpq_class(0));
  if (family == 1) {
    auto row = triangle(StirlingKind::first).row(n);
    mpq_class norm = stirling_first_norm(n, theta);
    mpq_class tk = 1;
    for (int k = 1; k <= n; ++k) {
      tk *= theta;
      c[static_cast<size_t>(k)] = mpq_class((*row)[static_cast<size_t>(k)]) * tk / norm;
    }
  } else if (family == 2) {
    auto row = triangle(StirlingKind::second).row(n);
    mpq_class norm = 0;
    std::vector<mpq_class> w(static_cast<size_t>(n) + 1);
    mpq_class tk = 1;
    for (int k = 1; k <= n; ++k) {
      tk *= theta;
      w[static_cast<size_t>(k)] = mpq_class((*row)[static_cast<size_t>(k)]) * tk;
      norm += w[static_cast<size_t>(k)];
    }
    for (int k = 1; k <= n; ++k) c[static_cast<size_t>(k)] = w[static_cast<size_t>(k)] / norm;
  } else {
    auto row = triangle(StirlingKind::second).row(n);
    mpq_class norm = 1;
    for (int j = 0; j < n; ++j) norm *= theta;
    mpq_class ff = 1;
    for (int k = 1; k <= n; ++k) {
      ff *= theta - (k - 1);
      c[static_cast<size_t>(k)] = mpq_class((*row)[static_cast<size_t>(k)]) * ff / norm;
    }
  }
  return ExactPolynomial(std::move(c));
}

struct DiscreteDist {
  int family = 0;
  int n = 0;
  mpq_class theta;
  std::vector<mpq_class> pmf;  // index k; pmf[0] = 0

  int support_max() const { return static_cast<int>(pmf.size()) - 1; }
};

inline DiscreteDist dist(int family, int n, const mpq_class& theta) {
  detail::check_family_theta(family, n, theta, /*relaxed=*/false);
  ExactPolynomial g = gen_poly(family, n, theta);
  DiscreteDist d;
  d.family = family;
  d.n = n;
  d.theta = theta;
  d.pmf.assign(static_cast<size_t>(g.degree()) + 1, mpq_class(0));
  for (int k = 1; k <= g.degree(); ++k) d.pmf[static_cast<size_t>(k)] = g.coeff(k);
  return d;
}

// exact (mean, variance)
inline std::pair<mpq_class, mpq_class> moments(const DiscreteDist& d) {
  mpq_class m1 = 0, m2 = 0;
  for (int k = 1; k <= d.support_max(); ++k) {
    mpq_class kp = d.pmf[static_cast<size_t>(k)] * k;
    m1 += kp;
    m2 += kp * k;
  }
  return {m1, m2 - m1 * m1};
}

// moments of the (possibly signed) coefficient sequence of a relaxed
// generating polynomial, as derivatives of log G(e^z) at z = 0
inline std::pair<mpq_class, mpq_class> poly_log_moments(const ExactPolynomial& g) {
  mpq_class s0 = 0, s1 = 0, s2 = 0;
  for (int k = 0; k <= g.degree(); ++k) {
    mpq_class c = g.coeff(k);
    s0 += c;
    s1 += c * k;
    s2 += c * k * k;
  }
  if (s0 == 0) throw domain_error("poly_log_moments: G(1) = 0");
  mpq_class mean = s1 / s0;
  return {mean, s2 / s0 - mean * mean};
}

// log of the moment generating function, sum_k pmf(k) e^{zk}, evaluated with
// a max-term shift so that n ~ 1000 stays well-scaled at any precision.
inline MpComplex log_mgf(const DiscreteDist& d, const std::complex<double>& z,
                         mpfr_prec_t bits = 256) {
  if (bits < 64) throw domain_error("log_mgf: precision must be >= 64 bits");
  const int kmax = d.support_max();
  // locate the dominating term with a cheap low-precision pass
  int k_star = 1;
  double best = -1e300;
  for (int k = 1; k <= kmax; ++k) {
    const mpq_class& p = d.pmf[static_cast<size_t>(k)];
    if (p == 0) continue;
    double lp = log(MpReal(p, 64)).to_double();
    double val = lp + k * z.real();
    if (val > best) {
      best = val;
      k_star = k;
    }
  }
  MpComplex zz(MpReal(Prec{bits}, z.real()), MpReal(Prec{bits}, z.imag()));
  MpComplex ez = exp(zz);
  MpReal p_star(d.pmf[static_cast<size_t>(k_star)], bits);
  // sum (pmf_k / pmf_kstar) e^{z (k - k_star)}
  MpComplex sum(MpReal(Prec{bits}, 0.0));
  MpComplex ezk = exp(MpReal(Prec{bits}, static_cast<double>(1 - k_star)) * zz);
  for (int k = 1; k <= kmax; ++k) {
    const mpq_class& p = d.pmf[static_cast<size_t>(k)];
    if (p != 0) sum += MpComplex(MpReal(p, bits) / p_star) * ezk;
    ezk *= ez;
  }
  if (!isfinite(sum.real()) || !isfinite(sum.imag()) ||
      (sum.real().is_zero() && sum.imag().is_zero())) {
    throw precision_error("log_mgf: underflow/overflow at this precision; raise bits");
  }
  MpComplex lg = log(sum);
  return {lg.real() + log(p_star) + MpReal(Prec{bits}, static_cast<double>(k_star)) * zz.real(),
          lg.imag() + MpReal(Prec{bits}, static_cast<double>(k_star)) * zz.imag()};
}

}  // namespace stirlim
