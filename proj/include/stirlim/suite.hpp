#pragma once

// The verification suite behind `verify`: twelve numbered checks covering
// exact combinatorics, Lambert W, mod-phi rates, local limit theorems, large
// deviations, zero measures, density totals, convolution identities, contour
// integrals, the sigma landscape and the mod-Poisson limit. The "fast" flavor
// runs the same checks at reduced sizes (with brackets recalibrated where the
// threshold depends on n); the "full" flavor is the acceptance gate.

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "stirlim/exact.hpp"
#include "stirlim/lambert.hpp"
#include "stirlim/limit_measures.hpp"
#include "stirlim/mod_phi.hpp"
#include "stirlim/verify.hpp"
#include "stirlim/zeros.hpp"

namespace stirlim {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
  nlohmann::json data;

  nlohmann::json to_json() const {
    return {{"id", id},         {"name", name},     {"passed", passed},
            {"seconds", seconds}, {"detail", detail}, {"data", data}};
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<CriterionResult> results;
  bool all_passed = true;

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) arr.push_back(r.to_json());
    return {{"suite", suite}, {"all_passed", all_passed}, {"criteria", arr}};
  }
};

namespace suite_detail {

struct Check {
  bool ok = true;
  std::ostringstream detail;
  nlohmann::json data = nlohmann::json::array();

  void note(const std::string& label, double value, bool pass) {
    ok = ok && pass;
    data.push_back({{"check", label}, {"value", value}, {"passed", pass}});
    if (!pass) detail << label << "=" << value << " FAILED; ";
  }
  void push(const nlohmann::json& j, bool pass) {
    ok = ok && pass;
    data.push_back(j);
  }
};

// ---- criterion 1: brute-force enumeration oracle --------------------------

inline void count_partitions_by_blocks(int pos, int n, int used, std::vector<int>& label,
                                       std::vector<long>& out) {
  if (pos == n) {
    ++out[static_cast<size_t>(used)];
    return;
  }
  for (int b = 0; b < used; ++b) {
    label[static_cast<size_t>(pos)] = b;
    count_partitions_by_blocks(pos + 1, n, used, label, out);
  }
  label[static_cast<size_t>(pos)] = used;
  count_partitions_by_blocks(pos + 1, n, used + 1, label, out);
}

inline std::vector<long> partitions_by_blocks(int n) {
  std::vector<long> out(static_cast<size_t>(n) + 1, 0);
  std::vector<int> label(static_cast<size_t>(n), 0);
  count_partitions_by_blocks(0, n, 0, label, out);
  return out;
}

inline std::vector<long> permutations_by_cycles(int n) {
  std::vector<long> out(static_cast<size_t>(n) + 1, 0);
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<bool> seen(static_cast<size_t>(n), false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
      if (seen[static_cast<size_t>(i)]) continue;
      ++cycles;
      for (int j = i; !seen[static_cast<size_t>(j)]; j = perm[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = true;
      }
    }
    ++out[static_cast<size_t>(cycles)];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline CriterionResult criterion1(bool) {
  Check c;
  for (int n = 1; n <= 8; ++n) {
    auto cyc = permutations_by_cycles(n);
    auto blk = partitions_by_blocks(n);
    for (int k = 1; k <= n; ++k) {
      bool ok1 = stirling(StirlingKind::first, n, k) == cyc[static_cast<size_t>(k)];
      bool ok2 = stirling(StirlingKind::second, n, k) == blk[static_cast<size_t>(k)];
      if (!ok1 || !ok2) {
        c.note("enumeration n=" + std::to_string(n) + " k=" + std::to_string(k), 0.0, false);
      }
    }
  }
  if (c.ok) c.detail << "all Stirling numbers for n<=8 match enumeration";
  return {1, "exactness oracle (enumeration, n<=8)", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 2: Lambert W identity grid ----------------------------------

inline CriterionResult criterion2(bool) {
  Check c;
  const double bp = -std::exp(-1.0);
  long checked = 0, failed = 0;
  double worst = 0.0;
  auto resid = [&](std::complex<double> w, std::complex<double> z) {
    double r = std::abs(w * std::exp(w) - z) / std::max(1.0, std::abs(z));
    worst = std::max(worst, r);
    ++checked;
    if (r > 1e-14) ++failed;
  };
  for (int j = 0; j < 2600; ++j) {
    double u = -12.0 + 18.5 * j / 2599.0;  // x - bp from 1e-12 up to ~1e6.5
    double x = bp + std::pow(10.0, u);
    resid(std::complex<double>(w0_real(x), 0.0), {x, 0.0});
  }
  for (int j = 0; j < 1300; ++j) {
    double u = -12.0 + 11.5 * j / 1299.0;
    double x = bp + std::pow(10.0, u);
    if (x >= 0.0) break;
    resid(std::complex<double>(wm1_real(x), 0.0), {x, 0.0});
  }
  for (int j = 0; j < 1300; ++j) {
    double v = -8.0 + 7.5 * j / 1299.0;  // x in (-1/e, 0) from the zero side
    double x = -std::pow(10.0, v);
    if (x <= bp) continue;
    resid(std::complex<double>(wm1_real(x), 0.0), {x, 0.0});
  }
  for (int ir = 0; ir < 50; ++ir) {
    double r = std::pow(10.0, -8.0 + 16.0 * ir / 49.0);
    for (int ia = 0; ia < 52; ++ia) {
      double phi = -3.0 + 6.0 * ia / 51.0;
      std::complex<double> z = std::polar(r, phi);
      resid(w0_complex(z), z);
    }
  }
  for (int j = 0; j < 2600; ++j) {
    double u = -10.0 + 16.0 * j / 2599.0;
    double x = bp - std::pow(10.0, u);
    auto w = w0_boundary(x, (j % 2) ? CutSide::above : CutSide::below);
    resid(w, {x, 0.0});
  }
  c.note("identity residual grid points", static_cast<double>(checked), checked >= 10000);
  c.note("max residual", worst, failed == 0);
  for (double delta : {1e-4, 1e-6, 1e-8}) {
    double r = std::sqrt(2.0 * std::exp(1.0) * delta);
    double e_in = std::fabs(w0_real(bp + delta) - (-1.0 + r));
    auto wb = w0_boundary(bp - delta, CutSide::above);
    double e_up = std::abs(wb - std::complex<double>(-1.0, r));
    c.note("puiseux inside delta=" + std::to_string(delta), e_in, e_in <= 10.0 * delta);
    c.note("puiseux above-cut delta=" + std::to_string(delta), e_up, e_up <= 10.0 * delta);
  }
  return {2, "Lambert W identity and Puiseux oracle", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 3: mod-phi rate ---------------------------------------------

inline CriterionResult criterion3(bool fast, int jobs, mpfr_prec_t bits) {
  Check c;
  std::vector<long> ns = fast ? std::vector<long>{50, 100, 200}
                              : std::vector<long>{50, 100, 200, 400, 800};
  const std::vector<std::pair<int, mpq_class>> combos = {
      {1, mpq_class(1)}, {2, mpq_class(1)}, {3, mpq_class(1)}, {3, mpq_class(2)}};
  const std::vector<std::complex<double>> zs = {{0.3, 0.0}, {-0.2, 0.0}, {0.1, 0.1}};
  std::vector<RateReport> reports(combos.size() * zs.size());
  parallel_for(static_cast<int>(reports.size()), [&](int idx) {
    const auto& [fam, vt] = combos[static_cast<size_t>(idx) / zs.size()];
    const auto z = zs[static_cast<size_t>(idx) % zs.size()];
    RateReport r;
    r.family = fam;
    r.theta = mpq_class(vt).get_d();
    r.z_or_t = detail::fmt_complex(z);
    r.n_values = ns;
    for (long n : ns) {
      r.errors.push_back(mod_phi_error(fam, static_cast<int>(n), vt, z, bits));
    }
    r.fitted_slope = fit_slope(ns, r.errors);
    r.passed = r.fitted_slope >= -1.2 && r.fitted_slope <= -0.8;
    reports[static_cast<size_t>(idx)] = std::move(r);
  }, jobs);
  for (const auto& r : reports) {
    c.push(r.to_json(), r.passed);
    if (!r.passed) {
      c.detail << "family " << r.family << " theta " << r.theta << " z " << r.z_or_t
               << " slope " << r.fitted_slope << " outside [-1.2,-0.8]; ";
    }
  }
  if (c.ok) c.detail << "all 12 slope fits within [-1.2, -0.8]";
  return {3, "mod-phi convergence rate O(1/n)", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 4: local limit theorem --------------------------------------

inline CriterionResult criterion4(bool fast, int jobs) {
  Check c;
  const long n_lo = fast ? 100 : 200;
  const long n_hi = fast ? 200 : 800;
  const std::vector<std::pair<int, mpq_class>> combos = {
      {1, mpq_class(1)}, {2, mpq_class(1)}, {3, mpq_class(1)}, {3, mpq_class(2)}};
  std::vector<std::array<double, 2>> vals(combos.size());
  parallel_for(static_cast<int>(combos.size()), [&](int i) {
    const auto& [fam, vt] = combos[static_cast<size_t>(i)];
    vals[static_cast<size_t>(i)] = {llt_sup_error(fam, static_cast<int>(n_lo), vt),
                                    llt_sup_error(fam, static_cast<int>(n_hi), vt)};
  }, jobs);
  for (size_t i = 0; i < combos.size(); ++i) {
    const auto& [fam, vt] = combos[i];
    bool dec = vals[i][1] < vals[i][0];
    c.push({{"family", fam},
            {"theta", mpq_class(vt).get_d()},
            {"n_lo", n_lo},
            {"value_lo", vals[i][0]},
            {"n_hi", n_hi},
            {"value_hi", vals[i][1]},
            {"passed", dec}},
           dec);
    if (!dec) c.detail << "family " << fam << " sup error not decreasing; ";
  }
  // figure layout: unimodal pmf with mode near mu(theta) n, per tilt
  const int nf = fast ? 200 : 500;
  struct FigRow { int fam; mpq_class vt; };
  std::vector<FigRow> rows;
  for (auto v : {mpq_class(1, 100), mpq_class(1, 10), mpq_class(3, 10), mpq_class(1),
                 mpq_class(10)}) rows.push_back({1, v});
  for (auto v : {mpq_class(1, 1000), mpq_class(1, 100), mpq_class(1, 10), mpq_class(1),
                 mpq_class(10)}) rows.push_back({2, v});
  for (int j = 1; j <= 9; ++j) rows.push_back({3, mpq_class(j, 5)});
  for (int j = 2; j <= 6; ++j) rows.push_back({3, mpq_class(j)});
  std::vector<std::string> fig_fail(rows.size());
  parallel_for(static_cast<int>(rows.size()), [&](int i) {
    const auto& row = rows[static_cast<size_t>(i)];
    DiscreteDist d = dist(row.fam, nf, row.vt * nf);
    int mode = 1;
    for (int k = 2; k <= d.support_max(); ++k) {
      if (d.pmf[static_cast<size_t>(k)] > d.pmf[static_cast<size_t>(mode)]) mode = k;
    }
    bool unimodal = true;
    for (int k = 1; k < mode; ++k) {
      if (d.pmf[static_cast<size_t>(k)] > d.pmf[static_cast<size_t>(k + 1)]) unimodal = false;
    }
    for (int k = mode; k < d.support_max(); ++k) {
      if (d.pmf[static_cast<size_t>(k)] < d.pmf[static_cast<size_t>(k + 1)]) unimodal = false;
    }
    double vtd = mpq_class(row.vt).get_d();
    double center = mu(row.fam, vtd) * nf;
    double band = std::max(6.0, 1.5 * std::sqrt(sigma2(row.fam, vtd) * nf));
    if (!unimodal) {
      fig_fail[static_cast<size_t>(i)] = "not unimodal";
    } else if (std::fabs(mode - center) > band) {
      fig_fail[static_cast<size_t>(i)] = "mode far from mu*n";
    }
  }, jobs);
  for (size_t i = 0; i < rows.size(); ++i) {
    bool ok = fig_fail[i].empty();
    c.push({{"family", rows[i].fam},
            {"theta", mpq_class(rows[i].vt).get_d()},
            {"figure_check", ok ? "ok" : fig_fail[i]}},
           ok);
    if (!ok) {
      c.detail << "figure layout family " << rows[i].fam << " theta "
               << mpq_class(rows[i].vt).get_d() << ": " << fig_fail[i] << "; ";
    }
  }
  if (c.ok) c.detail << "sup errors decrease and all bell curves well-placed";
  return {4, "local limit theorem", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 5: large deviations -----------------------------------------

inline CriterionResult criterion5(bool fast, int jobs) {
  Check c;
  const long n_lo = fast ? 200 : 400;
  const long n_hi = fast ? 400 : 800;
  struct Item { int fam; double t; };
  std::vector<Item> items;
  for (int fam : {1, 2, 3}) {
    for (double t : {0.3, 0.5, 0.7}) items.push_back({fam, t});
  }
  std::vector<std::array<double, 2>> errs(items.size());
  parallel_for(static_cast<int>(items.size()), [&](int i) {
    const auto& it = items[static_cast<size_t>(i)];
    errs[static_cast<size_t>(i)] = {
        ldp_error(it.fam, static_cast<int>(n_lo), mpq_class(1), it.t),
        ldp_error(it.fam, static_cast<int>(n_hi), mpq_class(1), it.t)};
  }, jobs);
  for (size_t i = 0; i < items.size(); ++i) {
    double ratio = errs[i][0] / errs[i][1];
    bool ok = ratio >= 1.6 && ratio <= 2.6;
    c.push({{"family", items[i].fam},
            {"t", items[i].t},
            {"err_lo", errs[i][0]},
            {"err_hi", errs[i][1]},
            {"ratio", ratio},
            {"passed", ok}},
           ok);
    if (!ok) {
      c.detail << "family " << items[i].fam << " t " << items[i].t << " ratio " << ratio
               << " outside [1.6,2.6]; ";
    }
  }
  for (double t : {0.2, 0.4, 0.6}) {
    double gap = std::fabs(rate(3, t, 1.0 + 1e-9) - rate(3, t, 1.0 - 1e-9));
    c.note("I3 branch gap at t=" + std::to_string(t), gap, gap <= 1e-6);
  }
  if (c.ok) c.detail << "error halving and I3 branch consistency hold";
  return {5, "large deviation principle", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 6: Touchard zeros vs the Elbert measure ----------------------

inline CriterionResult criterion6(bool fast, int jobs) {
  Check c;
  const double e = 2.718281828459045235;
  const long n_lo = fast ? 100 : 300;
  const long n_hi = fast ? 200 : 600;
  const double bracket = fast ? 0.30 : 0.15;
  const double tol = fast ? 0.08 : 0.05;
  const std::vector<std::complex<double>> zs = {{-1.0, 0.0}, {2.0, 1.0}, {-0.5, 0.5}};
  std::array<RootMeasure, 2> meas;
  std::array<double, 2> smallest{};
  const long nn[2] = {n_lo, n_hi};
  parallel_for(2, [&](int i) {
    long n = nn[i];
    ExactPolynomial p = touchard_poly(static_cast<int>(n)).scale_arg(mpq_class(n));
    auto roots = real_roots(p);
    smallest[static_cast<size_t>(i)] = roots.front();
    RootMeasure m;
    m.weight = 1.0 / static_cast<double>(n);
    m.total_mass = static_cast<double>(roots.size()) / static_cast<double>(n);
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) m.points.push_back(-*it);
    std::sort(m.points.begin(), m.points.end());
    meas[static_cast<size_t>(i)] = std::move(m);
  }, jobs);
  c.note("smallest root n=" + std::to_string(n_lo) + " above -e", smallest[0],
         smallest[0] > -e);
  c.note("smallest root n=" + std::to_string(n_lo) + " within bracket", smallest[0] + e,
         smallest[0] < -e + bracket);
  c.note("smallest root closer to -e at n=" + std::to_string(n_hi), smallest[1] + e,
         std::fabs(smallest[1] + e) < std::fabs(smallest[0] + e));
  for (auto z : zs) {
    double d_lo = std::abs(stieltjes_empirical(meas[0], z) - stieltjes_limit_elbert(z));
    double d_hi = std::abs(stieltjes_empirical(meas[1], z) - stieltjes_limit_elbert(z));
    c.note("stieltjes gap n_lo at z=" + detail::fmt_complex(z), d_lo, d_lo <= tol);
    c.note("stieltjes gap shrinks at z=" + detail::fmt_complex(z), d_hi, d_hi < d_lo);
  }
  if (c.ok) c.detail << "edge root and Stieltjes convergence verified";
  return {6, "Touchard zero measure (Elbert limit)", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 7: zeros of the allocation generating polynomial -------------

inline CriterionResult criterion7(bool fast, int jobs) {
  Check c;
  const long n_lo = fast ? 60 : 100;
  const long n_hi = fast ? 120 : 200;
  const double m2 = m_theta(2.0);
  const std::vector<std::complex<double>> zs = {{-1.0, 0.5}, {2.0, 1.0}, {-0.5, 0.5}};
  std::array<RootMeasure, 2> meas;
  const long nn[2] = {n_lo, n_hi};
  parallel_for(2, [&](int i) {
    long n = nn[i];
    ExactPolynomial g = gen_poly(3, static_cast<int>(n), mpq_class(2 * n));
    meas[static_cast<size_t>(i)] = empirical_measure(g, static_cast<double>(n));
  }, jobs);
  for (int i = 0; i < 2; ++i) {
    double top = meas[static_cast<size_t>(i)].points.back();
    c.note("max negated root n=" + std::to_string(nn[i]) + " within 1.05*m2", top,
           top <= 1.05 * m2);
  }
  for (auto z : zs) {
    double gap = std::abs(stieltjes_empirical(meas[1], z) - stieltjes_limit_Z3(z, 2.0));
    c.note("Z3 stieltjes gap at z=" + detail::fmt_complex(z), gap, gap <= 0.05);
  }
  if (c.ok) c.detail << "support bound and Stieltjes agreement hold";
  return {7, "allocation zero measure", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 8: density totals and edge asymptotics ------------------------

inline CriterionResult criterion8(bool) {
  Check c;
  for (double th : {1.5, 2.0, 5.0}) {
    double mass = z3_total_mass_quad(th);
    c.note("mass theta=" + std::to_string(th), mass, std::fabs(mass - 1.0) <= 1e-4);
  }
  for (double th : {0.3, 0.7}) {
    double mass = z3_total_mass_quad(th);
    c.note("mass theta=" + std::to_string(th), mass, std::fabs(mass - th) <= 1e-4);
  }
  {
    // g_theta(t) ~ 1/(t log^2 t) as t->0, probed at t=1e-6
    double t = 1e-6;
    double ratio = density_g(1.0, t) * t * std::log(t) * std::log(t);
    c.note("asympt t->0 ratio (theta=1, t=1e-6)", ratio, std::fabs(ratio - 1.0) <= 0.05);
  }
  {
    double t = 1e6;
    double ratio = density_g(1.0, t) * std::sqrt(2.0) * 3.14159265358979323846 *
                   std::pow(t, 1.5);
    c.note("asympt t->inf ratio (theta=1, t=1e6)", ratio, std::fabs(ratio - 1.0) <= 0.05);
  }
  {
    double th = 2.0, eps = 1e-6;
    double m = m_theta(th);
    double C = std::pow(th, 1.5) * std::sqrt(2.0 * std::exp(1.0 - 1.0 / th)) /
               (3.14159265358979323846 * m * m * (m + 1.0) * (th - 1.0) * (th - 1.0));
    double ratio = density_g(th, m - eps) / (C * std::sqrt(eps));
    c.note("asympt edge ratio (theta=2, eps=1e-6)", ratio, std::fabs(ratio - 1.0) <= 0.05);
  }
  if (c.ok) c.detail << "masses and edge asymptotics verified";
  return {8, "density totals and asymptotics", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 9: finite free convolution identities -------------------------

inline mpq_class suite_rand_q(unsigned long& state) {
  state = state * 6364136223846793005ULL + 1442695040888963407ULL;
  long num = static_cast<long>((state >> 40) % 19) - 9;
  state = state * 6364136223846793005ULL + 1442695040888963407ULL;
  long den = static_cast<long>((state >> 40) % 9) + 1;
  return mpq_class(num, den);
}

inline CriterionResult criterion9(bool) {
  Check c;
  unsigned long rng = 0x5eedULL;
  for (int n = 1; n <= 10; ++n) {
    std::vector<mpq_class> pc, qc;
    for (int k = 0; k <= n; ++k) {
      pc.push_back(suite_rand_q(rng));
      qc.push_back(suite_rand_q(rng));
    }
    pc.back() = mpq_class(1);
    qc.back() = mpq_class(1);
    ExactPolynomial p(pc), q(qc);
    bool unit_ok = finite_free_mult_conv(ffc_unit(n), p, n).coeffs == p.coeffs;
    ExactPolynomial lhs =
        finite_free_mult_conv(p.scale_arg(mpq_class(3)), q.scale_arg(mpq_class(1, 3)), n);
    ExactPolynomial rhs = finite_free_mult_conv(p, q, n);
    bool scale_ok = lhs.coeffs == rhs.coeffs;
    c.note("unit element n=" + std::to_string(n), 0.0, unit_ok);
    c.note("scaling invariance n=" + std::to_string(n), 0.0, scale_ok);
  }
  for (int n = 2; n <= 12; ++n) {
    for (int i = 0; i < n; ++i) {
      // (-x)^i/i! L_n^{(i-n)}(x) == (-x)^n/n! L_i^{(n-i)}(x)
      ExactPolynomial xi = monomial(i, mpq_class((i & 1) ? -1 : 1) / mpq_class(factorial(i)));
      ExactPolynomial xn = monomial(n, mpq_class((n & 1) ? -1 : 1) / mpq_class(factorial(n)));
      ExactPolynomial lhs = xi * laguerre(n, mpq_class(i - n));
      ExactPolynomial rhs = xn * laguerre(i, mpq_class(n - i));
      if (lhs.coeffs != rhs.coeffs) {
        c.note("laguerre duality n=" + std::to_string(n) + " i=" + std::to_string(i), 0.0,
               false);
      }
    }
  }
  for (int n = 2; n <= 15; ++n) {
    for (mpq_class theta : {mpq_class(3), mpq_class(n + 2)}) {
      // theta^n G3(-x) == T_n(-x) boxtimes_n  n! x^n L_n^{(theta-n)}(1/x)
      ExactPolynomial lhs = gen_poly(3, n, theta).negate_arg();
      mpq_class tn = 1;
      for (int j = 0; j < n; ++j) tn *= theta;
      lhs = tn * lhs;
      ExactPolynomial lag = laguerre(n, theta - n);
      std::vector<mpq_class> bc(static_cast<size_t>(n) + 1, mpq_class(0));
      for (int k = 0; k <= n; ++k) {
        bc[static_cast<size_t>(n - k)] = mpq_class(factorial(n)) * lag.coeff(k);
      }
      ExactPolynomial rhs =
          finite_free_mult_conv(touchard_poly(n).negate_arg(), ExactPolynomial(bc), n);
      if (lhs.coeffs != rhs.coeffs) {
        c.note("G3 convolution form n=" + std::to_string(n), 0.0, false);
      }
    }
  }
  if (c.ok) c.detail << "all identities hold with zero tolerance";
  return {9, "finite free convolution identities", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 10: contour-integral oracle -----------------------------------

inline CriterionResult criterion10(bool) {
  Check c;
  for (int n : {10, 20, 30, 40}) {
    double err = contour_check_touchard(n, mpq_class(1), 1 << 12);
    c.note("touchard contour n=" + std::to_string(n), err, err <= 1e-10);
  }
  for (int n : {10, 20, 40}) {
    for (double z : {0.0, 0.3}) {
      double err = contour_check_g3(n, mpq_class(2), z, 1 << 12);
      c.note("g3 contour n=" + std::to_string(n) + " z=" + std::to_string(z), err,
             err <= 1e-10);
    }
  }
  if (c.ok) c.detail << "contour integrals match exact values to 1e-10";
  return {10, "saddle contour integrals", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 11: sigma maximizers ------------------------------------------

inline CriterionResult criterion11(bool) {
  Check c;
  const double refs[3] = {0.46241, 0.48273, 1.6313};
  for (int fam = 1; fam <= 3; ++fam) {
    double th = sigma_argmax(fam);
    double err = std::fabs(th - refs[fam - 1]);
    c.note("argmax sigma family " + std::to_string(fam), th, err <= 1e-3);
  }
  if (c.ok) c.detail << "maximizers match the reference locations";
  return {11, "sigma landscape maximizers", c.ok, 0.0, c.detail.str(), c.data};
}

// ---- criterion 12: mod-Poisson -----------------------------------------------

inline CriterionResult criterion12(bool fast, int jobs, mpfr_prec_t bits) {
  Check c;
  std::vector<long> ns = fast ? std::vector<long>{100, 200, 400}
                              : std::vector<long>{100, 200, 400, 800, 1600};
  // z = 0: both sides are exactly 1 for every n
  for (long n : {100L, ns.back()}) {
    double err = mod_poisson_error(static_cast<int>(n), {0.0, 0.0}, bits);
    c.note("z=0 error n=" + std::to_string(n), err, err <= 1e-30);
  }
  std::vector<double> errs(ns.size());
  parallel_for(static_cast<int>(ns.size()), [&](int i) {
    errs[static_cast<size_t>(i)] =
        mod_poisson_error(static_cast<int>(ns[static_cast<size_t>(i)]), {0.5, 0.0}, bits);
  }, jobs);
  double slope = fit_slope(ns, errs);
  RateReport r;
  r.family = 1;
  r.theta = 1.0;
  r.z_or_t = "0.5";
  r.n_values = ns;
  r.errors = errs;
  r.fitted_slope = slope;
  r.passed = slope >= -1.3 && slope <= -0.7;
  c.push(r.to_json(), r.passed);
  if (!r.passed) c.detail << "slope " << slope << " outside [-1.3,-0.7]; ";
  if (c.ok) c.detail << "mod-Poisson error identically 0 at z=0, slope ~ -1 at z=0.5";
  return {12, "mod-Poisson limit (first kind)", c.ok, 0.0, c.detail.str(), c.data};
}

}  // namespace suite_detail

inline CriterionResult run_criterion(int id, bool fast, int jobs = 0,
                                     mpfr_prec_t bits = 256) {
  using namespace suite_detail;
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = criterion1(fast); break;
      case 2: r = criterion2(fast); break;
      case 3: r = criterion3(fast, jobs, bits); break;
      case 4: r = criterion4(fast, jobs); break;
      case 5: r = criterion5(fast, jobs); break;
      case 6: r = criterion6(fast, jobs); break;
      case 7: r = criterion7(fast, jobs); break;
      case 8: r = criterion8(fast); break;
      case 9: r = criterion9(fast); break;
      case 10: r = criterion10(fast); break;
      case 11: r = criterion11(fast); break;
      case 12: r = criterion12(fast, jobs, bits); break;
      default: throw domain_error("unknown criterion id");
    }
  } catch (const std::exception& ex) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline SuiteReport run_verification_suite(bool fast, int jobs = 0,
                                          mpfr_prec_t bits = 256) {
  SuiteReport rep;
  rep.suite = fast ? "fast" : "full";
  for (int id = 1; id <= 12; ++id) {
    rep.results.push_back(run_criterion(id, fast, jobs, bits));
    rep.all_passed = rep.all_passed && rep.results.back().passed;
  }
  return rep;
}

inline void print_suite_report(const SuiteReport& rep, std::ostream& os) {
  for (const auto& r : rep.results) {
    char line[512];
    snprintf(line, sizeof line, "%s  [%2d] %-42s (%.1fs) %s", r.passed ? "PASS" : "FAIL",
             r.id, r.name.c_str(), r.seconds, r.detail.c_str());
    os << line << "\n";
  }
  os << (rep.all_passed ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << "\n";
}

}  // namespace stirlim
