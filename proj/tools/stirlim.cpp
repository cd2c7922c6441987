// Command-line front end: exact Stirling tables, figure data (pmf vs the
// Gaussian local limit, zero sets vs limit densities, rate functions, mu and
// sigma curves) and the verification suite.
//
// Output is deterministic: no timestamps, doubles printed with 17 significant
// digits, exact integers/rationals printed exactly; the first line echoes the
// tool version and the command configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stirlim/exact.hpp"
#include "stirlim/limit_measures.hpp"
#include "stirlim/mod_phi.hpp"
#include "stirlim/suite.hpp"
#include "stirlim/verify.hpp"
#include "stirlim/zeros.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double x) {
  char buf[40];
  snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw CLI::ValidationError("theta", "expected integer or p/q");
  q.canonicalize();
  if (q <= 0) throw CLI::ValidationError("theta", "must be positive");
  return q;
}

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
      os = &file;
    }
  }
  std::ostream& stream() { return *os; }
};

void emit_header(std::ostream& os, const std::string& cmd, const std::string& cfg) {
  os << "# stirlim " << kVersion << " " << cmd << " " << cfg << "\n";
}

// ---- table -----------------------------------------------------------------

int cmd_table(const std::string& kind, int n_max, const std::string& out,
              const std::string& format) {
  stirlim::StirlingKind k =
      kind == "first" ? stirlim::StirlingKind::first : stirlim::StirlingKind::second;
  Output o(out);
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (int n = 1; n <= n_max; ++n) {
      auto row = stirlim::triangle(k).row(n);
      for (int j = 1; j <= n; ++j) {
        rows.push_back({{"n", n}, {"k", j}, {"value", (*row)[static_cast<size_t>(j)].get_str()}});
      }
    }
    nlohmann::json doc = {{"tool", "stirlim"}, {"version", kVersion},
                          {"command", "table"}, {"kind", kind},
                          {"n_max", n_max},     {"rows", rows}};
    o.stream() << doc.dump(2) << "\n";
    return 0;
  }
  emit_header(o.stream(), "table", "kind=" + kind + " n_max=" + std::to_string(n_max));
  o.stream() << "n,k,value\n";
  for (int n = 1; n <= n_max; ++n) {
    auto row = stirlim::triangle(k).row(n);
    for (int j = 1; j <= n; ++j) {
      o.stream() << n << "," << j << "," << (*row)[static_cast<size_t>(j)].get_str() << "\n";
    }
  }
  return 0;
}

// ---- llt --------------------------------------------------------------------

int cmd_llt(int family, int n, const std::vector<std::string>& thetas,
            const std::string& out, const std::string& format) {
  Output o(out);
  struct Row {
    double theta;
    int k;
    double pmf, gauss;
  };
  std::vector<Row> rows;
  std::string cfg = "family=" + std::to_string(family) + " n=" + std::to_string(n) + " theta=";
  for (size_t i = 0; i < thetas.size(); ++i) {
    cfg += (i ? "," : "") + thetas[i];
    mpq_class vt = parse_rational(thetas[i]);
    double vtd = vt.get_d();
    stirlim::DiscreteDist d = stirlim::dist(family, n, vt * n);
    double m = stirlim::mu(family, vtd) * n;
    double s2 = stirlim::sigma2(family, vtd) * n;
    double norm = 1.0 / std::sqrt(2.0 * 3.14159265358979323846 * s2);
    for (int k = 1; k <= n; ++k) {
      double pk = k <= d.support_max() ? d.pmf[static_cast<size_t>(k)].get_d() : 0.0;
      double gk = norm * std::exp(-(k - m) * (k - m) / (2.0 * s2));
      rows.push_back({vtd, k, pk, gk});
    }
  }
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"theta", r.theta}, {"k", r.k}, {"pmf", r.pmf}, {"gaussian", r.gauss}});
    }
    nlohmann::json doc = {{"tool", "stirlim"}, {"version", kVersion}, {"command", "llt"},
                          {"family", family}, {"n", n},               {"rows", arr}};
    o.stream() << doc.dump(2) << "\n";
    return 0;
  }
  emit_header(o.stream(), "llt", cfg);
  o.stream() << "theta,k,pmf,gaussian\n";
  for (const auto& r : rows) {
    o.stream() << fmt17(r.theta) << "," << r.k << "," << fmt17(r.pmf) << ","
               << fmt17(r.gauss) << "\n";
  }
  return 0;
}

// ---- zeros ------------------------------------------------------------------

int cmd_zeros(int family, int n, const std::string& theta_s, bool relaxed, int grid,
              const std::string& out, const std::string& format) {
  mpq_class vt = parse_rational(theta_s);
  double vtd = vt.get_d();
  stirlim::ExactPolynomial p;
  if (family == 1) {
    p = stirlim::stirling_first_poly(n).scale_arg(mpq_class(n));
  } else if (family == 2) {
    p = stirlim::touchard_poly(n).scale_arg(mpq_class(n));
  } else {
    p = stirlim::gen_poly(3, n, vt * n, relaxed);
  }
  stirlim::RootMeasure m = stirlim::empirical_measure(p, static_cast<double>(n));
  double upper;
  std::function<double(double)> density;
  if (family == 1) {
    upper = 1.0;
    density = [](double) { return 1.0; };
  } else if (family == 2) {
    upper = 2.718281828459045235;
    density = [](double t) { return stirlim::elbert_density(t); };
  } else {
    double mt = stirlim::m_theta(vtd);
    upper = std::isfinite(mt) ? mt : m.points.back() * 1.2;
    density = [vtd](double t) { return stirlim::density_g(vtd, t); };
  }
  struct Row {
    const char* kind;
    double x, value;
  };
  std::vector<Row> rows;
  for (double pt : m.points) rows.push_back({"root", pt, m.weight});
  for (int j = 1; j < grid; ++j) {
    double t = upper * j / grid;
    rows.push_back({"density", t, density(t)});
  }
  Output o(out);
  std::string cfg = "family=" + std::to_string(family) + " n=" + std::to_string(n) +
                    " theta=" + theta_s + (relaxed ? " relaxed" : "");
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"kind", r.kind}, {"x", r.x}, {"value", r.value}});
    }
    nlohmann::json doc = {{"tool", "stirlim"}, {"version", kVersion},
                          {"command", "zeros"}, {"family", family},
                          {"n", n},             {"theta", theta_s},
                          {"rows", arr}};
    o.stream() << doc.dump(2) << "\n";
    return 0;
  }
  emit_header(o.stream(), "zeros", cfg);
  o.stream() << "kind,x,value\n";
  for (const auto& r : rows) {
    o.stream() << r.kind << "," << fmt17(r.x) << "," << fmt17(r.value) << "\n";
  }
  return 0;
}

// ---- rate ---------------------------------------------------------------------

int cmd_rate(int family, const std::string& theta_s, int steps, const std::string& out,
             const std::string& format) {
  double theta = parse_rational(theta_s).get_d();
  double t_hi = (family == 3 && theta < 1.0) ? theta : 1.0;
  std::vector<std::pair<double, double>> rows;
  for (int j = 0; j <= steps; ++j) {
    double t = t_hi * j / steps;
    rows.emplace_back(t, stirlim::rate(family, t, theta));
  }
  Output o(out);
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& [t, I] : rows) arr.push_back({{"t", t}, {"rate", I}});
    nlohmann::json doc = {{"tool", "stirlim"}, {"version", kVersion}, {"command", "rate"},
                          {"family", family}, {"theta", theta_s},     {"rows", arr}};
    o.stream() << doc.dump(2) << "\n";
    return 0;
  }
  emit_header(o.stream(), "rate",
              "family=" + std::to_string(family) + " theta=" + theta_s);
  o.stream() << "t,rate\n";
  for (auto& [t, I] : rows) {
    o.stream() << fmt17(t) << "," << (std::isinf(I) ? "inf" : fmt17(I)) << "\n";
  }
  return 0;
}

// ---- musigma -------------------------------------------------------------------

int cmd_musigma(int steps, const std::string& out, const std::string& format) {
  std::vector<std::array<double, 7>> rows;
  for (int j = 0; j <= steps; ++j) {
    double th = std::exp(std::log(0.01) + (std::log(100.0) - std::log(0.01)) * j / steps);
    std::array<double, 7> r{th, 0, 0, 0, 0, 0, 0};
    for (int fam = 1; fam <= 3; ++fam) {
      r[static_cast<size_t>(2 * fam - 1)] = stirlim::mu(fam, th);
      r[static_cast<size_t>(2 * fam)] = std::sqrt(stirlim::sigma2(fam, th));
    }
    rows.push_back(r);
  }
  Output o(out);
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& r : rows) {
      arr.push_back({{"theta", r[0]}, {"mu1", r[1]}, {"sigma1", r[2]}, {"mu2", r[3]},
                     {"sigma2", r[4]}, {"mu3", r[5]}, {"sigma3", r[6]}});
    }
    nlohmann::json doc = {{"tool", "stirlim"}, {"version", kVersion},
                          {"command", "musigma"}, {"rows", arr}};
    o.stream() << doc.dump(2) << "\n";
    return 0;
  }
  emit_header(o.stream(), "musigma", "steps=" + std::to_string(steps));
  o.stream() << "theta,mu1,sigma1,mu2,sigma2,mu3,sigma3\n";
  for (auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) o.stream() << (i ? "," : "") << fmt17(r[i]);
    o.stream() << "\n";
  }
  return 0;
}

// ---- verify -------------------------------------------------------------------

int cmd_verify(const std::string& suite, int jobs, long precision,
               const std::string& out) {
  stirlim::SuiteReport rep =
      stirlim::run_verification_suite(suite == "fast", jobs, precision);
  stirlim::print_suite_report(rep, std::cout);
  if (!out.empty() && out != "-") {
    std::ofstream f(out);
    f << rep.to_json().dump(2) << "\n";
  }
  return rep.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stirling distribution limit laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string out = "-";
  std::string format = "csv";
  app.add_option("--out", out, "output path ('-' for stdout)")->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* t = app.add_subcommand("table", "write Stirling triangle rows");
  std::string kind = "second";
  int n_max = 10;
  t->add_option("--kind", kind, "triangle kind")
      ->check(CLI::IsMember({"first", "second"}))
      ->required();
  t->add_option("--n-max", n_max, "largest row")->check(CLI::Range(0, 2000))->required();

  auto* l = app.add_subcommand("llt", "pmf vs Gaussian local-limit data");
  int family = 1, n = 100;
  std::vector<std::string> thetas;
  l->add_option("--family", family, "family (1, 2 or 3)")->check(CLI::Range(1, 3))->required();
  l->add_option("--n", n, "n")->check(CLI::Range(1, 100000))->required();
  l->add_option("--theta", thetas, "tilt parameter(s), integer or p/q")->required();

  auto* z = app.add_subcommand("zeros", "zero set vs limit density data");
  std::string theta_one = "1";
  bool relaxed = false;
  int grid = 256;
  z->add_option("--family", family, "family (1, 2 or 3)")->check(CLI::Range(1, 3))->required();
  z->add_option("--n", n, "n")->check(CLI::Range(1, 1000))->required();
  z->add_option("--theta", theta_one, "tilt parameter, integer or p/q");
  z->add_flag("--relaxed", relaxed, "family-3 non-probabilistic mode");
  z->add_option("--grid", grid, "density grid size")->check(CLI::Range(2, 100000));

  auto* r = app.add_subcommand("rate", "large-deviation rate function data");
  r->add_option("--family", family, "family (1, 2 or 3)")->check(CLI::Range(1, 3))->required();
  r->add_option("--theta", theta_one, "tilt parameter, integer or p/q");
  int steps = 200;
  r->add_option("--grid", steps, "number of t-steps")->check(CLI::Range(2, 100000));

  auto* ms = app.add_subcommand("musigma", "mu and sigma curves across theta");
  int ms_steps = 200;
  ms->add_option("--grid", ms_steps, "number of theta steps")->check(CLI::Range(2, 100000));

  auto* v = app.add_subcommand("verify", "run the verification suite");
  std::string suite = "fast";
  int jobs = 0;
  long precision = 256;
  v->add_option("--suite", suite, "suite flavor")
      ->check(CLI::IsMember({"fast", "full"}))
      ->required();
  v->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  v->add_option("--precision", precision, "MGF precision in bits")
      ->check(CLI::Range(64L, 8192L));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit with 2
  }

  try {
    if (t->parsed()) return cmd_table(kind, n_max, out, format);
    if (l->parsed()) return cmd_llt(family, n, thetas, out, format);
    if (z->parsed()) return cmd_zeros(family, n, theta_one, relaxed, grid, out, format);
    if (r->parsed()) return cmd_rate(family, theta_one, steps, out, format);
    if (ms->parsed()) return cmd_musigma(ms_steps, out, format);
    if (v->parsed()) return cmd_verify(suite, jobs, precision, out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
