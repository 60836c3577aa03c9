// rz: polynomial families, roots, theta analysis, witnesses and scans from
// the command line. Exit status: 0 ok, 1 bad input, 2 solver failure (or a
// failing acceptance criterion under `check`).

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "rz/acceptance.hpp"
#include "rz/io.hpp"
#include "rz/rz.hpp"

namespace {

using rz::io::json;

struct Common {
  std::string family;
  std::map<std::string, std::string> params;
  int n = 0;
  std::string out = "-";
  std::string format;
  std::string mode = "float";
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw rz::DomainError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void add_params(CLI::App* sub, Common& c, std::initializer_list<const char*> names) {
  for (const char* name : names)
    sub->add_option(std::string("--") + name, c.params[name], std::string("parameter ") + name + " (decimal or p/q)");
}

rz::Rational param(const Common& c, const std::string& name) {
  const auto it = c.params.find(name);
  if (it == c.params.end() || it->second.empty())
    throw rz::DomainError("family " + c.family + " needs --" + name);
  return rz::parse_rational(it->second);
}

double param_d(const Common& c, const std::string& name) { return rz::to_double(param(c, name)); }

rz::Family<rz::Rational> family_from(const Common& c) {
  using Q = rz::Rational;
  if (c.family == "thm1") return rz::Thm1<Q>{param(c, "a"), param(c, "b")};
  if (c.family == "thm3") return rz::Thm3<Q>{param(c, "a"), param(c, "b")};
  if (c.family == "thm2") return rz::Thm2<Q>{param(c, "a"), param(c, "b"), param(c, "c")};
  if (c.family == "chebcombo") return rz::ChebCombo<Q>{param(c, "a"), param(c, "b")};
  if (c.family == "generalr")
    return rz::GeneralR<Q>{param(c, "a1"), param(c, "b1"), param(c, "a2"), param(c, "b2")};
  throw rz::DomainError("unknown family '" + c.family + "'");
}

rz::ThetaFamily theta_family(const std::string& f) {
  if (f == "thm1") return rz::ThetaFamily::Thm1;
  if (f == "thm3") return rz::ThetaFamily::Thm3;
  throw rz::DomainError("family must be thm1 or thm3 here, got '" + f + "'");
}

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw rz::DomainError("cannot open input file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw rz::DomainError(std::string("input is not valid JSON: ") + e.what());
  }
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw rz::DomainError("format '" + f + "' is not supported by this command");
}

// --- gen --------------------------------------------------------------------

template <class T>
void print_sequence(std::ostream& os, const std::vector<rz::Polynomial<T>>& seq, const std::string& format) {
  if (format == "json") {
    os << rz::io::to_json(seq).dump() << "\n";
    return;
  }
  os << std::setprecision(17);
  for (std::size_t n = 0; n < seq.size(); ++n) os << "P_" << n << " = " << seq[n] << "\n";
}

int run_gen(const Common& c) {
  check_format(c.format, {"json", "table"});
  if (c.n < 0) throw rz::DomainError("--n must be non-negative");
  const auto f = family_from(c);
  Output out(c.out);
  if (c.mode == "exact")
    print_sequence(out.os(), rz::generate(f, c.n), c.format);
  else
    print_sequence(out.os(), rz::generate(rz::family_cast<double>(f), c.n), c.format);
  return 0;
}

// --- roots ------------------------------------------------------------------

struct RootsArgs {
  std::string in = "-";
  double tol_real = rz::defaults::tol_real;
};

template <class T>
json roots_json(const std::vector<rz::Polynomial<T>>& polys, bool seq, double tol_real) {
  json all = json::array();
  for (const auto& p : polys) all.push_back(rz::io::to_json(rz::is_hyperbolic(p, tol_real), p.degree()));
  return seq ? all : all.front();
}

void print_roots_table(std::ostream& os, const json& j) {
  const auto one = [&](const json& v) {
    os << "degree " << v["degree"] << "  " << v["status"].get<std::string>() << "  max_imag " << v["max_imag"].dump()
       << "\n";
    for (const auto& r : v["roots"])
      os << "  " << std::setw(26) << r["re"].dump() << "  " << std::setw(26) << r["im"].dump() << "  residual "
         << r["residual"].dump() << "\n";
  };
  if (j.is_array())
    for (const auto& v : j) one(v);
  else
    one(j);
}

int run_roots(const Common& c, const RootsArgs& r) {
  check_format(c.format, {"json", "table"});
  const json input = parse_json(read_all(r.in));
  bool seq = false;
  json result;
  if (c.mode == "exact") {
    const auto polys = rz::io::polynomials_from_json<rz::Rational>(input, &seq);
    result = roots_json(polys, seq, r.tol_real);
  } else {
    const auto polys = rz::io::polynomials_from_json<double>(input, &seq);
    result = roots_json(polys, seq, r.tol_real);
  }
  Output out(c.out);
  if (c.format == "json")
    out.os() << result.dump() << "\n";
  else
    print_roots_table(out.os(), result);
  return 0;
}

// --- theta ------------------------------------------------------------------

int run_theta(const Common& c) {
  check_format(c.format, {"json", "table"});
  const auto fam = theta_family(c.family);
  const double a = param_d(c, "a"), b = param_d(c, "b");
  const auto rep = fam == rz::ThetaFamily::Thm1 ? rz::solve_theta_thm1(a, b, c.n) : rz::solve_theta_thm3(a, b, c.n);
  Output out(c.out);
  auto& os = out.os();
  if (c.format == "json") {
    os << rz::io::to_json(rep).dump() << "\n";
    return 0;
  }
  const auto p = rz::generate(family_from(c), c.n)[static_cast<std::size_t>(c.n)];
  os << "# " << rz::to_string(fam) << " a=" << a << " b=" << b << " n=" << c.n << "  roots " << rep.root_count;
  if (rep.asymptote) os << "  asymptote theta=" << std::setprecision(17) << rep.asymptote->theta_a << " k0=" << rep.asymptote->k0;
  if (rep.boundary_mode) os << "  boundary-mode";
  for (const auto& s : rep.perturbations) os << "  perturbed: " << s;
  os << "\n" << std::setprecision(17);
  os << "k\tbracket\ttheta\tz\t|P_n(z)|\n";
  for (std::size_t k = 0; k < rep.theta_roots.size(); ++k) {
    const double th = rep.theta_roots[k], z = rep.z_roots[k];
    rz::Bracket br{th, th};
    for (const auto& x : rep.brackets)
      if (x.lo <= th && th <= x.hi) br = x;
    const double pz = std::abs(rz::to_double(p(rz::to_rational(z))));
    os << k + 1 << "\t[" << br.lo << ", " << br.hi << "]\t" << th << "\t" << z << "\t" << pz << "\n";
  }
  return 0;
}

// --- witness ----------------------------------------------------------------

struct WitnessArgs {
  int n_max = rz::witness_defaults::n_max;
  std::optional<double> theta_start;
};

void print_witness_table(std::ostream& os, const rz::WitnessReport& r) {
  auto cz = [](std::complex<double> z) {
    std::ostringstream s;
    s << std::setprecision(17) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return s.str();
  };
  os << std::setprecision(17);
  os << "case    " << r.case_tag << "\n";
  if (r.theta_star) os << "theta*  " << *r.theta_star << "\n";
  if (r.y_star) os << "y*      " << *r.y_star << "\n";
  os << "z*      " << cz(r.z_star) << "\n";
  for (const auto& t : r.t_zeros)
    os << "t-zero  " << (t.finite ? cz(t.t) : std::string("inf")) << "  |t| = " << t.modulus << "  (" << t.factor << ")\n";
  const auto& k = r.checks;
  os << "checks  z_star_nonreal=" << k.z_star_nonreal << " moduli_ordering_ok=" << k.moduli_ordering_ok
     << " zeros_distinct=" << k.zeros_distinct << " residuals_ok=" << k.residuals_ok << " max_residual=" << k.max_residual
     << "\n";
  if (r.empirical)
    os << "first non-real n = " << r.empirical->n_found << "  dist to z* at n=" << r.empirical->n_max << ": "
       << r.empirical->dist_to_zstar << "\n";
  for (const auto& n : r.notes) os << "note    " << n << "\n";
}

int run_witness(const Common& c, const WitnessArgs& w) {
  check_format(c.format, {"json", "table"});
  rz::WitnessOptions opt;
  opt.theta_start = w.theta_start;
  const double a = param_d(c, "a"), b = param_d(c, "b");
  rz::WitnessReport r;
  if (c.family == "thm1")
    r = rz::witness_thm1(a, b, opt);
  else if (c.family == "thm2")
    r = rz::witness_thm2(a, b, param_d(c, "c"), opt);
  else if (c.family == "thm3")
    r = rz::witness_thm3(a, b, opt);
  else
    throw rz::DomainError("witness family must be thm1, thm2 or thm3");
  if (w.n_max > 0) r = rz::verify_witness(r, w.n_max);
  Output out(c.out);
  if (c.format == "json")
    out.os() << rz::io::to_json(r).dump(2) << "\n";
  else
    print_witness_table(out.os(), r);
  return 0;
}

// --- scan -------------------------------------------------------------------

struct ScanArgs {
  std::string a_range = "-1:1", b_range;
  int steps = 21, a_steps = 0, b_steps = 0;
  int n_max = rz::scan_defaults::n_max;
  double tol_real = rz::defaults::tol_real, slack = rz::defaults::interval_slack;
  double margin = rz::scan_defaults::margin;
  std::string gnuplot;
  std::vector<int> density;
};

rz::Range parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw rz::DomainError("range must look like lo:hi, got '" + s + "'");
  return {rz::to_double(rz::parse_rational(s.substr(0, colon))), rz::to_double(rz::parse_rational(s.substr(colon + 1)))};
}

int run_scan(const Common& c, const ScanArgs& s) {
  const auto fam = theta_family(c.family);
  Output out(c.out);
  auto& os = out.os();
  if (!s.density.empty()) {
    check_format(c.format, {"json", "table"});
    const auto t = rz::density_trend(fam, param_d(c, "a"), param_d(c, "b"), s.density);
    if (c.format == "json") {
      os << rz::io::to_json(t).dump() << "\n";
    } else {
      os << std::setprecision(17) << "n\tmax_gap\n";
      for (const auto& p : t.points) os << p.n << "\t" << p.max_gap << "\n";
      os << "decreasing " << t.decreasing << "\n";
    }
    return 0;
  }
  check_format(c.format, {"csv", "json", "table"});
  rz::ScanOptions opt;
  opt.n_max = s.n_max;
  opt.tol_real = s.tol_real;
  opt.slack = s.slack;
  opt.exact = c.mode == "exact";
  const std::string b_default = fam == rz::ThetaFamily::Thm1 ? "0:4" : "-1.5:1.5";
  const auto cells = rz::scan_region(fam, parse_range(s.a_range), parse_range(s.b_range.empty() ? b_default : s.b_range),
                                     s.a_steps > 0 ? s.a_steps : s.steps, s.b_steps > 0 ? s.b_steps : s.steps, opt);
  const auto summary = rz::summarize(cells, s.margin);
  if (c.format == "csv") {
    rz::write_csv(os, cells);
  } else if (c.format == "json") {
    os << json{{"cells", rz::io::to_json(cells)}, {"summary", rz::io::to_json(summary)}}.dump() << "\n";
  } else {
    os << std::setprecision(6);
    for (const auto& cell : cells)
      os << std::setw(10) << cell.a << std::setw(10) << cell.b << "  " << std::setw(10) << rz::to_string(cell.verdict)
         << "  " << (cell.first_nonreal_n ? std::to_string(*cell.first_nonreal_n) : "-") << "  " << cell.theory_label()
         << (cell.suspect ? "  suspect: " + cell.detail : "") << "\n";
    os << rz::io::to_json(summary).dump() << "\n";
  }
  if (!s.gnuplot.empty()) {
    std::ofstream g(s.gnuplot);
    if (!g) throw rz::DomainError("cannot open gnuplot file '" + s.gnuplot + "'");
    rz::write_gnuplot(g, cells);
  }
  return 0;
}

// --- check ------------------------------------------------------------------

struct CheckArgs {
  std::vector<int> only, expect_red;
};

int run_check(const Common& c, const CheckArgs& k) {
  Output out(c.out);
  const auto results = rz::acceptance::run({k.only.begin(), k.only.end()}, &out.os());
  const auto red = rz::acceptance::failing(results);
  std::set<int> expected;
  for (const auto& r : results)
    if (std::count(k.expect_red.begin(), k.expect_red.end(), r.id)) expected.insert(r.id);
  out.os() << results.size() - red.size() << "/" << results.size() << " criteria passed\n";
  return red == expected ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rz: zeros of polynomial sequences with rational generating functions"};
  app.require_subcommand(1);
  Common c;
  RootsArgs ra;
  WitnessArgs wa;
  ScanArgs sa;
  CheckArgs ka;
  const std::vector<std::string> families{"thm1", "thm2", "thm3", "generalr", "chebcombo"};
  std::map<CLI::App*, std::string> default_format;

  // Options shared by the subcommands; `format` empty means "not given".
  auto shared = [&](CLI::App* sub, const char* fmt, bool family, bool mode) {
    default_format[sub] = fmt;
    sub->add_option("--out", c.out, "output file (default stdout)");
    if (*fmt) sub->add_option("--format", c.format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
    if (family) sub->add_option("--family", c.family, "thm1 | thm2 | thm3 | generalr | chebcombo")->required()->check(CLI::IsMember(families));
    if (mode) sub->add_option("--mode", c.mode, "float | exact")->check(CLI::IsMember({"float", "exact"}));
  };

  auto* gen = app.add_subcommand("gen", "generate P_0..P_n (constant-first coefficients)");
  shared(gen, "json", true, true);
  add_params(gen, c, {"a", "b", "c", "a1", "b1", "a2", "b2"});
  gen->add_option("--n", c.n, "largest index")->required();

  auto* roots = app.add_subcommand("roots", "roots and hyperbolicity of JSON polynomials (stdin or --in)");
  shared(roots, "json", false, true);
  roots->add_option("--in", ra.in, "input file (default stdin)");
  roots->add_option("--tol-real", ra.tol_real, "imaginary-part tolerance");

  auto* theta = app.add_subcommand("theta", "theta-parametrized real zeros of P_n");
  shared(theta, "table", true, false);
  add_params(theta, c, {"a", "b"});
  theta->add_option("--n", c.n, "index n")->required();

  auto* witness = app.add_subcommand("witness", "non-real witness z* and its certificate");
  shared(witness, "json", true, false);
  add_params(witness, c, {"a", "b", "c"});
  witness->add_option("--n-max", wa.n_max, "largest n for the empirical check (0 skips it)");
  witness->add_option("--theta-start", wa.theta_start, "angle tried before the default sweep");

  auto* scan = app.add_subcommand("scan", "classify a grid of (a,b) or report a density trend");
  shared(scan, "csv", true, true);
  add_params(scan, c, {"a", "b"});
  scan->add_option("--a-range", sa.a_range, "lo:hi");
  scan->add_option("--b-range", sa.b_range, "lo:hi (default 0:4 for thm1, -1.5:1.5 for thm3)");
  scan->add_option("--steps", sa.steps, "grid points per axis");
  scan->add_option("--a-steps", sa.a_steps, "grid points along a");
  scan->add_option("--b-steps", sa.b_steps, "grid points along b");
  scan->add_option("--n-max", sa.n_max, "largest n per cell");
  scan->add_option("--tol-real", sa.tol_real, "imaginary-part tolerance");
  scan->add_option("--slack", sa.slack, "interval slack");
  scan->add_option("--margin", sa.margin, "boundary margin for the summary");
  scan->add_option("--gnuplot", sa.gnuplot, "also write 'a b class' triples here");
  scan->add_option("--density", sa.density, "n list for a density trend at --a/--b instead of a grid")
      ->delimiter(',');

  auto* check = app.add_subcommand("check", "run the acceptance suite");
  shared(check, "", false, false);
  check->add_option("--only", ka.only, "criteria to run")->delimiter(',');
  check->add_option("--expect-red", ka.expect_red, "criteria known to fail")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }
  for (auto* sub : app.get_subcommands())
    if (c.format.empty()) c.format = default_format[sub];

  try {
    if (gen->parsed()) return run_gen(c);
    if (roots->parsed()) return run_roots(c, ra);
    if (theta->parsed()) return run_theta(c);
    if (witness->parsed()) return run_witness(c, wa);
    if (scan->parsed()) return run_scan(c, sa);
    return run_check(c, ka);
  } catch (const rz::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const rz::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    if (const auto* w = dynamic_cast<const rz::WitnessSearchError*>(&e))
      for (const auto& line : w->trace()) std::cerr << "  " << line << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
