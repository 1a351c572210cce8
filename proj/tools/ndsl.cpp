// ndsl: spectra of -(p y')' + q y = lambda r y with an indefinite weight.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ndsl/analysis.hpp"
#include "ndsl/complex_spectrum.hpp"
#include "ndsl/csv.hpp"
#include "ndsl/errors.hpp"
#include "ndsl/oracle.hpp"
#include "ndsl/problem_io.hpp"
#include "ndsl/real_spectrum.hpp"
#include "ndsl/shooting.hpp"

using namespace ndsl;

namespace {

struct RunConfig {
  std::string command;
  std::string problem;
  std::vector<double> real_window{-100.0, 100.0};
  std::vector<double> complex_box{-20.0, 20.0, -20.0, 20.0};
  bool box_given = false;
  Controls controls;
  int oracle_n = 400;
  int n_max = 40;
  int points = 0;
  std::vector<double> lambda;
  std::string emit_plot;
  std::string out;
};

// CSV goes to --out when given (the report then goes to stdout); otherwise the CSV takes
// stdout and the report moves to stderr.
struct Sinks {
  std::ofstream file;
  std::ostream* csv;
  std::ostream* report;

  explicit Sinks(const RunConfig& cfg, bool csv_primary) {
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) throw std::runtime_error("cannot write " + cfg.out);
      csv = &file;
      report = &std::cout;
    } else {
      csv = &std::cout;
      report = csv_primary ? &std::cerr : &std::cout;
    }
  }
};

std::string complex_str(cplx z) {
  return format_real(z.real()) + (z.imag() < 0 ? "-" : "+") + format_real(std::abs(z.imag())) + "i";
}

void print_settings(std::ostream& os, const RunConfig& c) {
  os << "command=" << c.command << '\n'
     << "problem=" << c.problem << '\n'
     << "real_window=" << format_real(c.real_window[0]) << ' ' << format_real(c.real_window[1]) << '\n'
     << "complex_box=" << format_real(c.complex_box[0]) << ' ' << format_real(c.complex_box[1]) << ' '
     << format_real(c.complex_box[2]) << ' ' << format_real(c.complex_box[3]) << '\n'
     << "tol_lambda=" << format_real(c.controls.tol_lambda) << '\n'
     << "tol_f=" << format_real(c.controls.tol_f) << '\n'
     << "rk_tol=" << format_real(c.controls.rk_tol) << '\n'
     << "tol_ghost=" << format_real(c.controls.tol_ghost) << '\n';
}

ContourBox box_of(const RunConfig& c) {
  return {c.complex_box[0], c.complex_box[1], c.complex_box[2], c.complex_box[3]};
}

std::ofstream plot_file(const RunConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.emit_plot);
  const auto path = std::filesystem::path(c.emit_plot) / name;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

void print_warnings(std::ostream& os, const std::vector<std::string>& w) {
  for (const auto& s : w) os << "warning=" << s << '\n';
}

int cmd_solve(const SLProblem& prob, const RunConfig& c) {
  Sinks io(c, true);
  const RealSpectrum real = real_spectrum(prob, c.real_window[0], c.real_window[1], c.controls);
  const ComplexSpectrum cs = complex_spectrum(prob, box_of(c), c.controls);
  std::vector<EigenvalueRecord> all = real.records;
  all.insert(all.end(), cs.records.begin(), cs.records.end());
  std::sort(all.begin(), all.end(), [](const EigenvalueRecord& a, const EigenvalueRecord& b) {
    return a.lambda.real() != b.lambda.real() ? a.lambda.real() < b.lambda.real() : a.lambda.imag() < b.lambda.imag();
  });
  write_spectrum_csv(*io.csv, all);

  std::ostream& r = *io.report;
  print_settings(r, c);
  r << "searched_box=" << format_real(cs.searched.re0) << ' ' << format_real(cs.searched.re1) << ' '
    << format_real(cs.searched.im0) << ' ' << format_real(cs.searched.im1) << '\n'
    << "real_count=" << real.records.size() << '\n'
    << "nonreal_count=" << cs.nonreal_count() << '\n'
    << "cross_check=" << (cs.cross_check < 0 ? "skipped" : cs.cross_check_ok ? "pass" : "fail") << '\n';
  print_warnings(r, real.warnings);
  print_warnings(r, cs.warnings);
  for (const auto& rec : all) print_warnings(r, rec.warnings);
  if (!c.emit_plot.empty()) {
    auto f = plot_file(c, "box_audit.txt");
    write_box_audit(f, cs.audit);
  }
  return 0;
}

int cmd_scan(const SLProblem& prob, const RunConfig& c) {
  Sinks io(c, true);
  const ShootOptions so{c.controls.rk_tol, c.controls.mesh_nodes};
  std::ostream& os = *io.csv;
  if (c.box_given) {
    const int n = c.points > 0 ? c.points : 101;
    os << "re_lambda,im_lambda,re_F,im_F\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const cplx z(c.complex_box[0] + (c.complex_box[1] - c.complex_box[0]) * j / (n - 1),
                     c.complex_box[2] + (c.complex_box[3] - c.complex_box[2]) * i / (n - 1));
        const cplx f = char_F(prob, z, false, so).f;
        os << format_real(z.real()) << ',' << format_real(z.imag()) << ',' << format_real(f.real()) << ','
           << format_real(f.imag()) << '\n';
      }
    }
  } else {
    const int n = c.points > 0 ? c.points : 1001;
    os << "re_lambda,re_F,theta_b,osc_count\n";
    for (int i = 0; i < n; ++i) {
      const double l = c.real_window[0] + (c.real_window[1] - c.real_window[0]) * i / (n - 1);
      const PruferResult pr = prufer_oscillation(prob, l, so);
      os << format_real(l) << ',' << format_real(char_F(prob, l, false, so).f.real()) << ','
         << format_real(pr.theta_b) << ',' << pr.zero_count << '\n';
    }
  }
  print_settings(*io.report, c);
  return 0;
}

int cmd_indices(const SLProblem& prob, const RunConfig& c) {
  Sinks io(c, false);
  IndexOptions opts;
  opts.initial_window = std::max(std::abs(c.real_window[0]), std::abs(c.real_window[1]));
  opts.complex_box = box_of(c);
  const IndicesReport rep = indices(prob, c.controls, opts);
  std::ostream& r = *io.report;
  print_settings(r, c);
  r << "n_R=" << rep.n_R << '\n'
    << "n_H=" << rep.n_H << '\n'
    << "validated=" << (rep.validated ? "true" : "false") << '\n'
    << "window_used=" << format_real(rep.window_lo) << ' ' << format_real(rep.window_hi) << '\n'
    << "complete_below=" << rep.complete_below << '\n'
    << "n0=" << rep.n0 << '\n'
    << "k51=" << (rep.k51 ? std::to_string(*rep.k51) : "unavailable") << '\n';
  if (!rep.k51) r << "k51_note=" << rep.k51_note << '\n';
  for (const auto& [n, ls] : rep.counts_table) {
    r << "count[" << n << "]=";
    for (std::size_t i = 0; i < ls.size(); ++i) r << (i ? " " : "") << format_real(ls[i]);
    r << '\n';
  }
  for (const auto& b : rep.bound_checks) r << "check " << b.id << '=' << b.verdict << " (" << b.details << ")\n";
  print_warnings(r, rep.warnings);
  if (io.csv != io.report) {
    *io.csv << "osc_count,lambda\n";
    for (const auto& [n, ls] : rep.counts_table)
      for (double l : ls) *io.csv << n << ',' << format_real(l) << '\n';
  }
  return 0;
}

int cmd_asymptotics(const SLProblem& prob, const RunConfig& c) {
  Sinks io(c, true);
  const AsymptoticTable t = asymptotic_check(prob, c.n_max, c.controls);
  *io.csv << "side,n,lambda,ratio\n";
  std::ostream& r = *io.report;
  print_settings(r, c);
  auto emit = [&](const std::optional<AsymptoticSide>& s, const char* name) {
    if (!s) return;
    for (const auto& row : s->rows)
      *io.csv << name << ',' << row.n << ',' << format_real(row.lambda) << ',' << format_real(row.ratio) << '\n';
    r << name << "_C=" << format_real(s->C) << '\n'
      << name << "_jorgens=" << format_real(s->jorgens) << '\n'
      << name << "_counting=" << format_real(s->counting) << '\n';
  };
  emit(t.positive, "positive");
  emit(t.negative, "negative");
  if (!c.emit_plot.empty()) {
    auto f = plot_file(c, "asymptotics_plot.csv");
    f << "n,lambda,ratio\n";
    if (t.positive)
      for (const auto& row : t.positive->rows)
        f << row.n << ',' << format_real(row.lambda) << ',' << format_real(row.ratio) << '\n';
  }
  return 0;
}

int cmd_oracle(const SLProblem& prob, const RunConfig& c) {
  Sinks io(c, false);
  const Pencil pencil = build_pencil(prob, c.oracle_n);
  const std::vector<cplx> pe = pencil_eigenvalues(pencil);
  const RealSpectrum real = real_spectrum(prob, c.real_window[0], c.real_window[1], c.controls);
  const ComplexSpectrum cs = complex_spectrum(prob, box_of(c), c.controls);
  std::vector<cplx> shooting;
  for (const auto& r : real.records) shooting.push_back(r.lambda);
  for (const auto& r : cs.records) shooting.push_back(r.lambda);
  std::ostream& r = *io.report;
  print_settings(r, c);
  r << "oracle_n=" << c.oracle_n << '\n' << "mesh_width=" << format_real(pencil.h) << '\n';
  double worst = 0.0;
  for (const auto& m : match_eigenvalues(shooting, pe)) {
    worst = std::max(worst, m.rel_error);
    r << "match shooting=" << complex_str(m.reference) << " pencil=" << complex_str(m.nearest)
      << " rel_error=" << format_real(m.rel_error) << '\n';
  }
  r << "max_rel_error=" << format_real(worst) << '\n';
  if (io.csv != io.report) {
    *io.csv << "re_lambda,im_lambda\n";
    for (cplx z : pe) *io.csv << format_real(z.real()) << ',' << format_real(z.imag()) << '\n';
  }
  if (!c.emit_plot.empty()) {
    auto f = plot_file(c, "pencil.csv");
    write_pencil_csv(f, pencil);
  }
  return 0;
}

int cmd_classify(const SLProblem& prob, const RunConfig& c) {
  const DefinitenessClass d = classify_definiteness(prob, c.controls);
  print_settings(std::cout, c);
  std::cout << "class=" << to_string(d.kind) << '\n';
  if (d.nu0) std::cout << "nu0=" << format_real(*d.nu0) << '\n';
  for (const auto& iv : d.r_profile)
    std::cout << "r_sign " << format_real(iv.lo) << ' ' << format_real(iv.hi) << ' ' << to_string(iv.sign) << '\n';
  return 0;
}

int cmd_eigenfunction(const SLProblem& prob, const RunConfig& c) {
  Sinks io(c, true);
  const cplx lambda(c.lambda[0], c.lambda[1]);
  const ShootOptions so{c.controls.rk_tol, c.controls.mesh_nodes};
  const CharValue cv = char_F(prob, lambda, false, so);
  const EigenvalueRecord rec = make_record(prob, lambda, 1, c.controls);
  write_eigenfunction_csv(*io.csv, rec.eigenfunction);
  std::ostream& r = *io.report;
  print_settings(r, c);
  r << "lambda=" << complex_str(lambda) << '\n'
    << "abs_F=" << format_real(std::abs(cv.f)) << '\n'
    << "krein=" << format_real(rec.krein) << '\n'
    << "bilinear=" << complex_str(rec.bilinear) << '\n'
    << "class=" << to_string(rec.cls) << '\n';
  if (std::abs(cv.f) > c.controls.tol_f * (1.0 + cv.scale)) r << "warning=lambda is not an eigenvalue to tol_f\n";
  const InterlacingVerdict v = interlacing_check(prob, rec);
  r << "interlacing=" << (!v.applicable ? "not_applicable" : v.pass ? "pass" : "fail") << " (" << v.details << ")\n";
  if (!c.emit_plot.empty()) {
    auto f = plot_file(c, "eigenfunction_plot.csv");
    f << "x,u,v,abs_y\n";
    const auto& ef = rec.eigenfunction;
    for (std::size_t j = 0; j < ef.x.size(); ++j)
      f << format_real(ef.x[j]) << ',' << format_real(ef.u[j].real()) << ',' << format_real(ef.u[j].imag()) << ','
        << format_real(std::abs(ef.u[j])) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalues of Sturm-Liouville problems with an indefinite weight"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  app.add_option("--real-window", cfg.real_window, "Real search window A B")->expected(2);
  auto* box = app.add_option("--complex-box", cfg.complex_box, "Complex search box R0 R1 I0 I1")->expected(4);
  app.add_option("--tol-lambda", cfg.controls.tol_lambda, "Eigenvalue tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-f", cfg.controls.tol_f, "Relative |F| tolerance")->check(CLI::PositiveNumber);
  app.add_option("--rk-tol", cfg.controls.rk_tol, "Runge-Kutta tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-ghost", cfg.controls.tol_ghost, "Definiteness tolerance")->check(CLI::PositiveNumber);
  app.add_option("--oracle-n", cfg.oracle_n, "Finite-difference mesh size")->check(CLI::Range(8, 4000));
  app.add_option("--emit-plot", cfg.emit_plot, "Directory for plot tables");
  app.add_option("--out", cfg.out, "CSV output file");

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"solve", "Real and non-real spectrum as CSV"},
                      {"scan", "Samples of F on the real window, or on the complex box when given"},
                      {"indices", "Richardson and Haupt indices with theorem checks"},
                      {"asymptotics", "Eigenvalue asymptotics table"},
                      {"oracle", "Finite-difference cross-check"},
                      {"classify", "Definiteness class"},
                      {"eigenfunction", "Eigenfunction at --lambda RE IM"}};
  for (const auto& s : subs) {
    auto* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("problem", cfg.problem, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    if (std::string(s.name) == "scan") sc->add_option("--points", cfg.points, "Samples per axis")->check(CLI::Range(2, 100000));
    if (std::string(s.name) == "asymptotics") sc->add_option("--n-max", cfg.n_max, "Largest zero count")->check(CLI::Range(1, 1000));
    if (std::string(s.name) == "eigenfunction")
      sc->add_option("--lambda", cfg.lambda, "Eigenvalue RE IM")->expected(2)->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.box_given = box->count() > 0;

  try {
    if (!(cfg.real_window[0] < cfg.real_window[1])) throw PreconditionError("--real-window needs A < B");
    if (!(cfg.complex_box[0] < cfg.complex_box[1] && cfg.complex_box[2] < cfg.complex_box[3]))
      throw PreconditionError("--complex-box needs R0 < R1 and I0 < I1");
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const SLProblem prob = load_problem(cfg.problem);
    require_valid(prob, cfg.controls);
    if (cfg.command == "solve") return cmd_solve(prob, cfg);
    if (cfg.command == "scan") return cmd_scan(prob, cfg);
    if (cfg.command == "indices") return cmd_indices(prob, cfg);
    if (cfg.command == "asymptotics") return cmd_asymptotics(prob, cfg);
    if (cfg.command == "oracle") return cmd_oracle(prob, cfg);
    if (cfg.command == "classify") return cmd_classify(prob, cfg);
    return cmd_eigenfunction(prob, cfg);
  } catch (const ValidationError& e) {
    std::cerr << "invalid problem: " << e.what() << '\n';
    for (const auto& i : e.issues()) std::cerr << "  " << i << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "invalid problem: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid problem: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure [" << e.stage() << "]: " << e.what() << '\n';
    return 3;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
