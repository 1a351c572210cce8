#include "ndsl/real_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "ndsl/contour.hpp"
#include "ndsl/csv.hpp"
#include "ndsl/errors.hpp"

namespace ndsl {

namespace {

struct Node {
  double lambda, f, df, theta, scale;
};

class Scanner {
 public:
  Scanner(const SLProblem& prob, const Controls& controls)
      : prob_(prob), controls_(controls), so_{controls.rk_tol, controls.mesh_nodes} {}

  Node sample(double lambda) {
    ++evals_;
    const CharValue cv = char_F(prob_, lambda, true, so_);
    const PruferResult pr = prufer_oscillation(prob_, lambda, so_);
    return {lambda, cv.f.real(), cv.df->real(), pr.theta_b, cv.scale};
  }

  double f(double lambda) {
    ++evals_;
    return char_F(prob_, lambda, false, so_).f.real();
  }

  double df(double lambda) {
    ++evals_;
    return char_F(prob_, lambda, true, so_).df->real();
  }

  template <class Fn>
  double bracket_root(Fn&& fn, double a, double b, double fa, double fb) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    std::uintmax_t iters = 200;
    const double tol = controls_.tol_lambda;
    auto stop = [tol](double x, double y) { return std::abs(y - x) <= std::max(tol, 4e-16 * std::abs(x)); };
    const auto r = boost::math::tools::toms748_solve(fn, a, b, fa, fb, stop, iters);
    return 0.5 * (r.first + r.second);
  }

  void refine(const Node& a, const Node& b, int depth, std::vector<Node>& out) {
    if (depth < 40 && std::abs(b.theta - a.theta) > 0.5 * std::numbers::pi &&
        b.lambda - a.lambda > 1e-9 * (1.0 + std::abs(a.lambda))) {
      const Node m = sample(0.5 * (a.lambda + b.lambda));
      refine(a, m, depth + 1, out);
      refine(m, b, depth + 1, out);
      return;
    }
    out.push_back(b);
  }

  // Zeros of F inside one grid cell, including double zeros seen only through F'.
  void cell_roots(const Node& a, const Node& b, std::vector<double>& roots) {
    std::vector<Node> pts{a};
    if (a.df * b.df < 0.0) {
      const double c = bracket_root([&](double l) { return df(l); }, a.lambda, b.lambda, a.df, b.df);
      const Node nc = sample(c);
      pts.push_back(nc);
      if (std::abs(nc.f) <= controls_.tol_f * (1.0 + nc.scale)) roots.push_back(c);
    }
    pts.push_back(b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Node& x = pts[i];
      const Node& y = pts[i + 1];
      if (x.f == 0.0) roots.push_back(x.lambda);
      if (x.f * y.f < 0.0) roots.push_back(bracket_root([&](double l) { return f(l); }, x.lambda, y.lambda, x.f, y.f));
    }
  }

  int evaluations() const { return evals_; }

 private:
  const SLProblem& prob_;
  const Controls& controls_;
  ShootOptions so_;
  int evals_ = 0;
};

double oscillation_constant(const SLProblem& prob, const Controls& controls) {
  const double c = std::max(sqrt_weight_integral(prob, Side::Positive, controls.tol_quad),
                            sqrt_weight_integral(prob, Side::Negative, controls.tol_quad));
  return std::max(c, 1e-3);
}

}  // namespace

RealScan locate_real_eigenvalues(const SLProblem& prob, double lo, double hi, const Controls& controls) {
  if (!(lo < hi)) throw PreconditionError("real window must satisfy lo < hi");
  RealScan out{{}, lo, hi, {}, 0};
  const ShootOptions so{controls.rk_tol, controls.mesh_nodes};

  // Move window ends that sit on an eigenvalue outward.
  for (double* end : {&out.lo, &out.hi}) {
    const double dir = end == &out.lo ? -1.0 : 1.0;
    for (int k = 0; k < 8; ++k) {
      const CharValue cv = char_F(prob, *end, false, so);
      if (std::abs(cv.f) > 1e-9 * cv.scale) break;
      const double old = *end;
      *end += dir * 1e-6 * (1.0 + std::abs(*end));
      out.warnings.push_back("window end " + format_real(old) + " at an eigenvalue; nudged to " + format_real(*end));
    }
  }

  Scanner scan(prob, controls);
  const double C = oscillation_constant(prob, controls);
  std::vector<Node> grid{scan.sample(out.lo)};
  double lambda = out.lo;
  const double max_step = (out.hi - out.lo) / 16.0;
  while (lambda < out.hi) {
    const double step = std::min(0.25 * std::numbers::pi * std::sqrt(std::max(std::abs(lambda), 1.0)) / C, max_step);
    lambda = std::min(lambda + step, out.hi);
    const Node next = scan.sample(lambda);
    const Node prev = grid.back();
    scan.refine(prev, next, 0, grid);
  }

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) scan.cell_roots(grid[i], grid[i + 1], roots);
  if (grid.back().f == 0.0) roots.push_back(grid.back().lambda);
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (r < out.lo || r > out.hi) continue;
    if (!unique.empty() && r - unique.back() <= std::max(10.0 * controls.tol_lambda, 1e-12 * std::abs(r))) continue;
    unique.push_back(r);
  }

  const WindingOptions wopts = winding_options(controls);
  for (std::size_t i = 0; i < unique.size(); ++i) {
    double rho = tight_radius(unique[i], controls);
    if (i > 0) rho = std::min(rho, 0.3 * (unique[i] - unique[i - 1]));
    if (i + 1 < unique.size()) rho = std::min(rho, 0.3 * (unique[i + 1] - unique[i]));
    int mult = 1;
    try {
      mult = winding_number(prob, ContourBox::around(unique[i], rho), wopts).count;
    } catch (const NumericalError& e) {
      out.warnings.push_back("multiplicity at " + format_real(unique[i]) + " unconfirmed: " + e.what());
    }
    if (mult <= 0) {
      out.warnings.push_back("candidate " + format_real(unique[i]) + " has zero winding; dropped");
      continue;
    }
    out.roots.push_back({unique[i], mult});
  }
  out.evaluations = scan.evaluations();
  return out;
}

RealSpectrum real_spectrum(const SLProblem& prob, double lo, double hi, const Controls& controls) {
  const RealScan scan = locate_real_eigenvalues(prob, lo, hi, controls);
  RealSpectrum out{{}, scan.lo, scan.hi, scan.warnings};
  for (const auto& root : scan.roots) out.records.push_back(make_record(prob, cplx(root.lambda), root.multiplicity, controls));
  return out;
}

int thin_box_count(const SLProblem& prob, double lo, double hi, double eps, const Controls& controls) {
  return winding_number(prob, ContourBox{lo, hi, -eps, eps}, winding_options(controls)).count;
}

SLProblem auxiliary_problem(const SLProblem& prob, double lambda) {
  const Expression l = Expression::number(lambda);
  auto potential = combine(prob.q(), prob.r(), [&](const Expression& q, const Expression& r) { return q - l * r; });
  return SLProblem(prob.a(), prob.b(), prob.p(), std::move(potential),
                   PiecewiseCoefficient::constant(prob.a(), prob.b(), 1.0), prob.alpha(), prob.beta());
}

NegativeCount count_below(const SLProblem& unit_weight_problem, double nu, const Controls& controls) {
  const ShootOptions so{controls.rk_tol, controls.mesh_nodes};
  const PruferResult pr = prufer_oscillation(unit_weight_problem, nu, so);
  const CharValue cv = char_F(unit_weight_problem, nu, false, so);
  const bool boundary = std::abs(cv.f) <= controls.tol_f * (1.0 + cv.scale);
  // Eigenvalue k (k = 1, 2, ...) sits where theta(b) = k pi - beta.
  const double t = (pr.theta_b + unit_weight_problem.beta()) / std::numbers::pi;
  int count = 0;
  if (boundary) count = std::max(0, static_cast<int>(std::lround(t)) - 1);
  else if (t > 1.0) count = static_cast<int>(std::ceil(t)) - 1;
  return {count, boundary};
}

NegativeCount haupt_n(const SLProblem& prob, double lambda, const Controls& controls) {
  return count_below(auxiliary_problem(prob, lambda), 0.0, controls);
}

int haupt_n0(const SLProblem& prob, const std::vector<double>& lambda_grid, const Controls& controls) {
  if (lambda_grid.empty()) throw PreconditionError("empty lambda grid");
  std::vector<std::pair<double, int>> pts;
  for (double l : lambda_grid) pts.emplace_back(l, haupt_n(prob, l, controls).count);
  std::sort(pts.begin(), pts.end());
  for (int pass = 0; pass < 4; ++pass) {
    int best = pts.front().second;
    for (const auto& p : pts) best = std::min(best, p.second);
    std::vector<std::pair<double, int>> extra;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].second != best) continue;
      if (i > 0) extra.emplace_back(0.5 * (pts[i - 1].first + pts[i].first), 0);
      if (i + 1 < pts.size()) extra.emplace_back(0.5 * (pts[i].first + pts[i + 1].first), 0);
    }
    for (auto& e : extra) e.second = haupt_n(prob, e.first, controls).count;
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first == b.first; }), pts.end());
  }
  int best = pts.front().second;
  for (const auto& p : pts) best = std::min(best, p.second);
  return best;
}

double sup_abs_q(const SLProblem& prob) {
  double m = 0.0;
  for (const auto& seg : prob.segments()) {
    for (int k = 0; k <= 16; ++k) m = std::max(m, std::abs(prob.q_at(seg, seg.lo + (seg.hi - seg.lo) * k / 16.0)));
  }
  return m;
}

double lowest_eigenvalue(const SLProblem& unit_weight_problem, const Controls& controls) {
  const SLProblem& P = unit_weight_problem;
  double L = -std::max(4.0 * sup_abs_q(P), 10.0);
  for (int k = 0; count_below(P, L, controls).count > 0 || count_below(P, L, controls).zero_is_eigenvalue; ++k) {
    if (k > 60) throw NumericalError("lowest_eigenvalue", "no lower bound found");
    L *= 2.0;
  }
  double width = std::max(10.0, std::abs(L));
  double U = L + width;
  for (int k = 0;; ++k) {
    const NegativeCount c = count_below(P, U, controls);
    if (c.count > 0 || c.zero_is_eigenvalue) break;
    if (k > 60) throw NumericalError("lowest_eigenvalue", "no eigenvalue found above " + format_real(L));
    L = U;
    width *= 2.0;
    U = L + width;
  }
  while (U - L > 1e-6 * (1.0 + std::abs(U))) {
    const double M = 0.5 * (L + U);
    const NegativeCount c = count_below(P, M, controls);
    if (c.count > 0 || c.zero_is_eigenvalue) U = M;
    else L = M;
  }
  const ShootOptions so{controls.rk_tol, controls.mesh_nodes};
  auto f = [&](double l) { return char_F(P, l, false, so).f.real(); };
  double fl = f(L), fu = f(U);
  for (int k = 0; fl * fu > 0.0 && k < 4; ++k) {
    const double w = U - L;
    L -= w;
    U += w;
    fl = f(L);
    fu = f(U);
  }
  if (fl * fu > 0.0) return std::abs(fl) < std::abs(fu) ? L : U;
  if (fl == 0.0) return L;
  if (fu == 0.0) return U;
  std::uintmax_t iters = 200;
  auto stop = [&](double x, double y) { return std::abs(y - x) <= std::max(controls.tol_lambda, 4e-16 * std::abs(x)); };
  const auto r = boost::math::tools::toms748_solve(f, L, U, fl, fu, stop, iters);
  return 0.5 * (r.first + r.second);
}

SLProblem shifted_weight_problem(const SLProblem& prob) {
  const auto one = PiecewiseCoefficient::constant(prob.a(), prob.b(), 1.0);
  return prob.with_r(combine(prob.r(), one, [](const Expression& r, const Expression& c) { return r + c; }));
}

ShiftedCount negative_count_shifted(const SLProblem& prob, const Controls& controls) {
  const SLProblem W = shifted_weight_problem(prob);
  for (const auto& iv : sign_profile(W.r())) {
    if (iv.sign == Sign::Negative || iv.sign == Sign::Mixed)
      throw PreconditionError("weight r + 1 takes negative values: infinitely many negative eigenvalues");
  }
  const ShootOptions so{controls.rk_tol, controls.mesh_nodes};
  const CharValue f0 = char_F(W, 0.0, false, so);
  if (std::abs(f0.f) <= controls.tol_f * (1.0 + f0.scale))
    throw PreconditionError("zero is an eigenvalue of the shifted-weight problem");

  const double base = 10.0 + 2.0 * sup_abs_q(prob);
  auto negatives = [](const RealScan& s) {
    int n = 0;
    for (const auto& r : s.roots)
      if (r.lambda < 0.0) n += r.multiplicity;
    return n;
  };
  std::vector<int> history;
  double window = base;
  for (int k = 0; k < 12; ++k, window *= 4.0) {
    history.push_back(negatives(locate_real_eigenvalues(W, -window, 0.0, controls)));
    const std::size_t n = history.size();
    if (n >= 3 && history[n - 1] == history[n - 2] && history[n - 2] == history[n - 3]) {
      const int boxed = thin_box_count(W, -window, 0.0, 1e-2, controls);
      if (boxed != history.back())
        throw NumericalError("negative_count_shifted", "thin-box count " + std::to_string(boxed) +
                                                           " disagrees with located count " +
                                                           std::to_string(history.back()));
      return {history.back(), window};
    }
  }
  throw NumericalError("negative_count_shifted", "negative eigenvalue count did not stabilize");
}

}  // namespace ndsl
