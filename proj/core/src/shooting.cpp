#include "ndsl/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include "ndsl/csv.hpp"
#include "ndsl/errors.hpp"
#include "ndsl/ode.hpp"

namespace ndsl {

namespace {

using State2 = std::array<cplx, 2>;
using State4 = std::array<cplx, 4>;

void advance(const SLProblem& prob, const Segment& seg, cplx lambda, double x0, double x1, StateVector& s,
             DerivativeState* ds, double rk_tol, double& h) {
  if (!(x1 > x0)) return;
  if (seg.constant) {
    if (ds) {
      const auto t = transfer_with_derivative(seg.pc, seg.qc, seg.rc, lambda, x1 - x0);
      const cplx du = t.m.a * ds->du + t.m.b * ds->dv + t.dm.a * s.u + t.dm.b * s.v;
      const cplx dv = t.m.c * ds->du + t.m.d * ds->dv + t.dm.c * s.u + t.dm.d * s.v;
      *ds = {du, dv};
      s = {t.m.a * s.u + t.m.b * s.v, t.m.c * s.u + t.m.d * s.v};
    } else {
      const Mat2 m = transfer_matrix_constant(seg.pc, seg.qc, seg.rc, lambda, x1 - x0);
      s = {m.a * s.u + m.b * s.v, m.c * s.u + m.d * s.v};
    }
    return;
  }
  if (ds) {
    State4 y{s.u, s.v, ds->du, ds->dv};
    auto rhs = [&](double x, const State4& w) {
      const double p = prob.p_at(seg, x), q = prob.q_at(seg, x), r = prob.r_at(seg, x);
      const cplx k = q - lambda * r;
      return State4{w[1] / p, k * w[0], w[3] / p, k * w[2] - r * w[0]};
    };
    dopri45(rhs, x0, x1, y, rk_tol, h, "integrate_ivp");
    s = {y[0], y[1]};
    *ds = {y[2], y[3]};
  } else {
    State2 y{s.u, s.v};
    auto rhs = [&](double x, const State2& w) {
      const double p = prob.p_at(seg, x), q = prob.q_at(seg, x), r = prob.r_at(seg, x);
      return State2{w[1] / p, (q - lambda * r) * w[0]};
    };
    dopri45(rhs, x0, x1, y, rk_tol, h, "integrate_ivp");
    s = {y[0], y[1]};
  }
}

// Largest |w| with w^2 = (lambda r - q)/p over the segment (sampled when not constant).
double local_frequency(const SLProblem& prob, const Segment& seg, cplx lambda) {
  if (seg.constant) return std::sqrt(std::abs((lambda * seg.rc - seg.qc) / seg.pc));
  double w = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const double x = seg.lo + (seg.hi - seg.lo) * k / 8.0;
    w = std::max(w, std::sqrt(std::abs((lambda * prob.r_at(seg, x) - prob.q_at(seg, x)) / prob.p_at(seg, x))));
  }
  return w;
}

int mesh_intervals(const SLProblem& prob, const Segment& seg, cplx lambda, int total_nodes) {
  const double len = seg.hi - seg.lo;
  const double share = total_nodes * len / (prob.b() - prob.a());
  const double resolve = 8.0 * local_frequency(prob, seg, lambda) * len;
  int n = static_cast<int>(std::ceil(std::max({2.0, share, resolve})));
  n = std::min(n, 1 << 18);
  return n + (n % 2);
}

void check_finite(const StateVector& s) {
  if (!std::isfinite(s.u.real()) || !std::isfinite(s.u.imag()) || !std::isfinite(s.v.real()) ||
      !std::isfinite(s.v.imag()))
    throw NumericalError("integrate_ivp", "solution overflowed");
}

struct Angle {
  double theta, logrho;
};

void advance_angle(const SLProblem& prob, const Segment& seg, double lambda, double x0, double x1, Angle& a,
                   double rk_tol, double& h) {
  if (!(x1 > x0)) return;
  if (seg.constant) {
    // Exact propagation of the unit direction (sin theta, cos theta). Each substep keeps
    // |delta theta| < pi: oscillatory pieces advance at most pi/4 in the scaled phase, and on
    // non-oscillatory pieces theta cannot leave the interval between two repelling angles.
    const double z = (lambda * seg.rc - seg.qc) / seg.pc;
    const double len = x1 - x0;
    int m = 1;
    if (z > 0.0) m = std::max(1, static_cast<int>(std::ceil(std::sqrt(z) * len / (std::numbers::pi / 4))));
    else if (z < 0.0) m = std::max(1, static_cast<int>(std::ceil(std::sqrt(-z) * len / 20.0)));
    const Mat2 mat = transfer_matrix_constant(seg.pc, seg.qc, seg.rc, cplx(lambda), len / m);
    const double ma = mat.a.real(), mb = mat.b.real(), mc = mat.c.real(), md = mat.d.real();
    for (int k = 0; k < m; ++k) {
      const double su = std::sin(a.theta), cv = std::cos(a.theta);
      const double u = ma * su + mb * cv, v = mc * su + md * cv;
      const double phi = std::atan2(u, v);
      a.theta += std::remainder(phi - a.theta, 2.0 * std::numbers::pi);
      a.logrho += std::log(std::hypot(u, v));
    }
    return;
  }
  std::array<double, 2> y{a.theta, a.logrho};
  auto rhs = [&](double x, const std::array<double, 2>& w) {
    const double p = prob.p_at(seg, x), q = prob.q_at(seg, x), r = prob.r_at(seg, x);
    const double s = std::sin(w[0]), c = std::cos(w[0]);
    const double k = lambda * r - q;
    return std::array<double, 2>{c * c / p + k * s * s, (1.0 / p - k) * s * c};
  };
  dopri45(rhs, x0, x1, y, rk_tol, h, "prufer");
  a = {y[0], y[1]};
}

double simpson(const std::vector<double>& x, std::size_t i0, std::size_t i1, const std::vector<double>& f) {
  const std::size_t n = i1 - i0;
  if (n == 0) return 0.0;
  const double h = (x[i1] - x[i0]) / static_cast<double>(n);
  double s = f[i0] + f[i1];
  for (std::size_t k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f[i0 + k];
  return s * h / 3.0;
}

void require_mesh(const SLProblem& prob, const Eigenfunction& ef) {
  if (ef.segment_start.size() != prob.segments().size() + 1 || ef.x.size() != ef.u.size() ||
      ef.x.size() != ef.v.size())
    throw PreconditionError("eigenfunction mesh does not match the problem segments");
}

}  // namespace

IvpResult integrate_ivp(const SLProblem& prob, cplx lambda, bool want_derivative, bool want_mesh,
                        const ShootOptions& opts) {
  StateVector s{std::sin(prob.alpha()), std::cos(prob.alpha())};
  DerivativeState ds;
  DerivativeState* dsp = want_derivative ? &ds : nullptr;
  IvpResult out;
  double h = 0.0;
  if (want_mesh) {
    Eigenfunction ef;
    ef.x.push_back(prob.a());
    ef.u.push_back(s.u);
    ef.v.push_back(s.v);
    for (const auto& seg : prob.segments()) {
      ef.segment_start.push_back(ef.x.size() - 1);
      const int n = mesh_intervals(prob, seg, lambda, opts.mesh_nodes);
      const double step = (seg.hi - seg.lo) / n;
      if (seg.constant) {
        const StateVector s0 = s;
        for (int k = 1; k <= n; ++k) {
          const double x = k == n ? seg.hi : seg.lo + k * step;
          const Mat2 m = transfer_matrix_constant(seg.pc, seg.qc, seg.rc, lambda, x - seg.lo);
          ef.x.push_back(x);
          ef.u.push_back(m.a * s0.u + m.b * s0.v);
          ef.v.push_back(m.c * s0.u + m.d * s0.v);
        }
        advance(prob, seg, lambda, seg.lo, seg.hi, s, dsp, opts.rk_tol, h);
        s.u = ef.u.back();
        s.v = ef.v.back();
      } else {
        double x = seg.lo;
        for (int k = 1; k <= n; ++k) {
          const double xn = k == n ? seg.hi : seg.lo + k * step;
          advance(prob, seg, lambda, x, xn, s, dsp, opts.rk_tol, h);
          x = xn;
          ef.x.push_back(x);
          ef.u.push_back(s.u);
          ef.v.push_back(s.v);
        }
      }
    }
    ef.segment_start.push_back(ef.x.size() - 1);
    out.mesh = std::move(ef);
  } else {
    for (const auto& seg : prob.segments()) advance(prob, seg, lambda, seg.lo, seg.hi, s, dsp, opts.rk_tol, h);
  }
  check_finite(s);
  out.end = s;
  if (want_derivative) out.derivative = ds;
  return out;
}

CharValue char_F(const SLProblem& prob, cplx lambda, bool want_derivative, const ShootOptions& opts) {
  const auto r = integrate_ivp(prob, lambda, want_derivative, false, opts);
  const double cb = std::cos(prob.beta()), sb = std::sin(prob.beta());
  CharValue out;
  out.f = r.end.u * cb + r.end.v * sb;
  if (want_derivative) out.df = r.derivative->du * cb + r.derivative->dv * sb;
  out.scale = std::abs(r.end.u) + std::abs(r.end.v);
  return out;
}

Mat2 propagator(const SLProblem& prob, cplx lambda, double x0, double x1, const ShootOptions& opts) {
  StateVector c1{1.0, 0.0}, c2{0.0, 1.0};
  double h1 = 0.0, h2 = 0.0;
  for (const auto& seg : prob.segments()) {
    const double lo = std::max(x0, seg.lo), hi = std::min(x1, seg.hi);
    advance(prob, seg, lambda, lo, hi, c1, nullptr, opts.rk_tol, h1);
    advance(prob, seg, lambda, lo, hi, c2, nullptr, opts.rk_tol, h2);
  }
  return {c1.u, c2.u, c1.v, c2.v};
}

int zero_count_from_angle(double theta) {
  constexpr double kEps = 1e-7;
  const double t = (theta - kEps) / std::numbers::pi;
  if (t <= 1.0) return 0;
  return static_cast<int>(std::ceil(t)) - 1;
}

PruferResult prufer_oscillation(const SLProblem& prob, double lambda, const ShootOptions& opts) {
  Angle a{prob.alpha(), 0.0};
  double h = 0.0;
  for (const auto& seg : prob.segments()) advance_angle(prob, seg, lambda, seg.lo, seg.hi, a, opts.rk_tol, h);
  return {a.theta, a.logrho, zero_count_from_angle(a.theta)};
}

PruferResult prufer_oscillation(const SLProblem& prob, cplx lambda, const ShootOptions& opts) {
  if (lambda.imag() != 0.0) throw PreconditionError("Prufer angle requires real lambda");
  return prufer_oscillation(prob, lambda.real(), opts);
}

std::vector<std::pair<double, double>> prufer_trace(const SLProblem& prob, double lambda, int per_segment,
                                                    const ShootOptions& opts) {
  std::vector<std::pair<double, double>> trace{{prob.a(), prob.alpha()}};
  Angle a{prob.alpha(), 0.0};
  double h = 0.0;
  for (const auto& seg : prob.segments()) {
    double x = seg.lo;
    for (int k = 1; k <= per_segment; ++k) {
      const double xn = k == per_segment ? seg.hi : seg.lo + (seg.hi - seg.lo) * k / per_segment;
      advance_angle(prob, seg, lambda, x, xn, a, opts.rk_tol, h);
      x = xn;
      trace.emplace_back(x, a.theta);
    }
  }
  return trace;
}

Eigenfunction normalized(Eigenfunction ef) {
  std::size_t jmax = 0;
  for (std::size_t j = 1; j < ef.u.size(); ++j)
    if (std::abs(ef.u[j]) > std::abs(ef.u[jmax])) jmax = j;
  const cplx scale = ef.u[jmax];
  if (scale == cplx(0.0)) return ef;
  for (auto& u : ef.u) u /= scale;
  for (auto& v : ef.v) v /= scale;
  ef.u[jmax] = 1.0;
  return ef;
}

namespace {

struct Sweep {
  std::vector<StateVector> dir;  // |u| + |v| = 1
  std::vector<double> logs;      // log of the discarded magnitude
};

Sweep sweep(const std::vector<Mat2>& steps, StateVector init, bool forward) {
  const std::size_t n = steps.size() + 1;
  Sweep s{std::vector<StateVector>(n), std::vector<double>(n, 0.0)};
  const std::size_t first = forward ? 0 : n - 1;
  s.dir[first] = init;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t j = forward ? k : n - 1 - k;
    const StateVector& w = s.dir[forward ? j - 1 : j + 1];
    StateVector y;
    if (forward) {
      const Mat2& m = steps[j - 1];
      y = {m.a * w.u + m.b * w.v, m.c * w.u + m.d * w.v};
    } else {
      const Mat2& m = steps[j];  // unit determinant: the inverse is the adjugate
      y = {m.d * w.u - m.b * w.v, -m.c * w.u + m.a * w.v};
    }
    const double norm = std::abs(y.u) + std::abs(y.v);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("eigenfunction", "sweep degenerated");
    s.dir[j] = {y.u / norm, y.v / norm};
    s.logs[j] = s.logs[forward ? j - 1 : j + 1] + std::log(norm);
  }
  return s;
}

}  // namespace

Eigenfunction eigenfunction(const SLProblem& prob, cplx lambda, const ShootOptions& opts) {
  // Left and right solutions are each trusted only where their complementary solution has not
  // outgrown them; the two are joined where the worse of the two growth ratios is smallest.
  Eigenfunction ef;
  ef.x.push_back(prob.a());
  std::vector<Mat2> steps;
  for (const auto& seg : prob.segments()) {
    ef.segment_start.push_back(ef.x.size() - 1);
    const int n = mesh_intervals(prob, seg, lambda, opts.mesh_nodes);
    const double step = (seg.hi - seg.lo) / n;
    double x = seg.lo;
    for (int k = 1; k <= n; ++k) {
      const double xn = k == n ? seg.hi : seg.lo + k * step;
      if (seg.constant) {
        steps.push_back(transfer_matrix_constant(seg.pc, seg.qc, seg.rc, lambda, xn - x));
      } else {
        StateVector c1{1.0, 0.0}, c2{0.0, 1.0};
        double h1 = 0.0, h2 = 0.0;
        advance(prob, seg, lambda, x, xn, c1, nullptr, opts.rk_tol, h1);
        advance(prob, seg, lambda, x, xn, c2, nullptr, opts.rk_tol, h2);
        steps.push_back({c1.u, c2.u, c1.v, c2.v});
      }
      x = xn;
      ef.x.push_back(x);
    }
  }
  ef.segment_start.push_back(ef.x.size() - 1);

  const double sa = std::sin(prob.alpha()), ca = std::cos(prob.alpha());
  const double sb = std::sin(prob.beta()), cb = std::cos(prob.beta());
  const Sweep L = sweep(steps, {sa, ca}, true), LC = sweep(steps, {ca, -sa}, true);
  const Sweep R = sweep(steps, {sb, -cb}, false), RC = sweep(steps, {cb, sb}, false);
  const std::size_t n = ef.x.size();
  std::vector<double> left(n), right(n);
  for (std::size_t j = 0; j < n; ++j) {
    left[j] = std::max(j ? left[j - 1] : -INFINITY, LC.logs[j] - L.logs[j]);
    const std::size_t k = n - 1 - j;
    right[k] = std::max(j ? right[k + 1] : -INFINITY, RC.logs[k] - R.logs[k]);
  }
  std::size_t m = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (std::max(left[j], right[j]) < std::max(left[m], right[m])) m = j;

  const StateVector& lm = L.dir[m];
  const StateVector& rm = R.dir[m];
  const cplx match = (std::conj(rm.u) * lm.u + std::conj(rm.v) * lm.v) / (std::norm(rm.u) + std::norm(rm.v));
  std::vector<double> expo(n);
  double top = -INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    expo[j] = j <= m ? L.logs[j] - L.logs[m] : R.logs[j] - R.logs[m];
    top = std::max(top, expo[j]);
  }
  ef.u.resize(n);
  ef.v.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = std::exp(expo[j] - top);
    const StateVector& d = j <= m ? L.dir[j] : R.dir[j];
    const cplx c = j <= m ? cplx(w) : match * w;
    ef.u[j] = c * d.u;
    ef.v[j] = c * d.v;
  }
  return normalized(std::move(ef));
}

KreinNorms krein_norms(const SLProblem& prob, const Eigenfunction& ef) {
  require_mesh(prob, ef);
  const auto& segs = prob.segments();
  std::vector<double> fk(ef.x.size()), fre(ef.x.size()), fim(ef.x.size());
  double krein = 0.0;
  cplx bilinear{0.0};
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const std::size_t i0 = ef.segment_start[s], i1 = ef.segment_start[s + 1];
    for (std::size_t j = i0; j <= i1; ++j) {
      const double r = prob.r_at(segs[s], ef.x[j]);
      const cplx y2 = ef.u[j] * ef.u[j];
      fk[j] = r * std::norm(ef.u[j]);
      fre[j] = r * y2.real();
      fim[j] = r * y2.imag();
    }
    krein += simpson(ef.x, i0, i1, fk);
    bilinear += cplx(simpson(ef.x, i0, i1, fre), simpson(ef.x, i0, i1, fim));
  }
  return {krein, bilinear};
}

Forms evaluate_forms(const SLProblem& prob, const Eigenfunction& ef) {
  require_mesh(prob, ef);
  const auto& segs = prob.segments();
  std::vector<double> f(ef.x.size());
  double integral = 0.0;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const std::size_t i0 = ef.segment_start[s], i1 = ef.segment_start[s + 1];
    for (std::size_t j = i0; j <= i1; ++j) {
      const double p = prob.p_at(segs[s], ef.x[j]);
      f[j] = std::norm(ef.v[j]) / p + prob.q_at(segs[s], ef.x[j]) * std::norm(ef.u[j]);
    }
    integral += simpson(ef.x, i0, i1, f);
  }
  double L = integral;
  if (prob.alpha() != 0.0) L += std::norm(ef.u.front()) / std::tan(prob.alpha());
  if (prob.beta() != 0.0) L += std::norm(ef.u.back()) / std::tan(prob.beta());
  return {L, krein_norms(prob, ef).krein};
}

void write_eigenfunction_csv(std::ostream& os, const Eigenfunction& ef) {
  os << "x,re_u,im_u,re_v,im_v\n";
  for (std::size_t j = 0; j < ef.x.size(); ++j) {
    os << format_real(ef.x[j]) << ',' << format_real(ef.u[j].real()) << ',' << format_real(ef.u[j].imag()) << ','
       << format_real(ef.v[j].real()) << ',' << format_real(ef.v[j].imag()) << '\n';
  }
}

}  // namespace ndsl
