#include "ndsl/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "ndsl/errors.hpp"

namespace ndsl {

namespace {

constexpr double kSignBand = 1e-12;

std::string fmt_x(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::vector<double> merged_breakpoints(std::initializer_list<const PiecewiseCoefficient*> cs) {
  std::vector<double> pts;
  for (const auto* c : cs) {
    auto b = c->breakpoints();
    pts.insert(pts.end(), b.begin(), b.end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

PiecewiseCoefficient::PiecewiseCoefficient(double start, std::vector<Piece> pieces)
    : start_(start), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw ValidationError("coefficient has no pieces");
  double prev = start_;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].to > prev))
      throw ValidationError("piece breakpoints not strictly increasing at piece " + std::to_string(i) +
                            " (to=" + fmt_x(pieces_[i].to) + ")");
    prev = pieces_[i].to;
  }
}

PiecewiseCoefficient PiecewiseCoefficient::constant(double a, double b, double value) {
  return PiecewiseCoefficient(a, {Piece{b, Expression::number(value)}});
}

std::size_t PiecewiseCoefficient::piece_index(double x) const {
  if (!(x >= start_ && x <= end()))
    throw DomainError("x=" + fmt_x(x) + " outside [" + fmt_x(start_) + ", " + fmt_x(end()) + "]");
  // First piece whose right end exceeds x; x == end() falls into the last piece.
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Piece& p) { return v < p.to; });
  if (it == pieces_.end()) return pieces_.size() - 1;
  return static_cast<std::size_t>(it - pieces_.begin());
}

double PiecewiseCoefficient::operator()(double x) const { return pieces_[piece_index(x)].expr(x); }

std::vector<double> PiecewiseCoefficient::breakpoints() const {
  std::vector<double> b{start_};
  for (const auto& p : pieces_) b.push_back(p.to);
  return b;
}

bool PiecewiseCoefficient::is_piecewise_constant() const noexcept {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.expr.constant_value().has_value(); });
}

PiecewiseCoefficient combine(const PiecewiseCoefficient& f, const PiecewiseCoefficient& g,
                             const std::function<Expression(const Expression&, const Expression&)>& op) {
  if (f.start() != g.start() || f.end() != g.end()) throw ValidationError("coefficients span different intervals");
  const auto pts = merged_breakpoints({&f, &g});
  std::vector<Piece> pieces;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i - 1] + pts[i]);
    pieces.push_back({pts[i], op(f.pieces()[f.piece_index(mid)].expr, g.pieces()[g.piece_index(mid)].expr)});
  }
  return PiecewiseCoefficient(f.start(), std::move(pieces));
}

SLProblem::SLProblem(double a, double b, PiecewiseCoefficient p, PiecewiseCoefficient q, PiecewiseCoefficient r,
                     double alpha, double beta)
    : a_(a), b_(b), p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), alpha_(alpha), beta_(beta) {
  if (!(std::isfinite(a_) && std::isfinite(b_) && a_ < b_))
    throw ValidationError("interval must satisfy a < b, both finite");
  for (const auto* c : {&p_, &q_, &r_}) {
    if (c->start() != a_ || c->end() != b_)
      throw ValidationError("coefficient pieces must span [" + fmt_x(a_) + ", " + fmt_x(b_) + "]");
  }
  const auto pts = merged_breakpoints({&p_, &q_, &r_});
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i - 1] + pts[i]);
    Segment s{pts[i - 1], pts[i], p_.piece_index(mid), q_.piece_index(mid), r_.piece_index(mid), false, 0, 0, 0};
    const auto pc = p_.pieces()[s.ip].expr.constant_value();
    const auto qc = q_.pieces()[s.iq].expr.constant_value();
    const auto rc = r_.pieces()[s.ir].expr.constant_value();
    if (pc && qc && rc) {
      s.constant = true;
      s.pc = *pc;
      s.qc = *qc;
      s.rc = *rc;
    }
    segments_.push_back(s);
  }
}

double SLProblem::p_at(const Segment& s, double x) const { return s.constant ? s.pc : p_.pieces()[s.ip].expr(x); }
double SLProblem::q_at(const Segment& s, double x) const { return s.constant ? s.qc : q_.pieces()[s.iq].expr(x); }
double SLProblem::r_at(const Segment& s, double x) const { return s.constant ? s.rc : r_.pieces()[s.ir].expr(x); }

SLProblem SLProblem::with_q(PiecewiseCoefficient q) const { return SLProblem(a_, b_, p_, std::move(q), r_, alpha_, beta_); }
SLProblem SLProblem::with_r(PiecewiseCoefficient r) const { return SLProblem(a_, b_, p_, q_, std::move(r), alpha_, beta_); }

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "+";
    case Sign::Negative: return "-";
    case Sign::Mixed: return "mixed";
    case Sign::Zero: return "0";
  }
  return "?";
}

namespace {

// Sign sequence along a piece: a single entry for constant pieces, dense samples otherwise.
void piece_signs(const Piece& piece, double lo, double hi, std::vector<int>& out) {
  auto sgn = [](double v) { return v > kSignBand ? 1 : (v < -kSignBand ? -1 : 0); };
  if (auto c = piece.expr.constant_value()) {
    out.push_back(sgn(*c));
    return;
  }
  constexpr int kSamples = 1024;
  for (int k = 0; k <= kSamples; ++k) out.push_back(sgn(piece.expr(lo + (hi - lo) * k / kSamples)));
}

}  // namespace

std::vector<SignInterval> sign_profile(const PiecewiseCoefficient& c) {
  std::vector<SignInterval> out;
  double lo = c.start();
  for (const auto& piece : c.pieces()) {
    std::vector<int> s;
    piece_signs(piece, lo, piece.to, s);
    const bool pos = std::find(s.begin(), s.end(), 1) != s.end();
    const bool neg = std::find(s.begin(), s.end(), -1) != s.end();
    out.push_back({lo, piece.to, pos && neg ? Sign::Mixed : pos ? Sign::Positive : neg ? Sign::Negative : Sign::Zero});
    lo = piece.to;
  }
  return out;
}

int sign_changes(const PiecewiseCoefficient& c) {
  std::vector<int> s;
  double lo = c.start();
  for (const auto& piece : c.pieces()) {
    piece_signs(piece, lo, piece.to, s);
    lo = piece.to;
  }
  int changes = 0, last = 0;
  for (int v : s) {
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

double integrate_piecewise(const SLProblem& prob, const std::function<double(const Segment&, double)>& f, double c,
                           double d, double tol) {
  if (!(c >= prob.a() && d <= prob.b() && c <= d))
    throw DomainError("integration window [" + fmt_x(c) + ", " + fmt_x(d) + "] not inside the problem interval");
  using Rule = boost::math::quadrature::gauss<double, 10>;
  double total = 0.0;
  for (const auto& seg : prob.segments()) {
    const double lo = std::max(c, seg.lo), hi = std::min(d, seg.hi);
    if (!(hi > lo)) continue;
    auto g = [&](double x) {
      const double v = f(seg, x);
      if (!std::isfinite(v)) throw NumericalError("quadrature", "non-finite integrand at x=" + fmt_x(x));
      return v;
    };
    auto composite = [&](int panels) {
      double s = 0.0;
      const double w = (hi - lo) / panels;
      for (int k = 0; k < panels; ++k) s += Rule::integrate(g, lo + k * w, k + 1 == panels ? hi : lo + (k + 1) * w);
      return s;
    };
    double prev = composite(1);
    double cur = prev;
    for (int panels = 2; panels <= (1 << 14); panels *= 2) {
      cur = composite(panels);
      if (std::abs(cur - prev) < tol * (1.0 + std::abs(cur))) break;
      prev = cur;
    }
    total += cur;
  }
  return total;
}

double sqrt_weight_integral(const SLProblem& prob, Side side, double tol) {
  const double sgn = side == Side::Positive ? 1.0 : -1.0;
  return integrate_piecewise(
      prob,
      [&](const Segment& s, double x) { return std::sqrt(std::max(sgn * prob.r_at(s, x) / prob.p_at(s, x), 0.0)); },
      prob.a(), prob.b(), tol);
}

double abs_weight_integral(const SLProblem& prob, double tol) {
  return integrate_piecewise(prob, [&](const Segment& s, double x) { return std::abs(prob.r_at(s, x)); }, prob.a(),
                             prob.b(), tol);
}

ValidationReport validate_problem(const SLProblem& prob, const Controls& controls) {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.valid = false;
    rep.errors.push_back(std::move(msg));
  };
  for (auto [name, angle] : {std::pair{"alpha", prob.alpha()}, std::pair{"beta", prob.beta()}}) {
    if (!(angle >= 0.0 && angle < std::numbers::pi))
      fail(std::string(name) + "=" + fmt_x(angle) + " outside [0, pi)");
  }

  // p > 0 at every quadrature node (and segment ends).
  using Rule = boost::math::quadrature::gauss<double, 10>;
  bool p_ok = true;
  for (const auto& seg : prob.segments()) {
    if (!p_ok) break;
    constexpr int kPanels = 8;
    std::vector<double> nodes{seg.lo, seg.hi};
    const double w = (seg.hi - seg.lo) / kPanels;
    for (int k = 0; k < kPanels; ++k) {
      const double mid = seg.lo + (k + 0.5) * w;
      for (double t : Rule::abscissa()) {
        nodes.push_back(mid + 0.5 * w * t);
        nodes.push_back(mid - 0.5 * w * t);
      }
    }
    std::sort(nodes.begin(), nodes.end());
    for (double x : nodes) {
      try {
        const double pv = prob.p_at(seg, x);
        prob.q_at(seg, x);  // q and r must be evaluable on the same nodes
        prob.r_at(seg, x);
        if (!(pv > 0.0)) {
          fail("p not positive at x=" + fmt_x(x) + " (p=" + fmt_x(pv) + ")");
          p_ok = false;
          break;
        }
      } catch (const DomainError& e) {
        fail(std::string("coefficient evaluation failed at x=") + fmt_x(x) + ": " + e.what());
        p_ok = false;
        break;
      }
    }
  }

  try {
    rep.r_profile = sign_profile(prob.r());
    if (p_ok) {
      const double wint = abs_weight_integral(prob, controls.tol_quad);
      if (!(wint > controls.tol_weight)) fail("weight integrally zero (integral of |r| = " + fmt_x(wint) + ")");
    }
  } catch (const Error& e) {
    fail(std::string("weight evaluation failed: ") + e.what());
  }
  return rep;
}

void require_valid(const SLProblem& prob, const Controls& controls) {
  auto rep = validate_problem(prob, controls);
  if (!rep.valid) throw ValidationError(rep.errors);
}

}  // namespace ndsl
