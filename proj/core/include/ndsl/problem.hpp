#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ndsl/controls.hpp"
#include "ndsl/expression.hpp"

namespace ndsl {

struct Piece {
  double to;
  Expression expr;
};

/// Coefficient defined by expressions on consecutive pieces [x_{i-1}, x_i);
/// the last piece is closed at the right end.
class PiecewiseCoefficient {
 public:
  PiecewiseCoefficient(double start, std::vector<Piece> pieces);

  static PiecewiseCoefficient constant(double a, double b, double value);

  /// Value of the piece containing `x` (half-open convention). Throws DomainError outside [start, end].
  double operator()(double x) const;
  std::size_t piece_index(double x) const;

  double start() const noexcept { return start_; }
  double end() const noexcept { return pieces_.back().to; }
  std::span<const Piece> pieces() const noexcept { return pieces_; }
  /// start, x_1, ..., end
  std::vector<double> breakpoints() const;
  bool is_piecewise_constant() const noexcept;

 private:
  double start_;
  std::vector<Piece> pieces_;
};

/// Pointwise combination of two coefficients over the union of their breakpoints.
PiecewiseCoefficient combine(const PiecewiseCoefficient& f, const PiecewiseCoefficient& g,
                             const std::function<Expression(const Expression&, const Expression&)>& op);

/// Maximal subinterval on which each of p, q, r is a single expression.
struct Segment {
  double lo, hi;
  std::size_t ip, iq, ir;
  bool constant;         // p, q, r all constant
  double pc, qc, rc;     // folded values when constant
};

/// -(p y')' + q y = lambda r y on [a, b] with
///   y(a) cos(alpha) - (p y')(a) sin(alpha) = 0,
///   y(b) cos(beta)  + (p y')(b) sin(beta)  = 0.
class SLProblem {
 public:
  /// Throws ValidationError if a >= b or a coefficient does not span [a, b].
  SLProblem(double a, double b, PiecewiseCoefficient p, PiecewiseCoefficient q, PiecewiseCoefficient r,
            double alpha = 0.0, double beta = 0.0);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const PiecewiseCoefficient& p() const noexcept { return p_; }
  const PiecewiseCoefficient& q() const noexcept { return q_; }
  const PiecewiseCoefficient& r() const noexcept { return r_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }

  /// Coefficient values inside a segment, using the segment's own pieces (so the
  /// right end of a segment takes the left-hand limit).
  double p_at(const Segment& s, double x) const;
  double q_at(const Segment& s, double x) const;
  double r_at(const Segment& s, double x) const;

  SLProblem with_q(PiecewiseCoefficient q) const;
  SLProblem with_r(PiecewiseCoefficient r) const;

 private:
  double a_, b_;
  PiecewiseCoefficient p_, q_, r_;
  double alpha_, beta_;
  std::vector<Segment> segments_;
};

enum class Sign { Positive, Negative, Mixed, Zero };
const char* to_string(Sign s);

struct SignInterval {
  double lo, hi;
  Sign sign;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> errors;
  std::vector<SignInterval> r_profile;  // one entry per piece of r
};

ValidationReport validate_problem(const SLProblem& prob, const Controls& controls = {});
/// Throws ValidationError when the report is not valid.
void require_valid(const SLProblem& prob, const Controls& controls = {});

/// Sign of r on each of its pieces; non-constant pieces are sampled densely with a
/// hysteresis band of 1e-12.
std::vector<SignInterval> sign_profile(const PiecewiseCoefficient& c);

/// Number of sign changes of r across (a, b), ignoring zero stretches.
int sign_changes(const PiecewiseCoefficient& c);

/// Integral over [c, d] of f(segment, x) with composite Gauss-Legendre on each segment,
/// doubling panels until successive values agree to tol*(1+|value|).
double integrate_piecewise(const SLProblem& prob, const std::function<double(const Segment&, double)>& f,
                           double c, double d, double tol = 1e-12);

enum class Side { Positive, Negative };
/// Integral of sqrt(max(+-r/p, 0)) over [a, b].
double sqrt_weight_integral(const SLProblem& prob, Side side, double tol = 1e-12);
/// Integral of |r| over [a, b].
double abs_weight_integral(const SLProblem& prob, double tol = 1e-12);

}  // namespace ndsl
