#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ndsl/controls.hpp"
#include "ndsl/problem.hpp"
#include "ndsl/records.hpp"

namespace ndsl {

struct RealRoot {
  double lambda;
  int multiplicity;
};

struct RealScan {
  std::vector<RealRoot> roots;  // ascending
  double lo, hi;                // window actually scanned (nudged off eigenvalues)
  std::vector<std::string> warnings;
  int evaluations = 0;
};

/// Real zeros of F in [lo, hi] with multiplicities. The grid spacing keeps the Prufer angle
/// at b moving by less than pi/2 between nodes; sign changes of F are bracketed, and zeros of
/// F' with |F| <= tol_f*scale are kept as multiple zeros. Multiplicities come from a tight
/// winding number around each zero.
RealScan locate_real_eigenvalues(const SLProblem& prob, double lo, double hi, const Controls& controls = {});

struct RealSpectrum {
  std::vector<EigenvalueRecord> records;  // ascending
  double lo, hi;
  std::vector<std::string> warnings;
};

RealSpectrum real_spectrum(const SLProblem& prob, double lo, double hi, const Controls& controls = {});

/// Argument-principle count of the thin box [lo, hi] x [-eps, eps].
int thin_box_count(const SLProblem& prob, double lo, double hi, double eps, const Controls& controls = {});

/// -(p y')' + (q - lambda r) y = nu y with the same boundary conditions (weight 1).
SLProblem auxiliary_problem(const SLProblem& prob, double lambda);

struct NegativeCount {
  int count;
  bool zero_is_eigenvalue;  // nu = 0 is (numerically) an eigenvalue; count excludes it
};

/// Eigenvalues below `nu` of a problem with weight identically 1, read off the Prufer angle.
NegativeCount count_below(const SLProblem& unit_weight_problem, double nu, const Controls& controls = {});

/// Haupt's n(lambda): negative eigenvalues of the auxiliary problem.
NegativeCount haupt_n(const SLProblem& prob, double lambda, const Controls& controls = {});

/// Minimum of n over the grid, refined around grid minima.
int haupt_n0(const SLProblem& prob, const std::vector<double>& lambda_grid, const Controls& controls = {});

/// Lowest eigenvalue of a problem with weight identically 1.
double lowest_eigenvalue(const SLProblem& unit_weight_problem, const Controls& controls = {});

/// Problem with weight r + 1: -(p y')' + q y = lambda (r + 1) y.
SLProblem shifted_weight_problem(const SLProblem& prob);

struct ShiftedCount {
  int count;
  double window;  // eigenvalues searched in [-window, 0]
};

/// Number of negative eigenvalues of -(p y')' + (q - lambda r) y = lambda y, i.e. of the
/// shifted-weight problem. Throws PreconditionError when zero is an eigenvalue of that
/// problem, or when r + 1 takes negative values (the count is then infinite).
ShiftedCount negative_count_shifted(const SLProblem& prob, const Controls& controls = {});

/// sup |q| sampled over the interval.
double sup_abs_q(const SLProblem& prob);

}  // namespace ndsl
