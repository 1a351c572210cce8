#pragma once

#include <complex>
#include <vector>

#include "ndsl/controls.hpp"
#include "ndsl/problem.hpp"
#include "ndsl/shooting.hpp"

namespace ndsl {

/// Axis-aligned rectangle [re0, re1] x [im0, im1] in the lambda plane.
struct ContourBox {
  double re0, re1, im0, im1;
  int count = -1;  // zeros of F inside (with multiplicity), -1 when not yet computed
  int depth = 0;

  cplx center() const { return {0.5 * (re0 + re1), 0.5 * (im0 + im1)}; }
  double diameter() const { return std::hypot(re1 - re0, im1 - im0); }
  bool contains(cplx z) const { return z.real() >= re0 && z.real() <= re1 && z.imag() >= im0 && z.imag() <= im1; }
  ContourBox inflated(double factor) const;
  static ContourBox around(cplx z, double radius) {
    return {z.real() - radius, z.real() + radius, z.imag() - radius, z.imag() + radius};
  }
};

struct WindingOptions {
  int budget = 100000;       // F evaluations
  int max_inflations = 8;    // retries when a zero sits on the contour
  double inflate_step = 1e-6;
  int samples_per_edge = 32;
  ShootOptions shoot;
};

struct WindingResult {
  int count;
  ContourBox box;  // the contour actually used (inflated if retried)
  int evaluations;
  double residual; // |phase/2pi - count|
  int inflations;
};

/// Argument-principle zero count of F inside `box`. Consecutive contour samples are refined
/// until their phase difference is below pi/2. Throws ZeroOnContourError after exhausting
/// inflations and NumericalError when the evaluation budget is exceeded.
WindingResult winding_number(const SLProblem& prob, const ContourBox& box, const WindingOptions& opts = {});

struct Isolation {
  std::vector<ContourBox> terminal;  // each holds the zeros of a single eigenvalue
  std::vector<ContourBox> audit;     // every box whose count was computed
  int outer_count = 0;
};

/// Recursive quadrisection until every box has count 1 or is smaller than tol_lambda.
/// `force_split` subdivides the outer box at least once even if it is already terminal.
Isolation isolate_zeros(const SLProblem& prob, const ContourBox& box, const Controls& controls,
                        bool force_split = false);

struct Polished {
  cplx lambda;
  int iterations;
  int multiplicity;  // re-confirmed by a tight winding
};

/// Newton (multiplicity-aware) iteration, secant fallback where |F'| is tiny. Throws
/// NumericalError if the iterate leaves `box`.
Polished polish(const SLProblem& prob, cplx lambda0, const ContourBox& box, int multiplicity,
                const Controls& controls);

/// Radius of the tight box used to confirm multiplicities.
double tight_radius(cplx lambda, const Controls& controls);

WindingOptions winding_options(const Controls& controls);

}  // namespace ndsl
