#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ndsl/problem.hpp"
#include "ndsl/transfer.hpp"

namespace ndsl {

/// (u, v) = (y, p y') at some x.
struct StateVector {
  cplx u, v;
};

/// (du, dv) = d/dlambda of (u, v).
struct DerivativeState {
  cplx du{0.0}, dv{0.0};
};

/// Samples of (y, p y') on a mesh that contains every segment boundary. Each segment
/// holds an even number of mesh intervals (`segment_start[k]` is the index of the first
/// node of segment k; the final entry is the last node).
struct Eigenfunction {
  std::vector<double> x;
  std::vector<cplx> u, v;
  std::vector<std::size_t> segment_start;
};

struct ShootOptions {
  double rk_tol = 1e-10;
  int mesh_nodes = 512;
};

struct IvpResult {
  StateVector end;
  std::optional<DerivativeState> derivative;
  std::optional<Eigenfunction> mesh;
};

/// Solves the initial-value problem from (u, v)(a) = (sin alpha, cos alpha), which satisfies
/// the left boundary condition identically. Constant segments use exact transfer matrices;
/// the others use Dormand-Prince restarted at every breakpoint.
IvpResult integrate_ivp(const SLProblem& prob, cplx lambda, bool want_derivative, bool want_mesh,
                        const ShootOptions& opts = {});

struct CharValue {
  cplx f;
  std::optional<cplx> df;
  double scale;  // |u(b)| + |v(b)|, the magnitude against which |F| is judged
};

/// F(lambda) = u(b) cos(beta) + v(b) sin(beta), optionally with F'(lambda).
CharValue char_F(const SLProblem& prob, cplx lambda, bool want_derivative = false, const ShootOptions& opts = {});

/// Fundamental propagator of (u, v) from x0 to x1.
Mat2 propagator(const SLProblem& prob, cplx lambda, double x0, double x1, const ShootOptions& opts = {});

struct PruferResult {
  double theta_b;
  double logrho_b;
  int zero_count;  // zeros of y in (a, b)
};

/// Continuous Prufer angle with theta(a) = alpha for real lambda.
PruferResult prufer_oscillation(const SLProblem& prob, double lambda, const ShootOptions& opts = {});
/// Rejects non-real lambda with PreconditionError.
PruferResult prufer_oscillation(const SLProblem& prob, cplx lambda, const ShootOptions& opts = {});

/// theta sampled at `per_segment` uniform checkpoints inside every segment.
std::vector<std::pair<double, double>> prufer_trace(const SLProblem& prob, double lambda, int per_segment,
                                                    const ShootOptions& opts = {});

/// #{k >= 1 : k pi < theta - 1e-7}: zeros strictly inside (a, b).
int zero_count_from_angle(double theta);

/// Scales so that the sample of largest |u| equals exactly 1.
Eigenfunction normalized(Eigenfunction ef);

/// Eigenfunction for lambda, normalized.
Eigenfunction eigenfunction(const SLProblem& prob, cplx lambda, const ShootOptions& opts = {});

struct KreinNorms {
  double krein;    // integral of r |y|^2
  cplx bilinear;   // integral of r y^2
};
/// Composite Simpson within each segment.
KreinNorms krein_norms(const SLProblem& prob, const Eigenfunction& ef);

struct Forms {
  double L;
  double R;
};
/// L = cot(alpha)|y(a)|^2 + cot(beta)|y(b)|^2 + integral(p|y'|^2 + q|y|^2); the cot terms
/// are dropped for zero angles. R = integral(r|y|^2).
Forms evaluate_forms(const SLProblem& prob, const Eigenfunction& ef);

/// Eigenfunction export: x, re_u, im_u, re_v, im_v.
void write_eigenfunction_csv(std::ostream& os, const Eigenfunction& ef);

}  // namespace ndsl
