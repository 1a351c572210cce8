#pragma once

#include <iosfwd>
#include <vector>

#include "ndsl/problem.hpp"
#include "ndsl/transfer.hpp"

namespace ndsl {

/// Three-point finite-difference pencil A y = lambda B y for Dirichlet conditions on the
/// interior nodes x_i = a + i h, i = 1..n.
struct Pencil {
  int n = 0;
  double a = 0.0, h = 0.0;
  std::vector<double> diag;  // A_ii
  std::vector<double> off;   // A_{i,i+1} = A_{i+1,i}
  std::vector<double> weight;  // B_ii

  double node(int i) const { return a + (i + 1) * h; }
};

/// Throws PreconditionError for non-Dirichlet conditions or n < 8.
Pencil build_pencil(const SLProblem& prob, int n);

/// Eigenvalues of B^-1 A sorted by real part (then imaginary part). Throws PreconditionError
/// if some |B_ii| <= eps_b and NumericalError if the QR iteration fails.
std::vector<cplx> pencil_eigenvalues(const Pencil& pencil, double eps_b = 1e-12);

/// Columns i, x, a_diag, a_off, b_diag.
void write_pencil_csv(std::ostream& os, const Pencil& pencil);

/// Least-squares slope of log|error| against log h for the pencil eigenvalue nearest `exact`.
double mesh_convergence_slope(const SLProblem& prob, cplx exact, const std::vector<int>& sizes);

struct PencilMatch {
  cplx reference;
  cplx nearest;
  double rel_error;  // |nearest - reference| / max(|reference|, 1)
};

/// Nearest element of `candidates` for each element of `reference`.
std::vector<PencilMatch> match_eigenvalues(const std::vector<cplx>& reference, const std::vector<cplx>& candidates);

}  // namespace ndsl
