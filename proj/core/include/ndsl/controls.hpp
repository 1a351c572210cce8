#pragma once

namespace ndsl {

/// Numerical tolerances and budgets shared by the spectral routines.
struct Controls {
  double tol_lambda = 1e-10;   // absolute eigenvalue resolution
  double tol_f = 1e-12;        // |F| relative to the local solution scale
  double tol_fprime = 1e-9;    // |F'| below which Newton falls back to secant
  double tol_ghost = 1e-7;     // |krein| accepted as zero
  double rk_tol = 1e-10;       // mixed abs/rel Runge-Kutta tolerance
  double tol_quad = 1e-12;
  double tol_weight = 1e-12;
  double eps_axis = 1e-6;      // |Im| below this belongs to the real search
  int mesh_nodes = 512;        // minimum eigenfunction mesh size
  int winding_budget = 100000; // F evaluations per contour
  int index_width = 4;         // consecutive doubly-realized counts needed for n_H
  int max_extensions = 8;      // window doublings for index validation
};

}  // namespace ndsl
