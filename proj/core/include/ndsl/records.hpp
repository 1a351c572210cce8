#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ndsl/controls.hpp"
#include "ndsl/problem.hpp"
#include "ndsl/shooting.hpp"

namespace ndsl {

enum class StateClass {
  ground_state,
  ordinary,
  nondegenerate_real_ghost,
  degenerate_real_ghost,
  complex_ghost_nondegenerate,
  complex_ghost_degenerate,
};

const char* to_string(StateClass c);

struct EigenvalueRecord {
  cplx lambda;
  int multiplicity = 1;
  bool simple = true;
  std::optional<int> osc_count;  // real eigenvalues only
  double krein = 0.0;            // integral of r|y|^2
  cplx bilinear{0.0};            // integral of r y^2
  cplx dF{0.0};                  // F'(lambda)
  StateClass cls = StateClass::ordinary;
  Eigenfunction eigenfunction;   // normalized to max|y| = 1
  std::vector<std::string> warnings;

  bool is_real() const { return lambda.imag() == 0.0; }
};

/// Decision tree: non-real -> complex ghost (degenerate iff non-simple); real non-simple ->
/// degenerate real ghost; sign(lambda*krein) < 0 -> non-degenerate real ghost; eigenfunction
/// strictly positive inside (a, b) -> ground state; otherwise ordinary. lambda = 0 skips the
/// sign test and appends a warning.
StateClass classify_record(EigenvalueRecord& rec);

/// Builds a full record (eigenfunction, norms, F', oscillation count, class) at an eigenvalue.
EigenvalueRecord make_record(const SLProblem& prob, cplx lambda, int multiplicity, const Controls& controls);

/// Spectrum CSV: re_lambda, im_lambda, multiplicity, simple, osc_count, krein, re_bilinear,
/// im_bilinear, class.
void write_spectrum_csv(std::ostream& os, const std::vector<EigenvalueRecord>& records);

}  // namespace ndsl
