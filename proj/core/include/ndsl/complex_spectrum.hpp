#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ndsl/contour.hpp"
#include "ndsl/controls.hpp"
#include "ndsl/problem.hpp"
#include "ndsl/records.hpp"

namespace ndsl {

struct ComplexSpectrum {
  std::vector<EigenvalueRecord> records;  // conjugate pairs, sorted by (re, im)
  ContourBox searched;                    // the part of the upper half-plane searched
  std::vector<ContourBox> audit;
  std::vector<std::string> warnings;
  // Winding of the full symmetric box minus the thin real-axis box; -1 when not checked.
  int cross_check = -1;
  bool cross_check_ok = true;

  int nonreal_count() const;
};

/// Non-real eigenvalues in `box`. Only Im lambda > eps_axis is searched; every zero found
/// is mirrored to its conjugate. The box must be symmetric about the real axis or lie in one
/// half-plane.
ComplexSpectrum complex_spectrum(const SLProblem& prob, const ContourBox& box, const Controls& controls = {});

/// One line per box: re0 re1 im0 im1 count depth.
void write_box_audit(std::ostream& os, const std::vector<ContourBox>& audit);

}  // namespace ndsl
