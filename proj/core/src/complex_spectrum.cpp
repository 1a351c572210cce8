#include "ndsl/complex_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ndsl/csv.hpp"
#include "ndsl/errors.hpp"
#include "ndsl/real_spectrum.hpp"

namespace ndsl {

int ComplexSpectrum::nonreal_count() const {
  int n = 0;
  for (const auto& r : records) n += r.multiplicity;
  return n;
}

namespace {

struct Found {
  cplx lambda;
  int multiplicity;
};

void resolve(const SLProblem& prob, const ContourBox& box, const Controls& controls, int depth,
             std::vector<Found>& found, ComplexSpectrum& out) {
  try {
    const Polished p = polish(prob, box.center(), box, box.count, controls);
    found.push_back({p.lambda, p.multiplicity});
    return;
  } catch (const NumericalError& e) {
    if (depth >= 3) throw;
    out.warnings.push_back(std::string("polish failed in box, re-subdividing: ") + e.what());
  }
  const Isolation iso = isolate_zeros(prob, box, controls, true);
  out.audit.insert(out.audit.end(), iso.audit.begin() + 1, iso.audit.end());
  for (const auto& t : iso.terminal) resolve(prob, t, controls, depth + 1, found, out);
}

}  // namespace

ComplexSpectrum complex_spectrum(const SLProblem& prob, const ContourBox& box, const Controls& controls) {
  const double eps = controls.eps_axis;
  const bool symmetric = std::abs(box.im0 + box.im1) <= 1e-12 * (1.0 + std::abs(box.im1));
  ContourBox upper;
  if (symmetric) upper = {box.re0, box.re1, eps, box.im1};
  else if (box.im0 >= 0.0) upper = {box.re0, box.re1, std::max(box.im0, eps), box.im1};
  else if (box.im1 <= 0.0) upper = {box.re0, box.re1, std::max(-box.im1, eps), -box.im0};
  else throw PreconditionError("complex box must be symmetric about the real axis or lie in one half-plane");

  ComplexSpectrum out;
  out.searched = upper;
  if (!(upper.im1 > upper.im0)) return out;

  const Isolation iso = isolate_zeros(prob, upper, controls);
  out.audit = iso.audit;
  out.searched = iso.audit.front();
  std::vector<Found> found;
  for (const auto& t : iso.terminal) resolve(prob, t, controls, 0, found, out);

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    return a.lambda.real() != b.lambda.real() ? a.lambda.real() < b.lambda.real() : a.lambda.imag() < b.lambda.imag();
  });
  for (const auto& f : found) {
    out.records.push_back(make_record(prob, f.lambda, f.multiplicity, controls));
    out.records.push_back(make_record(prob, std::conj(f.lambda), f.multiplicity, controls));
  }
  std::sort(out.records.begin(), out.records.end(), [](const EigenvalueRecord& a, const EigenvalueRecord& b) {
    return a.lambda.real() != b.lambda.real() ? a.lambda.real() < b.lambda.real() : a.lambda.imag() < b.lambda.imag();
  });

  if (symmetric) {
    double min_im = 1e300;
    for (const auto& f : found) min_im = std::min(min_im, f.lambda.imag());
    const double thin_eps = std::max(2.0 * eps, std::min(0.5 * min_im, 1e-2));
    const int full = winding_number(prob, box, winding_options(controls)).count;
    const int thin = thin_box_count(prob, box.re0, box.re1, thin_eps, controls);
    out.cross_check = full - thin;
    int upper_total = 0;
    for (const auto& f : found) upper_total += f.multiplicity;
    out.cross_check_ok = out.cross_check == 2 * upper_total;
    if (!out.cross_check_ok)
      out.warnings.push_back("box winding minus real-axis count is " + std::to_string(out.cross_check) +
                             ", expected " + std::to_string(2 * upper_total));
  }
  return out;
}

void write_box_audit(std::ostream& os, const std::vector<ContourBox>& audit) {
  for (const auto& b : audit)
    os << "box " << format_real(b.re0) << ' ' << format_real(b.re1) << ' ' << format_real(b.im0) << ' '
       << format_real(b.im1) << " count=" << b.count << " depth=" << b.depth << '\n';
}

}  // namespace ndsl
