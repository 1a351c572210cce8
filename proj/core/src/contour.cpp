#include <algorithm>
#include "ndsl/contour.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ndsl/csv.hpp"
#include "ndsl/errors.hpp"

namespace ndsl {

ContourBox ContourBox::inflated(double factor) const {
  const cplx c = center();
  const double hr = 0.5 * (re1 - re0) * factor, hi = 0.5 * (im1 - im0) * factor;
  ContourBox b{c.real() - hr, c.real() + hr, c.imag() - hi, c.imag() + hi};
  b.depth = depth;
  return b;
}

WindingOptions winding_options(const Controls& controls) {
  WindingOptions w;
  w.budget = controls.winding_budget;
  w.shoot.rk_tol = controls.rk_tol;
  w.shoot.mesh_nodes = controls.mesh_nodes;
  return w;
}

namespace {

std::string describe(const ContourBox& b) {
  return "[" + format_real(b.re0) + ", " + format_real(b.re1) + "] x [" + format_real(b.im0) + ", " +
         format_real(b.im1) + "]";
}

struct Sample {
  cplx z, f;
};

class ContourWalker {
 public:
  ContourWalker(const SLProblem& prob, const WindingOptions& opts) : prob_(prob), opts_(opts) {}

  double total_phase(const ContourBox& box) {
    const cplx corners[4] = {{box.re0, box.im0}, {box.re1, box.im0}, {box.re1, box.im1}, {box.re0, box.im1}};
    const double short_side = std::min(box.re1 - box.re0, box.im1 - box.im0);
    double phase = 0.0;
    for (int e = 0; e < 4; ++e) {
      const cplx za = corners[e], zb = corners[(e + 1) % 4];
      Sample prev = sample(za);
      // Thin boxes: keep the spacing near the short side so nearby zeros are not aliased.
      const double ratio = std::ceil(std::abs(zb - za) / short_side);
      const int n = static_cast<int>(std::clamp(ratio, double(opts_.samples_per_edge), double(opts_.budget / 8)));
      for (int k = 1; k <= n; ++k) {
        const Sample next = sample(k == n ? zb : za + (zb - za) * (static_cast<double>(k) / n));
        phase += segment_phase(prev, next, 0);
        prev = next;
      }
    }
    return phase;
  }

  int evaluations() const { return evals_; }

 private:
  Sample sample(cplx z) {
    if (++evals_ > opts_.budget) throw NumericalError("winding", "evaluation budget exceeded");
    const CharValue cv = char_F(prob_, z, false, opts_.shoot);
    if (!std::isfinite(std::abs(cv.f)) || std::abs(cv.f) <= 1e-15 * cv.scale)
      throw ZeroOnContourError("F vanishes on the contour near " + format_real(z.real()) + "+" +
                               format_real(z.imag()) + "i");
    return {z, cv.f};
  }

  double segment_phase(const Sample& a, const Sample& b, int depth) {
    const double d = std::arg(b.f / a.f);
    if (std::abs(d) < 0.5 * std::numbers::pi) return d;
    const double len = std::abs(b.z - a.z);
    if (len < 1e-12 * (1.0 + std::abs(a.z)) || depth > 200)
      throw ZeroOnContourError("phase jump unresolved near " + format_real(a.z.real()) + "+" +
                               format_real(a.z.imag()) + "i");
    const Sample mid = sample(0.5 * (a.z + b.z));
    return segment_phase(a, mid, depth + 1) + segment_phase(mid, b, depth + 1);
  }

  const SLProblem& prob_;
  const WindingOptions& opts_;
  int evals_ = 0;
};

}  // namespace

WindingResult winding_number(const SLProblem& prob, const ContourBox& box, const WindingOptions& opts) {
  if (!(box.re1 > box.re0 && box.im1 > box.im0)) throw PreconditionError("degenerate contour box " + describe(box));
  int evals = 0;
  for (int attempt = 0;; ++attempt) {
    const ContourBox b = attempt == 0 ? box : box.inflated(1.0 + attempt * opts.inflate_step);
    ContourWalker walker(prob, opts);
    try {
      const double w = walker.total_phase(b) / (2.0 * std::numbers::pi);
      evals += walker.evaluations();
      const double n = std::round(w);
      const double residual = std::abs(w - n);
      if (residual >= 0.1)
        throw NumericalError("winding", "non-integer winding " + format_real(w) + " on " + describe(b));
      ContourBox out = b;
      out.count = static_cast<int>(n);
      return {out.count, out, evals, residual, attempt};
    } catch (const ZeroOnContourError&) {
      evals += walker.evaluations();
      if (attempt >= opts.max_inflations) throw;
    }
  }
}

namespace {

constexpr double kSplits[] = {0.5137, 0.4713, 0.5529, 0.4291, 0.6037, 0.3877};

void subdivide(const SLProblem& prob, const ContourBox& box, const Controls& controls, Isolation& out,
               bool force_split);

bool is_terminal(const ContourBox& box, const Controls& controls) {
  return box.count == 1 || box.diameter() < controls.tol_lambda * (1.0 + std::abs(box.center()));
}

void subdivide(const SLProblem& prob, const ContourBox& box, const Controls& controls, Isolation& out,
               bool force_split) {
  if (box.count <= 0) return;
  if (!force_split && is_terminal(box, controls)) {
    out.terminal.push_back(box);
    return;
  }
  if (box.depth > 80)
    throw NumericalError("isolate_zeros", "subdivision depth exceeded at " + describe(box) +
                                              " (count " + std::to_string(box.count) + ")");
  WindingOptions wopts = winding_options(controls);
  wopts.max_inflations = 0;  // children must tile the parent exactly
  for (std::size_t attempt = 0; attempt < std::size(kSplits); ++attempt) {
    const double fr = kSplits[attempt], fi = kSplits[(attempt + 1) % std::size(kSplits)];
    const double rs = box.re0 + fr * (box.re1 - box.re0);
    const double is = box.im0 + fi * (box.im1 - box.im0);
    ContourBox kids[4] = {{box.re0, rs, box.im0, is}, {rs, box.re1, box.im0, is},
                          {box.re0, rs, is, box.im1}, {rs, box.re1, is, box.im1}};
    try {
      int sum = 0;
      for (auto& k : kids) {
        k.depth = box.depth + 1;
        k.count = winding_number(prob, k, wopts).count;
        sum += k.count;
      }
      if (sum != box.count) continue;
      for (const auto& k : kids) out.audit.push_back(k);
      for (const auto& k : kids) subdivide(prob, k, controls, out, false);
      return;
    } catch (const ZeroOnContourError&) {
      continue;
    }
  }
  throw NumericalError("isolate_zeros", "no consistent subdivision of " + describe(box));
}

}  // namespace

Isolation isolate_zeros(const SLProblem& prob, const ContourBox& box, const Controls& controls, bool force_split) {
  Isolation out;
  const WindingResult w = winding_number(prob, box, winding_options(controls));
  ContourBox outer = w.box;
  outer.count = w.count;
  out.outer_count = w.count;
  out.audit.push_back(outer);
  subdivide(prob, outer, controls, out, force_split);
  return out;
}

double tight_radius(cplx lambda, const Controls& controls) {
  return std::max(10.0 * controls.tol_lambda, 1e-7 * (1.0 + std::abs(lambda)));
}

Polished polish(const SLProblem& prob, cplx lambda0, const ContourBox& box, int multiplicity,
                const Controls& controls) {
  ShootOptions so{controls.rk_tol, controls.mesh_nodes};
  const int m = std::max(multiplicity, 1);
  const ContourBox fence = box.inflated(1.1);
  cplx z = lambda0;
  cplx z_prev{};
  cplx f_prev{};
  bool have_prev = false;
  int it = 0;
  for (; it < 200; ++it) {
    const CharValue cv = char_F(prob, z, true, so);
    if (cv.f == cplx(0.0)) break;
    cplx step;
    if (std::abs(*cv.df) > controls.tol_fprime * cv.scale || !have_prev) {
      if (*cv.df == cplx(0.0)) throw NumericalError("polish", "F' vanished with no secant history");
      step = static_cast<double>(m) * cv.f / *cv.df;
    } else {
      step = cv.f * (z - z_prev) / (cv.f - f_prev);
    }
    z_prev = z;
    f_prev = cv.f;
    have_prev = true;
    z -= step;
    if (!fence.contains(z))
      throw NumericalError("polish", "iterate left the enclosing box " + describe(box));
    if (std::abs(step) <= std::max(controls.tol_lambda, 4e-16 * std::abs(z))) break;
  }
  if (it >= 200) throw NumericalError("polish", "Newton iteration did not converge");

  int mult = m;
  try {
    const double rho = std::min(tight_radius(z, controls), 0.5 * box.diameter());
    const auto w = winding_number(prob, ContourBox::around(z, rho), winding_options(controls));
    if (w.count > 0) mult = w.count;
  } catch (const NumericalError&) {
    // keep the enclosing-box multiplicity
  }
  return {z, it, mult};
}

}  // namespace ndsl
