#include "ndsl/transfer.hpp"

#include <cmath>

namespace ndsl {

TrigPair trig_pair(cplx z, double h) {
  const cplx t = z * h * h;
  TrigPair r;
  if (std::abs(t) < 1e-4) {
    // C = sum (-t)^k/(2k)!, S = h sum (-t)^k/(2k+1)!, differentiated term by term.
    constexpr int kTerms = 6;
    cplx c{0.0}, s{0.0}, dc{0.0}, ds{0.0};
    cplx pw{1.0};         // (-t)^k
    cplx pw_prev{0.0};    // (-t)^(k-1)
    double fe = 1.0;      // (2k)!
    double fo = 1.0;      // (2k+1)!
    for (int k = 0; k < kTerms; ++k) {
      if (k > 0) {
        fe *= (2.0 * k - 1.0) * (2.0 * k);
        fo *= (2.0 * k) * (2.0 * k + 1.0);
      }
      c += pw / fe;
      s += pw / fo;
      if (k > 0) {
        // d/dz (-t)^k = -k h^2 (-t)^(k-1)
        dc += -static_cast<double>(k) * pw_prev / fe;
        ds += -static_cast<double>(k) * pw_prev / fo;
      }
      pw_prev = pw;
      pw *= -t;
    }
    r.cos_wh = c;
    r.sinc_wh = h * s;
    r.d_cos = h * h * dc;
    r.d_sinc = h * h * h * ds;
    return r;
  }
  const cplx w = std::sqrt(z);
  r.cos_wh = std::cos(w * h);
  r.sinc_wh = std::sin(w * h) / w;
  r.d_cos = -0.5 * h * r.sinc_wh;
  r.d_sinc = (h * r.cos_wh - r.sinc_wh) / (2.0 * z);
  return r;
}

Mat2 transfer_matrix_constant(double pc, double qc, double rc, cplx lambda, double h) {
  const cplx z = (lambda * rc - qc) / pc;
  const TrigPair t = trig_pair(z, h);
  return {t.cos_wh, t.sinc_wh / pc, -pc * z * t.sinc_wh, t.cos_wh};
}

TransferDerivative transfer_with_derivative(double pc, double qc, double rc, cplx lambda, double h) {
  const cplx z = (lambda * rc - qc) / pc;
  const TrigPair t = trig_pair(z, h);
  const double dz = rc / pc;
  TransferDerivative out;
  out.m = {t.cos_wh, t.sinc_wh / pc, -pc * z * t.sinc_wh, t.cos_wh};
  out.dm = {dz * t.d_cos, dz * t.d_sinc / pc, -dz * pc * (t.sinc_wh + z * t.d_sinc), dz * t.d_cos};
  return out;
}

}  // namespace ndsl
