#pragma once

#include <complex>

namespace ndsl {

using cplx = std::complex<double>;

/// 2x2 complex matrix [[a, b], [c, d]].
struct Mat2 {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  cplx det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
};

/// cos(w h), sin(w h)/w and their derivatives with respect to z = w^2.
/// Entire in z: a truncated series is used for |z h^2| < 1e-4.
struct TrigPair {
  cplx cos_wh, sinc_wh, d_cos, d_sinc;
};
TrigPair trig_pair(cplx z, double h);

/// Exact propagator of (u, v) = (y, p y') across a step h with constant p, q, r:
/// with w^2 = (lambda r - q)/p,  M = [[C, S/p], [-p w^2 S, C]],  det M = 1.
Mat2 transfer_matrix_constant(double pc, double qc, double rc, cplx lambda, double h);

/// M together with dM/dlambda.
struct TransferDerivative {
  Mat2 m;
  Mat2 dm;
};
TransferDerivative transfer_with_derivative(double pc, double qc, double rc, cplx lambda, double h);

}  // namespace ndsl
