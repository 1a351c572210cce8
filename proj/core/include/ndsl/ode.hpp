#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "ndsl/errors.hpp"

namespace ndsl {

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
}  // namespace detail

/// Dormand-Prince 5(4) integration of y' = rhs(x, y) from x0 to x1 (x1 > x0).
///
/// Accepts a step when max_i |err_i| / (1 + max(|y_i|, |y_new_i|)) <= tol. Step growth is
/// capped at a factor of 2. `h` carries the step size in and out so consecutive calls can
/// reuse it.
template <class T, std::size_t N, class Rhs>
void dopri45(const Rhs& rhs, double x0, double x1, std::array<T, N>& y, double tol, double& h,
             const char* stage = "runge-kutta", long max_steps = 2'000'000) {
  using State = std::array<T, N>;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = x1 - x0;
  if (span <= 0.0) return;
  if (!(h > 0.0) || h > span) h = span / 8.0;
  const double h_min = 1e-14 * std::max(1.0, std::max(std::abs(x0), std::abs(x1)));

  auto axpy = [](const State& base, std::initializer_list<std::pair<double, const State*>> terms, double step) {
    State out = base;
    for (auto [coef, k] : terms)
      if (coef != 0.0)
        for (std::size_t i = 0; i < N; ++i) out[i] += (step * coef) * (*k)[i];
    return out;
  };

  double x = x0;
  long steps = 0;
  State k1 = rhs(x, y);
  while (x < x1) {
    if (++steps > max_steps) throw NumericalError(stage, "step budget exhausted");
    bool last = false;
    double step = h;
    if (x + step >= x1 || x1 - (x + step) < h_min) {
      step = x1 - x;
      last = true;
    }
    const State k2 = rhs(x + c2 * step, axpy(y, {{a21, &k1}}, step));
    const State k3 = rhs(x + c3 * step, axpy(y, {{a31, &k1}, {a32, &k2}}, step));
    const State k4 = rhs(x + c4 * step, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, step));
    const State k5 = rhs(x + c5 * step, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, step));
    const State k6 = rhs(x + step, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, step));
    const State y_new = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, step);
    const double x_new = last ? x1 : x + step;
    const State k7 = rhs(x_new, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const T e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = 1.0 + std::max(detail::magnitude(y[i]), detail::magnitude(y_new[i]));
      err = std::max(err, detail::magnitude(e) / scale);
    }
    if (!std::isfinite(err)) throw NumericalError(stage, "non-finite state");
    const double ratio = err / tol;
    const double factor = ratio == 0.0 ? 2.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 2.0);
    if (ratio <= 1.0) {
      x = x_new;
      y = y_new;
      k1 = k7;
      if (!last) h = step * factor;
      if (last) return;
    } else {
      h = step * std::min(factor, 0.9);
      if (h < h_min) throw NumericalError(stage, "step-size underflow");
    }
  }
}

}  // namespace ndsl
