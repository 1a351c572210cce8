#include "ndsl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Dense>

#include "ndsl/csv.hpp"
#include "ndsl/errors.hpp"

namespace ndsl {

Pencil build_pencil(const SLProblem& prob, int n) {
  if (prob.alpha() != 0.0 || prob.beta() != 0.0) throw PreconditionError("the pencil oracle needs Dirichlet conditions");
  if (n < 8) throw PreconditionError("the pencil oracle needs n >= 8");
  Pencil P;
  P.n = n;
  P.a = prob.a();
  P.h = (prob.b() - prob.a()) / (n + 1);
  const double h2 = P.h * P.h;
  std::vector<double> pm(n + 1);
  for (int i = 0; i <= n; ++i) pm[i] = prob.p()(P.a + (i + 0.5) * P.h);
  P.diag.resize(n);
  P.weight.resize(n);
  P.off.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = P.node(i);
    P.diag[i] = (pm[i] + pm[i + 1]) / h2 + prob.q()(x);
    P.weight[i] = prob.r()(x);
    if (i + 1 < n) P.off[i] = -pm[i + 1] / h2;
  }
  return P;
}

std::vector<cplx> pencil_eigenvalues(const Pencil& P, double eps_b) {
  for (int i = 0; i < P.n; ++i) {
    if (std::abs(P.weight[i]) <= eps_b)
      throw PreconditionError("weight vanishes at node x=" + format_real(P.node(i)) + "; choose another mesh size");
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(P.n, P.n);
  for (int i = 0; i < P.n; ++i) {
    M(i, i) = P.diag[i] / P.weight[i];
    if (i + 1 < P.n) {
      M(i, i + 1) = P.off[i] / P.weight[i];
      M(i + 1, i) = P.off[i] / P.weight[i + 1];
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  if (es.info() != Eigen::Success) throw NumericalError("oracle", "QR iteration did not converge");
  std::vector<cplx> out(es.eigenvalues().begin(), es.eigenvalues().end());
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

void write_pencil_csv(std::ostream& os, const Pencil& P) {
  os << "i,x,a_diag,a_off,b_diag\n";
  for (int i = 0; i < P.n; ++i) {
    os << i + 1 << ',' << format_real(P.node(i)) << ',' << format_real(P.diag[i]) << ','
       << (i + 1 < P.n ? format_real(P.off[i]) : std::string()) << ',' << format_real(P.weight[i]) << '\n';
  }
}

std::vector<PencilMatch> match_eigenvalues(const std::vector<cplx>& reference, const std::vector<cplx>& candidates) {
  std::vector<PencilMatch> out;
  for (cplx r : reference) {
    PencilMatch m{r, cplx(NAN, NAN), INFINITY};
    for (cplx c : candidates) {
      const double e = std::abs(c - r) / std::max(std::abs(r), 1.0);
      if (e < m.rel_error) {
        m.rel_error = e;
        m.nearest = c;
      }
    }
    out.push_back(m);
  }
  return out;
}

double mesh_convergence_slope(const SLProblem& prob, cplx exact, const std::vector<int>& sizes) {
  if (sizes.size() < 2) throw PreconditionError("need at least two mesh sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n : sizes) {
    const Pencil P = build_pencil(prob, n);
    const auto m = match_eigenvalues({exact}, pencil_eigenvalues(P)).front();
    const double x = std::log(P.h), y = std::log(std::abs(m.nearest - exact));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(sizes.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace ndsl
