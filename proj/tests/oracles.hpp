#pragma once

// Reference computations that share no code with the library: Eigen's
// Pade-based matrix functions, its self-adjoint and complex eigensolvers, and
// plain quadrature.

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "mingeo/mingeo.hpp"

namespace oracle {

using mingeo::Complex;
using mingeo::Index;
using mingeo::Matrix;
using mingeo::RealVector;

inline Matrix expm(const Matrix& m) { return m.exp(); }
inline Matrix logm(const Matrix& m) { return m.log(); }

/// Ascending eigenvalues of a Hermitian matrix.
inline RealVector eigvalsh(const Matrix& m) { return Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues(); }

/// Descending singular values as square roots of eig(m* m).
inline RealVector singular_values(const Matrix& m) {
  RealVector ev = eigvalsh(m.adjoint() * m);
  RealVector s(ev.size());
  for (Index i = 0; i < ev.size(); ++i) s(i) = std::sqrt(std::max(0.0, ev(ev.size() - 1 - i)));
  return s;
}

inline double schatten(const Matrix& m, double p) {
  const RealVector s = singular_values(m);
  if (std::isinf(p)) return s.maxCoeff();
  double sum = 0.0;
  for (Index i = 0; i < s.size(); ++i) sum += std::pow(s(i), p);
  return std::pow(sum, 1.0 / p);
}

/// Eigenvalue phases of a unitary from the general complex eigensolver.
inline std::vector<double> unitary_phases(const Matrix& u) {
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Matrix>(u).eigenvalues();
  std::vector<double> out;
  for (Index i = 0; i < ev.size(); ++i) out.push_back(std::arg(ev(i)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Composite Simpson rule on [0, 1] with `panels` (even) subintervals.
template <class F>
auto simpson(F&& f, int panels) {
  using R = std::decay_t<decltype(f(0.0))>;
  const double h = 1.0 / panels;
  R sum = f(0.0) + f(1.0);
  for (int i = 1; i < panels; ++i) sum = sum + (i % 2 ? 4.0 : 2.0) * f(i * h);
  return R((h / 3.0) * sum);
}

/// De^H(K) = int_0^1 e^{sH} K e^{(1-s)H} ds.
inline Matrix frechet_quadrature(const Matrix& h, const Matrix& k, int panels = 1024) {
  return simpson([&](double s) -> Matrix { return expm(s * h) * k * expm((1.0 - s) * h); }, panels);
}

/// Central difference of e^{H + eps K} at eps = 0.
inline Matrix frechet_difference(const Matrix& h, const Matrix& k, double eps = 1e-5) {
  return (expm(h + eps * k) - expm(h - eps * k)) / (2.0 * eps);
}

/// Is the Hermitian matrix positive semidefinite up to -tol?
inline bool is_psd(const Matrix& m, double tol = 1e-12) { return eigvalsh(0.5 * (m + m.adjoint())).minCoeff() >= -tol; }

/// Trace-norm length of t -> e^{Y(t)} in Gl(n)+ for Y piecewise linear
/// through `nodes` on a uniform grid: the speed on each piece is
/// ||e^{-Y/2} De^Y(Y') e^{-Y/2}||_1, integrated by Simpson.
inline double positive_chain_length(const std::vector<Matrix>& nodes, int panels = 1024) {
  double total = 0.0;
  for (size_t j = 0; j + 1 < nodes.size(); ++j) {
    const Matrix a = nodes[j], b = nodes[j + 1];
    total += simpson(
        [&](double s) {
          const Matrix y = a + s * (b - a);
          const Matrix half = expm(-0.5 * y);
          return schatten(half * frechet_quadrature(y, b - a, 64) * half, 1.0);
        },
        panels);
  }
  return total;
}

}  // namespace oracle
