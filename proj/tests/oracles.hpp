// Test-only oracles, kept independent of the implementation paths they
// check: dense operators are built from explicit Kronecker products (never
// from the library's index arithmetic), Chebyshev images go through the
// eigendecomposition cos(k arccos), and the Krylov matrices are Gram /
// projection matrices of explicitly materialized basis vectors.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "qkrylov/pauli.hpp"
#include "qkrylov/state.hpp"

namespace oracles {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

inline MatrixXcd axis_matrix(char axis) {
  const std::complex<double> i(0.0, 1.0);
  MatrixXcd m(2, 2);
  switch (axis) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -i, i, 0;
      break;
    default:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Kronecker-product dense form of a signed Pauli term (qubit 0 = leftmost
/// factor = most significant index bits).
inline MatrixXcd dense_term(const qkrylov::PauliTerm& p) {
  const std::string axes = p.to_string();
  MatrixXcd m = axis_matrix(axes[0]);
  for (std::size_t q = 1; q < axes.size(); ++q) m = kron(m, axis_matrix(axes[q]));
  return static_cast<double>(p.sign()) * m;
}

inline MatrixXcd dense_sum(const qkrylov::PauliSum& h) {
  MatrixXcd m = MatrixXcd::Zero(std::int64_t{1} << h.n_qubits(),
                                std::int64_t{1} << h.n_qubits());
  for (const auto& [coeff, term] : h.terms()) m += coeff * dense_term(term);
  return m;
}

/// T_k(H) through the spectral theorem: V diag(cos(k arccos(lambda))) V^+.
inline MatrixXcd chebyshev_spectral(const MatrixXcd& h, int k) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  Eigen::VectorXd tk(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < tk.size(); ++i) {
    const double lambda = std::clamp(es.eigenvalues()(i), -1.0, 1.0);
    tk(i) = std::cos(k * std::acos(lambda));
  }
  return es.eigenvectors() * tk.asDiagonal() *
         es.eigenvectors().adjoint();
}

inline double moment_spectral(const MatrixXcd& h, const VectorXcd& psi0,
                              int k) {
  return (psi0.adjoint() * chebyshev_spectral(h, k) * psi0)(0, 0).real();
}

/// Explicitly materialized Krylov basis phi_k = T_k(H)|psi0>, dense ops only.
inline std::vector<VectorXcd> explicit_basis(const MatrixXcd& h,
                                             const VectorXcd& psi0, int d) {
  std::vector<VectorXcd> basis;
  basis.push_back(psi0);
  if (d > 1) basis.push_back(h * psi0);
  for (int k = 2; k < d; ++k)
    basis.push_back(2.0 * (h * basis.back()) - basis[basis.size() - 2]);
  return basis;
}

/// Gram and projection matrices of the explicit basis.
inline std::pair<MatrixXd, MatrixXd> explicit_krylov_matrices(
    const MatrixXcd& h, const VectorXcd& psi0, int d) {
  const auto basis = explicit_basis(h, psi0, d);
  MatrixXd s(d, d), hm(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      s(i, j) = basis[i].dot(basis[j]).real();
      hm(i, j) = basis[i].dot(h * basis[j]).real();
    }
  }
  return {hm, s};
}

/// Direct dense generalized eigensolve H v = e S v (S must be positive
/// definite); returns the lowest eigenvalue.
inline double dense_gevp_lowest(const MatrixXd& h, const MatrixXd& s) {
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(h, s);
  return es.eigenvalues()(0);
}

/// Brute-force J1-J2 coupling enumeration on an open lattice: classify every
/// site pair by squared Euclidean distance (1 -> NN, 2 -> NNN).
struct CouplingCount {
  int nn = 0;
  int nnn = 0;
};

inline CouplingCount count_couplings_open(int rows, int cols) {
  CouplingCount count;
  const int n = rows * cols;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int dr = a / cols - b / cols;
      const int dc = a % cols - b % cols;
      const int dist2 = dr * dr + dc * dc;
      if (dist2 == 1) ++count.nn;
      if (dist2 == 2) ++count.nnn;
    }
  }
  return count;
}

/// Chebyshev expansion coefficients of f on [-1, 1] by Gauss-Chebyshev
/// quadrature with `nodes` points (exact for polynomial f of degree
/// < 2*nodes - max_order).
template <typename F>
std::vector<double> chebyshev_coefficients(const F& f, int max_order,
                                           int nodes) {
  std::vector<double> coeffs(static_cast<std::size_t>(max_order) + 1, 0.0);
  constexpr double pi = 3.14159265358979323846;
  for (int i = 0; i < nodes; ++i) {
    const double theta = pi * (i + 0.5) / nodes;
    const double x = std::cos(theta);
    const double fx = f(x);
    for (int j = 0; j <= max_order; ++j)
      coeffs[static_cast<std::size_t>(j)] += fx * std::cos(j * theta);
  }
  for (int j = 0; j <= max_order; ++j)
    coeffs[static_cast<std::size_t>(j)] *= (j == 0 ? 1.0 : 2.0) / nodes;
  return coeffs;
}

}  // namespace oracles
