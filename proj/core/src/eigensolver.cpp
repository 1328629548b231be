#include "qkrylov/eigensolver.hpp"

#include <cmath>
#include <vector>

#include "qkrylov/errors.hpp"
#include "qkrylov/rng.hpp"

namespace qkrylov {

namespace {

Eigen::VectorXcd random_unit(std::int64_t dim, std::uint64_t seed) {
  RandomStream rng(seed);
  Eigen::VectorXcd v(dim);
  for (std::int64_t i = 0; i < dim; ++i)
    v[i] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  v /= v.norm();
  return v;
}

// Two Gram-Schmidt passes; returns the norm left afterwards. The accumulated
// projection coefficients are added into `coeffs` when given.
double orthogonalize(Eigen::VectorXcd& w,
                     const std::vector<Eigen::VectorXcd>& basis, int count,
                     Eigen::VectorXcd* coeffs) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < count; ++i) {
      const std::complex<double> c = basis[static_cast<std::size_t>(i)].dot(w);
      w -= c * basis[static_cast<std::size_t>(i)];
      if (coeffs) (*coeffs)[i] += c;
    }
  }
  return w.norm();
}

}  // namespace

LanczosResult lowest_eigenpair(const LinearOp& op, std::int64_t dim,
                               const LanczosOptions& options) {
  if (dim < 1) throw DomainError("lowest_eigenpair: empty operator");
  if (dim == 1) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Ones(1), he(1);
    op(e, he);
    return {he[0].real(), e, he[0].real(), 0.0, 1};
  }

  const int m = static_cast<int>(std::min<std::int64_t>(options.max_basis, dim));
  const int keep = std::max(1, std::min(options.thick_keep, m - 2));

  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(static_cast<std::size_t>(m) + 1);
  basis.push_back(random_unit(dim, options.seed));

  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(m, m);
  Eigen::VectorXcd w(dim);
  Eigen::VectorXcd next;          // pending continuation vector
  double beta_next = 0.0;         // its coupling strength
  bool have_next = false;
  bool space_exhausted = false;
  int matvecs = 0;
  int start_col = 0;

  for (int cycle = 0; cycle < options.max_restarts; ++cycle) {
    // Extend the basis, computing projected-matrix columns as we go.
    int ncols = start_col;
    for (int j = start_col; j < m && !space_exhausted; ++j) {
      op(basis[static_cast<std::size_t>(j)], w);
      ++matvecs;
      Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(j + 1);
      double beta = orthogonalize(w, basis, j + 1, &coeffs);
      for (int i = 0; i <= j; ++i) {
        proj(i, j) = coeffs[i];
        proj(j, i) = std::conj(coeffs[i]);
      }
      ncols = j + 1;
      if (beta < 1e-13) {
        // Invariant subspace hit: restart the recurrence from a fresh
        // direction (zero coupling), or stop if the space is spanned.
        w = random_unit(dim, hash_combine(options.seed,
                                          static_cast<std::uint64_t>(cycle),
                                          static_cast<std::uint64_t>(j)));
        beta = orthogonalize(w, basis, j + 1, nullptr);
        if (beta < 1e-8 || ncols >= dim) {
          space_exhausted = true;
          break;
        }
        w /= beta;
        beta = 0.0;
      } else {
        w /= beta;
      }
      if (j + 1 < m) {
        proj(j + 1, j) = beta;
        proj(j, j + 1) = beta;
        basis.push_back(w);
      } else {
        next = w;
        beta_next = beta;
        have_next = true;
      }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        proj.topLeftCorner(ncols, ncols));
    const Eigen::VectorXd& theta = es.eigenvalues();
    const Eigen::MatrixXcd& y = es.eigenvectors();

    const double res_est =
        have_next ? beta_next * std::abs(y(ncols - 1, 0)) : 0.0;
    if (res_est <= 0.5 * options.tol || space_exhausted ||
        cycle + 1 == options.max_restarts) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
      for (int j = 0; j < ncols; ++j)
        v += y(j, 0) * basis[static_cast<std::size_t>(j)];
      v /= v.norm();
      op(v, w);
      ++matvecs;
      const double residual = (w - theta(0) * v).norm();
      if (residual <= options.tol || space_exhausted) {
        if (residual > options.tol)
          throw ConvergenceFailure(
              "lowest_eigenpair: spanned full space but residual " +
              std::to_string(residual) + " exceeds tolerance");
        return {theta(0), std::move(v),
                ncols > 1 ? theta(1) : theta(0), residual, matvecs};
      }
      if (cycle + 1 == options.max_restarts)
        throw ConvergenceFailure("lowest_eigenpair: residual " +
                                 std::to_string(residual) +
                                 " after restart budget");
    }

    // Thick restart: carry the `keep` lowest Ritz vectors plus the pending
    // continuation vector. Its couplings reappear through the explicit
    // projections of the next extension step.
    const int kk = std::min(keep, ncols);
    std::vector<Eigen::VectorXcd> carried;
    carried.reserve(static_cast<std::size_t>(kk) + 1);
    for (int i = 0; i < kk; ++i) {
      Eigen::VectorXcd wi = Eigen::VectorXcd::Zero(dim);
      for (int j = 0; j < ncols; ++j)
        wi += y(j, i) * basis[static_cast<std::size_t>(j)];
      carried.push_back(std::move(wi));
    }
    if (!have_next) {
      Eigen::VectorXcd r = random_unit(
          dim, hash_combine(options.seed, static_cast<std::uint64_t>(cycle),
                            0xabcdULL));
      const double nrm = orthogonalize(r, carried, kk, nullptr);
      if (nrm < 1e-8)
        throw ConvergenceFailure("lowest_eigenpair: stalled restart");
      next = r / nrm;
    }
    basis = std::move(carried);
    basis.push_back(next);
    proj.setZero();
    for (int i = 0; i < kk; ++i) proj(i, i) = theta(i);
    start_col = kk;
    have_next = false;
    beta_next = 0.0;
  }
  throw ConvergenceFailure("lowest_eigenpair: restart budget exhausted");
}

}  // namespace qkrylov
