#include "qkrylov/lattice.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace qkrylov {

namespace {

struct Bond {
  int a;
  int b;
  double coupling;
};

void check_spec(const LatticeSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1)
    throw DomainError("lattice: rows and cols must be positive");
  if (spec.rows * spec.cols > spec.site_guard)
    throw SizeGuard("lattice: " + std::to_string(spec.rows * spec.cols) +
                    " sites exceeds the guard of " +
                    std::to_string(spec.site_guard));
}

}  // namespace

std::string lattice_label(const LatticeSpec& spec) {
  return std::to_string(spec.rows) + "x" + std::to_string(spec.cols);
}

PauliSum build_j1j2(const LatticeSpec& spec) {
  check_spec(spec);
  const int rows = spec.rows, cols = spec.cols;
  const bool wrap = spec.boundary == Boundary::periodic;
  const auto site = [cols](int r, int c) { return r * cols + c; };

  std::vector<Bond> bonds;
  auto add_bond = [&](int r1, int c1, int r2, int c2, double coupling) {
    if (coupling == 0.0) return;
    if (wrap) {
      r2 = (r2 % rows + rows) % rows;
      c2 = (c2 % cols + cols) % cols;
    } else if (r2 < 0 || r2 >= rows || c2 < 0 || c2 >= cols) {
      return;
    }
    const int a = site(r1, c1), b = site(r2, c2);
    if (a == b) return;  // degenerate wrap on a length-1 dimension
    bonds.push_back({a, b, coupling});
  };

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      add_bond(r, c, r, c + 1, spec.j1);      // nearest neighbors
      add_bond(r, c, r + 1, c, spec.j1);
      add_bond(r, c, r + 1, c + 1, spec.j2);  // next-nearest (diagonals)
      add_bond(r, c, r + 1, c - 1, spec.j2);
    }
  }

  const int n = rows * cols;
  std::vector<std::pair<double, PauliTerm>> raw;
  raw.reserve(bonds.size() * 3);
  for (const auto& bond : bonds) {
    for (const char axis : {'X', 'Y', 'Z'})
      raw.emplace_back(bond.coupling / 4.0,
                       PauliTerm::two_site(n, bond.a, bond.b, axis));
  }
  return PauliSum::normalize(raw);
}

StateVec antiferro_state(int rows, int cols, int site_guard) {
  LatticeSpec guard_only{rows, cols, 0.0, 0.0, Boundary::open, site_guard};
  check_spec(guard_only);
  const int n = rows * cols;
  std::uint64_t index = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if ((r + c) % 2 == 1)
        index |= std::uint64_t{1} << (n - 1 - (r * cols + c));
  return StateVec::basis_state(n, index);
}

GroundState ground_truth(const PauliSum& h, const GroundTruthOptions& options) {
  const int n = h.n_qubits();
  if (n <= options.dense_cutoff) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
    StateVec state(n, es.eigenvectors().col(0));
    const double energy = es.eigenvalues()(0);
    const double residual =
        (apply_sum(h, state).amps() - energy * state.amps()).norm();
    if (residual > options.residual_tol)
      throw ConvergenceFailure("ground_truth: dense residual " +
                               std::to_string(residual));
    return {energy, std::move(state), residual};
  }

  const auto op = [&h](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    apply_sum_into(h, in, out);
  };
  LanczosOptions lopt = options.lanczos;
  lopt.tol = options.residual_tol;
  LanczosResult res =
      lowest_eigenpair(op, std::int64_t{1} << n, lopt);
  return {res.eigenvalue, StateVec(n, std::move(res.eigenvector)),
          res.residual};
}

}  // namespace qkrylov
