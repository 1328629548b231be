#include <doctest.h>

#include "oracles.hpp"
#include "qkrylov/eigensolver.hpp"
#include "qkrylov/lattice.hpp"
#include "qkrylov/state.hpp"

using namespace qkrylov;

namespace {

LinearOp sum_op(const PauliSum& h) {
  return [&h](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    apply_sum_into(h, in, out);
  };
}

}  // namespace

TEST_SUITE("eigensolver") {
  TEST_CASE("matches dense diagonalization on random sums") {
    for (std::uint64_t seed : {11ULL, 22ULL, 33ULL}) {
      const PauliSum h = random_pauli_sum(8, 12, seed);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
      LanczosOptions opt;
      opt.max_basis = 60;
      const LanczosResult res = lowest_eigenpair(sum_op(h), 1 << 8, opt);
      CHECK(res.eigenvalue == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-9));
      CHECK(res.residual <= opt.tol);
    }
  }

  TEST_CASE("handles restarts on a larger frustrated lattice") {
    const PauliSum h = build_j1j2({2, 5, 1.0, 0.5, Boundary::open});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
    LanczosOptions opt;
    opt.max_basis = 24;  // force several thick restarts at dim 1024
    opt.thick_keep = 8;
    const LanczosResult res = lowest_eigenpair(sum_op(h), 1 << 10, opt);
    CHECK(res.eigenvalue ==
          doctest::Approx(es.eigenvalues()(0)).epsilon(1e-9));
    CHECK(res.residual <= opt.tol);
  }

  TEST_CASE("degenerate lowest eigenvalue still converges") {
    // Z on one qubit of four: eigenvalue -1 with multiplicity 8.
    const PauliSum h =
        PauliSum::normalize({{1.0, PauliTerm::single_site(4, 0, 'Z')}});
    const LanczosResult res = lowest_eigenpair(sum_op(h), 1 << 4);
    CHECK(res.eigenvalue == doctest::Approx(-1.0));
    CHECK(res.residual <= 1e-10);
  }

  TEST_CASE("eigenvector satisfies the residual contract") {
    const PauliSum h = build_j1j2({2, 4, 1.0, 0.5, Boundary::open});
    const LanczosResult res = lowest_eigenpair(sum_op(h), 1 << 8);
    Eigen::VectorXcd hv(res.eigenvector.size());
    apply_sum_into(h, res.eigenvector, hv);
    CHECK((hv - res.eigenvalue * res.eigenvector).norm() <= 1e-10);
    CHECK(res.eigenvector.norm() == doctest::Approx(1.0));
  }
}
