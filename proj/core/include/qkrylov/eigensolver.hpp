#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

namespace qkrylov {

using LinearOp =
    std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct LanczosOptions {
  int max_basis = 160;     // basis size per cycle
  int thick_keep = 24;     // Ritz vectors carried across a restart
  int max_restarts = 100;
  double tol = 1e-10;      // on ||H v - theta v||
  std::uint64_t seed = 0x71b2c5d8a3e4f601ULL;
};

struct LanczosResult {
  double eigenvalue = 0.0;
  Eigen::VectorXcd eigenvector;
  double second_eigenvalue = 0.0;  // Ritz estimate, gap diagnostics only
  double residual = 0.0;
  int matvecs = 0;
};

/// Lowest eigenpair of a Hermitian operator by thick-restart Lanczos with
/// full reorthogonalization (two Gram-Schmidt passes per step). Throws
/// ConvergenceFailure if the residual target is not met within the restart
/// budget.
LanczosResult lowest_eigenpair(const LinearOp& op, std::int64_t dim,
                               const LanczosOptions& options = {});

}  // namespace qkrylov
