#pragma once

#include <string>

#include "qkrylov/eigensolver.hpp"
#include "qkrylov/pauli.hpp"
#include "qkrylov/state.hpp"

namespace qkrylov {

enum class Boundary { open, periodic };

/// Square-lattice J1-J2 description. Sites are indexed row-major; site (r, c)
/// is qubit r*cols + c.
struct LatticeSpec {
  int rows = 1;
  int cols = 1;
  double j1 = 1.0;
  double j2 = 0.5;
  Boundary boundary = Boundary::open;
  int site_guard = 20;  // statevector feasibility guard on rows*cols
};

std::string lattice_label(const LatticeSpec& spec);  // e.g. "2x3"

/// H = J1 sum_<ij> S_i.S_j + J2 sum_<<ij>> S_i.S_j for spin-1/2 operators
/// S_i.S_j = (X_i X_j + Y_i Y_j + Z_i Z_j) / 4, normalized to unit l1 norm.
/// Periodic wrap bonds that coincide with existing bonds merge by addition.
PauliSum build_j1j2(const LatticeSpec& spec);

/// Checkerboard product state: spin-up (|0>) on even (r+c), spin-down on odd.
StateVec antiferro_state(int rows, int cols, int site_guard = 20);

struct GroundTruthOptions {
  int dense_cutoff = 12;      // dense diagonalization up to this qubit count
  double residual_tol = 1e-10;
  LanczosOptions lanczos{};
};

struct GroundState {
  double energy;   // normalized units, spectrum inside [-1, 1]
  StateVec state;
  double residual;
};

/// Lowest eigenpair of the normalized Hamiltonian: dense for small systems,
/// thick-restart Lanczos above the cutoff.
GroundState ground_truth(const PauliSum& h,
                         const GroundTruthOptions& options = {});

}  // namespace qkrylov
