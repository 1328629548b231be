#pragma once

#include <cstdint>

#include "qkrylov/errors.hpp"

namespace qkrylov {

/// Inputs to the error/resource bounds. Energies are in normalized units
/// (spectrum inside [-1, 1]); callers convert afterwards.
struct BoundParams {
  int d = 1;               // Krylov dimension D
  double eta = 0.0;        // total noise rate sqrt(eta_h^2 + eta_s^2)
  double eta_s = 0.0;      // spectral-norm perturbation of S
  double eta_h = 0.0;      // spectral-norm perturbation of H
  double gamma0 = 1.0;     // |<ground|psi0>|
  double gamma = 1.0;      // overlap with the low-energy subspace within delta
  double delta = 0.0;      // analysis tolerance, > 0 where used
  double epsilon = 0.0;    // threshold
  double eps_total = 0.0;  // sum of discarded overlap eigenvalues
  double alpha = 0.0;      // exponent in [0, 1/2]
  double mu_const = 1.0;   // H-vs-S bound constant mu > 0
  double rho = 1.0;        // threshold clearance constant rho > 0
  double gap = 0.0;        // spectral gap Delta
};

/// Noiseless thresholded-energy error bound (k = D - 1):
///   delta + 8 (sqrt(delta) eps_total
///              + (1 - gamma^2 + 4 eps_total)(1 + delta/2)^{-2 floor(k/2)})
///           / (gamma0 - 2 sqrt((k+1) epsilon))^2
/// Throws DenominatorInvalid unless gamma0 > 2 sqrt((k+1) epsilon); the bound
/// is vacuous there.
double theorem2_bound(const BoundParams& p, int k);

/// chi = 3 (2 + mu)(1 + 1/rho)(|S| / epsilon)^alpha eta_S + eta_H.
double lemma2_chi(const BoundParams& p, double s_norm);

/// Noise-induced energy shift bound |E0' - E0'~| <= pi D^4 chi (the
/// simplified form with the arctan condition number replaced by 1).
double noise_bound(const BoundParams& p, double chi);

/// Minimax residual polynomial on [a, b] (value 1 at 0):
///   p*(x) = T_d((b + a - 2x)/(b - a)) / T_d((b + a)/(b - a))
/// with max_{[a,b]} |p*| = beta = 1 / T_d((b+a)/(b-a)) <= 2 (1+sqrt(a/b))^{-d}.
struct ResidualPoly {
  double a = 0.0;
  double b = 1.0;
  int d = 1;
  double beta = 1.0;
  double operator()(double x) const;
};

ResidualPoly residual_poly(double a, double b, int d);

/// Chebyshev-coefficient budget of the spectral filter:
///   g(delta, k) = 2 sqrt(delta)
///                 + 8 (1 - (2/pi) sqrt(delta)) (1 + delta/2)^{-2 floor(k/2)}
/// valid for 0 < delta < 1/4.
double g_bound(double delta, int k);

/// Required Krylov dimension and per-element measurement budget, evaluated
/// with unit leading constants and natural logs. Order-of-magnitude
/// advisories, not guarantees. All arguments must lie in (0, 1].
long long required_dimension(double gamma0, double err, double gap);
double measurement_budget(double gamma0, double err, double gap);

enum class EncodingScheme { binary_index, symplectic };

struct OpCost {
  long long controlled = 0;  // ceil(log2 T)-controlled single-qubit gates
  long long two_qubit = 0;
  long long single_qubit = 0;
};

/// Closed-form gate counts per operator.
///   binary_index: U = nT, G = 2T, R = 4T controlled gates; aux = ceil(log2 T)
///   symplectic:   U = 3n+T, G = 4n^2-10n (+2 single), R = 8n^2+14 (+4 single)
///                 two-qubit gates; aux = 2n plus 6 counting qubits for R.
/// The symplectic G/R forms require n >= 3.
struct GateCostReport {
  EncodingScheme scheme = EncodingScheme::binary_index;
  int n = 0;
  int t = 0;
  int aux_qubits = 0;
  int counting_qubits = 0;
  OpCost u, g, r;
};

GateCostReport gate_costs(int n, int t, EncodingScheme scheme);

/// Longest coherent gate sequence for Krylov dimension d in the binary-index
/// scheme: (d - 1) n T + 4 d T controlled gates.
long long coherent_depth(int n, int t, int d);

}  // namespace qkrylov
