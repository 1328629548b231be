#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkrylov/pauli.hpp"
#include "qkrylov/state.hpp"

namespace qkrylov {

struct NoiseInfo {
  double eta = 0.0;
  std::uint64_t seed = 0;
};

/// The Chebyshev moment sequence mu_k = <T_k(H)>_0 for k = 0..2D-1 -- the
/// only quantities the quantum device would estimate. 2D moments determine
/// every entry of the D x D subspace matrices.
class MomentSeq {
 public:
  MomentSeq(int d_max, std::vector<double> mu,
            std::optional<NoiseInfo> noise = std::nullopt);

  int d_max() const { return d_max_; }
  const std::vector<double>& mu() const { return mu_; }
  double operator[](int k) const { return mu_[static_cast<std::size_t>(k)]; }
  const std::optional<NoiseInfo>& noise() const { return noise_; }
  bool noiseless() const { return !noise_.has_value(); }

  /// First 2d moments as a MomentSeq of dimension d <= d_max.
  MomentSeq truncated(int d) const;

 private:
  std::vector<double> mu_;  // length 2 * d_max
  std::optional<NoiseInfo> noise_;
  int d_max_;
};

/// mu_k = Re<psi0 | phi_k> through the three-term recurrence
/// phi_0 = psi0, phi_1 = H psi0, phi_{k+1} = 2 H phi_k - phi_{k-1},
/// keeping only two live vectors. psi0 must be unit norm within 1e-10.
MomentSeq compute_moments(const PauliSum& h, const StateVec& psi0, int d);

/// Adds i.i.d. N(0, eta^2) to mu_1..mu_{2D-1}; mu_0 needs no measurement and
/// stays 1. Deterministic for a fixed seed. The input must be noiseless.
MomentSeq add_noise(const MomentSeq& m, double eta, std::uint64_t seed);

std::string to_json_string(const MomentSeq& m);
MomentSeq moments_from_json_string(const std::string& text);

}  // namespace qkrylov
