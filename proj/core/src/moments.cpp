#include "qkrylov/moments.hpp"

#include <cmath>
#include <json.hpp>

#include "qkrylov/rng.hpp"

namespace qkrylov {

MomentSeq::MomentSeq(int d_max, std::vector<double> mu,
                     std::optional<NoiseInfo> noise)
    : mu_(std::move(mu)), noise_(noise), d_max_(d_max) {
  if (d_max < 1) throw DomainError("MomentSeq: d_max must be positive");
  if (mu_.size() != static_cast<std::size_t>(2 * d_max))
    throw LengthMismatch("MomentSeq: expected " + std::to_string(2 * d_max) +
                         " moments, got " + std::to_string(mu_.size()));
}

MomentSeq MomentSeq::truncated(int d) const {
  if (d < 1 || d > d_max_)
    throw LengthMismatch("MomentSeq::truncated: d out of range");
  return MomentSeq(
      d, std::vector<double>(mu_.begin(), mu_.begin() + 2 * d), noise_);
}

MomentSeq compute_moments(const PauliSum& h, const StateVec& psi0, int d) {
  if (d < 1) throw DomainError("compute_moments: d must be positive");
  if (h.n_qubits() != psi0.n_qubits())
    throw DimensionMismatch("compute_moments: qubit counts differ");
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw NotNormalized("compute_moments: |psi0| = " +
                        std::to_string(psi0.norm()));

  std::vector<double> mu(static_cast<std::size_t>(2 * d));
  mu[0] = 1.0;  // <T_0(H)> needs no measurement

  // phi_prev = T_{k-1}(H) psi0, phi = T_k(H) psi0, advanced in place.
  Eigen::VectorXcd phi_prev = psi0.amps();
  Eigen::VectorXcd phi(psi0.dim());
  Eigen::VectorXcd h_phi(psi0.dim());
  apply_sum_into(h, phi_prev, phi);
  for (int k = 1; k < 2 * d; ++k) {
    // The inner product of Hermitian-polynomial images is real; the rounding
    // residue in the imaginary part is discarded.
    mu[static_cast<std::size_t>(k)] = inner(psi0.amps(), phi).real();
    if (k + 1 < 2 * d) {
      apply_sum_into(h, phi, h_phi);
      h_phi = 2.0 * h_phi - phi_prev;
      phi_prev.swap(phi);
      phi.swap(h_phi);
    }
  }
  return MomentSeq(d, std::move(mu));
}

MomentSeq add_noise(const MomentSeq& m, double eta, std::uint64_t seed) {
  if (eta < 0.0) throw DomainError("add_noise: eta must be nonnegative");
  if (!m.noiseless())
    throw DomainError("add_noise: input already carries noise");
  std::vector<double> mu = m.mu();
  RandomStream rng(seed);
  for (std::size_t k = 1; k < mu.size(); ++k)
    mu[k] += eta * rng.next_gaussian();
  return MomentSeq(m.d_max(), std::move(mu), NoiseInfo{eta, seed});
}

std::string to_json_string(const MomentSeq& m) {
  nlohmann::json j;
  j["d_max"] = m.d_max();
  j["mu"] = m.mu();
  if (m.noise()) {
    j["noise"] = {{"eta", m.noise()->eta}, {"seed", m.noise()->seed}};
  } else {
    j["noise"] = nullptr;
  }
  return j.dump(2);
}

MomentSeq moments_from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::optional<NoiseInfo> noise;
  if (j.contains("noise") && !j["noise"].is_null())
    noise = NoiseInfo{j["noise"].at("eta").get<double>(),
                      j["noise"].at("seed").get<std::uint64_t>()};
  return MomentSeq(j.at("d_max").get<int>(),
                   j.at("mu").get<std::vector<double>>(), noise);
}

}  // namespace qkrylov
