#include "qkrylov/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

namespace qkrylov {

KrylovPair assemble(const MomentSeq& m) {
  const int d = m.d_max();
  const auto& mu = m.mu();
  if (mu.size() != static_cast<std::size_t>(2 * d))
    throw LengthMismatch("assemble: need 2D moments");

  KrylovPair kp;
  kp.d = d;
  kp.provenance = m.noise();
  kp.s_mat.resize(d, d);
  kp.h_mat.resize(d, d);
  // Fill the upper triangle and mirror so both matrices are exactly
  // symmetric (the summand order would otherwise differ across rounding).
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const double s = 0.5 * (mu[static_cast<std::size_t>(i + j)] +
                              mu[static_cast<std::size_t>(j - i)]);
      const double h =
          0.25 * (mu[static_cast<std::size_t>(i + j + 1)] +
                  mu[static_cast<std::size_t>(std::abs(i + j - 1))] +
                  mu[static_cast<std::size_t>(std::abs(i - j + 1))] +
                  mu[static_cast<std::size_t>(std::abs(i - j - 1))]);
      kp.s_mat(i, j) = s;
      kp.s_mat(j, i) = s;
      kp.h_mat(i, j) = h;
      kp.h_mat(j, i) = h;
    }
  }
  return kp;
}

ThresholdReport solve_thresholded(const KrylovPair& kp, double epsilon,
                                  double scale) {
  if (epsilon <= 0.0)
    throw DomainError("solve_thresholded: epsilon must be positive");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kp.s_mat);
  const Eigen::VectorXd& evals = es.eigenvalues();  // ascending

  // lambda = epsilon exactly is discarded: strictly "above some threshold".
  int first_kept = 0;
  while (first_kept < kp.d && evals(first_kept) <= epsilon) ++first_kept;
  const int kept = kp.d - first_kept;
  if (kept == 0)
    throw AllDiscarded("solve_thresholded: threshold " +
                       std::to_string(epsilon) +
                       " exceeds every overlap eigenvalue");

  ThresholdReport report;
  report.epsilon = epsilon;
  report.kept = kept;
  report.discarded_eigs.assign(evals.data(), evals.data() + first_kept);
  report.eps_total = 0.0;
  for (const double lambda : report.discarded_eigs)
    report.eps_total += lambda;

  // Whitened reduced operator B^T H B with B = V_kept diag(lambda^{-1/2}).
  Eigen::MatrixXd basis = es.eigenvectors().rightCols(kept);
  for (int i = 0; i < kept; ++i)
    basis.col(i) /= std::sqrt(evals(first_kept + i));
  Eigen::MatrixXd reduced = basis.transpose() * kp.h_mat * basis;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hs(reduced);
  report.energy_normalized = hs.eigenvalues()(0);
  report.energy_physical = report.energy_normalized * scale;
  report.second_energy_normalized =
      kept > 1 ? hs.eigenvalues()(1) : hs.eigenvalues()(0);
  return report;
}

double pick_threshold(double eta, ThresholdFamily family,
                      const ThresholdConstants& constants) {
  if (eta < 0.0) throw DomainError("pick_threshold: eta must be nonnegative");
  if (eta == 0.0) return constants.noiseless;
  return (family == ThresholdFamily::spin ? constants.spin
                                          : constants.molecule) *
         eta;
}

double trial_statistic(const std::vector<double>& energies) {
  if (energies.empty()) throw EmptyInput("trial_statistic: empty ensemble");
  std::vector<double> sorted = energies;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n < 10) {
    // median; mean of the two central values for even length
    return n % 2 == 1 ? sorted[n / 2]
                      : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  }
  const std::size_t m = (n + 9) / 10;  // ceil(10%)
  const std::size_t start = (n - m) / 2;
  double sum = 0.0;
  for (std::size_t i = start; i < start + m; ++i) sum += sorted[i];
  return sum / static_cast<double>(m);
}

bool threshold_separation_ok(const ThresholdReport& report, double eta_s) {
  if (report.discarded_eigs.empty()) return true;
  return report.discarded_eigs.back() + eta_s <= report.epsilon;
}

namespace {

nlohmann::json provenance_json(const std::optional<NoiseInfo>& noise) {
  if (!noise) return nullptr;
  return {{"eta", noise->eta}, {"seed", noise->seed}};
}

}  // namespace

std::string to_json_string(const KrylovPair& kp) {
  nlohmann::json j;
  j["d"] = kp.d;
  auto matrix_rows = [](const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < m.rows(); ++i)
      rows.emplace_back(m.row(i).begin(), m.row(i).end());
    return rows;
  };
  j["h_mat"] = matrix_rows(kp.h_mat);
  j["s_mat"] = matrix_rows(kp.s_mat);
  j["provenance"] = provenance_json(kp.provenance);
  return j.dump(2);
}

std::string to_json_string(const ThresholdReport& report) {
  nlohmann::json j;
  j["epsilon"] = report.epsilon;
  j["kept"] = report.kept;
  j["discarded_eigs"] = report.discarded_eigs;
  j["eps_total"] = report.eps_total;
  j["energy_normalized"] = report.energy_normalized;
  j["energy_physical"] = report.energy_physical;
  j["second_energy_normalized"] = report.second_energy_normalized;
  return j.dump(2);
}

}  // namespace qkrylov
