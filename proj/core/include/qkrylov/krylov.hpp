#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qkrylov/moments.hpp"

namespace qkrylov {

/// The D x D real symmetric subspace matrices assembled from shared moments:
///   S_ij = (mu_{i+j} + mu_{|i-j|}) / 2
///   H_ij = (mu_{i+j+1} + mu_{|i+j-1|} + mu_{|i-j+1|} + mu_{|i-j-1|}) / 4
struct KrylovPair {
  int d = 0;
  Eigen::MatrixXd h_mat;
  Eigen::MatrixXd s_mat;
  std::optional<NoiseInfo> provenance;
};

KrylovPair assemble(const MomentSeq& m);

struct ThresholdReport {
  double epsilon = 0.0;
  int kept = 0;
  std::vector<double> discarded_eigs;  // ascending
  double eps_total = 0.0;              // sum of discarded eigenvalues
  double energy_normalized = 0.0;
  double energy_physical = 0.0;
  double second_energy_normalized = 0.0;  // gap diagnostics (kept >= 2)
};

/// Regularized generalized eigensolve: keep eigenpairs of S with eigenvalue
/// strictly above epsilon, whiten with lambda^{-1/2}, and take the lowest
/// eigenvalue of the reduced operator. `scale` converts to physical units.
/// Throws AllDiscarded when the threshold exceeds every eigenvalue.
ThresholdReport solve_thresholded(const KrylovPair& kp, double epsilon,
                                  double scale = 1.0);

enum class ThresholdFamily { spin, molecule };

struct ThresholdConstants {
  double noiseless = 1e-13;
  double spin = 30.0;
  double molecule = 50.0;
};

/// eta = 0 -> the noiseless threshold; otherwise constant * eta with the
/// family's constant (hand-chosen values, exposed for overriding).
double pick_threshold(double eta, ThresholdFamily family,
                      const ThresholdConstants& constants = {});

/// Outlier-robust ensemble statistic: mean of the central ceil(10%) of the
/// sorted values; plain median below 10 entries.
double trial_statistic(const std::vector<double>& energies);

/// Diagnostic flag, not enforced anywhere: the eigenvalue-separation
/// assumption behind the noise bound, lambda_{m+1} + eta_s <= epsilon
/// (the largest discarded eigenvalue clears the threshold by the noise
/// margin, so noisy and noiseless problems discard the same count).
bool threshold_separation_ok(const ThresholdReport& report, double eta_s);

std::string to_json_string(const KrylovPair& kp);
std::string to_json_string(const ThresholdReport& report);

}  // namespace qkrylov
