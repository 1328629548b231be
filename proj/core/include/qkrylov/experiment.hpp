#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkrylov/krylov.hpp"
#include "qkrylov/lattice.hpp"

namespace qkrylov {

enum class InitialStateKind { antiferro, basis_index };

/// Sweep configuration, loadable from JSON (schema documented in the README).
struct ExperimentConfig {
  std::optional<LatticeSpec> lattice;
  std::optional<std::string> hamiltonian_file;
  InitialStateKind initial_state = InitialStateKind::antiferro;
  std::uint64_t basis_index = 0;
  int d_max = 30;
  std::vector<double> noise_rates{0.0};
  int trials = 100;
  std::uint64_t seed = 1;
  ThresholdFamily threshold_family = ThresholdFamily::spin;
  std::optional<double> threshold_constant_override;
  std::string output;

  // fig3 sweeps run several lattices with per-lattice converged depths.
  std::vector<LatticeSpec> fig3_lattices;
  std::map<std::string, int> depth_overrides;  // label like "2x3" -> depth

  static ExperimentConfig from_json_string(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);
};

/// The family constants with the optional override applied.
ThresholdConstants threshold_constants(const ExperimentConfig& cfg);

/// Model + initial state resolved from a config.
struct ModelBundle {
  PauliSum h;
  StateVec psi0;
  std::string label;
  int sites = 1;
  double j1 = 1.0;  // energy unit for error-per-site reporting
};

ModelBundle build_model(const ExperimentConfig& cfg);

/// One (eta, D) grid cell after aggregating `trials` noisy replicas.
struct SweepCell {
  double statistic_energy = 0.0;  // physical units
  double error_per_site = 0.0;
  double mean_kept = 0.0;
  int failed_trials = 0;
  std::string error_code;  // empty on success; failures never abort the grid
};

struct Fig2Data {
  std::string lattice;
  int sites = 1;
  double scale = 1.0;
  double e0_physical = 0.0;
  int d_max = 1;
  std::vector<double> etas;
  std::vector<double> thresholds;            // per eta
  std::vector<std::vector<SweepCell>> cells; // [eta_index][d - 1]
};

/// Grid cells execute concurrently; per-(eta, D, trial) noise substreams are
/// derived by hashing, so output is identical for any worker count.
/// workers = 0 resolves QKRYLOV_WORKERS, then hardware concurrency.
Fig2Data compute_fig2(const ExperimentConfig& cfg, int workers = 0);
std::string render_fig2_csv(const Fig2Data& data);
std::string run_fig2(const ExperimentConfig& cfg, int workers = 0);

struct Fig3Row {
  std::string lattice;
  double eta = 0.0;
  int depth = 0;
  double error_per_site = 0.0;   // mean over the 10 dimensions up to depth
  double total_queries = 0.0;    // depth * 2*depth moments * eta^{-2} shots
  std::string error_code;
};

struct Fig3Data {
  std::vector<Fig3Row> rows;
};

Fig3Data compute_fig3(const ExperimentConfig& cfg, int workers = 0);
std::string render_fig3_csv(const Fig3Data& data);
std::string run_fig3(const ExperimentConfig& cfg, int workers = 0);

int resolve_workers(int requested);

}  // namespace qkrylov
