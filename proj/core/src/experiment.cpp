#include "qkrylov/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>

#include "qkrylov/rng.hpp"

namespace qkrylov {

namespace {

const std::map<std::string, int> kPaperDepths = {
    {"2x2", 5},  {"2x3", 40}, {"3x2", 40}, {"3x3", 40},
    {"3x4", 50}, {"4x3", 50}, {"4x4", 50},
};

LatticeSpec lattice_from_json(const nlohmann::json& j) {
  LatticeSpec spec;
  spec.rows = j.at("rows").get<int>();
  spec.cols = j.at("cols").get<int>();
  spec.j1 = j.value("j1", 1.0);
  spec.j2 = j.value("j2", 0.5);
  spec.site_guard = j.value("site_guard", 20);
  const std::string boundary = j.value("boundary", "open");
  if (boundary == "open")
    spec.boundary = Boundary::open;
  else if (boundary == "periodic")
    spec.boundary = Boundary::periodic;
  else
    throw DomainError("config: boundary must be \"open\" or \"periodic\"");
  return spec;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.d_max < 1) throw DomainError("config: d_max must be >= 1");
  if (cfg.trials < 1) throw DomainError("config: trials must be >= 1");
  for (const double eta : cfg.noise_rates)
    if (eta < 0.0 || !std::isfinite(eta))
      throw DomainError("config: noise rates must be finite and nonnegative");
  if (cfg.lattice && cfg.hamiltonian_file)
    throw DomainError("config: give either a lattice or a Hamiltonian file");
}

std::string format_double(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int spawn = static_cast<int>(
      std::min<std::size_t>(count, static_cast<std::size_t>(workers)));
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int i = 0; i < spawn; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Aggregates `trials` noisy replicas of one (eta, D) cell. The substream for
/// trial t is hash(seed, stream_tag..., t), independent of execution order.
SweepCell run_cell(const MomentSeq& noiseless, double eta, int d,
                   double threshold, double scale, int trials,
                   std::uint64_t seed, std::uint64_t stream_a,
                   std::uint64_t stream_b, double e0_physical, int sites,
                   double j1_unit) {
  SweepCell cell;
  std::vector<double> energies;
  std::vector<double> errors;
  energies.reserve(static_cast<std::size_t>(trials));
  errors.reserve(static_cast<std::size_t>(trials));
  long long kept_sum = 0;
  const MomentSeq base = noiseless.truncated(d);
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t sub =
        hash_combine(seed, stream_a, stream_b, static_cast<std::uint64_t>(d),
                     static_cast<std::uint64_t>(trial));
    const MomentSeq noisy = add_noise(base, eta, sub);
    const KrylovPair kp = assemble(noisy);
    try {
      const ThresholdReport report = solve_thresholded(kp, threshold, scale);
      energies.push_back(report.energy_physical);
      errors.push_back(std::abs(report.energy_physical - e0_physical) /
                       (static_cast<double>(sites) * j1_unit));
      kept_sum += report.kept;
    } catch (const AllDiscarded&) {
      ++cell.failed_trials;
    }
  }
  if (energies.empty()) {
    cell.statistic_energy = std::nan("");
    cell.error_per_site = std::nan("");
    cell.mean_kept = std::nan("");
    cell.error_code = "AllDiscarded";
    return cell;
  }
  // The datapoint is the outlier-trimmed per-trial energy error; the trimmed
  // energy itself is kept for diagnostics.
  cell.statistic_energy = trial_statistic(energies);
  cell.error_per_site = trial_statistic(errors);
  cell.mean_kept =
      static_cast<double>(kept_sum) / static_cast<double>(energies.size());
  return cell;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentConfig cfg;
  if (j.contains("model")) {
    const auto& model = j.at("model");
    if (model.contains("file"))
      cfg.hamiltonian_file = model.at("file").get<std::string>();
    else
      cfg.lattice = lattice_from_json(model);
  }
  if (j.contains("initial_state")) {
    const auto& init = j.at("initial_state");
    if (init.is_string()) {
      if (init.get<std::string>() != "antiferro")
        throw DomainError("config: unknown initial_state string");
      cfg.initial_state = InitialStateKind::antiferro;
    } else {
      cfg.initial_state = InitialStateKind::basis_index;
      cfg.basis_index = init.at("basis_index").get<std::uint64_t>();
    }
  }
  cfg.d_max = j.value("d_max", cfg.d_max);
  if (j.contains("noise_rates"))
    cfg.noise_rates = j.at("noise_rates").get<std::vector<double>>();
  cfg.trials = j.value("trials", cfg.trials);
  cfg.seed = j.value("seed", cfg.seed);
  const std::string family = j.value("threshold_family", "spin");
  if (family == "spin")
    cfg.threshold_family = ThresholdFamily::spin;
  else if (family == "molecule")
    cfg.threshold_family = ThresholdFamily::molecule;
  else
    throw DomainError("config: threshold_family must be spin or molecule");
  if (j.contains("threshold_constant_override"))
    cfg.threshold_constant_override =
        j.at("threshold_constant_override").get<double>();
  cfg.output = j.value("output", std::string{});
  if (j.contains("lattices"))
    for (const auto& entry : j.at("lattices"))
      cfg.fig3_lattices.push_back(lattice_from_json(entry));
  if (j.contains("depth_table"))
    for (const auto& [label, depth] : j.at("depth_table").items())
      cfg.depth_overrides[label] = depth.get<int>();
  validate(cfg);
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_string(buffer.str());
}

ThresholdConstants threshold_constants(const ExperimentConfig& cfg) {
  ThresholdConstants constants;
  if (cfg.threshold_constant_override) {
    if (cfg.threshold_family == ThresholdFamily::spin)
      constants.spin = *cfg.threshold_constant_override;
    else
      constants.molecule = *cfg.threshold_constant_override;
  }
  return constants;
}

ModelBundle build_model(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.hamiltonian_file) {
    if (cfg.initial_state == InitialStateKind::antiferro)
      throw DomainError(
          "config: file Hamiltonians need an explicit basis_index initial "
          "state");
    PauliSum h = PauliSum::from_file(*cfg.hamiltonian_file);
    StateVec psi0 = StateVec::basis_state(h.n_qubits(), cfg.basis_index);
    const int sites = h.n_qubits();
    return {std::move(h), std::move(psi0), "file", sites, 1.0};
  }
  if (!cfg.lattice) throw DomainError("config: no model given");
  const LatticeSpec& spec = *cfg.lattice;
  PauliSum h = build_j1j2(spec);
  StateVec psi0 =
      cfg.initial_state == InitialStateKind::antiferro
          ? antiferro_state(spec.rows, spec.cols, spec.site_guard)
          : StateVec::basis_state(spec.rows * spec.cols, cfg.basis_index);
  const double j1_unit = spec.j1 != 0.0 ? std::abs(spec.j1) : 1.0;
  return {std::move(h), std::move(psi0), lattice_label(spec),
          spec.rows * spec.cols, j1_unit};
}

Fig2Data compute_fig2(const ExperimentConfig& cfg, int workers) {
  const ModelBundle bundle = build_model(cfg);
  const ThresholdConstants constants = threshold_constants(cfg);

  Fig2Data data;
  data.lattice = bundle.label;
  data.sites = bundle.sites;
  data.scale = bundle.h.scale();
  data.d_max = cfg.d_max;
  data.etas = cfg.noise_rates;
  for (const double eta : cfg.noise_rates)
    data.thresholds.push_back(
        pick_threshold(eta, cfg.threshold_family, constants));

  const MomentSeq noiseless = compute_moments(bundle.h, bundle.psi0, cfg.d_max);
  const GroundState gt = ground_truth(bundle.h);
  data.e0_physical = gt.energy * bundle.h.scale();

  data.cells.assign(cfg.noise_rates.size(),
                    std::vector<SweepCell>(static_cast<std::size_t>(cfg.d_max)));
  const std::size_t cell_count =
      cfg.noise_rates.size() * static_cast<std::size_t>(cfg.d_max);
  parallel_for(cell_count, resolve_workers(workers), [&](std::size_t index) {
    const std::size_t eta_index = index / static_cast<std::size_t>(cfg.d_max);
    const int d = static_cast<int>(index % static_cast<std::size_t>(cfg.d_max)) + 1;
    data.cells[eta_index][static_cast<std::size_t>(d - 1)] = run_cell(
        noiseless, cfg.noise_rates[eta_index], d, data.thresholds[eta_index],
        bundle.h.scale(), cfg.trials, cfg.seed, eta_index, 0,
        data.e0_physical, bundle.sites, bundle.j1);
  });
  return data;
}

std::string render_fig2_csv(const Fig2Data& data) {
  std::ostringstream out;
  out << "lattice,D,eta,threshold,error_per_site,kept_dim,series,"
         "failed_trials,error_code\n";
  auto emit = [&](int d, std::size_t eta_index, const SweepCell& cell,
                  const char* series) {
    out << data.lattice << ',' << d << ','
        << format_double(data.etas[eta_index]) << ','
        << format_double(data.thresholds[eta_index]) << ','
        << format_double(cell.error_per_site) << ','
        << format_double(cell.mean_kept) << ',' << series << ','
        << cell.failed_trials << ',' << cell.error_code << '\n';
  };

  for (std::size_t ei = 0; ei < data.etas.size(); ++ei)
    for (int d = 1; d <= data.d_max; ++d)
      emit(d, ei, data.cells[ei][static_cast<std::size_t>(d - 1)], "raw");

  // Smoothed view: mean over each window of 10 successive dimensions,
  // reported above the window center.
  constexpr int kWindow = 10;
  for (std::size_t ei = 0; ei < data.etas.size(); ++ei) {
    for (int start = 1; start + kWindow - 1 <= data.d_max; ++start) {
      SweepCell smooth;
      double err_sum = 0.0, kept_sum = 0.0;
      int valid = 0;
      for (int d = start; d < start + kWindow; ++d) {
        const SweepCell& cell = data.cells[ei][static_cast<std::size_t>(d - 1)];
        smooth.failed_trials += cell.failed_trials;
        if (cell.error_code.empty()) {
          err_sum += cell.error_per_site;
          kept_sum += cell.mean_kept;
          ++valid;
        }
      }
      if (valid == 0) {
        smooth.error_per_site = std::nan("");
        smooth.mean_kept = std::nan("");
        smooth.error_code = "AllDiscarded";
      } else {
        smooth.error_per_site = err_sum / valid;
        smooth.mean_kept = kept_sum / valid;
      }
      emit(start + kWindow / 2 - 1, ei, smooth, "smoothed");
    }
  }
  return out.str();
}

std::string run_fig2(const ExperimentConfig& cfg, int workers) {
  return render_fig2_csv(compute_fig2(cfg, workers));
}

Fig3Data compute_fig3(const ExperimentConfig& cfg, int workers) {
  if (cfg.fig3_lattices.empty())
    throw DomainError("fig3: config must list lattices");
  for (const double eta : cfg.noise_rates)
    if (eta <= 0.0)
      throw DomainError("fig3: noise rates must be positive (shot counts)");

  const ThresholdConstants constants = threshold_constants(cfg);

  // The sweep runs a margin past the tabulated convergence depth and the
  // converged error is the mean over the rightmost 10 dimensions; queries
  // are billed at the tabulated depth.
  constexpr int kConvergenceMargin = 5;
  struct LatticeJob {
    std::string label;
    int depth = 0;  // tabulated convergence depth
    int d_hi = 1;   // window is [d_hi - 9, d_hi]
    double scale = 1.0;
    double e0_physical = 0.0;
    int sites = 1;
    double j1 = 1.0;
    MomentSeq noiseless{1, {1.0, 0.0}};
  };

  std::vector<LatticeJob> jobs;
  for (const LatticeSpec& spec : cfg.fig3_lattices) {
    LatticeJob job;
    job.label = lattice_label(spec);
    if (auto it = cfg.depth_overrides.find(job.label);
        it != cfg.depth_overrides.end())
      job.depth = it->second;
    else if (auto pit = kPaperDepths.find(job.label); pit != kPaperDepths.end())
      job.depth = pit->second;
    else
      throw DomainError("fig3: no depth entry for lattice " + job.label);
    job.d_hi = job.depth + kConvergenceMargin + 9;

    const PauliSum h = build_j1j2(spec);
    const StateVec psi0 = antiferro_state(spec.rows, spec.cols, spec.site_guard);
    job.scale = h.scale();
    job.sites = spec.rows * spec.cols;
    job.j1 = spec.j1 != 0.0 ? std::abs(spec.j1) : 1.0;
    job.noiseless = compute_moments(h, psi0, job.d_hi);
    job.e0_physical = ground_truth(h).energy * h.scale();
    jobs.push_back(std::move(job));
  }

  Fig3Data data;
  data.rows.resize(jobs.size() * cfg.noise_rates.size());
  parallel_for(
      data.rows.size(), resolve_workers(workers), [&](std::size_t index) {
        const std::size_t li = index / cfg.noise_rates.size();
        const std::size_t ei = index % cfg.noise_rates.size();
        const LatticeJob& job = jobs[li];
        const double eta = cfg.noise_rates[ei];
        const double threshold =
            pick_threshold(eta, cfg.threshold_family, constants);

        double err_sum = 0.0;
        int valid = 0;
        int failed = 0;
        for (int d = job.d_hi - 9; d <= job.d_hi; ++d) {
          const SweepCell cell =
              run_cell(job.noiseless, eta, d, threshold, job.scale, cfg.trials,
                       cfg.seed, li, ei, job.e0_physical, job.sites, job.j1);
          failed += cell.failed_trials;
          if (cell.error_code.empty()) {
            err_sum += cell.error_per_site;
            ++valid;
          }
        }
        Fig3Row& row = data.rows[index];
        row.lattice = job.label;
        row.eta = eta;
        row.depth = job.depth;
        // Queries: 2*depth moments, eta^{-2} shots each, circuits of depth
        // `depth` block-encoding applications (unit constant).
        row.total_queries =
            2.0 * job.depth * job.depth / (eta * eta);
        if (valid == 0) {
          row.error_per_site = std::nan("");
          row.error_code = "AllDiscarded";
        } else {
          row.error_per_site = err_sum / valid;
        }
      });
  return data;
}

std::string render_fig3_csv(const Fig3Data& data) {
  std::ostringstream out;
  out << "lattice,eta,depth,error_per_site,total_queries,error_code\n";
  for (const Fig3Row& row : data.rows)
    out << row.lattice << ',' << format_double(row.eta) << ',' << row.depth
        << ',' << format_double(row.error_per_site) << ','
        << format_double(row.total_queries) << ',' << row.error_code << '\n';
  return out.str();
}

std::string run_fig3(const ExperimentConfig& cfg, int workers) {
  return render_fig3_csv(compute_fig3(cfg, workers));
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QKRYLOV_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace qkrylov
