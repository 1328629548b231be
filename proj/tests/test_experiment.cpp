#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qkrylov/experiment.hpp"

using namespace qkrylov;

namespace {

ExperimentConfig small_config() {
  return ExperimentConfig::from_json_string(R"({
    "model": {"rows": 2, "cols": 2, "j1": 1.0, "j2": 0.5, "boundary": "open"},
    "initial_state": "antiferro",
    "d_max": 16,
    "noise_rates": [0.0],
    "trials": 1,
    "seed": 42,
    "threshold_family": "spin"
  })");
}

int count_fields(const std::string& line) {
  return static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("config parsing and validation") {
    const ExperimentConfig cfg = small_config();
    CHECK(cfg.lattice->rows == 2);
    CHECK(cfg.d_max == 16);
    CHECK(cfg.trials == 1);
    CHECK(cfg.threshold_family == ThresholdFamily::spin);

    CHECK_THROWS_AS(ExperimentConfig::from_json_string(
                        R"({"model": {"rows": 2, "cols": 2}, "d_max": 0})"),
                    DomainError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_string(
                        R"({"model": {"rows": 2, "cols": 2},
                            "noise_rates": [-1e-3]})"),
                    DomainError);
    CHECK_THROWS_AS(
        ExperimentConfig::from_json_string(
            R"({"model": {"rows": 2, "cols": 2, "boundary": "twisted"}})"),
        DomainError);
  }

  TEST_CASE("threshold override replaces the family constant") {
    ExperimentConfig cfg = small_config();
    cfg.threshold_constant_override = 12.5;
    const ThresholdConstants constants = threshold_constants(cfg);
    CHECK(pick_threshold(1e-3, cfg.threshold_family, constants) ==
          doctest::Approx(1.25e-2));
  }

  TEST_CASE("noiseless sweep saturates the 2x2 lattice") {
    const Fig2Data data = compute_fig2(small_config(), 1);
    CHECK(data.lattice == "2x2");
    CHECK(data.sites == 4);

    // D = 1: single-vector subspace, error = |<H>_0 - E0| * scale / sites.
    const PauliSum h = build_j1j2({2, 2, 1.0, 0.5, Boundary::open});
    const StateVec psi0 = antiferro_state(2, 2);
    const double mu1 = inner(psi0, apply_sum(h, psi0)).real();
    const double expected_d1 =
        std::abs(mu1 * h.scale() - data.e0_physical) / 4.0;
    CHECK(data.cells[0][0].error_per_site ==
          doctest::Approx(expected_d1).epsilon(1e-10));

    // By D = 16 the reachable sector is exhausted: error at numerical zero.
    CHECK(data.cells[0][15].error_per_site <= 1e-9);
    for (const auto& cell : data.cells[0]) CHECK(cell.error_code.empty());
  }

  TEST_CASE("CSV schema is stable and parseable") {
    const std::string csv = run_fig2(small_config(), 1);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line ==
          "lattice,D,eta,threshold,error_per_site,kept_dim,series,"
          "failed_trials,error_code");
    int rows = 0;
    while (std::getline(lines, line)) {
      CHECK(count_fields(line) == 9);
      ++rows;
    }
    // 16 raw rows plus 7 smoothed windows for one noise rate.
    CHECK(rows == 16 + 7);
  }

  TEST_CASE("golden fig2 output stays byte stable") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_string(R"({
      "model": {"rows": 2, "cols": 2, "j1": 1.0, "j2": 0.5,
                "boundary": "open"},
      "initial_state": "antiferro",
      "d_max": 5,
      "noise_rates": [0.0, 1e-3],
      "trials": 3,
      "seed": 99,
      "threshold_family": "spin"
    })");
    std::ifstream golden(std::string(QKRYLOV_TEST_DIR) +
                         "/golden/fig2_tiny.csv");
    REQUIRE(golden.good());
    std::ostringstream expected;
    expected << golden.rdbuf();
    CHECK(run_fig2(cfg, 1) == expected.str());
  }

  TEST_CASE("identical runs and worker counts give identical bytes") {
    ExperimentConfig cfg = small_config();
    cfg.noise_rates = {0.0, 1e-3};
    cfg.trials = 5;
    cfg.d_max = 8;
    const std::string a = run_fig2(cfg, 1);
    const std::string b = run_fig2(cfg, 2);
    const std::string c = run_fig2(cfg, 2);
    CHECK(a == b);
    CHECK(b == c);
  }

  TEST_CASE("noise replicas differ across trials but respect the seed") {
    ExperimentConfig cfg = small_config();
    cfg.noise_rates = {1e-3};
    cfg.trials = 20;
    cfg.d_max = 6;
    const Fig2Data first = compute_fig2(cfg, 1);
    const Fig2Data second = compute_fig2(cfg, 1);
    CHECK(first.cells[0][5].statistic_energy ==
          second.cells[0][5].statistic_energy);

    cfg.seed = 43;
    const Fig2Data moved = compute_fig2(cfg, 1);
    CHECK(first.cells[0][5].statistic_energy !=
          moved.cells[0][5].statistic_energy);
  }

  TEST_CASE("fig3 queries and depth table") {
    ExperimentConfig cfg = ExperimentConfig::from_json_string(R"({
      "lattices": [{"rows": 2, "cols": 2, "j1": 1.0, "j2": 0.5}],
      "noise_rates": [1e-3],
      "trials": 10,
      "seed": 7,
      "threshold_family": "spin"
    })");
    const Fig3Data data = compute_fig3(cfg, 1);
    REQUIRE(data.rows.size() == 1);
    CHECK(data.rows[0].depth == 5);  // built-in depth for 2x2
    // depth * 2*depth moments * 1/eta^2 shots
    CHECK(data.rows[0].total_queries == doctest::Approx(2.0 * 25.0 * 1e6));
    CHECK(data.rows[0].error_code.empty());

    const std::string csv = render_fig3_csv(data);
    CHECK(csv.rfind("lattice,eta,depth,error_per_site,total_queries,"
                    "error_code\n", 0) == 0);

    ExperimentConfig bad = cfg;
    bad.noise_rates = {0.0};
    CHECK_THROWS_AS(compute_fig3(bad, 1), DomainError);

    ExperimentConfig unknown = cfg;
    unknown.fig3_lattices[0].rows = 1;  // "1x2" has no default depth
    unknown.fig3_lattices[0].cols = 2;
    CHECK_THROWS_AS(compute_fig3(unknown, 1), DomainError);
    unknown.depth_overrides["1x2"] = 4;
    CHECK(compute_fig3(unknown, 1).rows[0].depth == 4);
  }

  TEST_CASE("doubling the noise roughly doubles the converged error") {
    ExperimentConfig cfg = ExperimentConfig::from_json_string(R"({
      "lattices": [{"rows": 2, "cols": 2, "j1": 1.0, "j2": 0.5}],
      "noise_rates": [2e-3, 1e-3],
      "trials": 40,
      "seed": 11,
      "threshold_family": "spin"
    })");
    const Fig3Data data = compute_fig3(cfg, 2);
    REQUIRE(data.rows.size() == 2);
    const double ratio =
        data.rows[0].error_per_site / data.rows[1].error_per_site;
    CHECK(ratio > 1.2);
    CHECK(ratio < 3.5);
  }

  TEST_CASE("file-backed models need an explicit basis-index state") {
    CHECK_THROWS_AS(
        build_model(ExperimentConfig::from_json_string(
            R"({"model": {"file": "/nonexistent/h.txt"}})")),
        DomainError);
  }

  TEST_CASE("external Hamiltonian files run through the whole pipeline") {
    // Stand-in for a molecular input: a two-qubit sum loaded from text,
    // solved with the molecule threshold family.
    const std::string path = "/tmp/qkrylov_test_ext.txt";
    {
      std::ofstream out(path);
      out << "# external input\n"
             "0.35 ZI\n"
             "0.35 IZ\n"
             "-0.20 XX\n"
             "0.10 YY\n";
    }
    ExperimentConfig cfg = ExperimentConfig::from_json_string(R"({
      "model": {"file": ")" + path + R"("},
      "initial_state": {"basis_index": 3},
      "d_max": 6,
      "noise_rates": [0.0, 1e-4],
      "trials": 5,
      "seed": 21,
      "threshold_family": "molecule"
    })");
    const ModelBundle bundle = build_model(cfg);
    CHECK(bundle.h.n_qubits() == 2);
    CHECK(bundle.h.scale() == doctest::Approx(1.0));
    CHECK(bundle.label == "file");

    const Fig2Data data = compute_fig2(cfg, 1);
    CHECK(data.thresholds[1] == doctest::Approx(50.0 * 1e-4));
    // D = 6 spans the 4-dim space: noiseless error at numerical zero.
    CHECK(data.cells[0][5].error_per_site <= 1e-9);
  }
}
