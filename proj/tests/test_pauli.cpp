#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "qkrylov/lattice.hpp"
#include "qkrylov/pauli.hpp"
#include "qkrylov/rng.hpp"
#include "qkrylov/state.hpp"

using namespace qkrylov;

TEST_SUITE("pauli") {
  TEST_CASE("normalize splits coefficients and scale") {
    const auto z0 = PauliTerm::single_site(2, 0, 'Z');
    const auto z1 = PauliTerm::single_site(2, 1, 'Z');
    const PauliSum h = PauliSum::normalize({{2.0, z0}, {2.0, z1}});
    REQUIRE(h.size() == 2);
    CHECK(h.scale() == doctest::Approx(4.0));
    for (const auto& [coeff, term] : h.terms())
      CHECK(coeff == doctest::Approx(0.5));
  }

  TEST_CASE("negative coefficient is absorbed into the sign") {
    const PauliSum h =
        PauliSum::normalize({{-3.0, PauliTerm::single_site(1, 0, 'X')}});
    REQUIRE(h.size() == 1);
    CHECK(h.scale() == doctest::Approx(3.0));
    CHECK(h.terms()[0].coeff == doctest::Approx(1.0));
    CHECK(h.terms()[0].term.sign() == -1);
  }

  TEST_CASE("J1=J2 2x2 lattice has 18 equal-weight terms") {
    // Brute-force coupling enumeration fixes the expected term count.
    const auto count = oracles::count_couplings_open(2, 2);
    CHECK(count.nn == 4);
    CHECK(count.nnn == 2);
    const double j = 0.7;
    const PauliSum h = build_j1j2({2, 2, j, j, Boundary::open});
    REQUIRE(h.size() == static_cast<std::size_t>(3 * (count.nn + count.nnn)));
    for (const auto& [coeff, term] : h.terms())
      CHECK(coeff == doctest::Approx(1.0 / 18.0));
    CHECK(h.scale() == doctest::Approx(18 * 0.25 * j));
  }

  TEST_CASE("duplicate terms merge by signed addition") {
    const auto x0 = PauliTerm::single_site(1, 0, 'X');
    const auto z0 = PauliTerm::single_site(1, 0, 'Z');
    const PauliSum h = PauliSum::normalize(
        {{1.0, x0}, {0.5, x0.with_sign(-1)}, {1.5, z0}});
    REQUIRE(h.size() == 2);  // X merged to +0.5, Z stays 1.5
    CHECK(h.scale() == doctest::Approx(2.0));
  }

  TEST_CASE("fully cancelled Hamiltonian raises EmptyHamiltonian") {
    const auto x0 = PauliTerm::single_site(1, 0, 'X');
    CHECK_THROWS_AS(PauliSum::normalize({{1.0, x0}, {-1.0, x0}}),
                    EmptyHamiltonian);
    CHECK_THROWS_AS(PauliSum::normalize({}), EmptyHamiltonian);
  }

  TEST_CASE("inconsistent qubit counts raise QubitMismatch") {
    CHECK_THROWS_AS(
        PauliSum::normalize({{1.0, PauliTerm::single_site(1, 0, 'X')},
                             {1.0, PauliTerm::single_site(2, 0, 'X')}}),
        QubitMismatch);
  }

  TEST_CASE("pauli_parse reads coefficient and axes") {
    SUBCASE("XZ") {
      const auto [coeff, term] = pauli_parse("0.5 XZ");
      CHECK(coeff == doctest::Approx(0.5));
      CHECK(term.x_bits() == 0b10);
      CHECK(term.z_bits() == 0b01);
      CHECK(term.sign() == 1);
    }
    SUBCASE("Y sets both bits, sign stays in the coefficient") {
      const auto [coeff, term] = pauli_parse("-0.25 YI");
      CHECK(coeff == doctest::Approx(-0.25));
      CHECK(term.x_bits() == 0b10);
      CHECK(term.z_bits() == 0b10);
      CHECK(term.sign() == 1);
    }
    SUBCASE("identity") {
      const auto [coeff, term] = pauli_parse("1.0 II");
      CHECK(coeff == doctest::Approx(1.0));
      CHECK(term.is_identity());
    }
  }

  TEST_CASE("pauli_parse reports line and column") {
    try {
      pauli_parse("0.5 XQ", 3);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
      CHECK(e.column == 6);
    }
    CHECK_THROWS_AS(pauli_parse("abc XX"), ParseError);
    CHECK_THROWS_AS(pauli_parse("1.0"), ParseError);
    CHECK_THROWS_AS(pauli_parse("1.0 XX garbage"), ParseError);
    CHECK_THROWS_AS(pauli_parse(""), ParseError);
  }

  TEST_CASE("text format round trip with comments and blanks") {
    std::istringstream in(
        "# Heisenberg pair\n"
        "\n"
        "0.5 XX  # trailing comment\n"
        "0.5 YY\n"
        "-1.0 ZZ\n");
    const PauliSum h = PauliSum::from_text(in);
    CHECK(h.n_qubits() == 2);
    CHECK(h.size() == 3);
    CHECK(h.scale() == doctest::Approx(2.0));

    std::istringstream again(h.to_text());
    const PauliSum h2 = PauliSum::from_text(again);
    REQUIRE(h2.size() == h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
      CHECK(h2.terms()[i].coeff ==
            doctest::Approx(h.terms()[i].coeff).epsilon(1e-15));
      CHECK(h2.terms()[i].term == h.terms()[i].term);
    }
  }

  TEST_CASE("apply_pauli phase conventions") {
    const StateVec zero = StateVec::basis_state(1, 0);
    const StateVec one = StateVec::basis_state(1, 1);
    const auto x = PauliTerm::from_axes("X");
    const auto y = PauliTerm::from_axes("Y");
    const auto z = PauliTerm::from_axes("Z");

    CHECK((apply_pauli(x, zero).amps() - one.amps()).norm() == 0.0);
    CHECK((apply_pauli(z, one).amps() + one.amps()).norm() == 0.0);
    const auto y_zero = apply_pauli(y, zero);
    CHECK(std::abs(y_zero.amps()[1] - std::complex<double>(0, 1)) == 0.0);
  }

  TEST_CASE("random terms square to identity and are Hermitian") {
    RandomStream rng(42);
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_u64() % 4);
      const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
      const PauliTerm p(n, rng.next_u64() & mask, rng.next_u64() & mask,
                        rng.next_u64() % 2 ? 1 : -1);
      const StateVec u = StateVec::random_state(n, rng.next_u64());
      const StateVec v = StateVec::random_state(n, rng.next_u64());

      CHECK((apply_pauli(p, apply_pauli(p, v)).amps() - v.amps()).norm() <=
            1e-12);
      const auto lhs = inner(u, apply_pauli(p, v));
      const auto rhs = std::conj(inner(v, apply_pauli(p, u)));
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }

  TEST_CASE("apply_pauli agrees with Kronecker-product matrices") {
    RandomStream rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_u64() % 4);
      const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
      const PauliTerm p(n, rng.next_u64() & mask, rng.next_u64() & mask,
                        rng.next_u64() % 2 ? 1 : -1);
      const StateVec v = StateVec::random_state(n, rng.next_u64());
      const Eigen::VectorXcd expected = oracles::dense_term(p) * v.amps();
      CHECK((apply_pauli(p, v).amps() - expected).norm() <= 1e-12);
    }
  }

  TEST_CASE("normalized sums satisfy the l1 invariants") {
    RandomStream rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 5);  // up to 6
      const PauliSum h = random_pauli_sum(
          n, 3 + static_cast<int>(rng.next_u64() % 6), rng.next_u64());
      CHECK(std::abs(h.coeff_sum() - 1.0) <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
          oracles::dense_sum(h));
      CHECK(es.eigenvalues().cwiseAbs().maxCoeff() <= 1.0 + 1e-10);
    }
  }
}
