#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qkrylov/errors.hpp"

namespace qkrylov {

/// Signed Pauli operator in binary-symplectic form. The represented operator
/// is sign * prod_j i^{x_j z_j} X_j^{x_j} Z_j^{z_j}, which is Hermitian with
/// eigenvalues +-1 (the per-qubit i^{xz} phase turns each XZ into Y).
///
/// Qubit 0 is the leftmost character of the string form, i.e. qubit q lives
/// at bit (n-1-q) of the masks, so the mask bits read in the same order as
/// the string and as the binary expansion of a basis-state index.
class PauliTerm {
 public:
  static constexpr int kMaxQubits = 64;

  PauliTerm(int n_qubits, std::uint64_t x_bits, std::uint64_t z_bits,
            int sign = +1);

  static PauliTerm identity(int n_qubits);

  /// Term from axis characters, e.g. "XIZ"; Y sets both the x and z bit.
  static PauliTerm from_axes(std::string_view axes, int sign = +1);

  /// Single-site operator: axis in {X, Y, Z} acting on `qubit`.
  static PauliTerm single_site(int n_qubits, int qubit, char axis);

  /// Same axis on two distinct sites (the XX / YY / ZZ couplings).
  static PauliTerm two_site(int n_qubits, int qubit_a, int qubit_b, char axis);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_bits() const { return x_bits_; }
  std::uint64_t z_bits() const { return z_bits_; }
  int sign() const { return sign_; }

  bool is_identity() const { return x_bits_ == 0 && z_bits_ == 0; }

  PauliTerm with_sign(int sign) const {
    return PauliTerm(n_qubits_, x_bits_, z_bits_, sign);
  }

  /// i^{popcount(x & z) mod 4}: the phase that makes every stored term
  /// Hermitian.
  std::complex<double> hermitian_phase() const;

  /// Axis characters without the sign, e.g. "XIZY".
  std::string to_string() const;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;

  /// Orders by (x, z, sign); gives PauliSum a deterministic term order.
  friend bool operator<(const PauliTerm& a, const PauliTerm& b) {
    if (a.x_bits_ != b.x_bits_) return a.x_bits_ < b.x_bits_;
    if (a.z_bits_ != b.z_bits_) return a.z_bits_ < b.z_bits_;
    return a.sign_ < b.sign_;
  }

 private:
  std::uint64_t x_bits_;
  std::uint64_t z_bits_;
  int sign_;
  int n_qubits_;
};

/// Parses one Hamiltonian line `<coefficient> <pauli-string>`.
/// `line_number` is only used to report errors.
std::pair<double, PauliTerm> pauli_parse(std::string_view line,
                                         int line_number = 1);

class PauliSum;

/// Normalized sum of `n_terms` distinct random terms with signed random
/// coefficients; deterministic in the seed. Ensemble generator for the
/// verification verbs and tests.
PauliSum random_pauli_sum(int n_qubits, int n_terms, std::uint64_t seed);

/// l1-normalized Pauli-sum Hamiltonian: H_phys = scale * sum_i coeff_i P_i
/// with coeff_i >= 0, sum_i coeff_i = 1, and signs living in the terms.
/// The normalized operator has spectrum inside [-1, 1].
class PauliSum {
 public:
  struct WeightedTerm {
    double coeff;  // nonnegative, normalized
    PauliTerm term;
  };

  /// Builds the normalized sum from physical-unit signed terms. Terms with
  /// equal (x, z) are merged by signed addition first; exact cancellations
  /// are dropped. Throws EmptyHamiltonian if nothing survives and
  /// QubitMismatch if qubit counts disagree.
  static PauliSum normalize(
      const std::vector<std::pair<double, PauliTerm>>& raw_terms);

  /// Reads the Hamiltonian text format: one `<coefficient> <pauli-string>`
  /// per line, `#` starts a comment, blank lines ignored.
  static PauliSum from_text(std::istream& in);
  static PauliSum from_file(const std::string& path);

  /// Writes the same text format with physical-unit signed coefficients.
  std::string to_text() const;

  int n_qubits() const { return n_qubits_; }
  const std::vector<WeightedTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  double scale() const { return scale_; }

  /// Sum of normalized coefficients; equals 1 up to rounding.
  double coeff_sum() const;

 private:
  PauliSum(int n_qubits, std::vector<WeightedTerm> terms, double scale)
      : terms_(std::move(terms)), scale_(scale), n_qubits_(n_qubits) {}

  std::vector<WeightedTerm> terms_;
  double scale_;
  int n_qubits_;
};

}  // namespace qkrylov
