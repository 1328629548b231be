#include "qkrylov/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qkrylov/rng.hpp"

namespace qkrylov {

namespace {

std::uint64_t qubit_mask(int n_qubits, int qubit) {
  return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

}  // namespace

PauliTerm::PauliTerm(int n_qubits, std::uint64_t x_bits, std::uint64_t z_bits,
                     int sign)
    : x_bits_(x_bits), z_bits_(z_bits), sign_(sign), n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw DomainError("PauliTerm: qubit count must be in [1, 64], got " +
                      std::to_string(n_qubits));
  if (sign != 1 && sign != -1)
    throw DomainError("PauliTerm: sign must be +1 or -1");
  if (n_qubits < kMaxQubits) {
    const std::uint64_t valid = (std::uint64_t{1} << n_qubits) - 1;
    if ((x_bits & ~valid) || (z_bits & ~valid))
      throw DomainError("PauliTerm: mask bits outside the qubit range");
  }
}

PauliTerm PauliTerm::identity(int n_qubits) {
  return PauliTerm(n_qubits, 0, 0, +1);
}

PauliTerm PauliTerm::from_axes(std::string_view axes, int sign) {
  const int n = static_cast<int>(axes.size());
  if (n == 0) throw DomainError("PauliTerm: empty axis string");
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    switch (axes[q]) {
      case 'I':
        break;
      case 'X':
        x |= qubit_mask(n, q);
        break;
      case 'Y':
        x |= qubit_mask(n, q);
        z |= qubit_mask(n, q);
        break;
      case 'Z':
        z |= qubit_mask(n, q);
        break;
      default:
        throw DomainError(std::string("PauliTerm: invalid axis character '") +
                          axes[q] + "'");
    }
  }
  return PauliTerm(n, x, z, sign);
}

PauliTerm PauliTerm::single_site(int n_qubits, int qubit, char axis) {
  if (qubit < 0 || qubit >= n_qubits)
    throw DomainError("PauliTerm: qubit index out of range");
  std::string axes(static_cast<std::size_t>(n_qubits), 'I');
  axes[static_cast<std::size_t>(qubit)] = axis;
  return from_axes(axes);
}

PauliTerm PauliTerm::two_site(int n_qubits, int qubit_a, int qubit_b,
                              char axis) {
  if (qubit_a == qubit_b)
    throw DomainError("PauliTerm: two_site needs distinct qubits");
  if (qubit_a < 0 || qubit_a >= n_qubits || qubit_b < 0 || qubit_b >= n_qubits)
    throw DomainError("PauliTerm: qubit index out of range");
  std::string axes(static_cast<std::size_t>(n_qubits), 'I');
  axes[static_cast<std::size_t>(qubit_a)] = axis;
  axes[static_cast<std::size_t>(qubit_b)] = axis;
  return from_axes(axes);
}

std::complex<double> PauliTerm::hermitian_phase() const {
  switch (std::popcount(x_bits_ & z_bits_) & 3) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

std::string PauliTerm::to_string() const {
  std::string out(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) {
    const std::uint64_t m = qubit_mask(n_qubits_, q);
    const bool x = x_bits_ & m, z = z_bits_ & m;
    if (x && z)
      out[static_cast<std::size_t>(q)] = 'Y';
    else if (x)
      out[static_cast<std::size_t>(q)] = 'X';
    else if (z)
      out[static_cast<std::size_t>(q)] = 'Z';
  }
  return out;
}

std::pair<double, PauliTerm> pauli_parse(std::string_view line,
                                         int line_number) {
  std::size_t pos = 0;
  auto skip_spaces = [&] {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
      ++pos;
  };

  skip_spaces();
  if (pos == line.size())
    throw ParseError("empty term line", line_number, 0);

  std::size_t num_end = pos;
  while (num_end < line.size() &&
         !std::isspace(static_cast<unsigned char>(line[num_end])))
    ++num_end;
  double coeff = 0.0;
  const auto [ptr, ec] =
      std::from_chars(line.data() + pos, line.data() + num_end, coeff);
  if (ec != std::errc{} || ptr != line.data() + num_end)
    throw ParseError("expected a coefficient", line_number,
                     static_cast<int>(pos) + 1);

  pos = num_end;
  skip_spaces();
  if (pos == line.size())
    throw ParseError("missing Pauli string after coefficient", line_number,
                     static_cast<int>(pos) + 1);

  std::size_t str_end = pos;
  while (str_end < line.size() &&
         !std::isspace(static_cast<unsigned char>(line[str_end])))
    ++str_end;
  const std::string_view axes = line.substr(pos, str_end - pos);
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const char c = axes[i];
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw ParseError(std::string("invalid Pauli character '") + c + "'",
                       line_number, static_cast<int>(pos + i) + 1);
  }
  if (axes.size() > PauliTerm::kMaxQubits)
    throw ParseError("Pauli string longer than 64 qubits", line_number,
                     static_cast<int>(pos) + 1);

  std::size_t tail = str_end;
  while (tail < line.size() && std::isspace(static_cast<unsigned char>(line[tail])))
    ++tail;
  if (tail != line.size())
    throw ParseError("trailing characters after Pauli string", line_number,
                     static_cast<int>(tail) + 1);

  return {coeff, PauliTerm::from_axes(axes)};
}

PauliSum random_pauli_sum(int n_qubits, int n_terms, std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > PauliTerm::kMaxQubits)
    throw DomainError("random_pauli_sum: bad qubit count");
  const std::uint64_t mask = n_qubits == 64
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << n_qubits) - 1;
  if (n_terms < 1 ||
      (n_qubits < 32 &&
       static_cast<std::uint64_t>(n_terms) > (mask + 1) * (mask + 1)))
    throw DomainError("random_pauli_sum: bad term count");
  RandomStream rng(seed);
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> chosen;
  while (chosen.size() < static_cast<std::size_t>(n_terms)) {
    const std::uint64_t x = rng.next_u64() & mask;
    const std::uint64_t z = rng.next_u64() & mask;
    if (chosen.count({x, z})) continue;
    double coeff = 2.0 * rng.next_uniform() - 1.0;
    if (coeff == 0.0) coeff = 0.5;
    chosen[{x, z}] = coeff;
  }
  std::vector<std::pair<double, PauliTerm>> raw;
  raw.reserve(chosen.size());
  for (const auto& [key, coeff] : chosen)
    raw.emplace_back(coeff, PauliTerm(n_qubits, key.first, key.second));
  return PauliSum::normalize(raw);
}

PauliSum PauliSum::normalize(
    const std::vector<std::pair<double, PauliTerm>>& raw_terms) {
  if (raw_terms.empty()) throw EmptyHamiltonian("no terms given");

  const int n = raw_terms.front().second.n_qubits();
  // Merge by (x, z) with signed addition; the map keeps a canonical order.
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> merged;
  for (const auto& [coeff, term] : raw_terms) {
    if (term.n_qubits() != n)
      throw QubitMismatch("terms act on " + std::to_string(n) + " and " +
                          std::to_string(term.n_qubits()) + " qubits");
    merged[{term.x_bits(), term.z_bits()}] += coeff * term.sign();
  }

  double scale = 0.0;
  for (const auto& [key, value] : merged) scale += std::abs(value);
  if (scale == 0.0)
    throw EmptyHamiltonian("all coefficients are zero after merging");

  std::vector<WeightedTerm> terms;
  terms.reserve(merged.size());
  for (const auto& [key, value] : merged) {
    if (value == 0.0) continue;
    const int sign = value < 0.0 ? -1 : +1;
    terms.push_back(
        {std::abs(value) / scale, PauliTerm(n, key.first, key.second, sign)});
  }
  return PauliSum(n, std::move(terms), scale);
}

PauliSum PauliSum::from_text(std::istream& in) {
  std::vector<std::pair<double, PauliTerm>> raw;
  std::string line;
  int line_number = 0;
  int n_qubits = -1;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const bool blank = std::all_of(line.begin(), line.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c));
    });
    if (blank) continue;
    auto [coeff, term] = pauli_parse(line, line_number);
    if (n_qubits < 0) n_qubits = term.n_qubits();
    if (term.n_qubits() != n_qubits)
      throw ParseError("Pauli string length differs from previous lines",
                       line_number, 0);
    raw.emplace_back(coeff, term);
  }
  return normalize(raw);
}

PauliSum PauliSum::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open Hamiltonian file: " + path);
  return from_text(in);
}

std::string PauliSum::to_text() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [coeff, term] : terms_)
    out << coeff * scale_ * term.sign() << ' ' << term.to_string() << '\n';
  return out.str();
}

double PauliSum::coeff_sum() const {
  double sum = 0.0;
  for (const auto& wt : terms_) sum += wt.coeff;
  return sum;
}

}  // namespace qkrylov
