#include "qkrylov/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace qkrylov {

namespace {

constexpr double kPi = 3.14159265358979323846;

// T_d on the whole real line: cos branch inside [-1, 1], cosh branches
// outside (where |T_d| grows without oscillating).
double chebyshev_t(int d, double y) {
  if (y >= 1.0) return std::cosh(d * std::acosh(y));
  if (y <= -1.0) {
    const double magnitude = std::cosh(d * std::acosh(-y));
    return d % 2 == 0 ? magnitude : -magnitude;
  }
  return std::cos(d * std::acos(y));
}

}  // namespace

double theorem2_bound(const BoundParams& p, int k) {
  if (k < 0) throw DomainError("theorem2_bound: k must be nonnegative");
  if (p.delta <= 0.0) throw DomainError("theorem2_bound: delta must be > 0");
  if (p.epsilon < 0.0 || p.eps_total < 0.0)
    throw DomainError("theorem2_bound: thresholds must be nonnegative");
  const double root = 2.0 * std::sqrt((k + 1) * p.epsilon);
  if (p.gamma0 <= root)
    throw DenominatorInvalid(
        "theorem2_bound: gamma0 <= 2 sqrt((k+1) epsilon); bound is vacuous");
  const double denom = (p.gamma0 - root) * (p.gamma0 - root);
  const double decay = std::pow(1.0 + 0.5 * p.delta, -2.0 * (k / 2));
  const double numer = std::sqrt(p.delta) * p.eps_total +
                       (1.0 - p.gamma * p.gamma + 4.0 * p.eps_total) * decay;
  return p.delta + 8.0 * numer / denom;
}

double lemma2_chi(const BoundParams& p, double s_norm) {
  if (p.epsilon <= 0.0) throw DomainError("lemma2_chi: epsilon must be > 0");
  if (p.rho <= 0.0) throw DomainError("lemma2_chi: rho must be > 0");
  if (s_norm < 0.0) throw DomainError("lemma2_chi: |S| must be nonnegative");
  return 3.0 * (2.0 + p.mu_const) * (1.0 + 1.0 / p.rho) *
             std::pow(s_norm / p.epsilon, p.alpha) * p.eta_s +
         p.eta_h;
}

double noise_bound(const BoundParams& p, double chi) {
  const double d = static_cast<double>(p.d);
  return kPi * d * d * d * d * chi;
}

double ResidualPoly::operator()(double x) const {
  return beta * chebyshev_t(d, (b + a - 2.0 * x) / (b - a));
}

ResidualPoly residual_poly(double a, double b, int d) {
  if (!(0.0 < a && a < b))
    throw DomainError("residual_poly: need 0 < a < b");
  if (d < 1) throw DomainError("residual_poly: degree must be >= 1");
  ResidualPoly p;
  p.a = a;
  p.b = b;
  p.d = d;
  p.beta = 1.0 / chebyshev_t(d, (b + a) / (b - a));
  return p;
}

double g_bound(double delta, int k) {
  if (!(0.0 < delta && delta < 0.25))
    throw DomainError("g_bound: valid only for 0 < delta < 1/4");
  if (k < 0) throw DomainError("g_bound: k must be nonnegative");
  const double root = std::sqrt(delta);
  return 2.0 * root + 8.0 * (1.0 - (2.0 / kPi) * root) *
                          std::pow(1.0 + 0.5 * delta, -2.0 * (k / 2));
}

namespace {

void check_unit_interval(double value, const char* name) {
  if (!(value > 0.0 && value <= 1.0))
    throw DomainError(std::string(name) + " must lie in (0, 1]");
}

}  // namespace

long long required_dimension(double gamma0, double err, double gap) {
  check_unit_interval(gamma0, "gamma0");
  check_unit_interval(err, "err");
  check_unit_interval(gap, "gap");
  const double d = (std::log(1.0 / gamma0) + std::log(1.0 / err)) *
                   std::min(1.0 / err, 1.0 / gap);
  if (d >= 9e18) throw DomainError("required_dimension overflows");
  return std::max(1LL, static_cast<long long>(std::ceil(d)));
}

double measurement_budget(double gamma0, double err, double gap) {
  check_unit_interval(gamma0, "gamma0");
  check_unit_interval(err, "err");
  check_unit_interval(gap, "gap");
  const double g4 = gamma0 * gamma0 * gamma0 * gamma0;
  return (1.0 / (err * err) + 1.0 / (err * g4)) *
         std::min(1.0 / err, 1.0 / gap);
}

GateCostReport gate_costs(int n, int t, EncodingScheme scheme) {
  if (t < 1) throw DomainError("gate_costs: need t >= 1");
  GateCostReport report;
  report.scheme = scheme;
  report.n = n;
  report.t = t;
  const long long ln = n, lt = t;
  if (scheme == EncodingScheme::binary_index) {
    if (n < 1) throw DomainError("gate_costs: need n >= 1");
    int aux = 0;
    while ((1LL << aux) < lt) ++aux;
    report.aux_qubits = aux;
    report.u.controlled = ln * lt;
    report.g.controlled = 2 * lt;
    report.r.controlled = 4 * lt;
  } else {
    if (n < 3)
      throw DomainError("gate_costs: symplectic G/R formulas need n >= 3");
    report.aux_qubits = 2 * n;
    report.counting_qubits = 6;
    report.u.two_qubit = 3 * ln + lt;
    report.g.two_qubit = 4 * ln * ln - 10 * ln;
    report.g.single_qubit = 2;
    report.r.two_qubit = 8 * ln * ln + 14;
    report.r.single_qubit = 4;
  }
  return report;
}

long long coherent_depth(int n, int t, int d) {
  if (n < 1 || t < 1 || d < 1)
    throw DomainError("coherent_depth: need n, t, d >= 1");
  const long long ln = n, lt = t, ld = d;
  return (ld - 1) * ln * lt + 4 * ld * lt;
}

}  // namespace qkrylov
