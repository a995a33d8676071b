#include "mlext/constants.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numeric>
#include <string>

#include "internal.hpp"

namespace mlext {

ConstantReport maximize_convex(const ExtremeSet& set, const ConvexFunctional& functional, std::string name,
                               unsigned workers) {
  if (set.empty()) throw DomainError("maximize_convex over an empty set");
  std::vector<double> values(set.size());
  detail::parallel_for(set.size(), std::max(1U, workers),
                       [&](std::size_t i, unsigned) { values[i] = functional(set[i]); });
  double best = values.front();
  for (double v : values) best = std::max(best, v);
  // First point in canonical order within the tie window.
  std::size_t argmax = 0;
  while (values[argmax] < best - kTieWindow * std::max(1.0, std::abs(best))) ++argmax;

  ConstantReport report;
  report.name = std::move(name);
  report.m = set.shape().m;
  report.n = set.shape().n;
  report.value = values[argmax];
  report.argmax = set[argmax];
  return report;
}

double f_lambda_power(const FormVector& a, double lambda) {
  if (!(lambda >= 1.0)) throw DomainError("f_lambda needs lambda >= 1");
  double sum = 0.0;
  for (const auto& c : a.coeffs()) {
    if (sgn(c) == 0) continue;
    sum += std::pow(std::abs(c.get_d()), lambda);
  }
  return sum;
}

double f_lambda(const FormVector& a, double lambda) { return std::pow(f_lambda_power(a, lambda), 1.0 / lambda); }

std::optional<std::string> recognize_power_of_two(double value, int max_denominator) {
  if (!(value > 0.0) || !std::isfinite(value)) return std::nullopt;
  const double exponent = std::log2(value);
  for (int q = 1; q <= max_denominator; ++q) {
    const double p = std::round(exponent * q);
    if (std::abs(std::exp2(p / q) - value) > 1e-12 * value) continue;
    const auto num = static_cast<long>(p);
    const long g = std::gcd(std::abs(num), static_cast<long>(q));
    const long rp = num / (g == 0 ? 1 : g);
    const long rq = q / (g == 0 ? 1 : g);
    if (rp == 0) return std::string("1");
    if (rq == 1) return "2^" + std::to_string(rp);
    return "2^(" + std::to_string(rp) + "/" + std::to_string(rq) + ")";
  }
  return std::nullopt;
}

namespace {

void require_matching(int m, int n, const ExtremeSet& set) {
  const Shape shape = make_shape(m, n);
  if (!(set.shape() == shape)) {
    throw DomainError("extreme set has shape (" + std::to_string(set.shape().m) + "," +
                      std::to_string(set.shape().n) + "), expected (" + std::to_string(m) + "," +
                      std::to_string(n) + ")");
  }
}

}  // namespace

ConstantReport bh_constant(int m, int n, const ExtremeSet& set, unsigned workers) {
  require_matching(m, n, set);
  const double lambda = 2.0 * m / (m + 1.0);
  // Compare sum |a_j|^lambda; the root is taken once at the end.
  ConstantReport report = maximize_convex(
      set, [lambda](const FormVector& a) { return f_lambda_power(a, lambda); }, "bh_constant", workers);
  report.lambda = lambda;
  report.value = std::pow(report.value, 1.0 / lambda);
  report.exact_note = recognize_power_of_two(report.value);
  return report;
}

ConstantReport mixed_littlewood_constant(int m, int n, const ExtremeSet& set, unsigned workers) {
  ConstantReport report = bh_constant(m, n, set, workers);
  report.name = "mixed_littlewood_constant";
  report.value *= std::exp2(1.0 / (2.0 * m));
  report.exact_note = recognize_power_of_two(report.value);
  return report;
}

double khinchin_q0() {
  static const double q0 = [] {
    // Gamma((q + 1) / 2) - sqrt(pi) / 2 changes sign once on [1, 1.9]; the
    // other root is q = 2.
    const double target = std::sqrt(M_PI) / 2.0;
    auto g = [target](double q) { return std::tgamma((q + 1.0) / 2.0) - target; };
    std::uintmax_t iterations = 200;
    auto bracket = boost::math::tools::toms748_solve(
        g, 1.0, 1.9, [](double a, double b) { return std::abs(b - a) <= 1e-13; }, iterations);
    return (bracket.first + bracket.second) / 2.0;
  }();
  return q0;
}

double khinchin_Aq(double q) {
  if (!(q > 0.0 && q <= 2.0)) throw DomainError("khinchin_Aq needs 0 < q <= 2");
  if (q >= khinchin_q0()) return std::sqrt(2.0) * std::pow(std::tgamma((1.0 + q) / 2.0) / std::sqrt(M_PI), 1.0 / q);
  return std::exp2(0.5 - 1.0 / q);
}

double two_slot_constant(int m) {
  if (m < 1) throw DomainError("two_slot_constant needs m >= 1");
  return std::exp2(1.0 - 1.0 / m);
}

}  // namespace mlext
