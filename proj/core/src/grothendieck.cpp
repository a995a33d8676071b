#include "mlext/grothendieck.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "internal.hpp"
#include "mlext/seed.hpp"

namespace mlext {

namespace {

using Matrix = std::vector<std::vector<double>>;
using Vectors = std::vector<std::vector<double>>;

Matrix to_matrix(const FormVector& bilinear) {
  const auto k = static_cast<std::size_t>(bilinear.shape().n);
  Matrix out(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out[i][j] = bilinear[i * k + j].get_d();
  return out;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double objective(const Matrix& t, const Vectors& x, const Vectors& y) {
  double value = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[i][j] == 0.0) continue;
      double dot = 0.0;
      for (std::size_t r = 0; r < x[i].size(); ++r) dot += x[i][r] * y[j][r];
      value += t[i][j] * dot;
    }
  }
  return value;
}

// Sets target_i = normalize(sum_j w(i, j) source_j) and returns
// sum_i |sum_j w(i, j) source_j|, the exact maximum over the target side.
template <class Weight>
double half_step(std::size_t count, const Vectors& source, Vectors& target, Weight weight) {
  const std::size_t d = source.front().size();
  double value = 0.0;
  std::vector<double> image(d);
  for (std::size_t i = 0; i < count; ++i) {
    std::fill(image.begin(), image.end(), 0.0);
    for (std::size_t j = 0; j < source.size(); ++j) {
      const double w = weight(i, j);
      if (w == 0.0) continue;
      for (std::size_t r = 0; r < d; ++r) image[r] += w * source[j][r];
    }
    const double len = norm(image);
    value += len;
    if (len > 0.0) {
      for (std::size_t r = 0; r < d; ++r) target[i][r] = image[r] / len;
    }
  }
  return value;
}

SphereConfig alternate(const Matrix& t, Vectors x, Vectors y, const SphereSearchOptions& options) {
  const std::size_t k = t.size();
  double previous = objective(t, x, y);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double after_x = half_step(k, y, x, [&](std::size_t i, std::size_t j) { return t[i][j]; });
    const double after_y = half_step(k, x, y, [&](std::size_t j, std::size_t i) { return t[i][j]; });
    const double slack = 1e-9 * std::max(1.0, std::abs(previous));
    if (after_x < previous - slack || after_y < after_x - slack)
      throw InvariantViolation("alternating maximization decreased the objective");
    const bool converged = after_y - previous <= options.tolerance * std::max(1.0, std::abs(after_y));
    previous = after_y;
    if (converged) break;
  }
  SphereConfig out{std::move(x), std::move(y), 0.0};
  out.value = objective(t, out.x_vectors, out.y_vectors);
  return out;
}

Vectors random_unit_vectors(std::size_t count, std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vectors out(count, std::vector<double>(d));
  for (auto& v : out) {
    double len = 0.0;
    while (len < 1e-8) {
      for (auto& c : v) c = gauss(rng);
      len = norm(v);
    }
    for (auto& c : v) c /= len;
  }
  return out;
}

Vectors unit_e1(std::size_t count, std::size_t d) {
  Vectors out(count, std::vector<double>(d, 0.0));
  for (auto& v : out) v[0] = 1.0;
  return out;
}

// d = 1: max over s, t in {-1,+1}^k of s^T T t, in exact integer arithmetic.
SphereConfig exact_signs(const FormVector& bilinear) {
  const auto k = static_cast<std::size_t>(bilinear.shape().n);
  auto scaled = detail::scale(bilinear);
  if (!scaled) throw ResourceError("form coefficients exceed 64-bit arithmetic");
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::uint64_t best_t = 0;
  // t_0 = +1 suffices: (s, t) and (-s, -t) give the same value.
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (k - 1)); ++code) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t row = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const bool negative = j > 0 && ((code >> (j - 1)) & 1U);
        row += negative ? -scaled->nums[i * k + j] : scaled->nums[i * k + j];
      }
      total += std::llabs(row);
    }
    if (total > best) {
      best = total;
      best_t = code;
    }
  }
  SphereConfig out;
  out.y_vectors.resize(k);
  out.x_vectors.resize(k);
  for (std::size_t j = 0; j < k; ++j)
    out.y_vectors[j] = {j > 0 && ((best_t >> (j - 1)) & 1U) ? -1.0 : 1.0};
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t row = 0;
    for (std::size_t j = 0; j < k; ++j)
      row += out.y_vectors[j][0] > 0 ? scaled->nums[i * k + j] : -scaled->nums[i * k + j];
    out.x_vectors[i] = {row >= 0 ? 1.0 : -1.0};
  }
  const Rational exact(mpz_class(static_cast<long>(best)), mpz_class(static_cast<long>(scaled->den)));
  out.value = Rational(exact).get_d();
  return out;
}

void require_bilinear(const FormVector& form) {
  if (form.shape().m != 2) throw DomainError("expected a bilinear form (m = 2)");
}

}  // namespace

double sphere_objective(const FormVector& bilinear, const SphereConfig& config) {
  require_bilinear(bilinear);
  return objective(to_matrix(bilinear), config.x_vectors, config.y_vectors);
}

SphereConfig inner_sphere_max(const FormVector& bilinear, int d, const SphereSearchOptions& options) {
  require_bilinear(bilinear);
  if (d < 1) throw DomainError("sphere dimension must be positive");
  if (options.restarts < 1) throw DomainError("at least one restart is required");
  const auto k = static_cast<std::size_t>(bilinear.shape().n);
  const auto dim = static_cast<std::size_t>(d);

  if (bilinear.is_zero()) return SphereConfig{unit_e1(k, dim), unit_e1(k, dim), 0.0};

  if (d == 1 && static_cast<int>(k) <= options.exact_sign_limit) {
    auto exact = exact_signs(bilinear);
    exact.value = std::max(exact.value, 0.0);
    return exact;
  }

  const Matrix t = to_matrix(bilinear);
  SphereConfig best;
  best.value = -std::numeric_limits<double>::infinity();
  if (d > 1) {
    // Warm start from the optimum one dimension down, embedded by a zero coordinate.
    SphereConfig lower = inner_sphere_max(bilinear, d - 1, options);
    for (auto& v : lower.x_vectors) v.push_back(0.0);
    for (auto& v : lower.y_vectors) v.push_back(0.0);
    best = lower;
    SphereConfig refined = alternate(t, std::move(lower.x_vectors), std::move(lower.y_vectors), options);
    if (refined.value > best.value) best = std::move(refined);
  }
  for (int r = 0; r < options.restarts; ++r) {
    auto rng = make_generator(options.seed, "sphere-restart-d" + std::to_string(d), static_cast<std::uint64_t>(r));
    Vectors y = random_unit_vectors(k, dim, rng);
    Vectors x(k, std::vector<double>(dim, 0.0));
    half_step(k, y, x, [&](std::size_t i, std::size_t j) { return t[i][j]; });
    for (auto& v : x) {
      if (norm(v) == 0.0) v[0] = 1.0;
    }
    SphereConfig candidate = alternate(t, std::move(x), std::move(y), options);
    if (candidate.value > best.value) best = std::move(candidate);
  }
  return best;
}

ConstantReport kg_lower_bound(int m, int d, const ExtremeSet& set, const SphereSearchOptions& options,
                              unsigned workers) {
  if (!(set.shape() == make_shape(2, m)))
    throw DomainError("kg_lower_bound expects extreme points of bilinear forms on R^" + std::to_string(m));
  if (set.empty()) throw DomainError("kg_lower_bound over an empty set");
  std::vector<double> values(set.size());
  detail::parallel_for(set.size(), std::max(1U, workers), [&](std::size_t i, unsigned) {
    SphereSearchOptions local = options;
    local.seed = derive_seed(options.seed, "kg-form", i);
    values[i] = inner_sphere_max(set[i], d, local).value;
  });
  std::size_t argmax = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[argmax]) argmax = i;
  }
  ConstantReport report;
  report.name = "kg_lower_bound";
  report.m = m;
  report.n = m;
  report.d = d;
  report.value = values[argmax];
  report.argmax = set[argmax];
  std::string note = d == 1 && m <= options.exact_sign_limit
                         ? "exact inner maximum (sign enumeration)"
                         : "lower bound (alternating maximization, " + std::to_string(options.restarts) +
                               " restarts, seed " + std::to_string(options.seed) + ")";
  if (!set.complete()) note += "; over a partial extreme set";
  report.exact_note = note;
  return report;
}

ExtremeSet padded_extreme_subset(const ExtremeSet& small, int n) {
  if (small.shape().m != 2) throw DomainError("padding is defined for bilinear forms");
  const int k = small.shape().n;
  if (n < k) throw DomainError("cannot pad to a smaller dimension");
  const Shape shape = make_shape(2, n);

  // Every injection [k] -> [n], as the list of target coordinates.
  std::vector<std::vector<int>> injections;
  std::vector<int> current;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void()> extend = [&] {
    if (static_cast<int>(current.size()) == k) {
      injections.push_back(current);
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      used[static_cast<std::size_t>(c)] = true;
      current.push_back(c);
      extend();
      current.pop_back();
      used[static_cast<std::size_t>(c)] = false;
    }
  };
  extend();

  // Coordinate injections on either side preserve the norm and the rank of
  // the tight set, and the image is closed under G_2^n because `small` is
  // closed under G_2^k.
  std::vector<FormVector> points;
  for (const auto& p : small.points()) {
    for (const auto& rows : injections) {
      for (const auto& cols : injections) {
        std::vector<Rational> coeffs(shape.dimension());
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            coeffs[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)] * n + cols[static_cast<std::size_t>(j)])] =
                p[static_cast<std::size_t>(i * k + j)];
        points.emplace_back(shape, std::move(coeffs));
      }
    }
  }
  ExtremeSet out(shape, std::move(points), false);
  for (const auto& p : out.points()) {
    if (!is_extreme(p).extreme) throw InvariantViolation("padded form is not extreme");
  }
  return out;
}

}  // namespace mlext
