#include "internal.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>

#include "mlext/errors.hpp"

namespace mlext::detail {

const std::vector<TensorVector>& tensor_vertices(Shape shape, std::size_t coordinate_budget) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<const std::vector<TensorVector>>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({shape.m, shape.n});
    if (it != cache.end()) {
      if (it->second->size() > coordinate_budget / shape.dimension())
        throw ResourceError("V_m^n exceeds the coordinate budget");
      return *it->second;
    }
  }
  auto computed = std::make_unique<const std::vector<TensorVector>>(enumerate_tensor_vertices(shape, coordinate_budget));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(shape.m, shape.n), std::move(computed));
  return *it->second;
}

std::vector<std::size_t> line_positions(const std::vector<TensorVector>& vertices) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i][0] > 0) out.push_back(i);
  }
  return out;
}

void reduce(ScaledPoint& p) {
  if (p.den < 0) {
    p.den = -p.den;
    for (auto& x : p.nums) x = -x;
  }
  std::int64_t g = p.den;
  for (auto x : p.nums) g = std::gcd(g, x);
  if (g > 1) {
    p.den /= g;
    for (auto& x : p.nums) x /= g;
  }
}

std::optional<ScaledPoint> scale(const FormVector& a) {
  mpz_class den = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  if (!den.fits_slong_p()) return std::nullopt;
  ScaledPoint out;
  out.den = den.get_si();
  out.nums.reserve(a.size());
  for (const auto& c : a.coeffs()) {
    mpz_class num = c.get_num() * (den / c.get_den());
    if (!num.fits_slong_p()) return std::nullopt;
    out.nums.push_back(num.get_si());
  }
  // Inner products with sign vectors must stay representable.
  std::int64_t total = 0;
  for (auto x : out.nums) {
    if (__builtin_add_overflow(total, std::llabs(x), &total)) return std::nullopt;
  }
  return out;
}

FormVector to_form(Shape shape, const ScaledPoint& p) {
  std::vector<Rational> coeffs(p.nums.size());
  const mpz_class den(static_cast<long>(p.den));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    coeffs[k] = Rational(mpz_class(static_cast<long>(p.nums[k])), den);
  }
  return FormVector(shape, std::move(coeffs));
}

}  // namespace mlext::detail
