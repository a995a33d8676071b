#include <cstdlib>

#include "internal.hpp"
#include "mlext/linalg.hpp"
#include "mlext/search.hpp"

namespace mlext {

ExtremalityCertificate is_extreme(const FormVector& a) {
  const Shape shape = a.shape();
  const std::size_t dim = shape.dimension();
  const auto& vertices = detail::tensor_vertices(shape, kDefaultCoordinateBudget);

  ExtremalityCertificate cert;
  cert.dimension = dim;

  // |<a, v>| for every v, exactly.
  std::vector<Rational> values(vertices.size());
  if (auto scaled = detail::scale(a)) {
    const mpz_class den(static_cast<long>(scaled->den));
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < dim; ++k) s += vertices[i][k] > 0 ? scaled->nums[k] : -scaled->nums[k];
      values[i] = Rational(mpz_class(static_cast<long>(std::llabs(s))), den);
      values[i].canonicalize();
    }
  } else {
    for (std::size_t i = 0; i < vertices.size(); ++i) values[i] = abs(inner(a, vertices[i]));
  }

  std::size_t argmax = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[argmax]) argmax = i;
  }
  cert.norm = values[argmax];
  cert.in_ball = cert.norm <= 1;
  if (!cert.in_ball) {
    cert.violation = vertices[argmax];
    return cert;
  }

  SignRowSpace space(dim);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (values[i] != 1) continue;
    cert.tight.push_back(vertices[i]);
    if (space.rank() < dim && space.insert(vertices[i].coords())) cert.basis.push_back(vertices[i]);
  }
  cert.rank = space.rank();
  cert.extreme = cert.rank == dim;
  if (cert.extreme) return cert;

  // Move along a direction z orthogonal to every tight v; the largest step
  // keeping all other constraints satisfied is positive.
  auto z = kernel_vector(to_rational_matrix(cert.tight), dim);
  if (!z) throw InvariantViolation("rank-deficient tight set has an empty kernel");
  const FormVector direction(shape, std::move(*z));
  std::optional<Rational> step;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Rational slope = abs(inner(direction, vertices[i]));
    if (sgn(slope) == 0) continue;
    Rational limit = (1 - values[i]) / slope;
    if (!step || limit < *step) step = limit;
  }
  if (!step || sgn(*step) <= 0) throw InvariantViolation("no admissible step for the midpoint witness");
  cert.midpoint_witness.emplace(a + (*step) * direction, a - (*step) * direction);
  return cert;
}

}  // namespace mlext
