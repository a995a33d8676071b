#include "mlext/group.hpp"

#include "mlext/errors.hpp"

namespace mlext {

std::vector<Vertex> canonicalize_factors(std::vector<Vertex> factors) {
  if (factors.empty()) throw DomainError("group element needs at least one factor");
  const int n = factors.front().dimension();
  for (const auto& f : factors) {
    if (f.dimension() != n) throw DimensionError("group element factors of different dimensions");
  }
  // Move the sign of each leading coordinate onto the last factor; the
  // product of the moved signs is 1 overall, so omega is unchanged.
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    if (factors[i][0] < 0) {
      factors[i] = factors[i].negated();
      factors.back() = factors.back().negated();
    }
  }
  return factors;
}

GroupElement GroupElement::from_factors(std::vector<Vertex> factors) {
  auto canonical = canonicalize_factors(std::move(factors));
  auto diagonal = omega(canonical);
  return GroupElement(std::move(canonical), std::move(diagonal));
}

GroupElement GroupElement::from_diagonal(const TensorVector& diagonal) {
  return GroupElement(factorize(diagonal), diagonal);
}

GroupElement GroupElement::identity(Shape shape) {
  return from_factors(std::vector<Vertex>(static_cast<std::size_t>(shape.m), Vertex::ones(shape.n)));
}

bool GroupElement::is_identity() const {
  for (Sign s : diagonal_.coords()) {
    if (s != 1) return false;
  }
  return true;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  require_same_shape(g.shape(), h.shape(), "group compose");
  std::vector<Vertex> factors;
  factors.reserve(g.factors().size());
  for (std::size_t i = 0; i < g.factors().size(); ++i) factors.push_back(g.factors()[i] * h.factors()[i]);
  return GroupElement::from_factors(std::move(factors));
}

TensorVector act(const GroupElement& g, const TensorVector& v) {
  require_same_shape(g.shape(), v.shape(), "group action");
  std::vector<Sign> out(v.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Sign>(g.diagonal()[i] * v[i]);
  return TensorVector(v.shape(), std::move(out));
}

FormVector act(const GroupElement& g, const FormVector& a) {
  require_same_shape(g.shape(), a.shape(), "group action");
  std::vector<Rational> out(a.coeffs());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (g.diagonal()[i] < 0) out[i] = -out[i];
  }
  return FormVector(a.shape(), std::move(out));
}

GroupElement transporter(const TensorVector& from, const TensorVector& to) {
  require_same_shape(from.shape(), to.shape(), "transporter");
  const auto x = factorize(from);
  const auto y = factorize(to);
  std::vector<Vertex> z;
  z.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z.push_back(x[i] * y[i]);
  return GroupElement::from_factors(std::move(z));
}

std::vector<GroupElement> enumerate_group(Shape shape, std::size_t coordinate_budget) {
  std::vector<GroupElement> out;
  for (const auto& v : enumerate_tensor_vertices(shape, coordinate_budget)) out.push_back(GroupElement::from_diagonal(v));
  return out;
}

}  // namespace mlext
