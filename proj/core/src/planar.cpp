#include <algorithm>
#include <string>

#include "internal.hpp"
#include "mlext/search.hpp"

namespace mlext {

ExtremeSet planar_extreme_points(int m, const SearchOptions& options) {
  const Shape shape = make_shape(m, 2);
  const std::size_t dim = shape.dimension();
  if (dim > options.budget.max_dimension || dim >= 63) {
    throw ResourceError("2^m = " + std::to_string(dim) + " exceeds the search budget");
  }
  const std::uint64_t count = std::uint64_t{1} << dim;
  if (count > options.budget.max_points) {
    throw ResourceError("2^(2^m) = " + std::to_string(count) + " points exceed the point budget");
  }

  // Rows omega(x) for x in {(1,1), (-1,1)}^m.
  const std::vector<Vertex> beta{Vertex({1, 1}), Vertex({-1, 1})};
  std::vector<TensorVector> rows;
  for (std::size_t code = 0; code < dim; ++code) {
    std::vector<Vertex> factors;
    for (int i = 0; i < m; ++i) factors.push_back(beta[(code >> i) & 1U]);
    rows.push_back(omega(factors));
  }
  const BasisMatrix basis = BasisMatrix::from_rows(std::move(rows));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const std::int64_t expected = i == j ? static_cast<std::int64_t>(dim) : 0;
      if (inner(basis.rows[i], basis.rows[j]) != expected)
        throw InvariantViolation("planar basis rows are not mutually orthogonal");
    }
  }

  // a = H^t f / 2^m; f with a negative anchor entry is -(H^t (-f)) / 2^m.
  std::vector<detail::ScaledPoint> scaled(count);
  detail::parallel_for(count, std::max(1U, options.workers), [&](std::size_t t, unsigned) {
    detail::ScaledPoint& p = scaled[t];
    p.den = static_cast<std::int64_t>(dim);
    p.nums.assign(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      const bool negative = (t >> i) & 1U;
      for (std::size_t k = 0; k < dim; ++k) p.nums[k] += (basis.rows[i][k] > 0) != negative ? 1 : -1;
    }
    detail::reduce(p);
  });

  std::vector<FormVector> points;
  points.reserve(count);
  std::vector<Provenance> records;
  const GroupElement id = GroupElement::identity(shape);
  const GroupElement minus_id = [&] {
    std::vector<Vertex> factors(static_cast<std::size_t>(m), Vertex::ones(2));
    factors.front() = factors.front().negated();
    return GroupElement::from_factors(std::move(factors));
  }();
  for (std::uint64_t t = 0; t < count; ++t) {
    points.push_back(detail::to_form(shape, scaled[t]));
    if (options.record_provenance) {
      // Anchor entry +1: the sign bits above bit 0 give the index directly.
      // Anchor entry -1: the same point is -(solution for -f).
      const bool flipped = t & 1U;
      const std::uint64_t bits = flipped ? (~t & (count - 1)) : t;
      records.push_back(Provenance{basis.indices, SignVector::from_index(dim, bits >> 1), flipped ? minus_id : id});
    }
  }
  if (options.record_provenance) return ExtremeSet(shape, std::move(points), std::move(records));
  return ExtremeSet(shape, std::move(points));
}

}  // namespace mlext
