#include <algorithm>
#include <set>
#include <string>

#include "mlext/linalg.hpp"
#include "mlext/search.hpp"

namespace mlext {

namespace {

// Every omega(x) over all m-tuples of cube vertices, duplicates removed by
// value; deliberately independent of the canonical-representative enumerator.
std::vector<TensorVector> all_constraints(Shape shape) {
  const auto n = static_cast<std::size_t>(shape.n);
  const auto m = static_cast<std::size_t>(shape.m);
  std::vector<Vertex> cube;
  for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
    std::vector<Sign> coords(n);
    for (std::size_t s = 0; s < n; ++s) coords[s] = ((code >> s) & 1U) ? Sign{-1} : Sign{1};
    cube.emplace_back(std::move(coords));
  }
  std::set<std::vector<Sign>> seen;
  std::vector<TensorVector> out;
  std::vector<std::size_t> pick(m, 0);
  while (true) {
    std::vector<Vertex> factors;
    for (std::size_t i : pick) factors.push_back(cube[i]);
    TensorVector v = omega(factors);
    if (seen.insert(std::vector<Sign>(v.coords().begin(), v.coords().end())).second) out.push_back(std::move(v));
    std::size_t pos = 0;
    while (pos < m && ++pick[pos] == cube.size()) pick[pos++] = 0;
    if (pos == m) break;
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  long double out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (out > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(out + 0.5L);
}

}  // namespace

ExtremeSet brute_force_vertices(Shape shape, std::uint64_t max_subsets) {
  shape = make_shape(shape.m, shape.n);
  const std::size_t dim = shape.dimension();
  if (dim > 9) throw ResourceError("brute-force vertex enumeration is limited to n^m <= 9");
  const auto constraints = all_constraints(shape);
  if (binomial(constraints.size(), dim, max_subsets) > max_subsets) {
    throw ResourceError("brute-force vertex enumeration would visit more than " + std::to_string(max_subsets) +
                        " constraint subsets");
  }

  std::set<FormVector> found;
  std::vector<std::size_t> subset(dim);
  for (std::size_t i = 0; i < dim; ++i) subset[i] = i;
  while (true) {
    RationalMatrix matrix;
    for (std::size_t i : subset) matrix.emplace_back(constraints[i].coords().begin(), constraints[i].coords().end());
    if (auto inv = inverse(matrix)) {
      for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << dim); ++pattern) {
        std::vector<Rational> a(dim);
        for (std::size_t r = 0; r < dim; ++r) {
          for (std::size_t k = 0; k < dim; ++k) {
            if ((pattern >> k) & 1U) {
              a[r] -= (*inv)[r][k];
            } else {
              a[r] += (*inv)[r][k];
            }
          }
        }
        FormVector point(shape, std::move(a));
        const bool feasible = std::all_of(constraints.begin(), constraints.end(),
                                          [&](const TensorVector& v) { return abs(inner(point, v)) <= 1; });
        if (feasible) found.insert(std::move(point));
      }
    }
    // Next dim-subset in lexicographic order.
    std::size_t pos = dim;
    while (pos > 0 && subset[pos - 1] == constraints.size() - dim + pos - 1) --pos;
    if (pos == 0) break;
    ++subset[pos - 1];
    for (std::size_t k = pos; k < dim; ++k) subset[k] = subset[k - 1] + 1;
  }
  return ExtremeSet(shape, std::vector<FormVector>(found.begin(), found.end()));
}

}  // namespace mlext
