#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mlext/rational.hpp"
#include "mlext/tensor.hpp"

namespace mlext {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Incrementally maintained row space over Q. insert() reduces a candidate
/// against the current echelon rows and keeps it when it is independent.
class RationalRowSpace {
 public:
  explicit RationalRowSpace(std::size_t dimension) : dimension_(dimension) {}

  bool insert(std::span<const Rational> row);
  /// True when `row` lies in the span (does not modify the space).
  bool contains(std::span<const Rational> row) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dimension() const { return dimension_; }

 private:
  std::vector<Rational> reduce(std::span<const Rational> row) const;

  std::size_t dimension_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Row space of +-1 vectors. Up to dimension 24 the work is done modulo the
/// prime 2^61 - 1, which is exact there: every minor of a k x k sign matrix is
/// bounded by k^(k/2) < 2^61 - 1 (Hadamard). Larger dimensions fall back to
/// RationalRowSpace.
class SignRowSpace {
 public:
  explicit SignRowSpace(std::size_t dimension);

  bool insert(std::span<const Sign> row);
  std::size_t rank() const;
  std::size_t dimension() const { return dimension_; }

  static constexpr std::size_t kModularLimit = 24;

 private:
  std::size_t dimension_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
  std::optional<RationalRowSpace> fallback_;
};

/// Rank of a set of sign vectors of common length `dimension`.
std::size_t sign_rank(std::span<const TensorVector> rows, std::size_t dimension);

/// Exact inverse; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& matrix);

/// Exact solution of matrix * x = rhs; nullopt when singular.
std::optional<std::vector<Rational>> solve(const RationalMatrix& matrix, std::span<const Rational> rhs);

/// A nonzero vector z with <row, z> = 0 for every row, or nullopt when the
/// rows span Q^dimension.
std::optional<std::vector<Rational>> kernel_vector(const RationalMatrix& rows, std::size_t dimension);

RationalMatrix to_rational_matrix(std::span<const TensorVector> rows);

}  // namespace mlext
