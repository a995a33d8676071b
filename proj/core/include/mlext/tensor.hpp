#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mlext/rational.hpp"

namespace mlext {

using Sign = std::int8_t;

/// Degree m and dimension n of an m-linear form on R^n.
struct Shape {
  int m = 1;
  int n = 1;

  /// n^m, the length of tensor and coefficient vectors.
  std::size_t dimension() const;

  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Validates m, n >= 1 and that n^m fits in memory-addressable size.
Shape make_shape(int m, int n);

/// Throws DimensionError unless `a == b`.
void require_same_shape(const Shape& a, const Shape& b, const char* what);

/// 1-based multi-index (j_1, ..., j_m) into [n]^m.
struct MultiIndex {
  std::vector<int> entries;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Lexicographic flattening with j_1 most significant:
/// sum_k (j_k - 1) * n^(m - k).
std::size_t flatten(const MultiIndex& index, int n);

/// Inverse of flatten for a multi-index of length m.
MultiIndex unflatten(std::size_t flat, int m, int n);

/// A vertex of the cube {-1, +1}^n.
class Vertex {
 public:
  explicit Vertex(std::vector<Sign> coords);

  static Vertex ones(int n);

  int dimension() const { return static_cast<int>(coords_.size()); }
  Sign operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Sign> coords() const { return coords_; }

  Vertex negated() const;
  /// Componentwise product.
  friend Vertex operator*(const Vertex& a, const Vertex& b);

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;

 private:
  std::vector<Sign> coords_;
};

/// omega(x) for m cube vertices: coords[flatten(j)] = prod_i x_i^(j_i).
class TensorVector {
 public:
  TensorVector(Shape shape, std::vector<Sign> coords);

  Shape shape() const { return shape_; }
  std::size_t size() const { return coords_.size(); }
  Sign operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Sign> coords() const { return coords_; }

  TensorVector negated() const;

  friend bool operator==(const TensorVector&, const TensorVector&) = default;

 private:
  Shape shape_;
  std::vector<Sign> coords_;
};

/// Canonical order on tensor vectors: lexicographic with +1 ranked before -1,
/// so omega(e, ..., e) is the smallest element.
bool canonical_less(const TensorVector& a, const TensorVector& b);

/// Coefficient vector (a_j) of an m-linear form, indexed by flatten(j).
class FormVector {
 public:
  FormVector(Shape shape, std::vector<Rational> coeffs);

  static FormVector zero(Shape shape);

  Shape shape() const { return shape_; }
  std::size_t size() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  FormVector negated() const;
  bool is_zero() const;

  friend FormVector operator+(const FormVector& a, const FormVector& b);
  friend FormVector operator-(const FormVector& a, const FormVector& b);
  friend FormVector operator*(const Rational& s, const FormVector& a);

  friend bool operator==(const FormVector& a, const FormVector& b);
  /// Coordinatewise rational lexicographic order.
  friend std::strong_ordering operator<=>(const FormVector& a, const FormVector& b);

 private:
  Shape shape_;
  std::vector<Rational> coeffs_;
};

/// omega(x_1, ..., x_m). All vertices must share one dimension.
TensorVector omega(std::span<const Vertex> factors);

/// Exact <a, v>.
Rational inner(const FormVector& a, const TensorVector& v);
/// Exact <u, v>; equals the product of the factor inner products.
std::int64_t inner(const TensorVector& u, const TensorVector& v);

/// Default cap on |V_m^n| * n^m stored coordinates.
inline constexpr std::size_t kDefaultCoordinateBudget = std::size_t{1} << 26;

/// The set V_m^n in canonical order, each element once. Its size is
/// 2^(nm - m + 1). Throws ResourceError when the coordinate budget is exceeded.
std::vector<TensorVector> enumerate_tensor_vertices(Shape shape,
                                                    std::size_t coordinate_budget = kDefaultCoordinateBudget);

/// log2 |V_m^n| = nm - m + 1.
int log2_tensor_vertex_count(Shape shape);

/// Canonical factors of v: factors 1..m-1 have first coordinate +1.
/// Throws DomainError when v is not in V_m^n.
std::vector<Vertex> factorize(const TensorVector& v);

}  // namespace mlext
