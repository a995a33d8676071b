#pragma once

#include <vector>

#include "mlext/tensor.hpp"

namespace mlext {

/// Element of the sign group G_m^n: the diagonal matrix diag(x^j) built from m
/// cube vertices. Stored by its canonical factors (factors 1..m-1 start with
/// +1) together with the diagonal itself.
class GroupElement {
 public:
  /// Canonicalizes `factors`; all must share one dimension.
  static GroupElement from_factors(std::vector<Vertex> factors);
  /// The element whose diagonal is `diagonal`. Throws DomainError when the
  /// diagonal is not in V_m^n.
  static GroupElement from_diagonal(const TensorVector& diagonal);
  static GroupElement identity(Shape shape);

  Shape shape() const { return diagonal_.shape(); }
  const std::vector<Vertex>& factors() const { return factors_; }
  const TensorVector& diagonal() const { return diagonal_; }
  bool is_identity() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.diagonal_ == b.diagonal_; }

 private:
  GroupElement(std::vector<Vertex> factors, TensorVector diagonal)
      : factors_(std::move(factors)), diagonal_(std::move(diagonal)) {}

  std::vector<Vertex> factors_;
  TensorVector diagonal_;
};

/// Brings factors into canonical form without changing omega(factors).
std::vector<Vertex> canonicalize_factors(std::vector<Vertex> factors);

GroupElement compose(const GroupElement& g, const GroupElement& h);

/// Coordinatewise multiplication by g's diagonal.
TensorVector act(const GroupElement& g, const TensorVector& v);
FormVector act(const GroupElement& g, const FormVector& a);

/// The unique g with act(g, from) == to. Both must lie in V_m^n.
GroupElement transporter(const TensorVector& from, const TensorVector& to);

/// All of G_m^n, ordered by the canonical order of the diagonals.
std::vector<GroupElement> enumerate_group(Shape shape, std::size_t coordinate_budget = kDefaultCoordinateBudget);

}  // namespace mlext
