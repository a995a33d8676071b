#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "mlext/errors.hpp"
#include "mlext/group.hpp"
#include "mlext/tensor.hpp"

namespace mlext {

// ---------------------------------------------------------------------------
// Budgets, options and resumable state
// ---------------------------------------------------------------------------

struct SearchBudget {
  /// Largest n^m the exact basis search accepts.
  std::size_t max_dimension = 24;
  /// Largest number of points a planar enumeration may materialize.
  std::size_t max_points = std::size_t{1} << 20;
  /// Cap on |V_m^n| * n^m stored coordinates.
  std::size_t coordinate_budget = kDefaultCoordinateBudget;
  /// Work items processed per call: bases for enumerate_anchored_bases,
  /// (basis, sign vector) pairs for extreme_points.
  std::uint64_t max_work_items = std::numeric_limits<std::uint64_t>::max();
};

/// Which anchored bases are visited.
enum class BasisMode {
  /// Every basis drawn from V_m^n, sign variants of a row counted separately.
  all_signs,
  /// One basis per choice of lines {v, -v}; each non-anchor row is taken with
  /// first coordinate +1. Negating a row only negates the matching entry of
  /// the right-hand side, so the solution sets coincide with all_signs.
  sign_classes,
};

struct SearchOptions {
  SearchBudget budget;
  BasisMode mode = BasisMode::sign_classes;
  unsigned workers = 1;
  bool record_provenance = false;
};

class ExtremeSet;

/// Where an interrupted search continues. The cursor basis is identified by
/// its row positions in the canonical V_m^n order.
struct ResumeState {
  Shape shape;
  BasisMode mode = BasisMode::sign_classes;
  std::uint64_t bases_completed = 0;
  std::vector<std::size_t> basis_cursor;
  std::uint64_t sign_cursor = 0;
  /// Distinct in-ball solutions collected before the interruption.
  std::vector<FormVector> partial;
};

/// Thrown when SearchBudget::max_work_items runs out; carries the state
/// needed to continue the same search.
class BudgetExhausted : public ResourceError {
 public:
  explicit BudgetExhausted(ResumeState state);

  const ResumeState& state() const noexcept { return state_; }

 private:
  ResumeState state_;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Invertible matrix whose rows are distinct elements of V_m^n, including
/// omega(e, ..., e), sorted in canonical order (anchor first).
struct BasisMatrix {
  Shape shape;
  /// Row positions in enumerate_tensor_vertices(shape), ascending.
  std::vector<std::size_t> indices;
  std::vector<TensorVector> rows;
  std::size_t anchor_position = 0;

  /// Validates and sorts arbitrary rows. Throws DomainError when a row is not
  /// in V_m^n, rows repeat, the anchor is missing or the rows are dependent.
  static BasisMatrix from_rows(std::vector<TensorVector> rows);
};

/// Right-hand side f in {-1, +1}^(n^m); the anchor entry is fixed to +1.
class SignVector {
 public:
  explicit SignVector(std::vector<Sign> signs);

  /// Bit k of `index` set means entry k + 1 is -1.
  static SignVector from_index(std::size_t length, std::uint64_t index);

  std::size_t size() const { return signs_.size(); }
  Sign operator[](std::size_t i) const { return signs_[i]; }
  std::span<const Sign> signs() const { return signs_; }
  std::uint64_t index() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<Sign> signs_;
};

/// How a point of an ExtremeSet was first produced.
struct Provenance {
  std::vector<std::size_t> basis;
  SignVector signs;
  GroupElement element;
};

/// Deduplicated extreme points of the unit ball, sorted by the coordinatewise
/// rational order.
class ExtremeSet {
 public:
  ExtremeSet(Shape shape, std::vector<FormVector> points, bool complete = true);
  ExtremeSet(Shape shape, std::vector<FormVector> points, std::vector<Provenance> provenance);

  Shape shape() const { return shape_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<FormVector>& points() const { return points_; }
  const FormVector& operator[](std::size_t i) const { return points_[i]; }
  /// Empty unless provenance was recorded; otherwise parallel to points().
  const std::vector<Provenance>& provenance() const { return provenance_; }
  /// False for sets known to hold only part of the extreme points.
  bool complete() const { return complete_; }
  bool contains(const FormVector& point) const;

  friend bool operator==(const ExtremeSet& a, const ExtremeSet& b) {
    return a.shape_ == b.shape_ && a.points_ == b.points_;
  }

 private:
  Shape shape_;
  std::vector<FormVector> points_;
  std::vector<Provenance> provenance_;
  bool complete_ = true;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Visits every anchored basis once, rows in canonical order, in
/// lexicographic order of their row positions. Dependent prefixes are pruned
/// by incremental exact elimination.
void enumerate_anchored_bases(Shape shape, const SearchOptions& options,
                              const std::function<void(const BasisMatrix&)>& visit,
                              const ResumeState* resume = nullptr);

std::vector<BasisMatrix> anchored_bases(Shape shape, const SearchOptions& options = {});

/// Exact a with H a^t = f^t.
FormVector solve_anchored_system(const BasisMatrix& basis, const SignVector& signs);

struct BallCheck {
  bool inside = true;
  /// max over V_m^n of |<a, v>|.
  Rational norm;
  /// First v in canonical order attaining the norm; set when outside.
  std::optional<TensorVector> witness;
};

BallCheck in_unit_ball(const FormVector& a);

/// Sup norm of the form: max over V_m^n of |<a, v>|.
Rational form_norm(const FormVector& a);

/// {act(g, a) : g in G_m^n}, deduplicated and sorted.
std::vector<FormVector> orbit(const FormVector& a);

/// Full constructive pipeline: anchored bases, sign vectors, unit-ball filter,
/// orbit expansion. `resume` continues an interrupted run.
ExtremeSet extreme_points(Shape shape, const SearchOptions& options = {}, const ResumeState* resume = nullptr);

/// n = 2 fast path: the anchored basis is the Walsh-Hadamard matrix, so every
/// sign vector yields an extreme point a = H^t f / 2^m.
ExtremeSet planar_extreme_points(int m, const SearchOptions& options = {});

struct ExtremalityCertificate {
  bool extreme = false;
  bool in_ball = true;
  Rational norm;
  std::size_t rank = 0;
  std::size_t dimension = 0;
  /// Every v in V_m^n with |<a, v>| = 1 (canonical order).
  std::vector<TensorVector> tight;
  /// Maximal independent subset of `tight`.
  std::vector<TensorVector> basis;
  /// For in-ball points that are not extreme: a = (first + second) / 2.
  std::optional<std::pair<FormVector, FormVector>> midpoint_witness;
  /// For points outside the ball: a v with |<a, v>| > 1.
  std::optional<TensorVector> violation;
};

ExtremalityCertificate is_extreme(const FormVector& a);

/// Independent oracle: vertex enumeration of {a : |<a, v>| <= 1 for v in
/// V_m^n} by trying every n^m-subset of constraints and every sign pattern.
/// Only for n^m <= 9 and small subset counts.
ExtremeSet brute_force_vertices(Shape shape, std::uint64_t max_subsets = 5'000'000);

}  // namespace mlext
