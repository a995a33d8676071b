#include "mlext/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>

#include "internal.hpp"
#include "mlext/linalg.hpp"

namespace mlext {

BudgetExhausted::BudgetExhausted(ResumeState state)
    : ResourceError("work budget exhausted after " + std::to_string(state.bases_completed) + " bases"),
      state_(std::move(state)) {}

// SignVector ----------------------------------------------------------------

SignVector::SignVector(std::vector<Sign> signs) : signs_(std::move(signs)) {
  if (signs_.empty()) throw DomainError("empty sign vector");
  for (Sign s : signs_) {
    if (s != 1 && s != -1) throw DomainError("sign vector entry is not +-1");
  }
  if (signs_.front() != 1) throw DomainError("sign vector: anchor entry must be +1");
}

SignVector SignVector::from_index(std::size_t length, std::uint64_t index) {
  if (length == 0 || length > 64) throw DomainError("sign vector length out of range");
  if (length - 1 < 64 && (index >> (length - 1)) != 0) throw DomainError("sign vector index out of range");
  std::vector<Sign> signs(length, Sign{1});
  for (std::size_t k = 0; k + 1 < length; ++k) {
    if ((index >> k) & 1U) signs[k + 1] = -1;
  }
  return SignVector(std::move(signs));
}

std::uint64_t SignVector::index() const {
  std::uint64_t out = 0;
  for (std::size_t k = 1; k < signs_.size(); ++k) {
    if (signs_[k] < 0) out |= std::uint64_t{1} << (k - 1);
  }
  return out;
}

// ExtremeSet ----------------------------------------------------------------

ExtremeSet::ExtremeSet(Shape shape, std::vector<FormVector> points, bool complete)
    : shape_(shape), points_(std::move(points)), complete_(complete) {
  for (const auto& p : points_) require_same_shape(shape_, p.shape(), "extreme set");
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

ExtremeSet::ExtremeSet(Shape shape, std::vector<FormVector> points, std::vector<Provenance> provenance)
    : shape_(shape) {
  if (points.size() != provenance.size()) throw DimensionError("provenance must parallel the points");
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  for (std::size_t i : order) {
    require_same_shape(shape_, points[i].shape(), "extreme set");
    if (!points_.empty() && points_.back() == points[i]) continue;
    points_.push_back(std::move(points[i]));
    provenance_.push_back(std::move(provenance[i]));
  }
}

bool ExtremeSet::contains(const FormVector& point) const {
  return std::binary_search(points_.begin(), points_.end(), point);
}

// BasisMatrix ---------------------------------------------------------------

BasisMatrix BasisMatrix::from_rows(std::vector<TensorVector> rows) {
  if (rows.empty()) throw DomainError("basis needs rows");
  const Shape shape = rows.front().shape();
  const auto& vertices = detail::tensor_vertices(shape, kDefaultCoordinateBudget);
  if (rows.size() != shape.dimension()) throw DomainError("basis must have n^m rows");
  BasisMatrix out;
  out.shape = shape;
  for (const auto& row : rows) {
    require_same_shape(shape, row.shape(), "basis rows");
    auto it = std::lower_bound(vertices.begin(), vertices.end(), row, canonical_less);
    if (it == vertices.end() || !(*it == row)) throw DomainError("basis row is not in V_m^n");
    out.indices.push_back(static_cast<std::size_t>(it - vertices.begin()));
  }
  std::sort(out.indices.begin(), out.indices.end());
  if (std::adjacent_find(out.indices.begin(), out.indices.end()) != out.indices.end())
    throw DomainError("basis rows repeat");
  if (out.indices.front() != 0) throw DomainError("basis does not contain omega(e, ..., e)");
  SignRowSpace space(shape.dimension());
  for (std::size_t i : out.indices) {
    if (!space.insert(vertices[i].coords())) throw DomainError("basis rows are linearly dependent");
    out.rows.push_back(vertices[i]);
  }
  return out;
}

// Basis enumeration ---------------------------------------------------------

namespace {

__extension__ using i128 = __int128;

std::vector<std::size_t> basis_candidates(const std::vector<TensorVector>& vertices, BasisMode mode) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (mode == BasisMode::all_signs || vertices[i][0] > 0) out.push_back(i);
  }
  return out;
}

void check_dimension(Shape shape, const SearchBudget& budget) {
  if (shape.dimension() > budget.max_dimension) {
    throw ResourceError("n^m = " + std::to_string(shape.dimension()) + " exceeds the search budget of " +
                        std::to_string(budget.max_dimension));
  }
}

// Depth-first search over index tuples (0, c_1 < c_2 < ... < c_{N-1}) in
// lexicographic order. `visit` returns false to stop. With a cursor, tuples
// lexicographically below it are skipped.
class BasisWalker {
 public:
  BasisWalker(const std::vector<TensorVector>& vertices, std::vector<std::size_t> candidates, std::size_t dimension)
      : vertices_(vertices), candidates_(std::move(candidates)), dimension_(dimension) {}

  void run(const std::vector<std::size_t>& cursor, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    if (!cursor.empty() && (cursor.size() != dimension_ || cursor.front() != 0 ||
                            !std::is_sorted(cursor.begin(), cursor.end(), std::less_equal<>()) ||
                            cursor.back() >= vertices_.size()))
      throw DomainError("resume cursor does not describe an anchored basis");
    cursor_ = cursor;
    visit_ = &visit;
    stopped_ = false;
    tuple_.assign(1, 0);
    spaces_.assign(1, SignRowSpace(dimension_));
    spaces_.front().insert(vertices_.front().coords());
    descend(0, !cursor_.empty());
  }

 private:
  void descend(std::size_t first_candidate, bool on_cursor) {
    if (tuple_.size() == dimension_) {
      if (!(*visit_)(tuple_)) stopped_ = true;
      return;
    }
    const std::size_t depth = tuple_.size();
    const std::size_t needed = dimension_ - depth;
    for (std::size_t c = first_candidate; c + needed <= candidates_.size() && !stopped_; ++c) {
      const std::size_t index = candidates_[c];
      bool still_on = false;
      if (on_cursor) {
        if (index < cursor_[depth]) continue;
        still_on = index == cursor_[depth];
      }
      SignRowSpace space = spaces_.back();
      if (!space.insert(vertices_[index].coords())) continue;
      tuple_.push_back(index);
      spaces_.push_back(std::move(space));
      descend(c + 1, still_on);
      spaces_.pop_back();
      tuple_.pop_back();
      if (on_cursor) on_cursor = false;
    }
  }

  const std::vector<TensorVector>& vertices_;
  std::vector<std::size_t> candidates_;
  std::size_t dimension_;
  std::vector<std::size_t> cursor_;
  const std::function<bool(const std::vector<std::size_t>&)>* visit_ = nullptr;
  bool stopped_ = false;
  std::vector<std::size_t> tuple_;
  std::vector<SignRowSpace> spaces_;
};

BasisMatrix make_basis(Shape shape, const std::vector<TensorVector>& vertices, const std::vector<std::size_t>& tuple) {
  BasisMatrix basis;
  basis.shape = shape;
  basis.indices = tuple;
  basis.rows.reserve(tuple.size());
  for (std::size_t i : tuple) basis.rows.push_back(vertices[i]);
  return basis;
}

}  // namespace

void enumerate_anchored_bases(Shape shape, const SearchOptions& options,
                              const std::function<void(const BasisMatrix&)>& visit, const ResumeState* resume) {
  shape = make_shape(shape.m, shape.n);
  check_dimension(shape, options.budget);
  const auto& vertices = detail::tensor_vertices(shape, options.budget.coordinate_budget);
  if (resume && !(resume->shape == shape && resume->mode == options.mode))
    throw DomainError("resume state belongs to a different search");

  BasisWalker walker(vertices, basis_candidates(vertices, options.mode), shape.dimension());
  std::uint64_t yielded = 0;
  const std::uint64_t already = resume ? resume->bases_completed : 0;
  std::optional<ResumeState> interrupted;
  walker.run(resume ? resume->basis_cursor : std::vector<std::size_t>{}, [&](const std::vector<std::size_t>& tuple) {
    if (yielded == options.budget.max_work_items) {
      interrupted = ResumeState{shape, options.mode, already + yielded, tuple, 0, {}};
      return false;
    }
    visit(make_basis(shape, vertices, tuple));
    ++yielded;
    return true;
  });
  if (interrupted) throw BudgetExhausted(std::move(*interrupted));
}

std::vector<BasisMatrix> anchored_bases(Shape shape, const SearchOptions& options) {
  std::vector<BasisMatrix> out;
  enumerate_anchored_bases(shape, options, [&](const BasisMatrix& b) { out.push_back(b); });
  return out;
}

// Solving and the unit-ball test --------------------------------------------

FormVector solve_anchored_system(const BasisMatrix& basis, const SignVector& signs) {
  if (signs.size() != basis.rows.size()) throw DimensionError("sign vector length differs from n^m");
  std::vector<Rational> rhs(signs.signs().begin(), signs.signs().end());
  auto solution = solve(to_rational_matrix(basis.rows), rhs);
  if (!solution) throw DomainError("basis matrix is singular");
  FormVector a(basis.shape, std::move(*solution));
  for (std::size_t i = 0; i < basis.rows.size(); ++i) {
    if (inner(a, basis.rows[i]) != signs[i]) throw InvariantViolation("anchored solve failed substitution check");
  }
  return a;
}

BallCheck in_unit_ball(const FormVector& a) {
  const auto& vertices = detail::tensor_vertices(a.shape(), kDefaultCoordinateBudget);
  BallCheck out;
  std::size_t best = 0;
  if (auto scaled = detail::scale(a)) {
    std::int64_t best_abs = -1;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < scaled->nums.size(); ++k) s += vertices[i][k] > 0 ? scaled->nums[k] : -scaled->nums[k];
      if (std::llabs(s) > best_abs) {
        best_abs = std::llabs(s);
        best = i;
      }
    }
    out.norm = Rational(mpz_class(static_cast<long>(best_abs)), mpz_class(static_cast<long>(scaled->den)));
    out.norm.canonicalize();
  } else {
    out.norm = -1;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      Rational value = abs(inner(a, vertices[i]));
      if (value > out.norm) {
        out.norm = value;
        best = i;
      }
    }
  }
  out.inside = out.norm <= 1;
  if (!out.inside) out.witness = vertices[best];
  return out;
}

Rational form_norm(const FormVector& a) { return in_unit_ball(a).norm; }

std::vector<FormVector> orbit(const FormVector& a) {
  std::vector<FormVector> out;
  for (const auto& v : detail::tensor_vertices(a.shape(), kDefaultCoordinateBudget)) {
    out.push_back(act(GroupElement::from_diagonal(v), a));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// The constructive pipeline -------------------------------------------------

namespace {

// Origin of a solution: (basis ordinal, sign index, group index); the
// smallest tuple wins so that provenance is independent of scheduling.
struct Origin {
  std::uint64_t basis = 0;
  std::uint64_t signs = 0;
  std::uint64_t element = 0;

  friend auto operator<=>(const Origin&, const Origin&) = default;
};

using SolutionMap = std::map<detail::ScaledPoint, Origin>;

void keep_first(SolutionMap& map, detail::ScaledPoint key, Origin origin) {
  auto [it, inserted] = map.emplace(std::move(key), origin);
  if (!inserted && origin < it->second) it->second = origin;
}

struct WorkItem {
  std::uint64_t ordinal = 0;
  std::vector<std::size_t> tuple;
  std::uint64_t sign_begin = 0;
  std::uint64_t sign_end = 0;
};

// Solves H a = f for every f in the item's sign range and keeps the solutions
// inside the unit ball. Works with integers: H^-1 = A / D.
void process_item(const WorkItem& item, Shape shape, const std::vector<TensorVector>& vertices,
                  const std::vector<std::size_t>& lines, SolutionMap& out) {
  const std::size_t dim = shape.dimension();
  std::vector<TensorVector> rows;
  rows.reserve(dim);
  for (std::size_t i : item.tuple) rows.push_back(vertices[i]);
  auto inv = inverse(to_rational_matrix(rows));
  if (!inv) throw InvariantViolation("enumerated basis is singular");

  mpz_class den = 1;
  for (const auto& row : *inv)
    for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  if (!den.fits_slong_p()) throw ResourceError("basis determinant exceeds 64-bit arithmetic");
  const std::int64_t D = den.get_si();
  std::vector<std::int64_t> adj(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      mpz_class v = (*inv)[i][k].get_num() * (den / (*inv)[i][k].get_den());
      if (!v.fits_slong_p()) throw ResourceError("adjugate exceeds 64-bit arithmetic");
      adj[i * dim + k] = v.get_si();
    }
  }
  // weights[l][k] = (v_l A)_k so that <a, v_l> = weights[l] . f / D.
  std::vector<std::int64_t> weights(lines.size() * dim, 0);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto& v = vertices[lines[l]];
    for (std::size_t k = 0; k < dim; ++k) {
      i128 s = 0;
      for (std::size_t i = 0; i < dim; ++i) s += v[i] * static_cast<i128>(adj[i * dim + k]);
      if (s > INT64_MAX / 64 || s < -(INT64_MAX / 64)) throw ResourceError("constraint weights exceed 64-bit arithmetic");
      weights[l * dim + k] = static_cast<std::int64_t>(s);
    }
  }

  std::vector<Sign> f(dim, Sign{1});
  for (std::uint64_t t = item.sign_begin; t < item.sign_end; ++t) {
    for (std::size_t k = 1; k < dim; ++k) f[k] = ((t >> (k - 1)) & 1U) ? Sign{-1} : Sign{1};
    bool feasible = true;
    for (std::size_t l = 0; l < lines.size() && feasible; ++l) {
      const std::int64_t* w = &weights[l * dim];
      std::int64_t s = 0;
      for (std::size_t k = 0; k < dim; ++k) s += f[k] > 0 ? w[k] : -w[k];
      feasible = std::llabs(s) <= D;
    }
    if (!feasible) continue;
    detail::ScaledPoint point;
    point.den = D;
    point.nums.assign(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < dim; ++k) s += f[k] > 0 ? adj[i * dim + k] : -adj[i * dim + k];
      point.nums[i] = s;
    }
    for (std::size_t r = 0; r < dim; ++r) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < dim; ++i) s += rows[r][i] > 0 ? point.nums[i] : -point.nums[i];
      if (s != D * f[r]) throw InvariantViolation("anchored solve failed substitution check");
    }
    detail::reduce(point);
    keep_first(out, std::move(point), Origin{item.ordinal, t, 0});
  }
}

void process_batch(std::vector<WorkItem>& batch, Shape shape, const std::vector<TensorVector>& vertices,
                   const std::vector<std::size_t>& lines, unsigned workers, SolutionMap& solutions) {
  if (batch.empty()) return;
  std::vector<SolutionMap> partial(std::max(1U, workers));
  detail::parallel_for(batch.size(), workers,
                       [&](std::size_t i, unsigned w) { process_item(batch[i], shape, vertices, lines, partial[w]); });
  for (auto& part : partial) {
    for (auto& [key, origin] : part) keep_first(solutions, key, origin);
  }
  batch.clear();
}

}  // namespace

ExtremeSet extreme_points(Shape shape, const SearchOptions& options, const ResumeState* resume) {
  shape = make_shape(shape.m, shape.n);
  check_dimension(shape, options.budget);
  if (shape.dimension() > 63) throw ResourceError("sign vectors longer than 64 entries are not supported");
  if (resume && !(resume->shape == shape && resume->mode == options.mode))
    throw DomainError("resume state belongs to a different search");

  const auto& vertices = detail::tensor_vertices(shape, options.budget.coordinate_budget);
  const auto lines = detail::line_positions(vertices);
  const std::size_t dim = shape.dimension();
  const std::uint64_t signs_per_basis = std::uint64_t{1} << (dim - 1);
  const unsigned workers = std::max(1U, options.workers);
  const bool provenance = options.record_provenance && resume == nullptr;

  SolutionMap solutions;
  if (resume) {
    for (const auto& p : resume->partial) {
      auto scaled = detail::scale(p);
      if (!scaled || !(p.shape() == shape)) throw DomainError("resume state holds an unusable partial point");
      keep_first(solutions, std::move(*scaled), Origin{});
    }
  }

  std::vector<std::vector<std::size_t>> tuples;  // for provenance
  std::vector<WorkItem> batch;
  const std::size_t batch_size = 64 * workers;
  std::uint64_t remaining = options.budget.max_work_items;
  std::uint64_t ordinal = resume ? resume->bases_completed : 0;
  std::optional<ResumeState> interrupted;

  BasisWalker walker(vertices, basis_candidates(vertices, options.mode), dim);
  const std::vector<std::size_t> cursor = resume ? resume->basis_cursor : std::vector<std::size_t>{};
  walker.run(cursor, [&](const std::vector<std::size_t>& tuple) {
    const std::uint64_t begin = (resume && tuple == cursor) ? resume->sign_cursor : 0;
    if (remaining == 0) {
      interrupted = ResumeState{shape, options.mode, ordinal, tuple, begin, {}};
      return false;
    }
    const std::uint64_t end = std::min(signs_per_basis, begin + std::min(remaining, signs_per_basis));
    remaining -= end - begin;
    batch.push_back(WorkItem{ordinal, tuple, begin, end});
    if (provenance) tuples.push_back(tuple);
    if (end < signs_per_basis) {
      interrupted = ResumeState{shape, options.mode, ordinal, tuple, end, {}};
      return false;
    }
    ++ordinal;
    if (batch.size() >= batch_size) process_batch(batch, shape, vertices, lines, workers, solutions);
    return true;
  });
  process_batch(batch, shape, vertices, lines, workers, solutions);

  if (interrupted) {
    for (const auto& [key, origin] : solutions) interrupted->partial.push_back(detail::to_form(shape, key));
    throw BudgetExhausted(std::move(*interrupted));
  }

  // Orbit expansion under G_m^n; the group is indexed by the canonical order
  // of its diagonals, which is the order of `vertices`.
  SolutionMap expanded;
  for (const auto& [key, origin] : solutions) {
    for (std::size_t g = 0; g < vertices.size(); ++g) {
      detail::ScaledPoint image = key;
      for (std::size_t k = 0; k < dim; ++k) {
        if (vertices[g][k] < 0) image.nums[k] = -image.nums[k];
      }
      keep_first(expanded, std::move(image), Origin{origin.basis, origin.signs, g});
    }
  }

  std::vector<FormVector> points;
  points.reserve(expanded.size());
  std::vector<Provenance> records;
  for (const auto& [key, origin] : expanded) {
    points.push_back(detail::to_form(shape, key));
    if (provenance) {
      records.push_back(Provenance{tuples[origin.basis], SignVector::from_index(dim, origin.signs),
                                   GroupElement::from_diagonal(vertices[origin.element])});
    }
  }
  if (provenance) return ExtremeSet(shape, std::move(points), std::move(records));
  return ExtremeSet(shape, std::move(points));
}

}  // namespace mlext
