#include "mlext/linalg.hpp"

#include <utility>

#include "mlext/errors.hpp"

namespace mlext {

// RationalRowSpace ----------------------------------------------------------
//
// Row k is zero at the pivots of rows 0..k-1 and has a unit pivot, so a
// candidate is reduced by one sequential sweep.

std::vector<Rational> RationalRowSpace::reduce(std::span<const Rational> row) const {
  if (row.size() != dimension_) throw DimensionError("row space: length mismatch");
  std::vector<Rational> cand(row.begin(), row.end());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational factor = cand[pivots_[r]];
    if (sgn(factor) == 0) continue;
    const auto& basis_row = rows_[r];
    for (std::size_t k = 0; k < dimension_; ++k) {
      if (sgn(basis_row[k]) != 0) cand[k] -= factor * basis_row[k];
    }
  }
  return cand;
}

bool RationalRowSpace::insert(std::span<const Rational> row) {
  auto cand = reduce(row);
  std::size_t pivot = 0;
  while (pivot < dimension_ && sgn(cand[pivot]) == 0) ++pivot;
  if (pivot == dimension_) return false;
  const Rational lead = cand[pivot];
  for (auto& c : cand) c /= lead;
  rows_.push_back(std::move(cand));
  pivots_.push_back(pivot);
  return true;
}

bool RationalRowSpace::contains(std::span<const Rational> row) const {
  for (const auto& c : reduce(row)) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

// SignRowSpace --------------------------------------------------------------

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const u128 prod = static_cast<u128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(prod & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
  std::uint64_t sum = lo + hi;
  if (sum >= kPrime) sum -= kPrime;
  return sum;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  while (exp > 0) {
    if (exp & 1U) out = mulmod(out, base);
    base = mulmod(base, base);
    exp >>= 1U;
  }
  return out;
}

std::uint64_t to_mod(Sign s) { return s > 0 ? 1 : kPrime - 1; }

}  // namespace

SignRowSpace::SignRowSpace(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ > kModularLimit) fallback_.emplace(dimension_);
}

bool SignRowSpace::insert(std::span<const Sign> row) {
  if (row.size() != dimension_) throw DimensionError("row space: length mismatch");
  if (fallback_) {
    std::vector<Rational> q(row.begin(), row.end());
    return fallback_->insert(q);
  }
  if (rows_.size() == dimension_) return false;
  std::vector<std::uint64_t> cand(dimension_);
  for (std::size_t k = 0; k < dimension_; ++k) cand[k] = to_mod(row[k]);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint64_t factor = cand[pivots_[r]];
    if (factor == 0) continue;
    const auto& basis_row = rows_[r];
    for (std::size_t k = 0; k < dimension_; ++k) {
      if (basis_row[k] != 0) cand[k] = submod(cand[k], mulmod(factor, basis_row[k]));
    }
  }
  std::size_t pivot = 0;
  while (pivot < dimension_ && cand[pivot] == 0) ++pivot;
  if (pivot == dimension_) return false;
  const std::uint64_t inv = powmod(cand[pivot], kPrime - 2);
  for (auto& c : cand) c = mulmod(c, inv);
  rows_.push_back(std::move(cand));
  pivots_.push_back(pivot);
  return true;
}

std::size_t SignRowSpace::rank() const { return fallback_ ? fallback_->rank() : rows_.size(); }

std::size_t sign_rank(std::span<const TensorVector> rows, std::size_t dimension) {
  SignRowSpace space(dimension);
  for (const auto& row : rows) {
    space.insert(row.coords());
    if (space.rank() == dimension) break;
  }
  return space.rank();
}

// Dense exact routines ------------------------------------------------------

std::optional<RationalMatrix> inverse(const RationalMatrix& matrix) {
  const std::size_t size = matrix.size();
  RationalMatrix work(matrix);
  RationalMatrix inv(size, std::vector<Rational>(size));
  for (std::size_t i = 0; i < size; ++i) {
    if (work[i].size() != size) throw DimensionError("inverse: matrix is not square");
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && sgn(work[pivot][col]) == 0) ++pivot;
    if (pivot == size) return std::nullopt;
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational lead = work[col][col];
    for (std::size_t k = 0; k < size; ++k) {
      work[col][k] /= lead;
      inv[col][k] /= lead;
    }
    for (std::size_t r = 0; r < size; ++r) {
      if (r == col || sgn(work[r][col]) == 0) continue;
      const Rational factor = work[r][col];
      for (std::size_t k = 0; k < size; ++k) {
        work[r][k] -= factor * work[col][k];
        inv[r][k] -= factor * inv[col][k];
      }
    }
  }
  return inv;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& matrix, std::span<const Rational> rhs) {
  if (rhs.size() != matrix.size()) throw DimensionError("solve: right-hand side length mismatch");
  auto inv = inverse(matrix);
  if (!inv) return std::nullopt;
  std::vector<Rational> out(rhs.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t k = 0; k < rhs.size(); ++k) out[i] += (*inv)[i][k] * rhs[k];
  }
  return out;
}

std::optional<std::vector<Rational>> kernel_vector(const RationalMatrix& rows, std::size_t dimension) {
  // Reduced row echelon form, then one free column.
  RationalMatrix work;
  for (const auto& row : rows) {
    if (row.size() != dimension) throw DimensionError("kernel: row length mismatch");
    work.push_back(row);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < dimension && r < work.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < work.size() && sgn(work[pivot][col]) == 0) ++pivot;
    if (pivot == work.size()) continue;
    std::swap(work[pivot], work[r]);
    const Rational lead = work[r][col];
    for (auto& c : work[r]) c /= lead;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (i == r || sgn(work[i][col]) == 0) continue;
      const Rational factor = work[i][col];
      for (std::size_t k = 0; k < dimension; ++k) work[i][k] -= factor * work[r][k];
    }
    pivot_cols.push_back(col);
    ++r;
  }
  if (pivot_cols.size() == dimension) return std::nullopt;
  std::size_t free_col = 0;
  for (std::size_t p = 0; p < pivot_cols.size() && pivot_cols[p] == free_col; ++p) ++free_col;
  std::vector<Rational> z(dimension);
  z[free_col] = 1;
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) z[pivot_cols[i]] = -work[i][free_col];
  return z;
}

RationalMatrix to_rational_matrix(std::span<const TensorVector> rows) {
  RationalMatrix out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.emplace_back(row.coords().begin(), row.coords().end());
  return out;
}

}  // namespace mlext
