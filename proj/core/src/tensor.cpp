#include "mlext/tensor.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mlext/errors.hpp"

namespace mlext {

std::size_t Shape::dimension() const {
  std::size_t out = 1;
  for (int i = 0; i < m; ++i) out *= static_cast<std::size_t>(n);
  return out;
}

Shape make_shape(int m, int n) {
  if (m < 1 || n < 1) throw DomainError("m and n must be positive");
  std::size_t size = 1;
  for (int i = 0; i < m; ++i) {
    if (size > std::numeric_limits<std::uint32_t>::max() / static_cast<std::size_t>(n))
      throw ResourceError("n^m does not fit the addressable range");
    size *= static_cast<std::size_t>(n);
  }
  return Shape{m, n};
}

void require_same_shape(const Shape& a, const Shape& b, const char* what) {
  if (!(a == b)) {
    throw DimensionError(std::string(what) + ": shape (" + std::to_string(a.m) + "," + std::to_string(a.n) +
                         ") vs (" + std::to_string(b.m) + "," + std::to_string(b.n) + ")");
  }
}

std::size_t flatten(const MultiIndex& index, int n) {
  std::size_t flat = 0;
  for (int j : index.entries) {
    if (j < 1 || j > n) throw InvalidIndexError("multi-index entry " + std::to_string(j) + " outside [1, n]");
    flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(j - 1);
  }
  return flat;
}

MultiIndex unflatten(std::size_t flat, int m, int n) {
  const Shape shape = make_shape(m, n);
  if (flat >= shape.dimension()) throw InvalidIndexError("flat index out of range");
  MultiIndex out{std::vector<int>(static_cast<std::size_t>(m))};
  for (int k = m - 1; k >= 0; --k) {
    out.entries[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(n)) + 1;
    flat /= static_cast<std::size_t>(n);
  }
  return out;
}

namespace {

void require_signs(std::span<const Sign> coords, const char* what) {
  for (Sign s : coords) {
    if (s != 1 && s != -1) throw DomainError(std::string(what) + ": coordinate is not +-1");
  }
}

}  // namespace

// Vertex --------------------------------------------------------------------

Vertex::Vertex(std::vector<Sign> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("vertex of dimension 0");
  require_signs(coords_, "vertex");
}

Vertex Vertex::ones(int n) { return Vertex(std::vector<Sign>(static_cast<std::size_t>(n), Sign{1})); }

Vertex Vertex::negated() const {
  std::vector<Sign> out(coords_);
  for (auto& s : out) s = static_cast<Sign>(-s);
  return Vertex(std::move(out));
}

Vertex operator*(const Vertex& a, const Vertex& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("vertex product: dimension mismatch");
  std::vector<Sign> out(a.coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Sign>(a.coords_[i] * b.coords_[i]);
  return Vertex(std::move(out));
}

// TensorVector --------------------------------------------------------------

TensorVector::TensorVector(Shape shape, std::vector<Sign> coords) : shape_(shape), coords_(std::move(coords)) {
  if (coords_.size() != shape_.dimension()) throw DimensionError("tensor vector length differs from n^m");
  require_signs(coords_, "tensor vector");
}

TensorVector TensorVector::negated() const {
  std::vector<Sign> out(coords_);
  for (auto& s : out) s = static_cast<Sign>(-s);
  return TensorVector(shape_, std::move(out));
}

bool canonical_less(const TensorVector& a, const TensorVector& b) {
  // +1 ranks before -1.
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end(),
                                      [](Sign x, Sign y) { return x > y; });
}

// FormVector ----------------------------------------------------------------

FormVector::FormVector(Shape shape, std::vector<Rational> coeffs) : shape_(shape), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != shape_.dimension()) throw DimensionError("form vector length differs from n^m");
  for (auto& c : coeffs_) c.canonicalize();
}

FormVector FormVector::zero(Shape shape) { return FormVector(shape, std::vector<Rational>(shape.dimension())); }

FormVector FormVector::negated() const {
  std::vector<Rational> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -coeffs_[i];
  return FormVector(shape_, std::move(out));
}

bool FormVector::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

FormVector operator+(const FormVector& a, const FormVector& b) {
  require_same_shape(a.shape_, b.shape_, "form sum");
  std::vector<Rational> out(a.coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeffs_[i] + b.coeffs_[i];
  return FormVector(a.shape_, std::move(out));
}

FormVector operator-(const FormVector& a, const FormVector& b) {
  require_same_shape(a.shape_, b.shape_, "form difference");
  std::vector<Rational> out(a.coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeffs_[i] - b.coeffs_[i];
  return FormVector(a.shape_, std::move(out));
}

FormVector operator*(const Rational& s, const FormVector& a) {
  std::vector<Rational> out(a.coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a.coeffs_[i];
  return FormVector(a.shape_, std::move(out));
}

bool operator==(const FormVector& a, const FormVector& b) { return a.shape_ == b.shape_ && a.coeffs_ == b.coeffs_; }

std::strong_ordering operator<=>(const FormVector& a, const FormVector& b) {
  if (auto c = a.shape_.m <=> b.shape_.m; c != 0) return c;
  if (auto c = a.shape_.n <=> b.shape_.n; c != 0) return c;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// Free functions ------------------------------------------------------------

TensorVector omega(std::span<const Vertex> factors) {
  if (factors.empty()) throw DomainError("omega needs at least one vertex");
  const int n = factors.front().dimension();
  std::vector<Sign> out{1};
  for (const Vertex& x : factors) {
    if (x.dimension() != n) throw DimensionError("omega: vertices of different dimensions");
    std::vector<Sign> next;
    next.reserve(out.size() * static_cast<std::size_t>(n));
    for (Sign p : out) {
      for (Sign s : x.coords()) next.push_back(static_cast<Sign>(p * s));
    }
    out = std::move(next);
  }
  return TensorVector(make_shape(static_cast<int>(factors.size()), n), std::move(out));
}

Rational inner(const FormVector& a, const TensorVector& v) {
  require_same_shape(a.shape(), v.shape(), "inner");
  Rational sum;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (v[i] > 0) {
      sum += a[i];
    } else {
      sum -= a[i];
    }
  }
  return sum;
}

std::int64_t inner(const TensorVector& u, const TensorVector& v) {
  require_same_shape(u.shape(), v.shape(), "inner");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i];
  return sum;
}

int log2_tensor_vertex_count(Shape shape) { return shape.n * shape.m - shape.m + 1; }

std::vector<TensorVector> enumerate_tensor_vertices(Shape shape, std::size_t coordinate_budget) {
  shape = make_shape(shape.m, shape.n);
  const int bits = log2_tensor_vertex_count(shape);
  if (bits >= 40) throw ResourceError("V_m^n is far too large to enumerate");
  const std::size_t count = std::size_t{1} << bits;
  if (count > coordinate_budget / shape.dimension()) {
    throw ResourceError("enumerating V_m^n needs " + std::to_string(count) + " x " +
                        std::to_string(shape.dimension()) + " coordinates, over budget");
  }
  const auto n = static_cast<std::size_t>(shape.n);
  const auto m = static_cast<std::size_t>(shape.m);

  // Free sign bits: factors 1..m-1 contribute n-1 bits each (first coordinate
  // pinned to +1), factor m contributes n bits.
  std::vector<TensorVector> out;
  out.reserve(count);
  std::vector<Vertex> factors;
  factors.reserve(m);
  for (std::size_t code = 0; code < count; ++code) {
    factors.clear();
    std::size_t bit = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Sign> coords(n, Sign{1});
      for (std::size_t s = (i + 1 < m) ? 1 : 0; s < n; ++s, ++bit) {
        if ((code >> bit) & 1U) coords[s] = -1;
      }
      factors.emplace_back(std::move(coords));
    }
    out.push_back(omega(factors));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Vertex> factorize(const TensorVector& v) {
  const Shape shape = v.shape();
  const auto n = static_cast<std::size_t>(shape.n);
  const auto m = static_cast<std::size_t>(shape.m);
  // Flat index of the multi-index with j_i = s and every other entry 1.
  auto single = [&](std::size_t i, std::size_t s) {
    std::size_t stride = 1;
    for (std::size_t k = i + 1; k < m; ++k) stride *= n;
    return s * stride;
  };
  const Sign last_first = v[single(m - 1, 0)];
  std::vector<Vertex> factors;
  factors.reserve(m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    std::vector<Sign> coords(n);
    for (std::size_t s = 0; s < n; ++s) coords[s] = static_cast<Sign>(v[single(i, s)] * last_first);
    factors.emplace_back(std::move(coords));
  }
  std::vector<Sign> last(n);
  for (std::size_t s = 0; s < n; ++s) last[s] = v[single(m - 1, s)];
  factors.emplace_back(std::move(last));
  if (!(omega(factors) == v)) throw DomainError("tensor vector is not in V_m^n");
  return factors;
}

}  // namespace mlext
