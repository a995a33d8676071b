#pragma once

// Helpers shared by the search translation units; not installed.

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "mlext/rational.hpp"
#include "mlext/tensor.hpp"

namespace mlext::detail {

/// V_m^n in canonical order, computed once per shape and shared.
const std::vector<TensorVector>& tensor_vertices(Shape shape, std::size_t coordinate_budget);

/// Positions (into tensor_vertices) of the elements with first coordinate +1.
/// Since V = -V these represent every line {v, -v} exactly once.
std::vector<std::size_t> line_positions(const std::vector<TensorVector>& vertices);

/// A rational vector as integer numerators over one positive denominator,
/// reduced so that gcd(numerators, denominator) = 1.
struct ScaledPoint {
  std::vector<std::int64_t> nums;
  std::int64_t den = 1;

  friend bool operator==(const ScaledPoint&, const ScaledPoint&) = default;
  friend auto operator<=>(const ScaledPoint&, const ScaledPoint&) = default;
};

void reduce(ScaledPoint& p);

/// Exact conversion; nullopt when any value leaves the int64 range.
std::optional<ScaledPoint> scale(const FormVector& a);

FormVector to_form(Shape shape, const ScaledPoint& p);

/// Calls body(index, worker) for every index in [0, count) on `workers`
/// threads. Results must be stored per index or per worker by the caller.
inline void parallel_for(std::size_t count, unsigned workers,
                         const std::function<void(std::size_t, unsigned)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count && !failed; i = next++) body(i, w);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed = true;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace mlext::detail
