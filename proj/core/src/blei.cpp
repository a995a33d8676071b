#include "mlext/grothendieck.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "mlext/errors.hpp"

namespace mlext {

namespace {

double e3(double a, double b, double c, double d) { return b * c * d + a * c * d + a * b * d + a * b * c; }

struct Candidate {
  double value;
  std::array<double, 4> x;
};

class Evaluator {
 public:
  explicit Evaluator(BleiResult& result) : result_(result) {}

  /// f at (a, b, c, d) with the largest admissible h, or nullopt if infeasible.
  std::optional<double> operator()(const std::array<double, 4>& x, BleiPoint* out = nullptr) {
    const double bound = e3(x[0], x[1], x[2], x[3]);
    BleiPoint p{x[0], x[1], x[2], x[3], bound > 0.0 ? std::sqrt(bound) : 0.0};
    ++result_.evaluations;
    if (!blei_feasible(p)) {
      ++result_.rejected;
      return std::nullopt;
    }
    if (out) *out = p;
    return blei_objective(p);
  }

 private:
  BleiResult& result_;
};

}  // namespace

bool blei_feasible(const BleiPoint& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c) || !std::isfinite(p.d) ||
      !std::isfinite(p.h))
    return false;
  if (std::abs(p.a + p.b + p.c + p.d - 1.0) > 1e-10) return false;
  const double pairs[] = {p.a + p.b, p.c + p.d, p.a + p.c, p.b + p.d, p.a + p.d, p.b + p.c};
  for (double s : pairs) {
    if (s < -1e-12) return false;
  }
  return p.h * p.h <= e3(p.a, p.b, p.c, p.d) + 1e-12;
}

double blei_objective(const BleiPoint& p) {
  const double h2 = 2.0 * p.h * p.h;
  return std::sqrt(p.a * p.a + p.b * p.b + h2) + std::sqrt(p.c * p.c + p.d * p.d + h2);
}

BleiResult blei_kkt_search(int grid_density, int refine_iters) {
  if (grid_density < 8) throw DomainError("grid density must be at least 8");
  if (refine_iters < 0) throw DomainError("refinement iterations must be non-negative");
  BleiResult result;
  Evaluator evaluate(result);

  // a, b, c range over [-1/2, 1]; d = 1 - a - b - c.
  const double step = 1.5 / grid_density;
  std::vector<Candidate> grid;
  for (int i = 0; i <= grid_density; ++i) {
    for (int j = 0; j <= grid_density; ++j) {
      for (int k = 0; k <= grid_density; ++k) {
        const double a = -0.5 + step * i;
        const double b = -0.5 + step * j;
        const double c = -0.5 + step * k;
        const std::array<double, 4> x{a, b, c, 1.0 - a - b - c};
        // Cheap prefilter: the pairwise sums must be non-negative.
        if (x[0] + x[1] < -1e-12 || x[2] + x[3] < -1e-12 || x[0] + x[2] < -1e-12 || x[1] + x[3] < -1e-12 ||
            x[0] + x[3] < -1e-12 || x[1] + x[2] < -1e-12)
          continue;
        if (auto v = evaluate(x)) grid.push_back({*v, x});
      }
    }
  }
  if (grid.empty()) throw InvariantViolation("no feasible grid point");
  std::stable_sort(grid.begin(), grid.end(), [](const Candidate& l, const Candidate& r) { return l.value > r.value; });

  // Moves along e_i - e_j keep a + b + c + d = 1 exactly up to rounding.
  std::vector<std::array<double, 4>> directions;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      std::array<double, 4> dir{};
      dir[static_cast<std::size_t>(i)] = 1.0;
      dir[static_cast<std::size_t>(j)] = -1.0;
      directions.push_back(dir);
    }
  }

  Candidate best = grid.front();
  const std::size_t starts = std::min<std::size_t>(grid.size(), 8);
  for (std::size_t s = 0; s < starts; ++s) {
    Candidate current = grid[s];
    double delta = step;
    for (int iter = 0; iter < refine_iters && delta >= 1e-10; ++iter) {
      bool improved = false;
      for (const auto& dir : directions) {
        std::array<double, 4> x = current.x;
        for (std::size_t r = 0; r < 4; ++r) x[r] += delta * dir[r];
        x[3] = 1.0 - x[0] - x[1] - x[2];
        auto v = evaluate(x);
        if (v && *v > current.value) {
          current = {*v, x};
          improved = true;
        }
      }
      if (!improved) delta *= 0.5;
    }
    if (current.value > best.value) best = current;
  }
  result.value = best.value;
  BleiPoint argmax;
  evaluate(best.x, &argmax);
  result.argmax = argmax;
  return result;
}

double blei_kkt_max(int grid_density, int refine_iters) { return blei_kkt_search(grid_density, refine_iters).value; }

}  // namespace mlext
