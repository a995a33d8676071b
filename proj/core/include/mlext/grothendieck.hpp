#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mlext/constants.hpp"
#include "mlext/search.hpp"

namespace mlext {

/// Unit vectors x_i, y_j in R^d and the value sum_ij T_ij <x_i, y_j>.
struct SphereConfig {
  std::vector<std::vector<double>> x_vectors;
  std::vector<std::vector<double>> y_vectors;
  double value = 0.0;
};

struct SphereSearchOptions {
  int restarts = 64;
  std::uint64_t seed = 0;
  double tolerance = 1e-12;
  int max_iterations = 100000;
  /// d = 1 is solved exactly by sign enumeration up to this many rows.
  int exact_sign_limit = 20;
};

/// sum_ij T_ij <x_i, y_j> for a bilinear form T on R^k.
double sphere_objective(const FormVector& bilinear, const SphereConfig& config);

/// Lower bound on max over unit x_i, y_j in R^d of sum_ij T_ij <x_i, y_j>.
/// Alternating maximization from seeded restarts; each dimension is warm
/// started from the optimum of the previous one, so the result is
/// non-decreasing in d. d = 1 is exact.
SphereConfig inner_sphere_max(const FormVector& bilinear, int d, const SphereSearchOptions& options = {});

/// max over T in `set` of inner_sphere_max(T, d): a lower bound on the
/// truncated Grothendieck constant K_G^(m)(d). `set` must hold bilinear forms
/// on R^m.
ConstantReport kg_lower_bound(int m, int d, const ExtremeSet& set, const SphereSearchOptions& options = {},
                              unsigned workers = 1);

/// Bilinear extreme points on R^k placed into R^n by every pair of coordinate
/// injections (zero elsewhere). Closed under G_2^n, certified point by point
/// and marked incomplete.
ExtremeSet padded_extreme_subset(const ExtremeSet& small, int n);

// ---------------------------------------------------------------------------
// Unital 2x2 complex bilinear forms
// ---------------------------------------------------------------------------

/// Parameters of T(x, y) = (a + ih) x1 y1 + (b - ih) x1 y2 + (c - ih) x2 y1 + (d + ih) x2 y2.
struct BleiPoint {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double h = 0.0;
};

/// a+b+c+d = 1 (1e-10), pairwise sums >= -1e-12, h^2 <= e3(a,b,c,d) + 1e-12.
bool blei_feasible(const BleiPoint& p);

/// sqrt(a^2 + b^2 + 2h^2) + sqrt(c^2 + d^2 + 2h^2).
double blei_objective(const BleiPoint& p);

struct BleiResult {
  double value = 0.0;
  BleiPoint argmax;
  std::size_t evaluations = 0;
  std::size_t rejected = 0;
};

/// Grid over the feasible set followed by projected coordinate ascent.
BleiResult blei_kkt_search(int grid_density, int refine_iters);

double blei_kkt_max(int grid_density, int refine_iters);

}  // namespace mlext
