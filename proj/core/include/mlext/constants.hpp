#pragma once

#include <functional>
#include <optional>
#include <string>

#include "mlext/search.hpp"

namespace mlext {

/// Result of a finite maximization over an extreme set.
struct ConstantReport {
  std::string name;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<double> lambda;
  double value = 0.0;
  std::optional<FormVector> argmax;
  std::optional<std::string> exact_note;
  /// Hilbert-space dimension, only for Grothendieck-type reports.
  std::optional<int> d;
};

using ConvexFunctional = std::function<double(const FormVector&)>;

/// Values within this window of the running maximum count as ties; ties go
/// to the earliest point in canonical order.
inline constexpr double kTieWindow = 1e-12;

/// Max of a convex continuous functional over the extreme set, with an
/// attaining point. By Krein-Milman this is the max over the whole ball.
ConstantReport maximize_convex(const ExtremeSet& set, const ConvexFunctional& functional, std::string name = "max",
                               unsigned workers = 1);

/// (sum_j |a_j|^lambda)^(1/lambda) for lambda >= 1.
double f_lambda(const FormVector& a, double lambda);

/// sum_j |a_j|^lambda, the monotone surrogate compared during maximization.
double f_lambda_power(const FormVector& a, double lambda);

/// Bohnenblust-Hille constant B_m(n): max of f_{2m/(m+1)} over ext(B).
ConstantReport bh_constant(int m, int n, const ExtremeSet& set, unsigned workers = 1);

/// 2^(1/(2m)) * B_m(n).
ConstantReport mixed_littlewood_constant(int m, int n, const ExtremeSet& set, unsigned workers = 1);

/// Root of Gamma((q + 1) / 2) = sqrt(pi) / 2 below 2, to 1e-12.
double khinchin_q0();

/// Best lower Khinchin constant A_q for 0 < q <= 2.
double khinchin_Aq(double q);

/// 2^(1 - 1/m).
double two_slot_constant(int m);

/// "2^(p/q)" when value equals such a power to 1e-12 relative, with
/// q <= max_denominator; "1" for p = 0.
std::optional<std::string> recognize_power_of_two(double value, int max_denominator = 64);

}  // namespace mlext
