#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "test_util.hpp"

namespace mlext {
namespace {

using test::form;
using test::tensor;

ExtremeSet fixture_2_2() {
  std::ifstream in(std::string(MLEXT_FIXTURE_DIR) + "/extreme_2_2.json");
  std::stringstream buf;
  buf << in.rdbuf();
  return read_extreme_set(buf.str(), FileFormat::json);
}

std::size_t count_bases(Shape shape, BasisMode mode) {
  SearchOptions options;
  options.mode = mode;
  std::size_t count = 0;
  enumerate_anchored_bases(shape, options, [&](const BasisMatrix&) { ++count; });
  return count;
}

TEST(AnchoredBases, SmallCounts) {
  EXPECT_EQ(count_bases(make_shape(1, 1), BasisMode::all_signs), 1U);
  EXPECT_EQ(count_bases(make_shape(1, 2), BasisMode::all_signs), 2U);
  EXPECT_EQ(count_bases(make_shape(2, 2), BasisMode::all_signs), 8U);
}

TEST(AnchoredBases, OneLinearPlaneListsBothPartners) {
  SearchOptions options;
  options.mode = BasisMode::all_signs;
  const auto bases = anchored_bases(make_shape(1, 2), options);
  ASSERT_EQ(bases.size(), 2U);
  std::set<std::vector<Sign>> partners;
  for (const auto& b : bases) {
    EXPECT_EQ(b.anchor_position, 0U);
    EXPECT_EQ(b.rows[0], tensor({{1, 1}}));
    partners.emplace(b.rows[1].coords().begin(), b.rows[1].coords().end());
  }
  EXPECT_EQ(partners, (std::set<std::vector<Sign>>{{1, -1}, {-1, 1}}));
}

// Each non-anchor line may be taken with either sign.
TEST(AnchoredBases, SignClassesDivideAllSigns) {
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 2}, {1, 4}, {3, 2}}) {
    const Shape shape = make_shape(m, n);
    const std::size_t factor = std::size_t{1} << (shape.dimension() - 1);
    EXPECT_EQ(count_bases(shape, BasisMode::all_signs), factor * count_bases(shape, BasisMode::sign_classes));
  }
}

TEST(AnchoredBases, RowsAreCanonicalAndIndependent) {
  for (const auto& b : anchored_bases(make_shape(2, 3))) {
    ASSERT_TRUE(std::is_sorted(b.rows.begin(), b.rows.end(), canonical_less));
    ASSERT_EQ(sign_rank(b.rows, 9), 9U);
    for (Sign s : b.rows[b.anchor_position].coords()) ASSERT_EQ(s, 1);
  }
}

TEST(BasisMatrix, Validation) {
  const auto e = tensor({{1, 1}, {1, 1}});
  const auto a = tensor({{1, -1}, {1, 1}});
  const auto b = tensor({{1, 1}, {1, -1}});
  const auto c = tensor({{1, -1}, {1, -1}});
  EXPECT_NO_THROW(BasisMatrix::from_rows({c, b, a, e}));
  EXPECT_EQ(BasisMatrix::from_rows({c, b, a, e}).rows.front(), e);
  EXPECT_THROW(BasisMatrix::from_rows({a, b, c, c}), DomainError);
  EXPECT_THROW(BasisMatrix::from_rows({a, b, c, e.negated()}), DomainError);
  EXPECT_THROW(BasisMatrix::from_rows({e, a, b, a.negated()}), DomainError);
  EXPECT_THROW(BasisMatrix::from_rows({e, a, b}), DomainError);
  EXPECT_THROW(BasisMatrix::from_rows({e, a, b, TensorVector(make_shape(2, 2), {1, 1, 1, -1})}), DomainError);
}

TEST(SignVector, AnchorAndIndex) {
  EXPECT_THROW(SignVector({-1, 1}), DomainError);
  EXPECT_THROW(SignVector({1, 0}), DomainError);
  for (std::uint64_t i = 0; i < 8; ++i) EXPECT_EQ(SignVector::from_index(4, i).index(), i);
  EXPECT_EQ(SignVector::from_index(3, 1), SignVector({1, -1, 1}));
  EXPECT_THROW(SignVector::from_index(3, 4), DomainError);
}

BasisMatrix walsh_hadamard() {
  std::vector<TensorVector> rows;
  for (auto x : {std::initializer_list<int>{1, 1}, {-1, 1}})
    for (auto y : {std::initializer_list<int>{1, 1}, {-1, 1}}) rows.push_back(tensor({x, y}));
  return BasisMatrix::from_rows(rows);
}

TEST(SolveAnchored, WalshHadamardExamples) {
  const auto h = walsh_hadamard();
  EXPECT_EQ(solve_anchored_system(h, SignVector({1, 1, 1, 1})), form(2, 2, {0, 0, 0, 1}));
  // f = (1, 1, 1, -1) in the listing order of beta x beta puts -1 on
  // omega((-1,1),(-1,1)) = (1,-1,-1,1).
  std::vector<Sign> f(4, 1);
  const auto target = tensor({{-1, 1}, {-1, 1}});
  for (std::size_t i = 0; i < 4; ++i) {
    if (h.rows[i] == target) f[i] = -1;
  }
  EXPECT_EQ(solve_anchored_system(h, SignVector(f)), form(2, 2, Rational(1, 2), {-1, 1, 1, 1}));
  EXPECT_THROW(solve_anchored_system(h, SignVector({1, 1})), DimensionError);
}

TEST(SolveAnchored, SubstitutionHoldsForEveryBasis) {
  for (const auto& b : anchored_bases(make_shape(2, 2), {})) {
    for (std::uint64_t i = 0; i < 8; ++i) {
      const auto f = SignVector::from_index(4, i);
      const auto a = solve_anchored_system(b, f);
      for (std::size_t r = 0; r < 4; ++r) ASSERT_EQ(inner(a, b.rows[r]), f[r]);
    }
  }
}

TEST(UnitBall, Examples) {
  EXPECT_TRUE(in_unit_ball(form(2, 2, {0, 0, 0, 1})).inside);
  const auto out = in_unit_ball(form(2, 2, {1, 1, 0, 0}));
  EXPECT_FALSE(out.inside);
  EXPECT_EQ(out.norm, 2);
  ASSERT_TRUE(out.witness);
  EXPECT_EQ(*out.witness, tensor({{1, 1}, {1, 1}}));
  EXPECT_TRUE(in_unit_ball(FormVector::zero(make_shape(2, 2))).inside);
  EXPECT_EQ(form_norm(form(2, 2, Rational(1, 2), {1, 1, 1, -1})), 1);
}

TEST(Orbit, Examples) {
  EXPECT_EQ(orbit(form(2, 2, {0, 0, 0, 1})),
            (std::vector<FormVector>{form(2, 2, {0, 0, 0, -1}), form(2, 2, {0, 0, 0, 1})}));
  const auto fractional = orbit(form(2, 2, Rational(1, 2), {1, 1, 1, -1}));
  ASSERT_EQ(fractional.size(), 8U);
  const auto jaa = fixture_2_2();
  for (const auto& p : fractional) EXPECT_TRUE(jaa.contains(p));
  const auto zero = FormVector::zero(make_shape(2, 2));
  EXPECT_EQ(orbit(zero), std::vector<FormVector>{zero});
}

TEST(ExtremePoints, Examples) {
  EXPECT_EQ(extreme_points(make_shape(2, 2)), fixture_2_2());
  const ExtremeSet cross(make_shape(1, 2), {form(1, 2, {1, 0}), form(1, 2, {-1, 0}), form(1, 2, {0, 1}),
                                            form(1, 2, {0, -1})});
  EXPECT_EQ(extreme_points(make_shape(1, 2)), cross);
  EXPECT_EQ(extreme_points(make_shape(3, 2)).size(), 256U);
  EXPECT_EQ(extreme_points(make_shape(1, 1)).size(), 2U);
}

TEST(ExtremePoints, RegressionCounts) {
  EXPECT_EQ(extreme_points(make_shape(1, 3)).size(), 6U);
  EXPECT_EQ(extreme_points(make_shape(1, 4)).size(), 8U);
  // No closed form is known for n >= 3; frozen from an independent run.
  EXPECT_EQ(extreme_points(make_shape(2, 3)).size(), 90U);
}

TEST(ExtremePoints, BasisModesAgree) {
  for (auto [m, n] : {std::pair{1, 3}, {2, 2}, {3, 2}}) {
    SearchOptions all;
    all.mode = BasisMode::all_signs;
    EXPECT_EQ(extreme_points(make_shape(m, n), all), extreme_points(make_shape(m, n)));
  }
}

TEST(ExtremePoints, WorkerCountDoesNotChangeTheResult) {
  const auto reference = extreme_points(make_shape(2, 3));
  for (unsigned workers : {2U, 8U}) {
    SearchOptions options;
    options.workers = workers;
    EXPECT_EQ(extreme_points(make_shape(2, 3), options), reference);
  }
}

TEST(ExtremePoints, ProvenanceReproducesEveryPoint) {
  for (unsigned workers : {1U, 3U}) {
    SearchOptions options;
    options.record_provenance = true;
    options.workers = workers;
    const auto set = extreme_points(make_shape(2, 3), options);
    ASSERT_EQ(set.provenance().size(), set.size());
    const auto& vertices = enumerate_tensor_vertices(make_shape(2, 3));
    for (std::size_t i = 0; i < set.size(); ++i) {
      const auto& p = set.provenance()[i];
      std::vector<TensorVector> rows;
      for (std::size_t index : p.basis) rows.push_back(vertices[index]);
      const auto a = solve_anchored_system(BasisMatrix::from_rows(rows), p.signs);
      ASSERT_EQ(act(p.element, a), set[i]);
    }
  }
}

TEST(ExtremePoints, BudgetAndResume) {
  const Shape shape = make_shape(2, 3);
  const auto reference = extreme_points(shape);
  SearchOptions options;
  options.budget.max_work_items = 100000;
  std::optional<ResumeState> state;
  int rounds = 0;
  for (;;) {
    try {
      const auto set = extreme_points(shape, options, state ? &*state : nullptr);
      EXPECT_EQ(set, reference);
      break;
    } catch (const BudgetExhausted& e) {
      ASSERT_LT(++rounds, 50);
      if (state) ASSERT_GE(e.state().bases_completed, state->bases_completed);
      state = e.state();
      // The state must survive serialization.
      state = read_resume_state(write_resume_state(*state));
    }
  }
  EXPECT_GT(rounds, 3);
}

TEST(ExtremePoints, ResumeStateMustMatch) {
  ResumeState state;
  state.shape = make_shape(2, 2);
  EXPECT_THROW(extreme_points(make_shape(3, 2), {}, &state), DomainError);
  state.basis_cursor = {0, 0, 1, 2};
  state.shape = make_shape(2, 2);
  EXPECT_THROW(extreme_points(make_shape(2, 2), {}, &state), DomainError);
}

TEST(ExtremePoints, DimensionBudget) {
  SearchOptions options;
  options.budget.max_dimension = 8;
  EXPECT_THROW(extreme_points(make_shape(2, 3), options), ResourceError);
  options.budget.max_points = 100;
  EXPECT_THROW(planar_extreme_points(3, options), ResourceError);
}

TEST(Planar, MatchesGeneralPipeline) {
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(planar_extreme_points(m), extreme_points(make_shape(m, 2))) << m;
}

TEST(Planar, CardinalityAndDenominators) {
  for (int m = 1; m <= 4; ++m) {
    const auto set = planar_extreme_points(m);
    ASSERT_EQ(set.size(), std::size_t{1} << (1U << m));
    const mpz_class bound = mpz_class(1) << m;
    for (const auto& p : set.points()) {
      for (const auto& c : p.coeffs()) {
        ASSERT_EQ(gcd(c.get_num(), c.get_den()), 1);
        ASSERT_TRUE(mpz_divisible_p(bound.get_mpz_t(), c.get_den().get_mpz_t()) != 0);
      }
    }
  }
}

TEST(Planar, ProvenanceReproducesEveryPoint) {
  SearchOptions options;
  options.record_provenance = true;
  const auto set = planar_extreme_points(3, options);
  ASSERT_EQ(set.provenance().size(), set.size());
  const auto& vertices = enumerate_tensor_vertices(make_shape(3, 2));
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& p = set.provenance()[i];
    std::vector<TensorVector> rows;
    for (std::size_t index : p.basis) rows.push_back(vertices[index]);
    ASSERT_EQ(act(p.element, solve_anchored_system(BasisMatrix::from_rows(rows), p.signs)), set[i]);
  }
}

class Certificates : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(Certificates, EveryPointIsCertified) {
  const auto [m, n] = GetParam();
  const auto set = extreme_points(make_shape(m, n));
  for (const auto& p : set.points()) {
    const auto cert = is_extreme(p);
    ASSERT_TRUE(cert.extreme);
    ASSERT_EQ(cert.norm, 1);
    ASSERT_EQ(cert.rank, set.shape().dimension());
    ASSERT_EQ(cert.basis.size(), set.shape().dimension());
  }
}

TEST_P(Certificates, ClosedUnderNegationAndGroup) {
  const auto [m, n] = GetParam();
  const auto set = extreme_points(make_shape(m, n));
  for (const auto& p : set.points()) ASSERT_TRUE(set.contains(p.negated()));
  for (const auto& g : enumerate_group(set.shape())) {
    std::vector<FormVector> image;
    for (const auto& p : set.points()) image.push_back(act(g, p));
    ASSERT_EQ(ExtremeSet(set.shape(), image), set);
  }
}

TEST_P(Certificates, MidpointsAreNotExtreme) {
  const auto [m, n] = GetParam();
  const auto set = extreme_points(make_shape(m, n));
  std::mt19937_64 rng(derive_seed(0, "midpoints", static_cast<std::uint64_t>(m * 10 + n)));
  for (int trial = 0; trial < 100; ++trial) {
    const auto& a = set[rng() % set.size()];
    const auto& b = set[rng() % set.size()];
    if (a == b) continue;
    const auto mid = Rational(1, 2) * (a + b);
    const auto cert = is_extreme(mid);
    ASSERT_FALSE(cert.extreme);
    ASSERT_TRUE(cert.in_ball);
    ASSERT_TRUE(cert.midpoint_witness);
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, Certificates,
                         ::testing::Values(std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}, std::pair{3, 2},
                                           std::pair{2, 3}));

TEST(IsExtreme, Examples) {
  const auto e4 = is_extreme(form(2, 2, {0, 0, 0, 1}));
  EXPECT_TRUE(e4.extreme);
  EXPECT_EQ(e4.tight.size(), 8U);
  EXPECT_EQ(e4.rank, 4U);

  const auto half = is_extreme(form(2, 2, Rational(1, 2), {1, 1, 0, 0}));
  EXPECT_FALSE(half.extreme);
  EXPECT_TRUE(half.in_ball);
  EXPECT_EQ(half.rank, 2U);
  std::set<std::vector<Sign>> tight;
  for (const auto& v : half.tight) tight.emplace(v.coords().begin(), v.coords().end());
  EXPECT_EQ(tight, (std::set<std::vector<Sign>>{{1, 1, 1, 1}, {-1, -1, -1, -1}, {-1, -1, 1, 1}, {1, 1, -1, -1}}));
  ASSERT_TRUE(half.midpoint_witness);
  const auto& [first, second] = *half.midpoint_witness;
  EXPECT_EQ(Rational(1, 2) * (first + second), form(2, 2, Rational(1, 2), {1, 1, 0, 0}));
  EXPECT_NE(first, second);
  EXPECT_TRUE(in_unit_ball(first).inside);
  EXPECT_TRUE(in_unit_ball(second).inside);

  const auto outside = is_extreme(form(2, 2, Rational(1, 2), {1, 1, 1, 1}));
  EXPECT_FALSE(outside.extreme);
  EXPECT_FALSE(outside.in_ball);
  EXPECT_EQ(outside.norm, 2);
  EXPECT_TRUE(outside.violation);
}

TEST(IsExtreme, InteriorPointHasRankZero) {
  const auto cert = is_extreme(FormVector::zero(make_shape(2, 2)));
  EXPECT_FALSE(cert.extreme);
  EXPECT_EQ(cert.rank, 0U);
  EXPECT_TRUE(cert.midpoint_witness);
}

TEST(Oracle, Examples) {
  EXPECT_EQ(brute_force_vertices(make_shape(2, 2)), fixture_2_2());
  EXPECT_EQ(brute_force_vertices(make_shape(1, 2)).size(), 4U);
  EXPECT_EQ(brute_force_vertices(make_shape(1, 3)).size(), 6U);
}

TEST(Oracle, MatchesPipeline) {
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 2}, {1, 4}, {3, 2}})
    EXPECT_EQ(brute_force_vertices(make_shape(m, n)), extreme_points(make_shape(m, n))) << m << "," << n;
}

TEST(Oracle, Guards) {
  EXPECT_THROW(brute_force_vertices(make_shape(2, 4)), ResourceError);
  EXPECT_THROW(brute_force_vertices(make_shape(2, 3), 1000), ResourceError);
}

}  // namespace
}  // namespace mlext
