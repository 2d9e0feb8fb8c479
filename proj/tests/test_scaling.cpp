#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sinkhorn/scaling.hpp"

using namespace sinkhorn;
using Q = BigRational;

namespace {

Matrix<double> from_grid(const oracle::Grid& g) { return Matrix<double>::from_rows(g); }

double max_diff(const Matrix<double>& a, const oracle::Grid& g) { return max_abs_diff(a, from_grid(g)); }

}  // namespace

TEST(Iterate, A6TableEarlySteps) {
  Matrix<Q> a6{{2, 2, 1}, {2, 1, 1}, {1, 1, 1}};
  auto tr = sinkhorn_iterate(a6, 3);
  ASSERT_EQ(tr.size(), 3u);
  EXPECT_EQ(tr.at_step(1)(0, 2), make_rational(1, 5));
  EXPECT_EQ(tr.at_step(2)(0, 2), make_rational(12, 47));
  EXPECT_EQ(tr.at_step(2)(1, 1), make_rational(15, 59));
  EXPECT_EQ(tr.at_step(2)(2, 0), make_rational(10, 37));
  EXPECT_EQ(tr.at_step(3)(0, 2), make_rational(2183, 8434));
}

TEST(Iterate, MatchesExactOracle) {
  std::mt19937 rng(3);
  for (int t = 0; t < 5; ++t) {
    auto g = oracle::random_rational(rng, 3, 3);
    auto expect = oracle::exact_steps(g, 6);
    auto tr = sinkhorn_iterate(Matrix<Q>::from_rows(g), 6);
    for (int s = 0; s < 6; ++s) EXPECT_EQ(tr.snapshots[s], Matrix<Q>::from_rows(expect[s]));
  }
}

TEST(Iterate, TraceInvariants) {
  Matrix<Q> a{{3, 1, 2}, {1, 5, 1}, {2, 2, 7}};
  auto tr = sinkhorn_iterate(a, 7);
  for (std::size_t s = 0; s < tr.size(); ++s) {
    EXPECT_EQ(tr.step_kinds[s], s % 2 == 0 ? StepKind::Row : StepKind::Column);
    if (s % 2 == 0) {
      EXPECT_TRUE(is_row_stochastic(tr.snapshots[s], Q(0)));
    } else {
      EXPECT_TRUE(is_col_stochastic(tr.snapshots[s], Q(0)));
    }
  }
  EXPECT_EQ(apply_scaling(tr.accumulated_x, a, tr.accumulated_y), tr.last());
}

TEST(Iterate, DoublyStochasticFixedPoint) {
  Matrix<Q> ds{{make_rational(1, 2), make_rational(1, 2)}, {make_rational(1, 2), make_rational(1, 2)}};
  auto tr = sinkhorn_iterate(ds, 4);
  for (const auto& s : tr.snapshots) EXPECT_EQ(s, ds);
}

TEST(Iterate, DilationStepExact) {
  Matrix<Q> a{{3, 1, 2}, {1, 5, 1}, {2, 2, 7}};
  auto t1 = sinkhorn_iterate(a, 6);
  auto t2 = sinkhorn_iterate(make_rational(5, 3) * a, 6);
  EXPECT_EQ(t1.snapshots, t2.snapshots);
}

TEST(Limit, PaperFixtures) {
  auto r = sinkhorn_limit(Matrix<double>{{2, 1, 1}, {1, 1, 1}, {1, 1, 1}}, 1e-9);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.limit(0, 0), 0.4384471874, 1e-8);
  auto r2 = sinkhorn_limit(Matrix<double>{{1, 1, 1}, {1, 2, 2}, {1, 2, 2}});
  EXPECT_LT(max_abs_diff(r.limit, r2.limit), 1e-8);
  auto r3 = sinkhorn_limit(Matrix<double>{{2, 2, 1}, {2, 1, 1}, {1, 1, 2}});
  EXPECT_NEAR(r3.limit(2, 2), 0.5172484223, 1e-8);
}

TEST(Limit, ConvergedMeansWithinTolAndFactorized) {
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto g = oracle::random_positive(rng, 4);
    auto a = from_grid(g);
    auto r = sinkhorn_limit(a);
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_TRUE(is_doubly_stochastic(r.limit, 1e-12));
    EXPECT_LT(max_abs_diff(apply_scaling(r.x, a, r.y), r.limit), 1e-11);
    EXPECT_LT(max_diff(r.limit, oracle::sinkhorn(g, 2000)), 1e-10);
  }
}

TEST(Limit, NotConvergedReportsBest) {
  auto r = sinkhorn_limit(Matrix<double>{{1, 100}, {1e-6, 1}}, 1e-15, 2);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.residual, 1e-15);
  EXPECT_EQ(r.pair_residuals.size(), 2u);
  EXPECT_EQ(r.residual, std::min(r.pair_residuals[0], r.pair_residuals[1]));
}

TEST(Limit, ErrorsAndPreconditions) {
  try {
    sinkhorn_limit(Matrix<double>{{1, 2, 3}, {4, 5, 6}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSquare);
  }
  try {
    sinkhorn_limit(Matrix<double>{{1, -2}, {4, 5}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositive);
  }
}

TEST(Limit, ResidualMonotoneOnPaperFixtures) {
  const std::vector<Matrix<double>> suite = {
      {{2, 1, 1}, {1, 1, 1}, {1, 1, 1}}, {{1, 1, 1}, {1, 2, 2}, {1, 2, 2}}, {{2, 1, 1}, {1, 2, 1}, {1, 1, 1}},
      {{2, 2, 1}, {2, 1, 1}, {1, 1, 1}}, {{2, 2, 1}, {2, 1, 1}, {1, 1, 2}}};
  for (const auto& a : suite) {
    auto r = sinkhorn_pairs(a, 20);
    for (std::size_t i = 1; i < r.pair_residuals.size(); ++i) {
      if (r.pair_residuals[i - 1] > 1e-15) {
        EXPECT_LE(r.pair_residuals[i], r.pair_residuals[i - 1] * (1 + 1e-9));
      }
    }
  }
}

TEST(Limit, PermutationCommutationAll36Pairs) {
  std::mt19937 rng(2024);
  for (int t = 0; t < 10; ++t) {
    auto a = from_grid(oracle::random_positive(rng, 3));
    auto s = sinkhorn_limit(a).limit;
    for (const auto& p : Permutation::all(3))
      for (const auto& q : Permutation::all(3)) {
        auto lhs = sinkhorn_limit(permute_both(p, a, q)).limit;
        EXPECT_LT(max_abs_diff(lhs, permute_both(p, s, q)), 1e-9);
      }
  }
}

TEST(Limit, TransposeAndDilation) {
  std::mt19937 rng(99);
  for (int t = 0; t < 10; ++t) {
    auto a = from_grid(oracle::random_positive(rng, 3));
    auto s = sinkhorn_limit(a).limit;
    EXPECT_LT(max_abs_diff(sinkhorn_limit(a.transpose()).limit, s.transpose()), 1e-9);
    EXPECT_LT(max_abs_diff(sinkhorn_limit(3.7 * a).limit, s), 1e-9);
  }
}

TEST(Symmetric, A1ScalingIsHalfForK2) {
  auto x = symmetric_scaling(Matrix<double>{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
  for (double v : x.values) EXPECT_NEAR(v, 0.5, 1e-9);
}

TEST(Symmetric, A2K3) {
  Matrix<double> a{{3, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  auto x = symmetric_scaling(a);
  EXPECT_NEAR(x[0], std::sqrt(6.0) / 6, 1e-9);
  EXPECT_NEAR(x[1], std::sqrt(6.0) / 4, 1e-9);
  EXPECT_NEAR(x[2], std::sqrt(6.0) / 4, 1e-9);
  auto s = apply_scaling(x, a, x);
  EXPECT_TRUE(is_doubly_stochastic(s, 1e-9));
  EXPECT_TRUE(s.is_symmetric() || max_abs_diff(s, s.transpose()) < 1e-9);
}

TEST(Symmetric, UniformAndErrors) {
  auto x = symmetric_scaling(Matrix<double>(3, 3, 1.0 / 3));
  for (double v : x.values) EXPECT_NEAR(v, 1.0, 1e-12);
  try {
    symmetric_scaling(Matrix<double>{{1, 2}, {3, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}
