#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sinkhorn/matrix.hpp"

using namespace sinkhorn;
using Q = BigRational;

namespace {

Q q(long n, long d = 1) { return make_rational(n, d); }

Matrix<Q> from_grid(const oracle::QGrid& g) { return Matrix<Q>::from_rows(g); }

Matrix<Q> m123() { return Matrix<Q>{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}; }

}  // namespace

TEST(Matrix, RowColSums) {
  Matrix<Q> a{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(row_sums(a), (std::vector<Q>{6, 15}));
  EXPECT_EQ(col_sums(a), (std::vector<Q>{5, 7, 9}));
  Matrix<Q> signed_m{{1, -1, 1}, {-1, 4, -2}, {1, -2, 2}};
  EXPECT_EQ(row_sums(signed_m), (std::vector<Q>{1, 1, 1}));
  EXPECT_EQ(col_sums(Matrix<Q>{{q(7, 3)}}), (std::vector<Q>{q(7, 3)}));
}

TEST(Matrix, RowScalePaperExample) {
  Matrix<Q> a{{1, 2, 3}, {4, 5, 6}};
  auto r = row_scale(a);
  EXPECT_EQ(r.matrix, (Matrix<Q>{{q(1, 6), q(1, 3), q(1, 2)}, {q(4, 15), q(1, 3), q(2, 5)}}));
  EXPECT_EQ(r.scaling.values, (std::vector<Q>{q(1, 6), q(1, 15)}));
}

TEST(Matrix, ColScalePaperExample) {
  Matrix<Q> a{{1, 2, 3}, {4, 5, 6}};
  auto c = col_scale(a);
  EXPECT_EQ(c.matrix, (Matrix<Q>{{q(1, 5), q(2, 7), q(1, 3)}, {q(4, 5), q(5, 7), q(2, 3)}}));
  EXPECT_EQ(col_scale(Matrix<Q>(3, 3, Q(1))).matrix, Matrix<Q>(3, 3, q(1, 3)));
}

TEST(Matrix, RowScaleA6) {
  Matrix<Q> a{{2, 2, 1}, {2, 1, 1}, {1, 1, 1}};
  auto r = row_scale(a).matrix;
  EXPECT_EQ(r(0, 2), q(1, 5));
  EXPECT_EQ(r(1, 1), q(1, 4));
  EXPECT_EQ(r(2, 0), q(1, 3));
}

TEST(Matrix, ScalingRejectsNonPositive) {
  Matrix<Q> a{{1, 0}, {1, 1}};
  try {
    row_scale(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositive);
  }
}

TEST(Matrix, DoublyStochastic) {
  Matrix<Q> ds{{q(1, 2), q(1, 3), q(1, 6)}, {q(1, 6), q(1, 2), q(1, 3)}, {q(1, 3), q(1, 6), q(1, 2)}};
  EXPECT_TRUE(is_doubly_stochastic(ds, Q(0)));
  EXPECT_TRUE(is_doubly_stochastic(ds));
  EXPECT_FALSE(is_doubly_stochastic(Matrix<double>{{1, 2}, {3, 4}}, 1.9));
  Matrix<double> wide{{0.5, 0.25, 0.25}, {0.2, 0.3, 0.5}};
  EXPECT_TRUE(is_row_stochastic(wide, 1e-12));
  EXPECT_FALSE(is_doubly_stochastic(wide, 1.0));
  EXPECT_EQ(default_stochastic_tolerance(3), 3e-12);
}

TEST(Matrix, IdempotentAndDilationExact) {
  std::mt19937 rng(7);
  for (int t = 0; t < 10; ++t) {
    Matrix<Q> a = from_grid(oracle::random_rational(rng, 3, 4));
    auto r = row_scale(a).matrix;
    EXPECT_EQ(row_scale(r).matrix, r);
    auto c = col_scale(a).matrix;
    EXPECT_EQ(col_scale(c).matrix, c);
    EXPECT_EQ(row_scale(q(7, 3) * a).matrix, r);
    EXPECT_EQ(col_scale(q(7, 3) * a).matrix, c);
  }
}

TEST(Permutation, ApplyPaperExamples) {
  auto sigma = Permutation::cycle(3, {1, 2, 3});
  EXPECT_EQ(perm_matrix_apply(sigma, m123(), Side::Left), (Matrix<Q>{{4, 5, 6}, {7, 8, 9}, {1, 2, 3}}));
  EXPECT_EQ(perm_matrix_apply(sigma, m123(), Side::Right), (Matrix<Q>{{2, 3, 1}, {5, 6, 4}, {8, 9, 7}}));
  EXPECT_EQ(perm_matrix_apply(Permutation::identity(3), m123(), Side::Left), m123());
}

TEST(Permutation, ApplyIsMatrixProduct) {
  for (const auto& s : Permutation::all(3)) {
    EXPECT_EQ(perm_matrix_apply(s, m123(), Side::Left), s.matrix<Q>() * m123());
    EXPECT_EQ(perm_matrix_apply(s, m123(), Side::Right), m123() * s.inverse().matrix<Q>());
  }
}

TEST(Permutation, ComposePaperExample) {
  auto sigma = Permutation::cycle(3, {1, 2, 3});
  auto tau = Permutation::cycle(3, {1, 2});
  EXPECT_EQ(perm_compose(sigma, tau), Permutation::cycle(3, {2, 3}));
  EXPECT_EQ(perm_compose(sigma, Permutation::identity(3)), sigma);
}

TEST(Permutation, ComposeMatchesMatrices) {
  for (const auto& s : Permutation::all(3))
    for (const auto& t : Permutation::all(3)) {
      EXPECT_EQ(perm_compose(s, t).matrix<Q>(), s.matrix<Q>() * t.matrix<Q>());
    }
}

TEST(Permutation, TransposeIsInverse) {
  for (const auto& s : Permutation::all(4)) EXPECT_EQ(s.matrix<Q>().transpose(), s.inverse().matrix<Q>());
  EXPECT_EQ(Permutation::all(3).size(), 6u);
  EXPECT_EQ(Permutation::all(4).size(), 24u);
}

TEST(Permutation, DimensionMismatch) {
  EXPECT_THROW(perm_matrix_apply(Permutation::identity(2), m123(), Side::Left), Error);
  EXPECT_THROW(perm_compose(Permutation::identity(2), Permutation::identity(3)), Error);
  EXPECT_THROW(Permutation::from_one_based({1, 1, 2}), Error);
}

TEST(Permutation, PermuteBoth) {
  auto s = Permutation::cycle(3, {1, 2, 3});
  auto t = Permutation::cycle(3, {1, 3});
  EXPECT_EQ(permute_both(s, m123(), t), s.matrix<Q>() * m123() * t.matrix<Q>());
}

TEST(Permutation, ScalingCommutesExactly) {
  std::mt19937 rng(11);
  for (std::size_t n : {3u, 4u}) {
    Matrix<Q> a = from_grid(oracle::random_rational(rng, n, n));
    for (const auto& s : Permutation::all(n)) {
      EXPECT_EQ(row_scale(perm_matrix_apply(s, a, Side::Left)).matrix, perm_matrix_apply(s, row_scale(a).matrix, Side::Left));
      EXPECT_EQ(col_scale(perm_matrix_apply(s, a, Side::Right)).matrix, perm_matrix_apply(s, col_scale(a).matrix, Side::Right));
    }
  }
}

TEST(Matrix, ApplyScaling) {
  Matrix<Q> a{{1, 2}, {3, 4}};
  DiagonalScaling<Q> x{{2, 3}}, y{{5, 7}};
  EXPECT_EQ(apply_scaling(x, a, y), (Matrix<Q>{{10, 28}, {45, 84}}));
}
