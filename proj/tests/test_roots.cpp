#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sinkhorn/families.hpp"
#include "sinkhorn/roots.hpp"

using namespace sinkhorn;

namespace {

double octic(double k, double y) {
  double y2 = y * y;
  return (k - 1) * (k - 1) * (k - 1) * y2 * y2 * y2 * y2 + 3 * (k - 1) * (k - 1) * y2 * y2 * y2 -
         (k - 1) * (2 * k - 3) * y2 * y2 - (4 * k - 1) * y2 + k;
}

}  // namespace

TEST(Descartes, Bounds) {
  EXPECT_EQ(descartes_positive_bound(a7_octic(BigRational(2))), 2u);
  EXPECT_EQ(descartes_positive_bound(Polynomial({1, 0, 1})), 0u);
  EXPECT_EQ(descartes_positive_bound(Polynomial({-1, 1})), 1u);
  EXPECT_THROW(descartes_positive_bound(Polynomial({})), Error);
}

TEST(Octic, PaperCoefficients) {
  EXPECT_EQ(a7_octic(BigRational(2)), Polynomial({2, 0, -7, 0, -1, 0, 3, 0, 1}));
  EXPECT_EQ(a7_octic(BigRational(3)), Polynomial({3, 0, -11, 0, -6, 0, 12, 0, 8}));
}

TEST(Isolate, OcticK2) {
  auto roots = isolate_roots_in(a7_octic(BigRational(2)), RationalInterval(0, 1));
  ASSERT_EQ(roots.size(), 1u);
  const double y = oracle::bisect([](double t) { return octic(2, t); }, 0.4, 0.6);
  EXPECT_TRUE(roots[0].contains(from_double(y)) || to_double(roots[0].width()) < 1e-12);
  EXPECT_NEAR(y, 0.533828905923539, 1e-14);
}

TEST(Isolate, OcticK3TwoRoots) {
  Polynomial p = a7_octic(BigRational(3));
  auto roots = isolate_roots_in(p, RationalInterval(0, 1));
  ASSERT_EQ(roots.size(), 2u);
  auto r0 = refine_root(p, roots[0], 12);
  auto r1 = refine_root(p, roots[1], 12);
  EXPECT_NEAR(to_double(r0.midpoint()), 0.5083028225, 1e-9);
  EXPECT_NEAR(to_double(r1.midpoint()), 0.9007108688, 1e-9);
}

TEST(Isolate, EnclosuresChangeSign) {
  for (long k : {2, 3, 5, 10}) {
    Polynomial p = a7_octic(BigRational(k));
    Polynomial sf = p.squarefree_part();
    auto roots = isolate_roots_in(p, RationalInterval(0, 1));
    EXPECT_LE(roots.size(), descartes_positive_bound(p));
    EXPECT_EQ(roots.size() % 2, interval_sign_variations(sf, BigRational(0), BigRational(1)) % 2);
    for (const auto& iv : roots) EXPECT_LE(sf.sign_at(iv.lo) * sf.sign_at(iv.hi), 0);
  }
}

TEST(Isolate, SimpleCases) {
  EXPECT_EQ(isolate_roots_in(Polynomial({-2, 0, 0, 1}), RationalInterval(1, 2)).size(), 1u);
  EXPECT_EQ(isolate_roots_in(Polynomial({1, 0, 1}), RationalInterval(-5, 5)).size(), 0u);
  // (t - 1/3)(t - 1/2)(t - 2/3): three close roots
  Polynomial p = Polynomial({make_rational(-1, 3), 1}) * Polynomial({make_rational(-1, 2), 1}) *
                 Polynomial({make_rational(-2, 3), 1});
  EXPECT_EQ(isolate_roots_in(p, RationalInterval(0, 1)).size(), 3u);
}

TEST(Isolate, DeflationMatchesSquarefree) {
  Polynomial p = a7_octic(BigRational(3));
  auto a = isolate_roots_in(p * p.derivative() * p, RationalInterval(0, 1));
  auto b = isolate_roots_in(p.squarefree_part(), RationalInterval(0, 1));
  auto roots_in = [&](const std::vector<RationalInterval>& ivs, const Polynomial& q) {
    std::size_t n = 0;
    for (const auto& iv : ivs) n += q.sign_at(iv.lo) * q.sign_at(iv.hi) <= 0 ? 1 : 0;
    return n;
  };
  EXPECT_GE(a.size(), b.size());
  EXPECT_EQ(roots_in(a, p), 2u);
}

TEST(Refine, CubeRootOf2) {
  Polynomial p({-2, 0, 0, 1});
  auto iv = refine_root(p, RationalInterval(1, 2), 12);
  EXPECT_LT(to_double(iv.width()), 1e-12);
  BigRational m = iv.midpoint();
  EXPECT_LT(std::fabs(to_double(m * m * m - 2)), 3e-12);
}

TEST(Refine, RationalRootCollapses) {
  auto iv = refine_root(Polynomial({-1, 2}), RationalInterval(0, 1), 20);
  EXPECT_TRUE(iv.is_point());
  EXPECT_EQ(iv.lo, make_rational(1, 2));
}

TEST(Refine, OcticTo15Digits) {
  Polynomial p = a7_octic(BigRational(2));
  auto roots = isolate_roots_in(p, RationalInterval(0, 1));
  auto iv = refine_root(p, roots.at(0), 16);
  EXPECT_NEAR(to_double(iv.midpoint()), 0.533828905923539, 1e-15);
}

TEST(Refine, WidthHalvesPerStep) {
  Polynomial p({-2, 0, 0, 1});
  RationalInterval iv(1, 2);
  for (int i = 0; i < 20; ++i) {
    auto next = bisect_once(iv, [&](const BigRational& m) { return p.sign_at(m) < 0; });
    EXPECT_EQ(next.width() * 2, iv.width());
    iv = next;
  }
}

TEST(Refine, NonIsolatingThrows) {
  EXPECT_THROW(refine_root(Polynomial({1, 0, 1}), RationalInterval(0, 1), 10), Error);
}
