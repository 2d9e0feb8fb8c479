#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sinkhorn/error.hpp"
#include "sinkhorn/matrix.hpp"
#include "sinkhorn/numerics.hpp"
#include "sinkhorn/polynomial.hpp"
#include "sinkhorn/roots.hpp"

namespace sinkhorn {

enum class Family { A1, A2, A3, A4, A5, A6, A7, MBN };

inline constexpr std::array<Family, 7> kThreeByThreeFamilies = {Family::A1, Family::A2, Family::A3, Family::A4,
                                                                Family::A5, Family::A6, Family::A7};

inline std::string family_name(Family f) {
  switch (f) {
    case Family::A1: return "A1";
    case Family::A2: return "A2";
    case Family::A3: return "A3";
    case Family::A4: return "A4";
    case Family::A5: return "A5";
    case Family::A6: return "A6";
    case Family::A7: return "A7";
    case Family::MBN: return "MBN";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::A1, Family::A2, Family::A3, Family::A4, Family::A5, Family::A6, Family::A7, Family::MBN}) {
    if (family_name(f) == name) return f;
  }
  throw Error(ErrorCode::Parse, "unknown family '" + std::string(name) + "'");
}

/// The four limit shapes seen for two-valued symmetric 3x3 matrices, with
/// Block also covering the general n x n MBN case.
enum class LimitShape { Block, BorderedPair, Circulant, FullSymmetric };

inline std::string shape_name(LimitShape s) {
  switch (s) {
    case LimitShape::Block: return "block";
    case LimitShape::BorderedPair: return "bordered-pair";
    case LimitShape::Circulant: return "circulant";
    case LimitShape::FullSymmetric: return "full-symmetric";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Exact scalars for limit entries
// ---------------------------------------------------------------------------

using AlgebraicScalar = std::variant<BigRational, QuadraticSurd, CubicFieldElement>;

inline std::string to_string(const AlgebraicScalar& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, BigRational>) {
          return sinkhorn::to_string(x);
        } else {
          return x.to_string();
        }
      },
      v);
}

inline BigRational evaluate(const AlgebraicScalar& v, unsigned digits) {
  return std::visit(
      [&](const auto& x) -> BigRational {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, BigRational>) {
          return x;
        } else if constexpr (std::is_same_v<X, QuadraticSurd>) {
          return surd_eval(x, digits);
        } else {
          return cubic_eval(x, digits);
        }
      },
      v);
}

/// Sum in the common field; rationals embed into either extension.
inline AlgebraicScalar add(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  if (const auto* ra = std::get_if<BigRational>(&a)) {
    if (const auto* rb = std::get_if<BigRational>(&b)) return BigRational(*ra + *rb);
    if (const auto* sb = std::get_if<QuadraticSurd>(&b)) return QuadraticSurd(*ra) + *sb;
    const auto& cb = std::get<CubicFieldElement>(b);
    return CubicFieldElement::rational(*ra, cb.generator_cube()) + cb;
  }
  if (std::holds_alternative<BigRational>(b)) return add(b, a);
  if (const auto* sa = std::get_if<QuadraticSurd>(&a)) {
    if (const auto* sb = std::get_if<QuadraticSurd>(&b)) return *sa + *sb;
    throw Error(ErrorCode::FieldMismatch, "cannot add a quadratic surd and a cubic field element");
  }
  if (const auto* cb = std::get_if<CubicFieldElement>(&b)) return std::get<CubicFieldElement>(a) + *cb;
  throw Error(ErrorCode::FieldMismatch, "cannot add a cubic field element and a quadratic surd");
}

inline bool is_exactly(const AlgebraicScalar& v, const BigRational& r) {
  return std::visit(
      [&](const auto& x) -> bool {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, BigRational>) {
          return x == r;
        } else {
          return x.is_rational() && evaluate(AlgebraicScalar(x), 0) == r;
        }
      },
      v);
}

/// A named limit value: exact form when a closed form exists, plus a
/// rational approximation within 10^-digits.
struct LimitValue {
  std::string name;
  std::optional<AlgebraicScalar> exact;
  BigRational approx;

  double numeric() const { return to_double(approx); }
  std::string exact_text() const { return exact ? to_string(*exact) : std::string(); }
};

inline LimitValue exact_value(std::string name, AlgebraicScalar exact, unsigned digits) {
  BigRational approx = evaluate(exact, digits);
  return {std::move(name), std::move(exact), std::move(approx)};
}

inline LimitValue numeric_value(std::string name, BigRational approx) { return {std::move(name), std::nullopt, std::move(approx)}; }

/// sqrt of a non-negative rational to within 10^-digits.
inline BigRational sqrt_approx(const BigRational& value, unsigned digits) {
  BigRational root;
  if (exact_sqrt(value, root)) return root;
  const BigRational tol = tolerance_for_digits(digits);
  RationalInterval iv(0, value > 1 ? value : BigRational(1));
  while (iv.width() >= tol) iv = bisect_once(iv, [&](const BigRational& m) { return m * m < value; });
  return iv.midpoint();
}

/// Closed-form (or certified numeric) Sinkhorn limit of a family matrix.
struct FamilyLimit {
  Family family = Family::MBN;
  LimitShape shape = LimitShape::Block;
  std::optional<BigRational> K;
  unsigned digits = 30;
  std::vector<LimitValue> entries;
  std::vector<LimitValue> scaling;  // diagonal of X in S(A) = X A X
  std::vector<std::vector<std::size_t>> pattern;  // cell -> index into entries
  bool degenerate = false;

  const LimitValue& entry(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return e;
    throw Error(ErrorCode::Parse, "no entry named '" + std::string(name) + "'");
  }

  std::size_t size() const { return pattern.size(); }

  Matrix<BigRational> approx_matrix() const {
    Matrix<BigRational> m(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) m(i, j) = entries[pattern[i][j]].approx;
    return m;
  }

  Matrix<double> matrix() const { return to_double(approx_matrix()); }

  bool has_exact_entries() const {
    for (const auto& e : entries)
      if (!e.exact) return false;
    return true;
  }

  /// Exact field arithmetic: every row and column sum equals 1. Only
  /// meaningful when all entries carry exact forms.
  bool exactly_doubly_stochastic() const {
    if (!has_exact_entries()) return false;
    for (std::size_t i = 0; i < size(); ++i) {
      AlgebraicScalar row = BigRational(0);
      AlgebraicScalar col = BigRational(0);
      for (std::size_t j = 0; j < size(); ++j) {
        row = add(row, *entries[pattern[i][j]].exact);
        col = add(col, *entries[pattern[j][i]].exact);
      }
      if (!is_exactly(row, 1) || !is_exactly(col, 1)) return false;
    }
    return true;
  }
};

// ---------------------------------------------------------------------------
// Family matrices
// ---------------------------------------------------------------------------

/// MBN block matrix: first k rows (M..M, B..B), last l rows (B..B, N..N).
inline Matrix<BigRational> mbn_matrix(std::size_t k, std::size_t l, const BigRational& m, const BigRational& b,
                                      const BigRational& n) {
  if (k == 0 || l == 0) throw Error(ErrorCode::DimensionMismatch, "MBN block sizes must be positive");
  Matrix<BigRational> a(k + l, k + l);
  for (std::size_t i = 0; i < k + l; ++i)
    for (std::size_t j = 0; j < k + l; ++j) {
      bool top = i < k, left = j < k;
      a(i, j) = top && left ? m : (!top && !left ? n : b);
    }
  return a;
}

/// The K-positions of each canonical two-valued family (1 elsewhere).
inline std::array<std::array<bool, 3>, 3> family_pattern(Family f) {
  switch (f) {
    case Family::A1: return {{{true, false, false}, {false, true, false}, {false, false, true}}};
    case Family::A2: return {{{true, false, false}, {false, false, false}, {false, false, false}}};
    case Family::A3: return {{{false, false, false}, {false, true, true}, {false, true, true}}};
    case Family::A4: return {{{false, true, true}, {true, false, false}, {true, false, false}}};
    case Family::A5: return {{{true, false, false}, {false, true, false}, {false, false, false}}};
    case Family::A6: return {{{true, true, false}, {true, false, false}, {false, false, false}}};
    case Family::A7: return {{{true, true, false}, {true, false, false}, {false, false, true}}};
    case Family::MBN: break;
  }
  throw Error(ErrorCode::Unsupported, "MBN has no fixed 3x3 pattern");
}

inline Matrix<BigRational> family_matrix(Family f, const BigRational& k) {
  auto pat = family_pattern(f);
  Matrix<BigRational> a(3, 3, BigRational(1));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (pat[i][j]) a(i, j) = k;
  return a;
}

namespace detail {

inline void require_family_k(const BigRational& k) {
  if (sign(k) <= 0) throw Error(ErrorCode::Parse, "K must be positive");
  if (k == 1) throw Error(ErrorCode::DegenerateK, "K = 1 gives the all-ones matrix");
}

inline std::vector<std::vector<std::size_t>> pattern3(std::array<std::array<std::size_t, 3>, 3> idx) {
  std::vector<std::vector<std::size_t>> p(3, std::vector<std::size_t>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) p[i][j] = idx[i][j];
  return p;
}

}  // namespace detail

/// Uniform 1/n limit, used for the removable singularity K = 1 (or MN = B^2).
inline FamilyLimit uniform_limit(Family family, std::size_t n, unsigned digits = 30) {
  FamilyLimit out;
  out.family = family;
  out.shape = family == Family::MBN ? LimitShape::Block : LimitShape::BorderedPair;
  out.digits = digits;
  out.degenerate = true;
  const BigRational share = make_rational(1, BigInt(static_cast<unsigned long>(n)));
  out.entries.push_back(exact_value("a", share, digits));
  out.pattern.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) out.scaling.push_back(exact_value("x" + std::to_string(i + 1), QuadraticSurd::sqrt_of(share), digits));
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

inline FamilyLimit limit_A1(const BigRational& k, unsigned digits = 30) {
  detail::require_family_k(k);
  FamilyLimit out;
  out.family = Family::A1;
  out.shape = LimitShape::BorderedPair;
  out.K = k;
  out.digits = digits;
  BigRational denom = k + 2;
  out.entries.push_back(exact_value("a", BigRational(k / denom), digits));
  out.entries.push_back(exact_value("b", BigRational(1 / denom), digits));
  out.pattern = detail::pattern3({{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}});
  QuadraticSurd x = QuadraticSurd::sqrt_of(1 / denom);
  for (int i = 1; i <= 3; ++i) out.scaling.push_back(exact_value("x" + std::to_string(i), x, digits));
  return out;
}

/// Closed-form limit of the n x n MBN matrix (n = k + l). The limit depends
/// only on rho = MN/B^2; the minus branch of the quadratic in x^2 is the one
/// compatible with k a + l b = 1.
inline FamilyLimit limit_MBN(std::size_t k, std::size_t l, const BigRational& m, const BigRational& b,
                             const BigRational& n_val, unsigned digits = 30) {
  if (k == 0 || l == 0) throw Error(ErrorCode::DimensionMismatch, "MBN block sizes must be positive");
  if (sign(m) <= 0 || sign(b) <= 0 || sign(n_val) <= 0) throw Error(ErrorCode::NonPositive, "M, B, N must be positive");
  const std::size_t n = k + l;
  const BigRational rho = m * n_val / (b * b);
  const BigRational kr(static_cast<unsigned long>(k)), lr(static_cast<unsigned long>(l)), nr(static_cast<unsigned long>(n));

  FamilyLimit out;
  out.family = Family::MBN;
  out.shape = LimitShape::Block;
  out.digits = digits;

  QuadraticSurd a, bb, c;
  if (rho == 1) {
    a = bb = c = QuadraticSurd(BigRational(1) / nr);
  } else {
    BigRational radicand = 4 * kr * lr * rho + (kr - lr) * (kr - lr);
    QuadraticSurd root = QuadraticSurd::sqrt_of(radicand);
    a = QuadraticSurd(1 / kr) + (QuadraticSurd(nr) - root) / QuadraticSurd(BigRational(2 * kr * kr * (rho - 1)));
    bb = (QuadraticSurd(1) - QuadraticSurd(kr) * a) / QuadraticSurd(lr);
    c = (QuadraticSurd(1) - QuadraticSurd(kr) * bb) / QuadraticSurd(lr);
  }
  out.entries.push_back(exact_value("a", a, digits));
  out.entries.push_back(exact_value("b", bb, digits));
  out.entries.push_back(exact_value("c", c, digits));
  out.pattern.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.pattern[i][j] = (i < k && j < k) ? 0 : ((i >= k && j >= k) ? 2 : 1);

  // x^2 = a/M, y^2 = c/N.
  auto scaling_value = [&](const std::string& name, const QuadraticSurd& entry, const BigRational& diag) {
    if (entry.is_rational()) return exact_value(name, QuadraticSurd::sqrt_of(entry.rational_part() / diag), digits);
    return numeric_value(name, sqrt_approx(surd_eval(entry, digits + 5) / diag, digits));
  };
  LimitValue x = scaling_value("x", a, m);
  LimitValue y = scaling_value("y", c, n_val);
  for (std::size_t i = 0; i < n; ++i) {
    LimitValue v = i < k ? x : y;
    v.name = "x" + std::to_string(i + 1);
    out.scaling.push_back(std::move(v));
  }
  return out;
}

namespace detail {

inline FamilyLimit mbn_family(Family f, const BigRational& k, const BigRational& m, const BigRational& b,
                              const BigRational& n, unsigned digits) {
  require_family_k(k);
  FamilyLimit out = limit_MBN(1, 2, m, b, n, digits);
  out.family = f;
  out.K = k;
  return out;
}

}  // namespace detail

inline FamilyLimit limit_A2(const BigRational& k, unsigned digits = 30) {
  return detail::mbn_family(Family::A2, k, k, 1, 1, digits);
}
inline FamilyLimit limit_A3(const BigRational& k, unsigned digits = 30) {
  return detail::mbn_family(Family::A3, k, 1, 1, k, digits);
}
inline FamilyLimit limit_A4(const BigRational& k, unsigned digits = 30) {
  return detail::mbn_family(Family::A4, k, 1, k, 1, digits);
}

/// Bordered-pair limit: b = x^2 from (K^2-1)x^4 - (2K+1)x^2 + 1 = 0 (minus
/// root), a = K b, d = z^2, and c = xz. Since row sums give c = 1 - a - b,
/// c is a surd in the same field; c^2 = b d holds exactly.
inline FamilyLimit limit_A5(const BigRational& k, unsigned digits = 30) {
  detail::require_family_k(k);
  QuadraticSurd root = QuadraticSurd::sqrt_of(4 * k + 5);
  QuadraticSurd b = (QuadraticSurd(BigRational(2 * k + 1)) - root) / QuadraticSurd(BigRational(2 * (k * k - 1)));
  QuadraticSurd a = QuadraticSurd(k) * b;
  QuadraticSurd d = (QuadraticSurd(BigRational(k + 2)) - root) / QuadraticSurd(BigRational(k - 1));
  QuadraticSurd c = QuadraticSurd(1) - a - b;

  FamilyLimit out;
  out.family = Family::A5;
  out.shape = LimitShape::BorderedPair;
  out.K = k;
  out.digits = digits;
  out.entries.push_back(exact_value("a", a, digits));
  out.entries.push_back(exact_value("b", b, digits));
  out.entries.push_back(exact_value("c", c, digits));
  out.entries.push_back(exact_value("d", d, digits));
  out.pattern = detail::pattern3({{{0, 1, 2}, {1, 0, 2}, {2, 2, 3}}});
  BigRational x = sqrt_approx(surd_eval(b, digits + 5), digits);
  BigRational z = sqrt_approx(surd_eval(d, digits + 5), digits);
  out.scaling = {numeric_value("x1", x), numeric_value("x2", x), numeric_value("x3", z)};
  return out;
}

/// Circulant limit in Q(K^(1/3)): a = (t^2 - t)/(K-1), b = (K - t^2)/(K-1),
/// c = (t - 1)/(K-1) with t = K^(1/3).
inline FamilyLimit limit_A6(const BigRational& k, unsigned digits = 30) {
  detail::require_family_k(k);
  const BigRational km1 = k - 1;
  CubicFieldElement a(0, -1 / km1, 1 / km1, k);
  CubicFieldElement b(k / km1, 0, -1 / km1, k);
  CubicFieldElement c(-1 / km1, 1 / km1, 0, k);

  FamilyLimit out;
  out.family = Family::A6;
  out.shape = LimitShape::Circulant;
  out.K = k;
  out.digits = digits;
  out.entries.push_back(exact_value("a", a, digits));
  out.entries.push_back(exact_value("b", b, digits));
  out.entries.push_back(exact_value("c", c, digits));
  out.pattern = detail::pattern3({{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}});
  // y^2 = c, x = y / t, z = t y.
  BigRational t = cubic_eval(CubicFieldElement::generator(k), digits + 5);
  BigRational y = sqrt_approx(cubic_eval(c, digits + 5), digits + 3);
  out.scaling = {numeric_value("x1", y / t), numeric_value("x2", y), numeric_value("x3", t * y)};
  return out;
}

/// (K-1)^3 y^8 + 3(K-1)^2 y^6 - (K-1)(2K-3) y^4 - (4K-1) y^2 + K.
inline Polynomial a7_octic(const BigRational& k) {
  const BigRational km1 = k - 1;
  return Polynomial({k, 0, -(4 * k - 1), 0, -km1 * (2 * k - 3), 0, 3 * km1 * km1, 0, km1 * km1 * km1});
}

/// One root y of the octic in (0, 1) with its back-substituted x and z.
struct A7Candidate {
  RationalInterval y_enclosure;
  BigRational x, y, z;
  bool positive = false;
  std::array<BigRational, 6> entries;  // a..f
};

/// All (0,1) roots of the octic with back-substitution
/// x = y/((K-1)y^2 + 1), z = (-(K-1)y^4 - 2y^2 + 1)/(y((K-1)y^2 + 1)).
/// The sign of z is certified on the root enclosure.
inline std::vector<A7Candidate> a7_candidates(const BigRational& k, unsigned digits = 30) {
  detail::require_family_k(k);
  const BigRational km1 = k - 1;
  Polynomial octic = a7_octic(k);
  Polynomial z_numerator({1, 0, -2, 0, -km1});
  std::vector<A7Candidate> out;
  for (auto iv : isolate_roots_in(octic, RationalInterval(0, 1))) {
    unsigned refine = digits + 5;
    iv = refine_root(octic.squarefree_part(), iv, refine);
    // Refine until z's numerator has no root on the enclosure.
    while (!iv.is_point() && interval_sign_variations(z_numerator, iv.lo, iv.hi) != 0) {
      refine += 10;
      iv = refine_root(octic.squarefree_part(), iv, refine);
    }
    A7Candidate c;
    c.y_enclosure = iv;
    c.y = iv.midpoint();
    const BigRational& y = c.y;
    BigRational w = km1 * y * y + 1;
    c.x = y / w;
    c.z = z_numerator(y) / (y * w);
    c.positive = sign(c.x) > 0 && sign(c.y) > 0 && z_numerator.sign_at(iv.lo) > 0;
    c.entries = {k * c.x * c.x, k * c.x * c.y, c.x * c.z, c.y * c.y, c.y * c.z, k * c.z * c.z};
    out.push_back(std::move(c));
  }
  return out;
}

/// Full-symmetric limit [[a,b,c],[b,d,e],[c,e,f]] selected as the unique
/// octic root giving a positive (x, y, z).
inline FamilyLimit limit_A7(const BigRational& k, unsigned digits = 30) {
  auto candidates = a7_candidates(k, digits);
  const A7Candidate* chosen = nullptr;
  std::size_t positive = 0;
  for (const auto& c : candidates) {
    if (c.positive) {
      ++positive;
      chosen = &c;
    }
  }
  if (positive == 0) throw Error(ErrorCode::NoPositiveTriple, "no octic root yields a positive scaling");
  if (positive > 1) {
    throw Error(ErrorCode::AmbiguousTriple, std::to_string(positive) + " octic roots yield positive scalings");
  }
  FamilyLimit out;
  out.family = Family::A7;
  out.shape = LimitShape::FullSymmetric;
  out.K = k;
  out.digits = digits;
  const char* names[6] = {"a", "b", "c", "d", "e", "f"};
  for (std::size_t i = 0; i < 6; ++i) out.entries.push_back(numeric_value(names[i], chosen->entries[i]));
  out.pattern = detail::pattern3({{{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}});
  out.scaling = {numeric_value("x1", chosen->x), numeric_value("x2", chosen->y), numeric_value("x3", chosen->z)};
  return out;
}

inline FamilyLimit limit_family(Family f, const BigRational& k, unsigned digits = 30) {
  switch (f) {
    case Family::A1: return limit_A1(k, digits);
    case Family::A2: return limit_A2(k, digits);
    case Family::A3: return limit_A3(k, digits);
    case Family::A4: return limit_A4(k, digits);
    case Family::A5: return limit_A5(k, digits);
    case Family::A6: return limit_A6(k, digits);
    case Family::A7: return limit_A7(k, digits);
    case Family::MBN: break;
  }
  throw Error(ErrorCode::Unsupported, "use limit_MBN for MBN matrices");
}

// ---------------------------------------------------------------------------
// Asymptotics
// ---------------------------------------------------------------------------

struct FamilySpec {
  Family family = Family::MBN;
  BigRational K = 2;
  std::size_t k = 1;
  std::size_t l = 2;
  BigRational M = 1;
  BigRational B = 1;
  BigRational N = 1;
};

/// For MBN the direction refers to the ratio MN/B^2; for A-families it
/// refers to K.
enum class Direction { ToInfinity, ToZero };

namespace detail {

inline Matrix<BigRational> block_limit(std::size_t k, std::size_t l, const BigRational& a, const BigRational& b,
                                       const BigRational& c) {
  return mbn_matrix(k, l, a, b, c);
}

inline Matrix<BigRational> mbn_asymptote(std::size_t k, std::size_t l, Direction ratio_direction) {
  const BigRational kr(static_cast<unsigned long>(k)), lr(static_cast<unsigned long>(l));
  if (ratio_direction == Direction::ToInfinity) return block_limit(k, l, 1 / kr, 0, 1 / lr);
  // rho -> 0: a -> 1/k - (k + l - |k - l|)/(2k^2); b, c from k a + l b = 1, k b + l c = 1.
  BigRational a = k <= l ? BigRational(0) : BigRational((kr - lr) / (kr * kr));
  BigRational b = (1 - kr * a) / lr;
  BigRational c = (1 - kr * b) / lr;
  return block_limit(k, l, a, b, c);
}

}  // namespace detail

inline Matrix<BigRational> asymptotic_limit(const FamilySpec& spec, Direction direction) {
  auto flip = [](Direction d) { return d == Direction::ToInfinity ? Direction::ToZero : Direction::ToInfinity; };
  switch (spec.family) {
    case Family::MBN: return detail::mbn_asymptote(spec.k, spec.l, direction);
    case Family::A2:
    case Family::A3: return detail::mbn_asymptote(1, 2, direction);  // rho = K
    case Family::A4: return detail::mbn_asymptote(1, 2, flip(direction));  // rho = 1/K^2
    case Family::A1:
    case Family::A5:
      if (direction == Direction::ToInfinity) return Matrix<BigRational>::identity(3);
      break;
    case Family::A6:
      if (direction == Direction::ToInfinity) return Matrix<BigRational>{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
      break;
    case Family::A7: break;
  }
  throw Error(ErrorCode::Unsupported, "no closed-form asymptotic limit for " + family_name(spec.family));
}

// ---------------------------------------------------------------------------
// Rational limits of A2 at triangular K
// ---------------------------------------------------------------------------

struct TriangularLimit {
  BigInt r;
  BigRational a, b, c;
  Matrix<BigRational> limit;
  QuadraticSurd x, y;                 // S = X A X with X = diag(x, y, y)
  DiagonalScaling<BigRational> x_prime;  // rational pair S = X' A Y'
  DiagonalScaling<BigRational> y_prime;
};

/// S(A2) is rational exactly when 8K + 1 = (2r + 1)^2, i.e. K = r(r+1)/2.
inline std::optional<TriangularLimit> a2_rationality(const BigRational& k) {
  detail::require_family_k(k);
  if (!is_integer(k)) return std::nullopt;
  BigInt disc = k.get_num() * 8 + 1;
  BigInt root;
  if (!exact_root(disc, 2, root)) return std::nullopt;
  TriangularLimit t;
  t.r = (root - 1) / 2;
  BigRational r(t.r);
  t.a = r / (r + 2);
  t.b = 1 / (r + 2);
  t.c = (r + 1) / (2 * (r + 2));
  t.limit = mbn_matrix(1, 2, t.a, t.b, t.c);
  t.x = QuadraticSurd::sqrt_of(BigRational(2 / ((r + 1) * (r + 2))));
  t.y = QuadraticSurd::sqrt_of(t.c);
  // X' = x X = diag(x^2, xy, xy), Y' = X / x = diag(1, y/x, y/x) with y/x = (r+1)/2.
  BigRational ratio = (r + 1) / 2;
  BigRational x2 = t.a / k;
  t.x_prime = {{x2, x2 * ratio, x2 * ratio}};
  t.y_prime = {{1, ratio, ratio}};
  return t;
}

}  // namespace sinkhorn
