#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "sinkhorn/error.hpp"
#include "sinkhorn/families.hpp"
#include "sinkhorn/matrix.hpp"

namespace sinkhorn {

enum class EquivalenceClass { A1, A2, A3, A4, A5, A6, A7, Uniform };

inline std::string class_name(EquivalenceClass c) {
  return c == EquivalenceClass::Uniform ? "Uniform" : family_name(static_cast<Family>(static_cast<int>(c)));
}

inline EquivalenceClass to_class(Family f) { return static_cast<EquivalenceClass>(static_cast<int>(f)); }

/// B = lambda * P * A * Q where P = P_row_perm and Q = P_col_perm, and B is
/// the canonical matrix of `family` with parameter K.
template <class T>
struct EquivalenceWitness {
  T lambda;
  Permutation P;
  Permutation Q;
  EquivalenceClass family = EquivalenceClass::Uniform;
  T K;

  /// lambda P A Q.
  Matrix<T> apply(const Matrix<T>& a) const { return lambda * permute_both(P, a, Q); }

  /// Witness mapping B back to A: A = lambda^-1 P^-1 B Q^-1.
  EquivalenceWitness inverse() const { return {T(1) / lambda, P.inverse(), Q.inverse(), family, K}; }

  /// Witness for this after `first`: if B = first(A) and C = this(B), the
  /// result maps A to C.
  EquivalenceWitness after(const EquivalenceWitness& first) const {
    return {lambda * first.lambda, perm_compose(P, first.P), perm_compose(first.Q, Q), family, K};
  }
};

namespace detail {

template <class T>
bool scalar_equal(const T& a, const T& b) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b));
  }
}

}  // namespace detail

/// Classifies a 3x3 positive matrix with at most two distinct entries into
/// the permutation/dilation classes A1..A7 (or Uniform). The majority value
/// is scaled to 1 (lambda = 1/majority) and K = minority/majority. P, Q run
/// over S3 x S3 in lexicographic order, families in order A1..A7; the first
/// match is returned.
template <class T>
EquivalenceWitness<T> classify_two_valued(const Matrix<T>& a) {
  if (a.rows() != 3 || a.cols() != 3) throw Error(ErrorCode::DimensionMismatch, "classification needs a 3x3 matrix");
  require_positive(a);

  std::vector<T> values;
  for (const auto& x : a.data()) {
    bool seen = false;
    for (const auto& v : values) seen = seen || detail::scalar_equal(v, x);
    if (!seen) values.push_back(x);
  }
  if (values.size() > 2) throw Error(ErrorCode::NotTwoValued, "matrix has more than two distinct entries");

  auto count = [&](const T& v) {
    std::size_t c = 0;
    for (const auto& x : a.data()) c += detail::scalar_equal(v, x) ? 1 : 0;
    return c;
  };

  if (values.size() == 1) {
    return {T(1) / values[0], Permutation::identity(3), Permutation::identity(3), EquivalenceClass::Uniform, T(1)};
  }
  const T& majority = count(values[0]) >= 5 ? values[0] : values[1];
  const T& minority = count(values[0]) >= 5 ? values[1] : values[0];

  std::array<std::array<bool, 3>, 3> pattern{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) pattern[i][j] = detail::scalar_equal(a(i, j), minority);

  const auto perms = Permutation::all(3);
  for (Family f : kThreeByThreeFamilies) {
    const auto target = family_pattern(f);
    for (const auto& p : perms) {
      for (const auto& q : perms) {
        // (P A Q)(i, j) = a(p(i), q^-1(j))
        Permutation q_inv = q.inverse();
        bool match = true;
        for (std::size_t i = 0; i < 3 && match; ++i)
          for (std::size_t j = 0; j < 3 && match; ++j) match = pattern[p(i)][q_inv(j)] == target[i][j];
        if (match) return {T(1) / majority, p, q, to_class(f), T(minority / majority)};
      }
    }
  }
  throw Error(ErrorCode::NoClass, "two-valued matrix is not equivalent to any symmetric class A1..A7");
}

/// Transports a Sinkhorn limit along a witness: S(lambda P A Q) = P S(A) Q.
/// The dilation drops out because S(lambda A) = S(A).
template <class T>
Matrix<T> transport_limit(const Matrix<T>& s, const EquivalenceWitness<T>& w, const T& tol) {
  if (!is_doubly_stochastic(s, tol)) throw Error(ErrorCode::NotDoublyStochastic, "limit to transport is not doubly stochastic");
  return permute_both(w.P, s, w.Q);
}

template <class T>
Matrix<T> transport_limit(const Matrix<T>& s, const EquivalenceWitness<T>& w) {
  if constexpr (ScalarTraits<T>::exact) {
    return transport_limit(s, w, T(0));
  } else {
    return transport_limit(s, w, T(default_stochastic_tolerance(s.rows())));
  }
}

}  // namespace sinkhorn
