#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sinkhorn/error.hpp"
#include "sinkhorn/rational.hpp"

namespace sinkhorn {

/// Scalar policy for the two matrix modes. Exact scalars compare with ==,
/// float scalars carry a roundoff-aware tolerance.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static BigRational to_rational(double x) { return from_double(x); }
  static double sqrt(double x) { return std::sqrt(x); }
};

template <>
struct ScalarTraits<BigRational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "rational";
  static BigRational abs(const BigRational& x) { return BigRational(::abs(x)); }
  static double to_double(const BigRational& x) { return x.get_d(); }
  static BigRational to_rational(const BigRational& x) { return x; }
};

/// Dense row-major matrix. Scaling operators require strictly positive
/// entries; the container itself admits any values so signed check-only
/// sums remain expressible.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    std::vector<std::vector<T>> v;
    for (const auto& r : rows) v.emplace_back(r);
    *this = from_rows(v);
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty() || rows.front().empty()) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool all_positive() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x > 0; });
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix out = m;
    for (auto& x : out.data_) x = s * x;
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<double> to_double(const Matrix<T>& m) {
  return m.map([](const T& x) { return ScalarTraits<T>::to_double(x); });
}

inline Matrix<BigRational> to_rational(const Matrix<double>& m) {
  return m.map([](double x) { return from_double(x); });
}

/// Largest entrywise |a - b| (as double).
template <class T, class U>
double max_abs_diff(const Matrix<T>& a, const Matrix<U>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "shape mismatch");
  double worst = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::fabs(ScalarTraits<T>::to_double(a(i, j)) - ScalarTraits<U>::to_double(b(i, j))));
  return worst;
}

// ---------------------------------------------------------------------------
// Diagonal scalings
// ---------------------------------------------------------------------------

template <class T>
struct DiagonalScaling {
  std::vector<T> values;

  static DiagonalScaling ones(std::size_t n) { return {std::vector<T>(n, T(1))}; }
  std::size_t size() const { return values.size(); }
  const T& operator[](std::size_t i) const { return values[i]; }

  /// Componentwise product; diagonal matrices commute.
  DiagonalScaling& operator*=(const DiagonalScaling& other) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = values[i] * other.values[i];
    return *this;
  }

  friend bool operator==(const DiagonalScaling&, const DiagonalScaling&) = default;
};

/// X A Y for diagonal X, Y.
template <class T>
Matrix<T> apply_scaling(const DiagonalScaling<T>& x, const Matrix<T>& a, const DiagonalScaling<T>& y) {
  if (x.size() != a.rows() || y.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "scaling size mismatch");
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = x[i] * a(i, j) * y[j];
  return out;
}

// ---------------------------------------------------------------------------
// Row and column sums, one-sided scalings
// ---------------------------------------------------------------------------

// Check-only helpers: valid for signed matrices too.
template <class T>
std::vector<T> row_sums(const Matrix<T>& a) {
  std::vector<T> s(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s[i] += a(i, j);
  return s;
}

template <class T>
std::vector<T> col_sums(const Matrix<T>& a) {
  std::vector<T> s(a.cols(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s[j] += a(i, j);
  return s;
}

template <class T>
void require_positive(const Matrix<T>& a) {
  if (!a.all_positive()) throw Error(ErrorCode::NonPositive, "matrix has a non-positive entry");
}

template <class T>
struct ScaledMatrix {
  DiagonalScaling<T> scaling;
  Matrix<T> matrix;
};

/// R(A) = X(A) A with X(A) = diag(1 / row_i(A)).
template <class T>
ScaledMatrix<T> row_scale(const Matrix<T>& a) {
  require_positive(a);
  auto sums = row_sums(a);
  DiagonalScaling<T> x;
  x.values.reserve(sums.size());
  for (const auto& s : sums) x.values.push_back(T(1) / s);
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) / sums[i];
  return {std::move(x), std::move(out)};
}

/// C(A) = A Y(A) with Y(A) = diag(1 / col_j(A)).
template <class T>
ScaledMatrix<T> col_scale(const Matrix<T>& a) {
  require_positive(a);
  auto sums = col_sums(a);
  DiagonalScaling<T> y;
  y.values.reserve(sums.size());
  for (const auto& s : sums) y.values.push_back(T(1) / s);
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) / sums[j];
  return {std::move(y), std::move(out)};
}

/// Default float tolerance for stochasticity checks: 1e-12 * n.
inline double default_stochastic_tolerance(std::size_t n) { return 1e-12 * static_cast<double>(n); }

/// max over all row and column sums of |sum - 1|.
template <class T>
T stochastic_residual(const Matrix<T>& a) {
  T worst = T(0);
  for (const auto& s : row_sums(a)) worst = std::max<T>(worst, ScalarTraits<T>::abs(s - T(1)));
  for (const auto& s : col_sums(a)) worst = std::max<T>(worst, ScalarTraits<T>::abs(s - T(1)));
  return worst;
}

template <class T>
bool is_row_stochastic(const Matrix<T>& a, const T& tol) {
  for (const auto& s : row_sums(a))
    if (ScalarTraits<T>::abs(s - T(1)) > tol) return false;
  return true;
}

template <class T>
bool is_col_stochastic(const Matrix<T>& a, const T& tol) {
  for (const auto& s : col_sums(a))
    if (ScalarTraits<T>::abs(s - T(1)) > tol) return false;
  return true;
}

/// Non-square matrices are never doubly stochastic (row and column totals
/// would be m and n).
template <class T>
bool is_doubly_stochastic(const Matrix<T>& a, const T& tol) {
  return a.is_square() && !(stochastic_residual(a) > tol);
}

template <class T>
bool is_doubly_stochastic(const Matrix<T>& a) {
  if constexpr (ScalarTraits<T>::exact) {
    return is_doubly_stochastic(a, T(0));
  } else {
    return is_doubly_stochastic(a, T(default_stochastic_tolerance(a.rows())));
  }
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// Bijection of {0..n-1}; P_sigma has (P_sigma)_{i,j} = 1 iff j = sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
    std::vector<bool> seen(map_.size(), false);
    for (auto v : map_) {
      if (v >= map_.size() || seen[v]) throw Error(ErrorCode::Parse, "mapping is not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
  }

  static Permutation from_one_based(const std::vector<std::size_t>& images) {
    std::vector<std::size_t> m;
    for (auto v : images) {
      if (v == 0) throw Error(ErrorCode::Parse, "one-based permutation contains 0");
      m.push_back(v - 1);
    }
    return Permutation(std::move(m));
  }

  /// Cycle (c1 c2 ... ck) in one-based notation: c1 -> c2 -> ... -> ck -> c1.
  static Permutation cycle(std::size_t n, const std::vector<std::size_t>& one_based_cycle) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), 0);
    for (std::size_t i = 0; i < one_based_cycle.size(); ++i) {
      std::size_t from = one_based_cycle[i] - 1;
      std::size_t to = one_based_cycle[(i + 1) % one_based_cycle.size()] - 1;
      if (from >= n || to >= n) throw Error(ErrorCode::DimensionMismatch, "cycle element out of range");
      m[from] = to;
    }
    return Permutation(std::move(m));
  }

  /// All permutations of size n in lexicographic order of their images.
  static std::vector<Permutation> all(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), 0);
    std::vector<Permutation> out;
    do {
      out.emplace_back(m);
    } while (std::next_permutation(m.begin(), m.end()));
    return out;
  }

  std::size_t size() const { return map_.size(); }
  std::size_t operator()(std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& mapping() const { return map_; }

  std::vector<std::size_t> one_based() const {
    std::vector<std::size_t> out;
    for (auto v : map_) out.push_back(v + 1);
    return out;
  }

  Permutation inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] != i) return false;
    return true;
  }

  template <class T>
  Matrix<T> matrix() const {
    Matrix<T> p(map_.size(), map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) p(i, map_[i]) = T(1);
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// Permutation whose matrix is P_sigma * P_tau, i.e. tau after sigma.
inline Permutation perm_compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) throw Error(ErrorCode::DimensionMismatch, "composing permutations of different sizes");
  std::vector<std::size_t> m(sigma.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = tau(sigma(i));
  return Permutation(std::move(m));
}

enum class Side { Left, Right };

/// Left: P_sigma A, row i of the result is row sigma(i) of A.
/// Right: A P_{sigma^-1}, column j of the result is column sigma(j) of A.
template <class T>
Matrix<T> perm_matrix_apply(const Permutation& sigma, const Matrix<T>& a, Side side) {
  Matrix<T> out = a;
  if (side == Side::Left) {
    if (sigma.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "row permutation size mismatch");
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(sigma(i), j);
  } else {
    if (sigma.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "column permutation size mismatch");
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, sigma(j));
  }
  return out;
}

/// P_sigma A P_tau as permutation matrices (entry (i,j) = a(sigma(i), tau^-1(j))).
template <class T>
Matrix<T> permute_both(const Permutation& sigma, const Matrix<T>& a, const Permutation& tau) {
  return perm_matrix_apply(tau.inverse(), perm_matrix_apply(sigma, a, Side::Left), Side::Right);
}

}  // namespace sinkhorn
