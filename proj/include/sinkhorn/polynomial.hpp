#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sinkhorn/error.hpp"
#include "sinkhorn/rational.hpp"

namespace sinkhorn {

/// Univariate polynomial with exact rational coefficients, stored in
/// ascending degree. Trailing zero coefficients are always stripped, so the
/// zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigRational> ascending) : coeffs_(std::move(ascending)) { trim(); }
  Polynomial(std::initializer_list<BigRational> ascending) : coeffs_(ascending) { trim(); }

  static Polynomial constant(const BigRational& c) { return Polynomial({c}); }
  static Polynomial monomial(const BigRational& c, std::size_t degree) {
    std::vector<BigRational> v(degree + 1, BigRational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigRational>& coefficients() const { return coeffs_; }

  BigRational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigRational(0); }
  const BigRational& leading() const {
    if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no leading coefficient");
    return coeffs_.back();
  }

  BigRational operator()(const BigRational& x) const {
    BigRational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  int sign_at(const BigRational& x) const { return sign((*this)(x)); }

  Polynomial derivative() const {
    std::vector<BigRational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    Polynomial out = *this;
    BigRational lc = leading();
    for (auto& c : out.coeffs_) c /= lc;
    return out;
  }

  // p(x + a)
  Polynomial taylor_shift(const BigRational& a) const {
    std::vector<BigRational> c = coeffs_;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
    }
    return Polynomial(std::move(c));
  }

  // p(s * x)
  Polynomial scale_argument(const BigRational& s) const {
    std::vector<BigRational> c = coeffs_;
    BigRational power = 1;
    for (auto& ci : c) {
      ci *= power;
      power *= s;
    }
    return Polynomial(std::move(c));
  }

  // x^deg * p(1/x)
  Polynomial reversed() const {
    std::vector<BigRational> c(coeffs_.rbegin(), coeffs_.rend());
    return Polynomial(std::move(c));
  }

  bool is_even() const {
    for (std::size_t i = 1; i < coeffs_.size(); i += 2) {
      if (coeffs_[i] != 0) return false;
    }
    return true;
  }

  /// For an even p(y) returns q with p(y) = q(y^2).
  Polynomial even_to_square_argument() const {
    if (!is_even()) throw Error(ErrorCode::Unsupported, "polynomial is not even");
    std::vector<BigRational> c;
    for (std::size_t i = 0; i < coeffs_.size(); i += 2) c.push_back(coeffs_[i]);
    return Polynomial(std::move(c));
  }

  /// Number of sign changes in the coefficient sequence, zeros skipped.
  std::size_t sign_variations() const {
    std::size_t changes = 0;
    int last = 0;
    for (const auto& c : coeffs_) {
      int s = sign(c);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<BigRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigRational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a) {
    Polynomial out = a;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRational> c(a.coeffs_.size() + b.coeffs_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const BigRational& s, const Polynomial& p) { return Polynomial::constant(s) * p; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    std::vector<BigRational> rem = a.coeffs_;
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<BigRational> quot(a.coeffs_.size() - b.coeffs_.size() + 1, BigRational(0));
    const BigRational& lead = b.coeffs_.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
      BigRational factor = rem[k + b.coeffs_.size() - 1] / lead;
      quot[k] = factor;
      if (factor == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[k + j] -= factor * b.coeffs_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// Monic greatest common divisor.
  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// p / gcd(p, p'), which has the same real roots with multiplicity one.
  Polynomial squarefree_part() const {
    if (degree() < 1) return *this;
    Polynomial g = gcd(*this, derivative());
    if (g.degree() < 1) return *this;
    return divmod(*this, g).first;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const BigRational& c = coeffs_[k];
      if (c == 0) continue;
      BigRational mag = abs(c);
      if (out.empty()) {
        if (sign(c) < 0) out += "-";
      } else {
        out += sign(c) < 0 ? " - " : " + ";
      }
      bool unit = mag == 1 && k > 0;
      if (!unit) out += sinkhorn::to_string(mag);
      if (k > 0) {
        if (!unit) out += "*";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigRational> coeffs_;
};

}  // namespace sinkhorn
