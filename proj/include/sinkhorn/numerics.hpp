#pragma once

#include <array>
#include <string>
#include <utility>

#include "sinkhorn/error.hpp"
#include "sinkhorn/polynomial.hpp"
#include "sinkhorn/rational.hpp"

namespace sinkhorn {

// ---------------------------------------------------------------------------
// Rational intervals
// ---------------------------------------------------------------------------

struct RationalInterval {
  BigRational lo;
  BigRational hi;

  RationalInterval() = default;
  RationalInterval(BigRational l, BigRational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw Error(ErrorCode::Parse, "interval with lo > hi");
  }
  static RationalInterval point(const BigRational& x) { return {x, x}; }

  BigRational width() const { return hi - lo; }
  BigRational midpoint() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const BigRational& x) const { return lo <= x && x <= hi; }

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

inline BigRational pow10(unsigned digits) { return BigRational(pow_int(10, digits)); }
inline BigRational tolerance_for_digits(unsigned digits) { return BigRational(1) / pow10(digits); }

/// One bisection step toward the root of a monotone predicate: keeps the half
/// on which `below(mid)` flips. The returned width is exactly half the input.
template <class Below>
RationalInterval bisect_once(const RationalInterval& iv, Below&& below) {
  BigRational mid = iv.midpoint();
  if (below(mid)) return {mid, iv.hi};
  return {iv.lo, mid};
}

/// Enclosure of sqrt(value) (value >= 0) after `steps` bisections of
/// [0, max(1, value)].
inline RationalInterval sqrt_enclosure(const BigRational& value, unsigned steps) {
  RationalInterval iv(0, value > 1 ? value : BigRational(1));
  for (unsigned i = 0; i < steps; ++i) iv = bisect_once(iv, [&](const BigRational& m) { return m * m < value; });
  return iv;
}

/// Enclosure of value^(1/3) (value > 0) after `steps` bisections.
inline RationalInterval cbrt_enclosure(const BigRational& value, unsigned steps) {
  RationalInterval iv(0, value > 1 ? value : BigRational(1));
  for (unsigned i = 0; i < steps; ++i) iv = bisect_once(iv, [&](const BigRational& m) { return m * m * m < value; });
  return iv;
}

// ---------------------------------------------------------------------------
// Quadratic surds p + q*sqrt(D)
// ---------------------------------------------------------------------------

namespace detail {

/// Writes d = s^2 * f with f square-free. Trial division runs while
/// divisor^3 <= remaining cofactor; what is left then has at most two prime
/// factors, so a perfect-square test finishes the split exactly.
inline void split_square_factor(const BigInt& d, BigInt& square_root_part, BigInt& free_part) {
  square_root_part = 1;
  free_part = 1;
  if (d == 0) {
    free_part = 0;
    return;
  }
  BigInt rest = d;
  auto strip = [&](const BigInt& p) {
    unsigned count = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++count;
    }
    for (unsigned i = 0; i < count / 2; ++i) square_root_part *= p;
    if (count % 2 == 1) free_part *= p;
  };
  strip(2);
  for (BigInt p = 3; p * p * p <= rest; p += 2) strip(p);
  BigInt r;
  if (rest > 1 && exact_root(rest, 2, r)) {
    square_root_part *= r;
  } else {
    free_part *= rest;
  }
}

}  // namespace detail

class QuadraticSurd {
 public:
  QuadraticSurd() : p_(0), q_(0), d_(0) {}
  QuadraticSurd(BigRational p) : p_(std::move(p)), q_(0), d_(0) {}  // NOLINT: rational embedding
  QuadraticSurd(int p) : QuadraticSurd(BigRational(p)) {}           // NOLINT
  QuadraticSurd(BigRational p, BigRational q, BigInt radicand) : p_(std::move(p)), q_(std::move(q)), d_(std::move(radicand)) {
    canonicalize();
  }

  /// sqrt(r) for rational r >= 0, as q*sqrt(D) with square-free D.
  static QuadraticSurd sqrt_of(const BigRational& r) {
    if (sinkhorn::sign(r) < 0) throw Error(ErrorCode::Unsupported, "square root of a negative rational");
    // sqrt(u/v) = sqrt(u*v)/v
    const BigInt& v = r.get_den();
    return QuadraticSurd(0, BigRational(1) / BigRational(v), r.get_num() * v);
  }

  const BigRational& rational_part() const { return p_; }
  const BigRational& surd_coefficient() const { return q_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return q_ == 0; }

  QuadraticSurd conjugate() const { return QuadraticSurd(p_, -q_, d_); }
  /// (p + q sqrt D)(p - q sqrt D)
  BigRational norm() const { return p_ * p_ - q_ * q_ * BigRational(d_); }

  int sign() const {
    int sp = sinkhorn::sign(p_);
    int sq = sinkhorn::sign(q_);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // Opposite signs: compare p^2 with q^2 D.
    BigRational lhs = p_ * p_;
    BigRational rhs = q_ * q_ * BigRational(d_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sp : sq;
  }

  friend QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b) {
    BigInt d = common_radicand(a, b);
    return QuadraticSurd(a.p_ + b.p_, a.q_ + b.q_, d);
  }
  friend QuadraticSurd operator-(const QuadraticSurd& a) { return QuadraticSurd(-a.p_, -a.q_, a.d_); }
  friend QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b) { return a + (-b); }
  friend QuadraticSurd operator*(const QuadraticSurd& a, const QuadraticSurd& b) {
    BigInt d = common_radicand(a, b);
    BigRational dr(d);
    return QuadraticSurd(a.p_ * b.p_ + a.q_ * b.q_ * dr, a.p_ * b.q_ + a.q_ * b.p_, d);
  }
  friend QuadraticSurd operator/(const QuadraticSurd& a, const QuadraticSurd& b) {
    BigRational n = b.norm();
    if (n == 0) throw Error(ErrorCode::DivisionByZero, "division by zero surd");
    QuadraticSurd num = a * b.conjugate();
    return QuadraticSurd(num.p_ / n, num.q_ / n, num.d_);
  }
  QuadraticSurd& operator+=(const QuadraticSurd& o) { return *this = *this + o; }
  QuadraticSurd& operator-=(const QuadraticSurd& o) { return *this = *this - o; }
  QuadraticSurd& operator*=(const QuadraticSurd& o) { return *this = *this * o; }
  QuadraticSurd& operator/=(const QuadraticSurd& o) { return *this = *this / o; }

  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_;
  }
  friend bool operator<(const QuadraticSurd& a, const QuadraticSurd& b) { return (a - b).sign() < 0; }

  /// Normalized text "(P + Q*sqrt(D))/R" with integers P, Q, R (R > 0,
  /// sign of Q folded into the operator). A unit Q, R = 1 and P = 0 are
  /// elided, so 1/sqrt(6) prints as "sqrt(6)/6"; rationals print as "p/q".
  std::string to_string() const {
    if (is_rational()) return sinkhorn::to_string(p_);
    BigInt r;
    mpz_lcm(r.get_mpz_t(), p_.get_den_mpz_t(), q_.get_den_mpz_t());
    BigRational rr(r);
    BigInt big_p = BigRational(p_ * rr).get_num();
    BigInt big_q = BigRational(q_ * rr).get_num();
    std::string surd = "sqrt(" + d_.get_str() + ")";
    const BigInt qabs = ::abs(big_q);
    std::string qmag = (qabs == 1 ? std::string() : qabs.get_str() + "*") + surd;
    std::string body;
    if (big_p == 0) {
      body = (big_q < 0 ? "-" : "") + qmag;
      return r == 1 ? body : body + "/" + r.get_str();
    }
    body = big_p.get_str() + (big_q < 0 ? " - " : " + ") + qmag;
    return r == 1 ? body : "(" + body + ")/" + r.get_str();
  }

 private:
  static BigInt common_radicand(const QuadraticSurd& a, const QuadraticSurd& b) {
    if (a.is_rational()) return b.d_;
    if (b.is_rational()) return a.d_;
    if (a.d_ != b.d_) throw Error(ErrorCode::FieldMismatch, "surds live in different quadratic fields");
    return a.d_;
  }

  void canonicalize() {
    if (d_ < 0) throw Error(ErrorCode::Unsupported, "negative radicand");
    BigInt s, f;
    detail::split_square_factor(d_, s, f);
    q_ *= BigRational(s);
    d_ = f;
    if (d_ == 1) {
      p_ += q_;
      q_ = 0;
    }
    if (d_ == 0) q_ = 0;
    if (q_ == 0) d_ = 0;
  }

  BigRational p_;
  BigRational q_;
  BigInt d_;
};

/// Rational within 10^-precision of the surd's value. Bisection on t^2 = D
/// with rational endpoints; the evaluated enclosure's midpoint is returned.
inline BigRational surd_eval(const QuadraticSurd& s, unsigned precision) {
  if (s.is_rational()) return s.rational_part();
  const BigRational tol = tolerance_for_digits(precision);
  const BigRational d(s.radicand());
  const BigRational qa = abs(s.surd_coefficient());
  RationalInterval t(0, d > 1 ? d : BigRational(1));
  while (qa * t.width() >= tol) t = bisect_once(t, [&](const BigRational& m) { return m * m < d; });
  return s.rational_part() + s.surd_coefficient() * t.midpoint();
}

inline double to_double(const QuadraticSurd& s) { return to_double(surd_eval(s, 20)); }

// ---------------------------------------------------------------------------
// Cubic field elements c0 + c1 t + c2 t^2, t^3 = K
// ---------------------------------------------------------------------------

class CubicFieldElement {
 public:
  CubicFieldElement() : CubicFieldElement(0, 0, 0, 2) {}
  CubicFieldElement(BigRational c0, BigRational c1, BigRational c2, BigRational k)
      : c_{std::move(c0), std::move(c1), std::move(c2)}, k_(std::move(k)) {
    if (sinkhorn::sign(k_) <= 0) throw Error(ErrorCode::Unsupported, "cubic field generator needs K > 0");
    BigRational root;
    if (exact_cube_root(k_, root)) {
      // Q(K^(1/3)) = Q: collapse to the rational embedding.
      rational_embedding_ = true;
      c_[0] = c_[0] + c_[1] * root + c_[2] * root * root;
      c_[1] = 0;
      c_[2] = 0;
    }
  }

  static CubicFieldElement rational(const BigRational& value, const BigRational& k) { return {value, 0, 0, k}; }
  static CubicFieldElement generator(const BigRational& k) { return {0, 1, 0, k}; }

  const BigRational& coefficient(std::size_t i) const { return c_.at(i); }
  const BigRational& generator_cube() const { return k_; }
  bool is_rational_embedding() const { return rational_embedding_; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0; }

  friend CubicFieldElement operator+(const CubicFieldElement& a, const CubicFieldElement& b) {
    check_field(a, b);
    return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.k_};
  }
  friend CubicFieldElement operator-(const CubicFieldElement& a) { return {-a.c_[0], -a.c_[1], -a.c_[2], a.k_}; }
  friend CubicFieldElement operator-(const CubicFieldElement& a, const CubicFieldElement& b) { return a + (-b); }
  friend CubicFieldElement operator*(const CubicFieldElement& a, const CubicFieldElement& b) {
    check_field(a, b);
    const auto& x = a.c_;
    const auto& y = b.c_;
    const BigRational& k = a.k_;
    return {x[0] * y[0] + k * (x[1] * y[2] + x[2] * y[1]),
            x[0] * y[1] + x[1] * y[0] + k * x[2] * y[2],
            x[0] * y[2] + x[1] * y[1] + x[2] * y[0], k};
  }
  friend CubicFieldElement operator*(const BigRational& s, const CubicFieldElement& a) {
    return {s * a.c_[0], s * a.c_[1], s * a.c_[2], a.k_};
  }
  friend CubicFieldElement operator/(const CubicFieldElement& a, const BigRational& s) {
    if (s == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
    return (BigRational(1) / s) * a;
  }

  /// Multiplicative inverse via the adjugate of the multiplication-by-x
  /// matrix (norm form of the pure cubic field).
  CubicFieldElement inverse() const {
    const auto& x = c_;
    const BigRational& k = k_;
    BigRational u0 = x[0] * x[0] - k * x[1] * x[2];
    BigRational u1 = k * x[2] * x[2] - x[0] * x[1];
    BigRational u2 = x[1] * x[1] - x[0] * x[2];
    BigRational n = x[0] * u0 + k * (x[1] * u2 + x[2] * u1);
    if (n == 0) throw Error(ErrorCode::DivisionByZero, "zero has no inverse");
    return {u0 / n, u1 / n, u2 / n, k};
  }

  friend bool operator==(const CubicFieldElement& a, const CubicFieldElement& b) {
    return a.k_ == b.k_ && a.c_ == b.c_;
  }

  /// Descending powers, e.g. "2^(2/3) - 2^(1/3)" or "1/2*3^(2/3) - 1".
  std::string to_string() const {
    std::string base = is_integer(k_) ? k_.get_str() : "(" + k_.get_str() + ")";
    const std::string powers[3] = {"", base + "^(1/3)", base + "^(2/3)"};
    std::string out;
    for (int i = 2; i >= 0; --i) {
      const BigRational& c = c_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      BigRational mag = abs(c);
      if (out.empty()) {
        if (sinkhorn::sign(c) < 0) out += "-";
      } else {
        out += sinkhorn::sign(c) < 0 ? " - " : " + ";
      }
      if (i == 0) {
        out += sinkhorn::to_string(mag);
      } else if (mag == 1) {
        out += powers[i];
      } else {
        out += sinkhorn::to_string(mag) + "*" + powers[i];
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  static void check_field(const CubicFieldElement& a, const CubicFieldElement& b) {
    if (a.k_ != b.k_) throw Error(ErrorCode::FieldMismatch, "cubic field elements with different K");
  }

  std::array<BigRational, 3> c_;
  BigRational k_;
  bool rational_embedding_ = false;
};

/// Rational within 10^-precision of c0 + c1 K^(1/3) + c2 K^(2/3).
inline BigRational cubic_eval(const CubicFieldElement& c, unsigned precision) {
  if (c.is_rational()) return c.coefficient(0);
  const BigRational tol = tolerance_for_digits(precision);
  const BigRational& k = c.generator_cube();
  RationalInterval t(0, k > 1 ? k : BigRational(1));
  auto value_range = [&](const RationalInterval& iv) {
    // t > 0, so t and t^2 are monotone on the enclosure.
    BigRational a1 = c.coefficient(1) * iv.lo, b1 = c.coefficient(1) * iv.hi;
    BigRational a2 = c.coefficient(2) * iv.lo * iv.lo, b2 = c.coefficient(2) * iv.hi * iv.hi;
    BigRational lo = c.coefficient(0) + (a1 < b1 ? a1 : b1) + (a2 < b2 ? a2 : b2);
    BigRational hi = c.coefficient(0) + (a1 < b1 ? b1 : a1) + (a2 < b2 ? b2 : a2);
    return RationalInterval(lo, hi);
  };
  RationalInterval v = value_range(t);
  while (v.width() >= tol) {
    t = bisect_once(t, [&](const BigRational& m) { return m * m * m < k; });
    v = value_range(t);
  }
  return v.midpoint();
}

inline double to_double(const CubicFieldElement& c) { return to_double(cubic_eval(c, 20)); }

// ---------------------------------------------------------------------------
// Certified floor of an isolated algebraic number
// ---------------------------------------------------------------------------

struct CertifiedFloor {
  BigInt floor;
  bool exact_integer = false;    // the root is exactly `floor`
  bool exact_rational = false;   // an exact rational root was hit during refinement
  BigRational rational_root;     // valid when exact_rational
  RationalInterval enclosure;    // floor(lo) == floor(hi) at return, or a point
};

namespace detail {

inline void check_isolating(const Polynomial& p, const RationalInterval& iv) {
  int slo = p.sign_at(iv.lo);
  int shi = p.sign_at(iv.hi);
  if (iv.is_point()) {
    if (slo != 0) throw Error(ErrorCode::NonIsolating, "point enclosure is not a root");
    return;
  }
  if (slo != 0 && shi != 0 && slo == shi) {
    throw Error(ErrorCode::NonIsolating, "no sign change of " + p.to_string() + " on [" + to_string(iv.lo) + ", " +
                                             to_string(iv.hi) + "]");
  }
}

}  // namespace detail

/// Refines the enclosure until the floor of the root is determined. Splits
/// at integers inside the enclosure first (which also detects an exact
/// integer root), then bisects until the upper end leaves the integer grid.
inline CertifiedFloor certified_floor(const Polynomial& p, RationalInterval iv) {
  detail::check_isolating(p, iv);
  CertifiedFloor out;
  auto finish_exact = [&](const BigRational& root) {
    out.exact_rational = true;
    out.rational_root = root;
    out.floor = floor_of(root);
    out.exact_integer = is_integer(root);
    out.enclosure = RationalInterval::point(root);
    return out;
  };
  if (p.sign_at(iv.lo) == 0) return finish_exact(iv.lo);
  if (p.sign_at(iv.hi) == 0) return finish_exact(iv.hi);
  const int s_lo = p.sign_at(iv.lo);
  // The root lies strictly inside, so an integer upper end does not count.
  auto upper_floor = [](const BigRational& h) { return is_integer(h) ? BigInt(floor_of(h) - 1) : floor_of(h); };

  while (floor_of(iv.lo) != upper_floor(iv.hi)) {
    BigRational split;
    BigInt first_inner = floor_of(iv.lo) + 1;
    if (BigRational(first_inner) < iv.hi) {
      // Integer split; prefer one near the middle for wide enclosures.
      BigInt mid_int = floor_of(iv.midpoint());
      split = BigRational(mid_int > first_inner ? mid_int : first_inner);
    } else {
      split = iv.midpoint();
    }
    int s = p.sign_at(split);
    if (s == 0) return finish_exact(split);
    if (s == s_lo) {
      iv.lo = split;
    } else {
      iv.hi = split;
    }
  }
  // Pull an integer upper end inside so that floor(lo) == floor(hi) literally.
  while (is_integer(iv.hi)) {
    BigRational m = iv.midpoint();
    int s = p.sign_at(m);
    if (s == 0) return finish_exact(m);
    if (s == s_lo) {
      iv.lo = m;
    } else {
      iv.hi = m;
    }
  }
  out.floor = floor_of(iv.lo);
  out.enclosure = iv;
  return out;
}

/// floor of the unique root of p inside the enclosure.
inline BigInt algebraic_floor(const Polynomial& p, const RationalInterval& enclosure) {
  return certified_floor(p, enclosure).floor;
}

}  // namespace sinkhorn
