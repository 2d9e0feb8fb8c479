#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sinkhorn/error.hpp"
#include "sinkhorn/numerics.hpp"
#include "sinkhorn/polynomial.hpp"

namespace sinkhorn {

/// Sign changes in the coefficient sequence; bounds the number of positive
/// roots (counted with multiplicity) and matches it in parity.
inline std::size_t descartes_positive_bound(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Descartes bound of the zero polynomial");
  return p.sign_variations();
}

/// Descartes bound for the roots of p in the open interval (a, b): sign
/// variations of (x+1)^n p((a + b x)/(1 + x)).
inline std::size_t interval_sign_variations(const Polynomial& p, const BigRational& a, const BigRational& b) {
  Polynomial q = p.taylor_shift(a).scale_argument(b - a);  // p(a + (b-a) x), roots in (0,1)
  return q.reversed().taylor_shift(1).sign_variations();
}

namespace detail {

inline void vca_isolate(const Polynomial& p, const BigRational& a, const BigRational& b,
                        std::vector<RationalInterval>& out) {
  std::size_t v = interval_sign_variations(p, a, b);
  if (v == 0) return;
  if (v == 1) {
    out.emplace_back(a, b);
    return;
  }
  BigRational m = (a + b) / 2;
  vca_isolate(p, a, m, out);
  if (p.sign_at(m) == 0) out.push_back(RationalInterval::point(m));
  vca_isolate(p, m, b, out);
}

inline std::vector<RationalInterval> isolate_direct(const Polynomial& sf, const RationalInterval& iv) {
  std::vector<RationalInterval> out;
  if (sf.degree() < 1 || iv.is_point()) return out;
  vca_isolate(sf, iv.lo, iv.hi, out);
  return out;
}

// Smallest dyadic s = k / 2^bits with s >= sqrt(u) (upper) or largest with s <= sqrt(u).
inline BigRational dyadic_sqrt(const BigRational& u, unsigned bits, bool upper) {
  BigInt scale = pow_int(2, bits);
  BigRational scaled = u * BigRational(scale * scale);
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), floor_of(scaled).get_mpz_t());  // floor(sqrt(floor(u*4^bits)))
  while (BigRational(r * r) > scaled) --r;
  while (BigRational((r + 1) * (r + 1)) <= scaled) ++r;
  if (upper && BigRational(r * r) != scaled) ++r;
  return make_rational(r, scale);
}

/// Maps an isolating interval [u1,u2] of q(u) to one of p(y) = q(y^2), inner
/// to [sqrt(u1), sqrt(u2)] so disjointness carries over.
inline std::optional<RationalInterval> lift_even_interval(const Polynomial& p, const Polynomial& q, RationalInterval u) {
  if (u.is_point()) {
    BigRational r;
    if (exact_sqrt(u.lo, r)) return RationalInterval::point(r);
    return std::nullopt;
  }
  const int s_lo = q.sign_at(u.lo);
  for (unsigned bits = 8; bits < 4096; bits += 8) {
    BigRational s1 = dyadic_sqrt(u.lo, bits, true);
    BigRational s2 = dyadic_sqrt(u.hi, bits, false);
    if (s1 < s2) {
      int a = p.sign_at(s1);
      int b = p.sign_at(s2);
      if (a == 0) return RationalInterval::point(s1);
      if (b == 0) return RationalInterval::point(s2);
      if (a != b) return RationalInterval(s1, s2);
    }
    // Pull the root away from the endpoints and retry at finer resolution.
    BigRational m = u.midpoint();
    int sm = q.sign_at(m);
    if (sm == 0) return lift_even_interval(p, q, RationalInterval::point(m));
    u = (sm == s_lo) ? RationalInterval(m, u.hi) : RationalInterval(u.lo, m);
  }
  return std::nullopt;
}

}  // namespace detail

/// Isolates the real roots of p in the open interval (lo, hi). Returns
/// pairwise-disjoint intervals, each holding exactly one root: either a
/// point [r, r] at an exact rational root or [a, b] with a sign change.
/// Repeated roots are deflated first; even polynomials on a non-negative
/// interval are isolated through u = y^2.
inline std::vector<RationalInterval> isolate_roots_in(const Polynomial& p, const RationalInterval& interval) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot isolate roots of the zero polynomial");
  Polynomial sf = p.squarefree_part();
  if (sf.degree() < 1 || interval.is_point()) return {};

  if (sf.is_even() && sign(interval.lo) >= 0 && sf.degree() >= 2) {
    Polynomial q = sf.even_to_square_argument();
    auto u_intervals = detail::isolate_direct(q, RationalInterval(interval.lo * interval.lo, interval.hi * interval.hi));
    std::vector<RationalInterval> lifted;
    bool ok = true;
    for (const auto& u : u_intervals) {
      auto y = detail::lift_even_interval(sf, q, u);
      if (!y) {
        ok = false;
        break;
      }
      lifted.push_back(*y);
    }
    if (ok) return lifted;
  }
  return detail::isolate_direct(sf, interval);
}

/// Bisects an isolating enclosure until its width is below 10^-digits. An
/// exact rational root met on the way collapses the enclosure to a point.
inline RationalInterval refine_root(const Polynomial& p, RationalInterval iv, unsigned digits) {
  detail::check_isolating(p, iv);
  if (iv.is_point()) return iv;
  if (p.sign_at(iv.lo) == 0) return RationalInterval::point(iv.lo);
  if (p.sign_at(iv.hi) == 0) return RationalInterval::point(iv.hi);
  const BigRational tol = tolerance_for_digits(digits);
  const int s_lo = p.sign_at(iv.lo);
  while (iv.width() >= tol) {
    BigRational m = iv.midpoint();
    int s = p.sign_at(m);
    if (s == 0) return RationalInterval::point(m);
    if (s == s_lo) {
      iv.lo = m;
    } else {
      iv.hi = m;
    }
  }
  return iv;
}

}  // namespace sinkhorn
