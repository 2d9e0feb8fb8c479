#pragma once

#include <array>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "sinkhorn/error.hpp"
#include "sinkhorn/families.hpp"
#include "sinkhorn/numerics.hpp"
#include "sinkhorn/polynomial.hpp"
#include "sinkhorn/roots.hpp"
#include "sinkhorn/scaling.hpp"

namespace sinkhorn {

// ---------------------------------------------------------------------------
// Rational approximants to K^(1/3) from the A6 iteration
// ---------------------------------------------------------------------------

struct ApproximantRow {
  std::size_t step = 0;  // elementary step, row scaling first
  BigRational a13, a22, a31;
  std::array<BigRational, 3> cbrt_estimates;  // (K-1) a + 1 for a13, a22, a31
  BigRational ratio_estimate;                 // a11 / a13
};

struct ApproximantTable {
  BigInt K;
  bool perfect_cube = false;
  std::vector<ApproximantRow> rows;
};

/// Exact A6(K) iterates. Entries (1,3), (2,2), (3,1) all converge to
/// (K^(1/3) - 1)/(K - 1), so (K-1) a + 1 approximates K^(1/3).
inline ApproximantTable cbrt_approximants(const BigInt& k, std::size_t steps) {
  if (k < 2) throw Error(ErrorCode::Parse, "K must be an integer >= 2");
  ApproximantTable table;
  table.K = k;
  BigInt root;
  table.perfect_cube = exact_root(k, 3, root);
  const BigRational kr(k);
  auto trace = sinkhorn_iterate(family_matrix(Family::A6, kr), steps);
  for (std::size_t s = 0; s < trace.size(); ++s) {
    const auto& m = trace.snapshots[s];
    ApproximantRow row;
    row.step = s + 1;
    row.a13 = m(0, 2);
    row.a22 = m(1, 1);
    row.a31 = m(2, 0);
    row.cbrt_estimates = {(kr - 1) * row.a13 + 1, (kr - 1) * row.a22 + 1, (kr - 1) * row.a31 + 1};
    row.ratio_estimate = m(0, 0) / m(0, 2);
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// (t + 1)^3 - K, whose unique real root is K^(1/3) - 1.
inline Polynomial cbrt_minus_one_polynomial(const BigRational& k) {
  return Polynomial({1 - k, 3, 3, 1});
}

inline Polynomial cbrt_polynomial(const BigRational& k) { return Polynomial({-k, 0, 0, 1}); }

// ---------------------------------------------------------------------------
// Continued fractions of real algebraic numbers
// ---------------------------------------------------------------------------

struct ContinuedFraction {
  std::vector<BigInt> terms;
  std::vector<BigRational> convergents;  // p_i / q_i after terms[0..i]
  std::vector<RationalInterval> certificates;  // enclosure of the i-th complete quotient at emission
  bool finite = false;  // the root was detected to be rational; expansion is complete
};

/// Partial quotients of the root of p isolated by `enclosure`. Each term is
/// emitted only once the floor of the current complete quotient is certified;
/// the polynomial is then carried to x -> 1/(x - a) by exact transforms.
inline ContinuedFraction cfrac_algebraic(Polynomial p, RationalInterval enclosure, std::size_t n_terms) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "continued fraction of the zero polynomial");
  p = p.squarefree_part();
  ContinuedFraction cf;
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (std::size_t i = 0; i < n_terms; ++i) {
    CertifiedFloor fl = certified_floor(p, enclosure);
    const BigInt& a = fl.floor;
    cf.terms.push_back(a);
    cf.certificates.push_back(fl.enclosure);
    BigInt pi = a * p_prev + p_prev2;
    BigInt qi = a * q_prev + q_prev2;
    cf.convergents.push_back(make_rational(pi, qi));
    p_prev2 = p_prev;
    p_prev = pi;
    q_prev2 = q_prev;
    q_prev = qi;
    if (fl.exact_integer) {
      cf.finite = true;
      break;
    }
    // Tighten until the root sits strictly above a, then map x -> 1/(x - a).
    RationalInterval iv = fl.exact_rational ? fl.enclosure : fl.enclosure;
    if (fl.exact_rational) {
      // Continue exactly on the rational value.
      BigRational frac = fl.rational_root - BigRational(a);
      BigRational next = 1 / frac;
      p = Polynomial({-next, 1});
      enclosure = RationalInterval::point(next);
      continue;
    }
    while (iv.lo <= BigRational(a)) {
      BigRational m = iv.midpoint();
      int s = p.sign_at(m);
      if (s == 0) {
        iv = RationalInterval::point(m);
        break;
      }
      if (s == p.sign_at(iv.lo)) {
        iv.lo = m;
      } else {
        iv.hi = m;
      }
    }
    // q(x) = x^deg p(a + 1/x)
    p = p.taylor_shift(BigRational(a)).reversed();
    if (iv.is_point()) {
      enclosure = RationalInterval::point(1 / (iv.lo - BigRational(a)));
    } else {
      enclosure = RationalInterval(1 / (iv.hi - BigRational(a)), 1 / (iv.lo - BigRational(a)));
    }
  }
  return cf;
}

// ---------------------------------------------------------------------------
// Comparison report
// ---------------------------------------------------------------------------

struct ApproximationError {
  BigRational estimate;
  RationalInterval error;  // certified enclosure of |estimate - target|
  std::size_t denominator_digits = 0;
};

struct ReportEntry {
  std::size_t step = 0;
  std::array<ApproximationError, 3> from_entries;  // a13, a22, a31 (times K-1)
};

struct ComparisonReport {
  BigInt K;
  unsigned digits = 10;
  RationalInterval target;  // enclosure of K^(1/3) - 1
  std::vector<ReportEntry> sinkhorn;
  std::vector<BigInt> cf_terms;
  std::vector<ApproximationError> convergents;

  std::string to_text() const;
};

namespace detail {

inline ApproximationError certify_error(const BigRational& estimate, const RationalInterval& target) {
  BigRational d1 = abs(BigRational(estimate - target.lo));
  BigRational d2 = abs(BigRational(estimate - target.hi));
  ApproximationError e;
  e.estimate = estimate;
  if (target.contains(estimate)) {
    e.error = RationalInterval(0, d1 > d2 ? d1 : d2);
  } else {
    e.error = d1 < d2 ? RationalInterval(d1, d2) : RationalInterval(d2, d1);
  }
  e.denominator_digits = decimal_digits(estimate.get_den());
  return e;
}

}  // namespace detail

/// Sinkhorn-derived estimates of K^(1/3) - 1 next to the continued-fraction
/// convergents of the same number, each with a certified absolute error.
inline ComparisonReport compare_report(const BigInt& k, std::size_t steps, std::size_t cf_terms, unsigned digits = 10) {
  ComparisonReport rep;
  rep.K = k;
  rep.digits = digits;
  const BigRational kr(k);
  BigInt root;
  if (exact_root(k, 3, root)) throw Error(ErrorCode::Unsupported, "K is a perfect cube; the target is rational");

  Polynomial target_poly = cbrt_minus_one_polynomial(kr);
  RationalInterval start(0, kr);
  auto isolated = isolate_roots_in(target_poly, start);
  if (isolated.size() != 1) throw Error(ErrorCode::NonIsolating, "could not isolate K^(1/3) - 1");

  auto table = cbrt_approximants(k, steps);
  // The target enclosure must be far tighter than the smallest error reported.
  unsigned target_digits = digits + 20;
  for (const auto& row : table.rows) {
    for (const auto& v : {row.a13, row.a22, row.a31}) {
      target_digits = std::max<unsigned>(target_digits, static_cast<unsigned>(2 * decimal_digits(v.get_den()) + 10));
    }
  }
  auto cf = cfrac_algebraic(target_poly, isolated.front(), cf_terms);
  for (const auto& c : cf.convergents) {
    target_digits = std::max<unsigned>(target_digits, static_cast<unsigned>(2 * decimal_digits(c.get_den()) + 10));
  }
  rep.target = refine_root(target_poly, isolated.front(), target_digits);

  for (const auto& row : table.rows) {
    ReportEntry e;
    e.step = row.step;
    e.from_entries = {detail::certify_error((kr - 1) * row.a13, rep.target),
                      detail::certify_error((kr - 1) * row.a22, rep.target),
                      detail::certify_error((kr - 1) * row.a31, rep.target)};
    rep.sinkhorn.push_back(std::move(e));
  }
  rep.cf_terms = cf.terms;
  // Skip the a0 = 0 convergent 0/1.
  for (std::size_t i = 1; i < cf.convergents.size(); ++i) {
    rep.convergents.push_back(detail::certify_error(cf.convergents[i], rep.target));
  }
  return rep;
}

inline std::string ComparisonReport::to_text() const {
  std::ostringstream os;
  const RationalInterval& t = target;
  os << "target K^(1/3) - 1 for K = " << K.get_str() << ": " << to_decimal(t.lo, digits) << "...\n\n";
  os << "Sinkhorn estimates (K-1)*a, step l, entries (1,3) (2,2) (3,1)\n";
  os << std::left << std::setw(6) << "l" << std::setw(8) << "entry" << std::setw(16) << "decimal" << std::setw(16)
     << "abs error" << std::setw(10) << "den dig" << "fraction\n";
  const char* names[3] = {"a13", "a22", "a31"};
  for (const auto& e : sinkhorn) {
    for (std::size_t j = 0; j < 3; ++j) {
      const auto& x = e.from_entries[j];
      os << std::left << std::setw(6) << e.step << std::setw(8) << names[j] << std::setw(16)
         << to_decimal(x.estimate, digits) << std::setw(16) << to_decimal(x.error.hi, digits) << std::setw(10)
         << x.denominator_digits << to_string(x.estimate) << "\n";
    }
  }
  os << "\ncontinued fraction [";
  for (std::size_t i = 0; i < cf_terms.size(); ++i) os << (i ? ", " : "") << cf_terms[i].get_str();
  os << "]\n";
  os << std::left << std::setw(6) << "i" << std::setw(16) << "decimal" << std::setw(16) << "abs error"
     << std::setw(10) << "den dig" << "convergent\n";
  for (std::size_t i = 0; i < convergents.size(); ++i) {
    const auto& c = convergents[i];
    os << std::left << std::setw(6) << i + 1 << std::setw(16) << to_decimal(c.estimate, digits) << std::setw(16)
       << to_decimal(c.error.hi, digits) << std::setw(10) << c.denominator_digits << to_string(c.estimate) << "\n";
  }
  return os.str();
}

}  // namespace sinkhorn
