#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>

#include "sinkhorn/error.hpp"

namespace sinkhorn {

// GMP keeps mpq_class canonical (gcd 1, positive denominator) after every
// arithmetic operation; only raw construction from a numerator/denominator
// pair needs an explicit canonicalize().
using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const BigRational& r) { return sgn(r); }
inline int sign(const BigInt& z) { return sgn(z); }

inline BigInt floor_of(const BigRational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline BigInt ceil_of(const BigRational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline bool is_integer(const BigRational& r) { return r.get_den() == 1; }

inline BigRational pow(const BigRational& base, unsigned exponent) {
  BigRational out = 1;
  BigRational b = base;
  while (exponent != 0) {
    if (exponent & 1U) out *= b;
    b *= b;
    exponent >>= 1U;
  }
  return out;
}

inline BigInt pow_int(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

/// Canonical "p/q" text, or "p" when the denominator is 1.
inline std::string to_string(const BigRational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// Decimal expansion truncated toward zero after `digits` fractional digits.
inline std::string to_decimal(const BigRational& r, unsigned digits) {
  BigRational mag = abs(r);
  BigInt scaled = floor_of(mag * BigRational(pow_int(10, digits)));
  std::string s = scaled.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  bool zero = std::all_of(s.begin(), s.end(), [](char c) { return c == '0'; });
  if (sign(r) < 0 && !zero) out.insert(0, "-");
  return out;
}

/// Exact value of a double (every finite double is a dyadic rational).
inline BigRational from_double(double d) { return BigRational(d); }

inline double to_double(const BigRational& r) { return r.get_d(); }

namespace detail {

inline bool parse_integer(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "p", "p/q", or a decimal literal such as "-0.25" or "1e6" into an
/// exact rational. Decimal literals are read exactly, not through a double.
inline BigRational parse_rational(std::string_view text) {
  text = detail::trim(text);
  auto fail = [&]() { return Error(ErrorCode::Parse, "not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num, den;
    if (!detail::parse_integer(detail::trim(text.substr(0, slash)), num) ||
        !detail::parse_integer(detail::trim(text.substr(slash + 1)), den)) {
      throw fail();
    }
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    BigInt exp_value;
    if (!detail::parse_integer(text.substr(e + 1), exp_value) || !exp_value.fits_slong_p()) throw fail();
    exponent = exp_value.get_si();
    mantissa = text.substr(0, e);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_point) ++frac_digits;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  BigRational value(BigInt(digits, 10));
  long shift = exponent - frac_digits;
  if (shift > 0) value *= BigRational(pow_int(10, static_cast<unsigned long>(shift)));
  if (shift < 0) value /= BigRational(pow_int(10, static_cast<unsigned long>(-shift)));
  return negative ? BigRational(-value) : value;
}

/// Integer n-th root when exact, otherwise false.
inline bool exact_root(const BigInt& value, unsigned long n, BigInt& root) {
  if (value < 0) return false;
  return mpz_root(root.get_mpz_t(), value.get_mpz_t(), n) != 0;
}

/// Rational cube root when it exists (handles negative values).
inline bool exact_cube_root(const BigRational& value, BigRational& root) {
  BigInt num = abs(value.get_num());
  BigInt rn, rd;
  if (!exact_root(num, 3, rn) || !exact_root(value.get_den(), 3, rd)) return false;
  root = make_rational(sign(value) < 0 ? BigInt(-rn) : rn, rd);
  return true;
}

inline bool exact_sqrt(const BigRational& value, BigRational& root) {
  if (sign(value) < 0) return false;
  BigInt rn, rd;
  if (!exact_root(value.get_num(), 2, rn) || !exact_root(value.get_den(), 2, rd)) return false;
  root = make_rational(rn, rd);
  return true;
}

inline std::size_t decimal_digits(const BigInt& z) { return BigInt(::abs(z)).get_str().size(); }

}  // namespace sinkhorn
