#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sinkhorn/sinkhorn.hpp"

namespace sinkhorn::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNonPositive = 3,
  kDegenerate = 4,
  kNotTwoValued = 5,
  kAmbiguous = 6,
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositive: return kNonPositive;
    case ErrorCode::DegenerateK: return kDegenerate;
    case ErrorCode::NotTwoValued:
    case ErrorCode::NoClass: return kNotTwoValued;
    case ErrorCode::NoPositiveTriple:
    case ErrorCode::AmbiguousTriple: return kAmbiguous;
    default: return kInputError;
  }
}

inline unsigned default_digits() {
  if (const char* env = std::getenv("SINKHORN_PRECISION")) {
    try {
      int d = std::stoi(env);
      if (d > 0 && d <= 1000) return static_cast<unsigned>(d);
    } catch (const std::exception&) {
    }
  }
  return 10;
}

struct Options {
  // input
  std::string file;
  std::string family;
  std::string K = "2";
  std::size_t k = 1, l = 2;
  std::string M = "1", B = "1", N = "1";
  // scale
  std::string mode;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> pairs;
  double tol = 1e-12;
  std::size_t max_pairs = 1000;
  bool trace = false;
  // shared
  unsigned digits = 10;
  bool as_json = false;
  bool allow_degenerate = false;
  // classify
  bool with_limit = false;
  // approx / cfrac
  std::string cbrt;
  bool minus_one = false;
  std::size_t terms = 14;
  bool compare = false;
  std::string poly;
  std::string lo, hi;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool has_family(const Options& o) { return !o.family.empty(); }

inline Matrix<BigRational> family_input(const Options& o) {
  Family f = parse_family(o.family);
  if (f == Family::MBN) {
    return mbn_matrix(o.k, o.l, parse_rational(o.M), parse_rational(o.B), parse_rational(o.N));
  }
  return family_matrix(f, parse_rational(o.K));
}

/// The input matrix, converted to the requested mode (or left in the
/// file's own mode when none is requested; family inputs default to float).
inline AnyMatrix load_input(const Options& o) {
  if (o.file.empty() == !has_family(o)) throw Error(ErrorCode::Parse, "give exactly one of --file or --family");
  AnyMatrix a = has_family(o) ? AnyMatrix(to_double(family_input(o))) : parse_matrix(read_file(o.file));
  if (has_family(o) && o.mode == "rational") a = family_input(o);
  if (o.mode == "float" && is_rational_mode(a)) a = to_double(std::get<Matrix<BigRational>>(a));
  if (o.mode == "rational" && !is_rational_mode(a)) a = to_rational(std::get<Matrix<double>>(a));
  if (!o.mode.empty() && o.mode != "float" && o.mode != "rational") {
    throw Error(ErrorCode::Parse, "--mode must be float or rational");
  }
  return a;
}

template <class T>
void print_matrix(std::ostream& out, const Matrix<T>& a, unsigned digits) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out << (j ? "  " : "");
      if constexpr (ScalarTraits<T>::exact) {
        out << to_string(a(i, j));
      } else {
        out << display(a(i, j), digits);
      }
    }
    out << "\n";
  }
}

inline std::size_t requested_steps(const Options& o) {
  if (o.steps && o.pairs) throw Error(ErrorCode::Parse, "give at most one of --steps and --pairs");
  if (o.steps) return *o.steps;
  return 2 * *o.pairs;
}

template <class T>
void print_trace(std::ostream& out, const IterationTrace<T>& trace, const Options& o) {
  if (o.as_json) {
    out << trace_to_json(trace, o.trace).dump(2) << "\n";
    return;
  }
  for (std::size_t s = 0; s < trace.size(); ++s) {
    if (!o.trace && s + 1 != trace.size()) continue;
    out << "step " << s + 1 << " (" << step_kind_name(trace.step_kinds[s]) << ")\n";
    print_matrix(out, trace.snapshots[s], o.digits);
  }
  if (trace.size() == 0) print_matrix(out, trace.original, o.digits);
  out << "residual " << display(stochastic_residual(to_double(trace.last())), o.digits) << "\n";
}

inline int cmd_scale(const Options& o, std::ostream& out) {
  AnyMatrix input = load_input(o);
  const bool fixed = o.steps || o.pairs;
  if (is_rational_mode(input)) {
    if (!fixed) throw Error(ErrorCode::Parse, "rational mode needs --steps or --pairs");
    print_trace(out, sinkhorn_iterate(std::get<Matrix<BigRational>>(input), requested_steps(o)), o);
    return kOk;
  }
  const auto& a = std::get<Matrix<double>>(input);
  if (o.trace && !fixed) throw Error(ErrorCode::Parse, "--trace needs --steps or --pairs");
  if (o.steps || o.trace) {
    print_trace(out, sinkhorn_iterate(a, requested_steps(o)), o);
    return kOk;
  }
  SinkhornResult r = o.pairs ? sinkhorn_pairs(a, *o.pairs, o.tol) : sinkhorn_limit(a, o.tol, o.max_pairs);
  if (o.as_json) {
    out << result_to_json(r).dump(2) << "\n";
    return kOk;
  }
  print_matrix(out, r.limit, o.digits);
  out << "pairs " << r.steps_taken / 2 << "\n";
  out << "converged " << (r.converged ? "yes" : "no") << "\n";
  out << "residual " << display(r.residual, o.digits) << "\n";
  return kOk;
}

inline FamilyLimit compute_limit(const Options& o) {
  Family f = parse_family(o.family);
  const unsigned work_digits = std::max(30u, o.digits + 10);
  if (f == Family::MBN) {
    return limit_MBN(o.k, o.l, parse_rational(o.M), parse_rational(o.B), parse_rational(o.N), work_digits);
  }
  const BigRational k = parse_rational(o.K);
  if (k == 1) {
    if (!o.allow_degenerate) throw Error(ErrorCode::DegenerateK, "K = 1 is degenerate; pass --allow-degenerate for the uniform limit");
    return uniform_limit(f, 3, work_digits);
  }
  return limit_family(f, k, work_digits);
}

inline void print_limit(std::ostream& out, const FamilyLimit& lim, unsigned digits) {
  out << "family " << family_name(lim.family) << "\n";
  out << "shape " << shape_name(lim.shape) << (lim.degenerate ? " (degenerate: uniform)" : "") << "\n";
  auto line = [&](const LimitValue& v) {
    out << v.name << " = ";
    if (v.exact) out << v.exact_text() << " = ";
    out << to_decimal(v.approx, digits) << "\n";
  };
  for (const auto& e : lim.entries) line(e);
  for (const auto& s : lim.scaling) line(s);
  out << "matrix\n";
  const Matrix<BigRational> m = lim.approx_matrix();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "  " : "") << to_decimal(m(i, j), digits);
    out << "\n";
  }
}

inline int cmd_limit(const Options& o, std::ostream& out) {
  if (o.family.empty()) throw Error(ErrorCode::Parse, "limit needs --family");
  FamilyLimit lim = compute_limit(o);
  // Every printed limit is checked before output.
  const bool exact_ok = lim.exactly_doubly_stochastic();
  if (!exact_ok && !is_doubly_stochastic(lim.matrix(), 1e-9)) {
    throw Error(ErrorCode::NotDoublyStochastic, "closed form failed the doubly stochastic check");
  }
  if (o.as_json) {
    out << family_limit_to_json(lim, o.digits).dump(2) << "\n";
  } else {
    print_limit(out, lim, o.digits);
  }
  return kOk;
}

template <class T>
int classify_impl(const Matrix<T>& a, const Options& o, std::ostream& out) {
  EquivalenceWitness<T> w = classify_two_valued(a);
  std::optional<Matrix<double>> limit;
  if (o.with_limit) {
    // S(A) = P^-1 S(B) Q^-1 where B = lambda P A Q is the canonical matrix.
    const BigRational k = ScalarTraits<T>::to_rational(w.K);
    Matrix<double> canonical =
        w.family == EquivalenceClass::Uniform
            ? Matrix<double>(3, 3, 1.0 / 3.0)
            : limit_family(static_cast<Family>(static_cast<int>(w.family)), k, std::max(30u, o.digits + 10)).matrix();
    EquivalenceWitness<double> wd{ScalarTraits<T>::to_double(w.lambda), w.P, w.Q, w.family, ScalarTraits<T>::to_double(w.K)};
    limit = transport_limit(canonical, wd.inverse(), 1e-9);
  }
  if (o.as_json) {
    json j = witness_to_json(w);
    if (limit) j["limit"] = matrix_to_json(*limit);
    out << j.dump(2) << "\n";
    return kOk;
  }
  auto scalar = [](const T& v) {
    if constexpr (ScalarTraits<T>::exact) {
      return to_string(v);
    } else {
      return format_double(v);
    }
  };
  auto perm = [](const Permutation& p) {
    std::string s = "(";
    auto v = p.one_based();
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  out << "class " << class_name(w.family) << "\n";
  out << "K " << scalar(w.K) << "\n";
  out << "lambda " << scalar(w.lambda) << "\n";
  out << "P " << perm(w.P) << "\n";
  out << "Q " << perm(w.Q) << "\n";
  if (limit) {
    out << "limit\n";
    print_matrix(out, *limit, o.digits);
  }
  return kOk;
}

inline int cmd_classify(const Options& o, std::ostream& out) {
  AnyMatrix a = load_input(o);
  if (is_rational_mode(a)) return classify_impl(std::get<Matrix<BigRational>>(a), o, out);
  return classify_impl(std::get<Matrix<double>>(a), o, out);
}

inline BigInt parse_integer_k(const std::string& text) {
  BigRational k = parse_rational(text);
  if (!is_integer(k)) throw Error(ErrorCode::Parse, "K must be an integer");
  return k.get_num();
}

inline int cmd_approx(const Options& o, std::ostream& out) {
  const BigInt k = parse_integer_k(o.K);
  const std::size_t steps = o.steps ? *o.steps : (o.pairs ? 2 * *o.pairs : 6);
  if (o.compare) {
    ComparisonReport rep = compare_report(k, steps, o.terms, o.digits);
    out << (o.as_json ? report_to_json(rep).dump(2) + "\n" : rep.to_text());
    return kOk;
  }
  ApproximantTable t = cbrt_approximants(k, steps);
  if (o.as_json) {
    out << approximants_to_json(t, o.digits).dump(2) << "\n";
    return kOk;
  }
  if (t.perfect_cube) out << "note: K is a perfect cube\n";
  for (const auto& r : t.rows) {
    out << "step " << r.step << "\n";
    out << "  a13 = " << to_string(r.a13) << "\n";
    out << "  a22 = " << to_string(r.a22) << "\n";
    out << "  a31 = " << to_string(r.a31) << "\n";
    out << "  (K-1)a+1 = " << to_decimal(r.cbrt_estimates[0], o.digits) << "  " << to_decimal(r.cbrt_estimates[1], o.digits)
        << "  " << to_decimal(r.cbrt_estimates[2], o.digits) << "\n";
    out << "  a11/a13 = " << to_decimal(r.ratio_estimate, o.digits) << "\n";
  }
  return kOk;
}

inline Polynomial parse_polynomial(const std::string& text) {
  std::vector<BigRational> coeffs;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(ErrorCode::Parse, "empty coefficient in --poly");
    coeffs.push_back(parse_rational(tok.substr(b, e - b + 1)));
  }
  return Polynomial(std::move(coeffs));
}

inline int cmd_cfrac(const Options& o, std::ostream& out) {
  Polynomial p;
  RationalInterval iv;
  if (!o.cbrt.empty() == !o.poly.empty()) throw Error(ErrorCode::Parse, "give exactly one of --cbrt or --poly");
  if (!o.cbrt.empty()) {
    const BigRational k = parse_rational(o.cbrt);
    if (sign(k) <= 0) throw Error(ErrorCode::Parse, "--cbrt needs a positive value");
    p = o.minus_one ? cbrt_minus_one_polynomial(k) : cbrt_polynomial(k);
    BigRational upper = k > 1 ? k : BigRational(1);
    auto roots = isolate_roots_in(p, RationalInterval(o.minus_one ? BigRational(-1) : BigRational(0), upper));
    if (roots.size() != 1) throw Error(ErrorCode::NonIsolating, "could not isolate the cube root");
    iv = roots.front();
  } else {
    if (o.lo.empty() || o.hi.empty()) throw Error(ErrorCode::Parse, "--poly needs --lo and --hi");
    p = parse_polynomial(o.poly);
    iv = RationalInterval(parse_rational(o.lo), parse_rational(o.hi));
  }
  ContinuedFraction cf = cfrac_algebraic(p, iv, o.terms);
  if (o.as_json) {
    out << cfrac_to_json(cf).dump(2) << "\n";
    return kOk;
  }
  out << "[";
  for (std::size_t i = 0; i < cf.terms.size(); ++i) out << (i ? ", " : "") << cf.terms[i].get_str();
  out << "]" << (cf.finite ? " (finite)" : "") << "\n";
  out << "convergents";
  for (const auto& c : cf.convergents) out << " " << to_string(c);
  out << "\n";
  return kOk;
}

}  // namespace detail

/// Parses arguments and runs one subcommand. Data goes to `out`,
/// diagnostics to `err`; the return value is the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sinkhorn alternate scaling, closed-form family limits, and cube-root approximation"};
  app.require_subcommand(1);
  Options o;
  o.digits = default_digits();

  auto add_input = [&](CLI::App* c) {
    c->add_option("--file", o.file, "matrix file (text 'm n mode' or JSON)");
    c->add_option("--family", o.family, "A1..A7 or MBN");
    c->add_option("--K", o.K, "family parameter, exact (e.g. 3/2)");
    c->add_option("--k", o.k, "MBN block size k");
    c->add_option("--l", o.l, "MBN block size l");
    c->add_option("--M", o.M, "MBN value M");
    c->add_option("--B", o.B, "MBN value B");
    c->add_option("--N", o.N, "MBN value N");
  };
  auto add_output = [&](CLI::App* c) {
    c->add_option("--digits", o.digits, "decimal places shown, truncated (default 10 or $SINKHORN_PRECISION)");
    c->add_flag("--json", o.as_json, "JSON output");
  };

  CLI::App* scale = app.add_subcommand("scale", "run alternate row/column scaling");
  add_input(scale);
  add_output(scale);
  scale->add_option("--mode", o.mode, "float or rational");
  scale->add_option("--steps", o.steps, "elementary scalings (row first)");
  scale->add_option("--pairs", o.pairs, "row+column pairs");
  scale->add_option("--tol", o.tol, "convergence tolerance");
  scale->add_option("--max-pairs", o.max_pairs, "pair limit when iterating to convergence");
  scale->add_flag("--trace", o.trace, "print every snapshot");

  CLI::App* limit = app.add_subcommand("limit", "closed-form Sinkhorn limit of a family");
  add_input(limit);
  add_output(limit);
  limit->add_flag("--allow-degenerate", o.allow_degenerate, "K = 1 gives the uniform limit instead of an error");

  CLI::App* classify = app.add_subcommand("classify", "classify a two-valued 3x3 matrix");
  add_input(classify);
  add_output(classify);
  classify->add_option("--mode", o.mode, "float or rational");
  classify->add_flag("--limit", o.with_limit, "also print S(A) transported from the class limit");

  CLI::App* approx = app.add_subcommand("approx", "rational approximants to K^(1/3) from A6(K)");
  approx->add_option("--K", o.K, "integer K >= 2");
  approx->add_option("--steps", o.steps, "elementary scalings");
  approx->add_option("--pairs", o.pairs, "row+column pairs");
  approx->add_flag("--compare", o.compare, "compare with continued-fraction convergents");
  approx->add_option("--terms", o.terms, "continued-fraction terms for --compare");
  add_output(approx);

  CLI::App* cfrac = app.add_subcommand("cfrac", "certified continued fraction of a real algebraic number");
  cfrac->add_option("--cbrt", o.cbrt, "expand K^(1/3)");
  cfrac->add_flag("--minus-one", o.minus_one, "expand K^(1/3) - 1 instead");
  cfrac->add_option("--poly", o.poly, "ascending coefficients c0,c1,...");
  cfrac->add_option("--lo", o.lo, "isolating interval lower end");
  cfrac->add_option("--hi", o.hi, "isolating interval upper end");
  cfrac->add_option("--terms", o.terms, "number of partial quotients");
  add_output(cfrac);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (o.steps && *o.steps == 0) throw Error(ErrorCode::Parse, "--steps must be at least 1");
    if (o.pairs && *o.pairs == 0) throw Error(ErrorCode::Parse, "--pairs must be at least 1");
    if (!(o.tol > 0)) throw Error(ErrorCode::Parse, "--tol must be positive");
    if (scale->parsed()) return detail::cmd_scale(o, out);
    if (limit->parsed()) return detail::cmd_limit(o, out);
    if (classify->parsed()) return detail::cmd_classify(o, out);
    if (approx->parsed()) return detail::cmd_approx(o, out);
    return detail::cmd_cfrac(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace sinkhorn::cli
