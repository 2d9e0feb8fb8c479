#pragma once

#include <cctype>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sinkhorn/diophantine.hpp"
#include "sinkhorn/equivalence.hpp"
#include "sinkhorn/error.hpp"
#include "sinkhorn/families.hpp"
#include "sinkhorn/matrix.hpp"
#include "sinkhorn/scaling.hpp"

namespace sinkhorn {

using json = nlohmann::ordered_json;

/// A matrix read from a file, in whichever scalar mode the file declares.
using AnyMatrix = std::variant<Matrix<double>, Matrix<BigRational>>;

inline bool is_rational_mode(const AnyMatrix& m) { return std::holds_alternative<Matrix<BigRational>>(m); }

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

inline double parse_float_entry(const std::string& text) {
  if (text.find('/') != std::string::npos) return to_double(parse_rational(text));
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw Error(ErrorCode::Parse, "malformed float entry '" + text + "'");
  return v;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x) {
  for (int precision = 1; precision <= 17; ++precision) {
    std::ostringstream os;
    os.precision(precision);
    os << x;
    if (std::strtod(os.str().c_str(), nullptr) == x) return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline std::string format_entry(double x) { return format_double(x); }
inline std::string format_entry(const BigRational& x) { return to_string(x); }

/// Decimal display, truncated toward zero at `digits` places.
inline std::string display(double x, unsigned digits) { return to_decimal(from_double(x), digits); }
inline std::string display(const BigRational& x, unsigned digits) { return to_decimal(x, digits); }

// ---------------------------------------------------------------------------
// Text format: "m n mode" then m lines of n entries
// ---------------------------------------------------------------------------

namespace detail {

template <class T>
Matrix<T> fill_matrix(std::size_t m, std::size_t n, const std::vector<std::string>& tokens) {
  if (tokens.size() != m * n) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(m * n) + " entries, found " +
                                                  std::to_string(tokens.size()));
  }
  Matrix<T> a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if constexpr (ScalarTraits<T>::exact) {
        a(i, j) = parse_rational(tokens[i * n + j]);
      } else {
        a(i, j) = parse_float_entry(tokens[i * n + j]);
      }
    }
  }
  return a;
}

inline AnyMatrix make_matrix(std::size_t m, std::size_t n, const std::string& mode,
                             const std::vector<std::string>& tokens) {
  if (m == 0 || n == 0) throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
  if (mode == "float") return fill_matrix<double>(m, n, tokens);
  if (mode == "rational") return fill_matrix<BigRational>(m, n, tokens);
  throw Error(ErrorCode::Parse, "unknown mode '" + mode + "' (expected float or rational)");
}

inline std::size_t parse_dimension(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::Parse, "malformed dimension '" + s + "'");
  }
  return static_cast<std::size_t>(std::stoul(s));
}

}  // namespace detail

inline AnyMatrix read_matrix_text(std::istream& in) {
  std::string line;
  std::string header;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      header = line;
      break;
    }
  }
  std::istringstream hs(header);
  std::string ms, ns, mode, extra;
  if (!(hs >> ms >> ns >> mode) || (hs >> extra)) throw Error(ErrorCode::Parse, "header must be 'm n mode'");
  const std::size_t m = detail::parse_dimension(ms);
  const std::size_t n = detail::parse_dimension(ns);
  std::vector<std::string> tokens;
  std::size_t row_count = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> row;
    for (std::string tok; ls >> tok;) row.push_back(tok);
    if (row.empty()) continue;
    if (row.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(row_count + 1) + " has " +
                                                    std::to_string(row.size()) + " entries, expected " +
                                                    std::to_string(n));
    }
    ++row_count;
    tokens.insert(tokens.end(), row.begin(), row.end());
  }
  if (row_count != m) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(m) + " rows, found " + std::to_string(row_count));
  }
  return detail::make_matrix(m, n, mode, tokens);
}

template <class T>
std::string write_matrix_text(const Matrix<T>& a) {
  std::ostringstream os;
  os << a.rows() << " " << a.cols() << " " << ScalarTraits<T>::mode_name << "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << format_entry(a(i, j));
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

template <class T>
json entries_json(const Matrix<T>& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if constexpr (ScalarTraits<T>::exact) {
        row.push_back(to_string(a(i, j)));
      } else {
        row.push_back(a(i, j));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
json matrix_to_json(const Matrix<T>& a) {
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"mode", ScalarTraits<T>::mode_name}, {"entries", entries_json(a)}};
}

inline AnyMatrix matrix_from_json(const json& j) {
  try {
    const std::size_t m = j.at("rows").get<std::size_t>();
    const std::size_t n = j.at("cols").get<std::size_t>();
    const std::string mode = j.value("mode", std::string("float"));
    const json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != m) throw Error(ErrorCode::DimensionMismatch, "entries must have 'rows' rows");
    std::vector<std::string> tokens;
    for (const auto& row : entries) {
      if (!row.is_array() || row.size() != n) throw Error(ErrorCode::DimensionMismatch, "each row must have 'cols' entries");
      for (const auto& e : row) {
        if (e.is_string()) {
          tokens.push_back(e.get<std::string>());
        } else if (e.is_number_integer()) {
          tokens.push_back(e.dump());
        } else if (e.is_number()) {
          tokens.push_back(mode == "float" ? format_double(e.get<double>()) : to_string(from_double(e.get<double>())));
        } else {
          throw Error(ErrorCode::Parse, "matrix entries must be numbers or strings");
        }
      }
    }
    return detail::make_matrix(m, n, mode, tokens);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed matrix JSON: ") + e.what());
  }
}

/// Reads either format; JSON is recognized by a leading '{'.
inline AnyMatrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
    }
    return matrix_from_json(j);
  }
  std::istringstream in(text);
  return read_matrix_text(in);
}

template <class T>
json scaling_json(const DiagonalScaling<T>& d) {
  json out = json::array();
  for (const auto& v : d.values) {
    if constexpr (ScalarTraits<T>::exact) {
      out.push_back(to_string(v));
    } else {
      out.push_back(v);
    }
  }
  return out;
}

template <class T>
json trace_to_json(const IterationTrace<T>& trace, bool all_snapshots) {
  json snaps = json::array();
  for (std::size_t s = 0; s < trace.size(); ++s) {
    if (!all_snapshots && s + 1 != trace.size()) continue;
    snaps.push_back(json{{"step", s + 1}, {"kind", step_kind_name(trace.step_kinds[s])}, {"matrix", matrix_to_json(trace.snapshots[s])}});
  }
  return json{{"mode", ScalarTraits<T>::mode_name},
              {"steps", trace.size()},
              {"original", matrix_to_json(trace.original)},
              {"snapshots", std::move(snaps)},
              {"x", scaling_json(trace.accumulated_x)},
              {"y", scaling_json(trace.accumulated_y)},
              {"residual", stochastic_residual(to_double(trace.last()))}};
}

inline json result_to_json(const SinkhornResult& r) {
  return json{{"mode", "float"},
              {"steps", r.steps_taken},
              {"pairs", r.steps_taken / 2},
              {"converged", r.converged},
              {"residual", r.residual},
              {"limit", matrix_to_json(r.limit)},
              {"x", scaling_json(r.x)},
              {"y", scaling_json(r.y)}};
}

inline json limit_value_json(const LimitValue& v, unsigned digits) {
  json out;
  if (v.exact) {
    out["exact"] = v.exact_text();
  } else {
    out["exact"] = nullptr;
  }
  out["numeric"] = to_decimal(v.approx, digits);
  return out;
}

inline json family_limit_to_json(const FamilyLimit& lim, unsigned digits) {
  json entries = json::object();
  for (const auto& e : lim.entries) entries[e.name] = limit_value_json(e, digits);
  json scaling = json::object();
  for (const auto& s : lim.scaling) scaling[s.name] = limit_value_json(s, digits);
  json matrix = json::array();
  for (std::size_t i = 0; i < lim.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < lim.size(); ++j) row.push_back(lim.entries[lim.pattern[i][j]].name);
    matrix.push_back(std::move(row));
  }
  json out{{"family", family_name(lim.family)}, {"shape", shape_name(lim.shape)}};
  out["K"] = lim.K ? json(to_string(*lim.K)) : json(nullptr);
  out["degenerate"] = lim.degenerate;
  out["entries"] = std::move(entries);
  out["scaling"] = std::move(scaling);
  out["matrix"] = std::move(matrix);
  out["doubly_stochastic_exact"] = lim.exactly_doubly_stochastic();
  return out;
}

inline json permutation_json(const Permutation& p) {
  json out = json::array();
  for (auto v : p.one_based()) out.push_back(v);
  return out;
}

template <class T>
json witness_to_json(const EquivalenceWitness<T>& w) {
  auto scalar = [](const T& v) -> json {
    if constexpr (ScalarTraits<T>::exact) {
      return to_string(v);
    } else {
      return v;
    }
  };
  return json{{"class", class_name(w.family)},
              {"K", scalar(w.K)},
              {"lambda", scalar(w.lambda)},
              {"P", permutation_json(w.P)},
              {"Q", permutation_json(w.Q)}};
}

inline json approximation_json(const ApproximationError& e, unsigned digits) {
  return json{{"value", to_string(e.estimate)},
              {"decimal", to_decimal(e.estimate, digits)},
              {"error_upper", to_decimal(e.error.hi, digits + 5)},
              {"denominator_digits", e.denominator_digits}};
}

inline json approximants_to_json(const ApproximantTable& t, unsigned digits) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json estimates = json::array();
    for (const auto& e : r.cbrt_estimates) estimates.push_back(json{{"value", to_string(e)}, {"decimal", to_decimal(e, digits)}});
    rows.push_back(json{{"step", r.step},
                        {"a13", to_string(r.a13)},
                        {"a22", to_string(r.a22)},
                        {"a31", to_string(r.a31)},
                        {"cbrt_estimates", std::move(estimates)},
                        {"ratio_estimate", to_decimal(r.ratio_estimate, digits)}});
  }
  return json{{"K", t.K.get_str()}, {"perfect_cube", t.perfect_cube}, {"rows", std::move(rows)}};
}

inline json report_to_json(const ComparisonReport& rep) {
  json sink = json::array();
  for (const auto& e : rep.sinkhorn) {
    sink.push_back(json{{"step", e.step},
                        {"a13", approximation_json(e.from_entries[0], rep.digits)},
                        {"a22", approximation_json(e.from_entries[1], rep.digits)},
                        {"a31", approximation_json(e.from_entries[2], rep.digits)}});
  }
  json terms = json::array();
  for (const auto& t : rep.cf_terms) terms.push_back(t.get_str());
  json conv = json::array();
  for (const auto& c : rep.convergents) conv.push_back(approximation_json(c, rep.digits));
  return json{{"K", rep.K.get_str()},
              {"target", to_decimal(rep.target.lo, rep.digits)},
              {"sinkhorn", std::move(sink)},
              {"cf_terms", std::move(terms)},
              {"convergents", std::move(conv)}};
}

inline json cfrac_to_json(const ContinuedFraction& cf) {
  json terms = json::array();
  json conv = json::array();
  json certs = json::array();
  for (const auto& t : cf.terms) terms.push_back(t.get_str());
  for (const auto& c : cf.convergents) conv.push_back(to_string(c));
  for (const auto& iv : cf.certificates) certs.push_back(json::array({to_string(iv.lo), to_string(iv.hi)}));
  return json{{"terms", std::move(terms)}, {"convergents", std::move(conv)}, {"finite", cf.finite}, {"certificates", std::move(certs)}};
}

}  // namespace sinkhorn
