#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "sinkhorn/error.hpp"
#include "sinkhorn/matrix.hpp"

namespace sinkhorn {

enum class StepKind { Row, Column };

inline const char* step_kind_name(StepKind k) { return k == StepKind::Row ? "row" : "column"; }

/// The alternate row/column scaling sequence. snapshots[l] is the matrix
/// after elementary step l+1 (row scaling first), and equals
/// accumulated_x * original * accumulated_y for the scalings applied so far.
template <class T>
struct IterationTrace {
  Matrix<T> original;
  std::vector<Matrix<T>> snapshots;
  std::vector<StepKind> step_kinds;
  DiagonalScaling<T> accumulated_x;
  DiagonalScaling<T> accumulated_y;

  std::size_t size() const { return snapshots.size(); }
  const Matrix<T>& last() const { return snapshots.empty() ? original : snapshots.back(); }
  /// One-based step index, matching the paper-style table numbering.
  const Matrix<T>& at_step(std::size_t step) const { return snapshots.at(step - 1); }
};

template <class T>
class AlternateScaler {
 public:
  explicit AlternateScaler(const Matrix<T>& a)
      : current_(a), x_(DiagonalScaling<T>::ones(a.rows())), y_(DiagonalScaling<T>::ones(a.cols())) {
    require_positive(a);
  }

  StepKind next_kind() const { return steps_ % 2 == 0 ? StepKind::Row : StepKind::Column; }

  StepKind step() {
    StepKind kind = next_kind();
    if (kind == StepKind::Row) {
      auto r = row_scale(current_);
      x_ *= r.scaling;
      current_ = std::move(r.matrix);
    } else {
      auto c = col_scale(current_);
      y_ *= c.scaling;
      current_ = std::move(c.matrix);
    }
    ++steps_;
    return kind;
  }

  const Matrix<T>& current() const { return current_; }
  const DiagonalScaling<T>& x() const { return x_; }
  const DiagonalScaling<T>& y() const { return y_; }
  std::size_t steps() const { return steps_; }

 private:
  Matrix<T> current_;
  DiagonalScaling<T> x_;
  DiagonalScaling<T> y_;
  std::size_t steps_ = 0;
};

/// Runs exactly `steps` elementary scalings and records every snapshot.
/// In rational mode every entry is exact.
template <class T>
IterationTrace<T> sinkhorn_iterate(const Matrix<T>& a, std::size_t steps) {
  AlternateScaler<T> scaler(a);
  IterationTrace<T> trace;
  trace.original = a;
  trace.snapshots.reserve(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    trace.step_kinds.push_back(scaler.step());
    trace.snapshots.push_back(scaler.current());
  }
  trace.accumulated_x = scaler.x();
  trace.accumulated_y = scaler.y();
  return trace;
}

struct SinkhornResult {
  Matrix<double> limit;
  DiagonalScaling<double> x;
  DiagonalScaling<double> y;
  std::size_t steps_taken = 0;  // elementary steps
  bool converged = false;
  double residual = 0;
  std::vector<double> pair_residuals;  // residual after each row+column pair
};

struct SinkhornOptions {
  double tol = 1e-12;
  std::size_t max_pairs = 1000;
};

namespace detail {

inline SinkhornResult run_pairs(const Matrix<double>& a, double tol, std::size_t max_pairs, bool stop_on_converge) {
  AlternateScaler<double> scaler(a);
  SinkhornResult best;
  best.limit = a;
  best.x = scaler.x();
  best.y = scaler.y();
  best.residual = stochastic_residual(a);
  best.converged = best.residual <= tol;
  if (best.converged && stop_on_converge) return best;
  std::vector<double> history;
  for (std::size_t pair = 0; pair < max_pairs; ++pair) {
    scaler.step();
    scaler.step();
    double r = stochastic_residual(scaler.current());
    history.push_back(r);
    // Ties go to the later iterate.
    if (r <= best.residual || !stop_on_converge) {
      best.limit = scaler.current();
      best.x = scaler.x();
      best.y = scaler.y();
      best.residual = r;
      best.steps_taken = scaler.steps();
    }
    if (r <= tol && stop_on_converge) break;
  }
  best.converged = best.residual <= tol;
  best.pair_residuals = std::move(history);
  return best;
}

}  // namespace detail

/// Alternate minimization until the row/column residual drops to `tol`
/// after a full row+column pair. Float mode only: exact limits are
/// generally irrational, so rational mode exposes fixed-step iteration.
inline SinkhornResult sinkhorn_limit(const Matrix<double>& a, double tol = 1e-12, std::size_t max_pairs = 1000) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "Sinkhorn limits are defined for square matrices");
  if (!(tol > 0)) throw Error(ErrorCode::Parse, "tolerance must be positive");
  return detail::run_pairs(a, tol, max_pairs, true);
}

inline SinkhornResult sinkhorn_limit(const Matrix<double>& a, const SinkhornOptions& opts) {
  return sinkhorn_limit(a, opts.tol, opts.max_pairs);
}

/// Exactly `pairs` row+column pairs in float mode; `converged` reports
/// whether the final residual is within `tol`.
inline SinkhornResult sinkhorn_pairs(const Matrix<double>& a, std::size_t pairs, double tol = 1e-12) {
  return detail::run_pairs(a, tol, pairs, false);
}

/// The unique positive diagonal X with X A X doubly stochastic, for
/// symmetric A: X_i = sqrt(x_i y_i) from the general limit's scalings.
inline DiagonalScaling<double> symmetric_scaling(const Matrix<double>& a, double tol = 1e-12,
                                                 std::size_t max_pairs = 1000) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "symmetric scaling needs a square matrix");
  if (!a.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "symmetric scaling needs a symmetric matrix");
  SinkhornResult r = sinkhorn_limit(a, tol, max_pairs);
  DiagonalScaling<double> x;
  for (std::size_t i = 0; i < a.rows(); ++i) x.values.push_back(std::sqrt(r.x[i] * r.y[i]));
  return x;
}

}  // namespace sinkhorn
