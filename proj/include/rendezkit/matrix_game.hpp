#ifndef RENDEZKIT_MATRIX_GAME_HPP
#define RENDEZKIT_MATRIX_GAME_HPP

// Exact-vertex solver for finite two-person zero-sum games
//
//     min_{p in simplex(rows)}  max_{j}  (p^T P)_j
//   = max_{x in simplex(cols)}  min_{i}  (P x)_i
//
// via a dense tableau simplex. The payoff is affinely mapped into [1, 2],
// which makes the value positive and the LP
//
//     maximize 1^T s   subject to  G^T s <= 1,  s >= 0
//
// feasible at the origin. Its primal gives the row strategy, the slack
// reduced costs give the column strategy, and 1 / (1^T s) is the game value.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace rendezkit {

template <typename Scalar>
struct MatrixGameResult {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector row_strategy;  // minimizer
  Vector col_strategy;  // maximizer
  Scalar upper = 0;     // max_j (row^T P)_j: what the row strategy guarantees
  Scalar lower = 0;     // min_i (P col)_i: what the column strategy guarantees
  long pivots = 0;

  Scalar gap() const { return std::max(Scalar(0), upper - lower); }
};

namespace detail {

template <typename Scalar>
void normalize_strategy(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  v = v.cwiseMax(Scalar(0));
  const Scalar total = v.sum();
  if (total > Scalar(0)) {
    v /= total;
  } else {
    v.setZero();
    v(0) = Scalar(1);
  }
}

}  // namespace detail

/// Solves the zero-sum game with finite payoff matrix `payoff` (rows
/// minimize, columns maximize). Pivoting uses the largest reduced cost and
/// falls back to Bland's smallest-index rule after a run of degenerate
/// pivots, so it cannot cycle.
template <typename Derived>
MatrixGameResult<typename Derived::Scalar> solve_matrix_game(const Eigen::MatrixBase<Derived>& payoff_expr) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Tableau = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> payoff = payoff_expr;

  MatrixGameResult<Scalar> out;
  out.row_strategy = Vector::Zero(payoff.rows());
  out.col_strategy = Vector::Zero(payoff.cols());
  if (payoff.size() == 0) return out;

  const Scalar lo = payoff.minCoeff();
  const Scalar hi = payoff.maxCoeff();
  const Scalar scale = hi - lo;
  if (!(scale > Scalar(0))) {
    out.row_strategy(0) = Scalar(1);
    out.col_strategy(0) = Scalar(1);
    out.upper = out.lower = lo;
    return out;
  }

  // Structural variables are the rows of the payoff, constraints its columns.
  const Eigen::Index m = payoff.cols();
  const Eigen::Index n = payoff.rows();
  const Scalar eps = std::numeric_limits<Scalar>::epsilon() * Scalar(64);
  const Scalar pivot_tol = std::sqrt(std::numeric_limits<Scalar>::epsilon()) * Scalar(1e-1);
  const Scalar feas_tol = std::numeric_limits<Scalar>::epsilon() * Scalar(1024);
  const Eigen::Index width = n + m + 1;  // structural | slack | rhs
  Tableau t = Tableau::Zero(m + 1, width);
  t.topLeftCorner(m, n) = ((payoff.transpose().array() - lo) / scale + Scalar(1)).matrix();
  t.block(0, n, m, m).setIdentity();
  t.col(width - 1).head(m).setOnes();
  t.row(m).head(n).setOnes();  // reduced costs; rhs slot holds -objective

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  const long max_pivots = 50L * (m + n) + 1000L;
  int degenerate_run = 0;
  const int bland_after = 50;
  while (true) {
    Eigen::Index enter = -1;
    if (degenerate_run >= bland_after) {
      for (Eigen::Index j = 0; j < n + m; ++j) {
        if (t(m, j) > eps) {
          enter = j;
          break;
        }
      }
    } else {
      Scalar best = eps;
      for (Eigen::Index j = 0; j < n + m; ++j) {
        if (t(m, j) > best) {
          best = t(m, j);
          enter = j;
        }
      }
    }
    if (enter < 0) break;

    // Harris ratio test: bound the step with a small feasibility slack,
    // then take the largest pivot among rows within that bound. Under
    // Bland's rule the plain smallest-index tie-break is kept.
    Eigen::Index leave = -1;
    Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const Scalar a = t(i, enter);
      if (a > pivot_tol) best_ratio = std::min(best_ratio, (std::max(Scalar(0), t(i, width - 1)) + feas_tol) / a);
    }
    Scalar best_pivot = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const Scalar a = t(i, enter);
      if (a <= pivot_tol) continue;
      const Scalar ratio = std::max(Scalar(0), t(i, width - 1)) / a;
      if (ratio > best_ratio) continue;
      const bool better = degenerate_run >= bland_after
                              ? leave < 0 || basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)]
                              : a > best_pivot;
      if (better) {
        leave = i;
        best_pivot = a;
      }
    }
    // The feasible region is bounded (G >= 1), so an entering column always
    // has a positive entry; bail out defensively on numerical breakdown.
    if (leave < 0) break;
    const Scalar step = std::max(Scalar(0), t(leave, width - 1)) / t(leave, enter);

    degenerate_run = (step <= eps) ? degenerate_run + 1 : 0;
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const Scalar f = t(i, enter);
      if (f != Scalar(0)) t.row(i) -= f * t.row(leave);
    }
    t(leave, width - 1) = std::max(Scalar(0), t(leave, width - 1));
    basis[static_cast<std::size_t>(leave)] = enter;
    if (++out.pivots > max_pivots) break;
  }

  Vector s = Vector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index b = basis[static_cast<std::size_t>(i)];
    if (b < n) s(b) = t(i, width - 1);
  }
  Vector y = -t.row(m).segment(n, m).transpose();
  detail::normalize_strategy(s);
  detail::normalize_strategy(y);
  out.row_strategy = s;
  out.col_strategy = y;

  // Guarantees evaluated on the original payoff, in extended precision.
  long double upper = -std::numeric_limits<long double>::infinity();
  for (Eigen::Index j = 0; j < payoff.cols(); ++j) {
    long double acc = 0.0L;
    for (Eigen::Index i = 0; i < payoff.rows(); ++i) acc += static_cast<long double>(s(i)) * payoff(i, j);
    upper = std::max(upper, acc);
  }
  long double lower = std::numeric_limits<long double>::infinity();
  for (Eigen::Index i = 0; i < payoff.rows(); ++i) {
    long double acc = 0.0L;
    for (Eigen::Index j = 0; j < payoff.cols(); ++j) acc += static_cast<long double>(y(j)) * payoff(i, j);
    lower = std::min(lower, acc);
  }
  out.upper = static_cast<Scalar>(upper);
  out.lower = static_cast<Scalar>(lower);
  return out;
}

}  // namespace rendezkit

#endif  // RENDEZKIT_MATRIX_GAME_HPP
