#include "rendezkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rendezkit/error.hpp"

namespace rendezkit::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kernel as a plain double with +inf, so the oracles do their own arithmetic.
double k(const DiscreteSpace& s, Index a, Index b) {
  return s.is_infinite(a, b) ? kInf : s.finite_value(a, b);
}

ExtendedValue to_ext(double x) { return std::isinf(x) ? kInfinity : ExtendedValue(std::max(0.0, x)); }

// Calls f on every composition c of `total` into c.size() nonnegative parts.
void compositions(std::vector<int>& c, std::size_t pos, int left, const std::function<void(const std::vector<int>&)>& f) {
  if (pos + 1 == c.size()) {
    c[pos] = left;
    f(c);
    return;
  }
  for (int v = 0; v <= left; ++v) {
    c[pos] = v;
    compositions(c, pos + 1, left - v, f);
  }
}

void for_each_grid_point(std::size_t m, int resolution, const std::function<void(const std::vector<int>&)>& f) {
  if (resolution < 1) throw ArgumentError("oracle: resolution must be >= 1");
  std::vector<int> c(m, 0);
  compositions(c, 0, resolution, f);
}

// U(x) for grid weights c/R on the points of H; 0 * inf = 0.
double grid_potential(const DiscreteSpace& s, const SubsetRef& H, const std::vector<int>& c, int R, Index x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const double kv = k(s, x, H.indices()[i]);
    if (std::isinf(kv)) return kInf;
    acc += c[i] * kv;
  }
  return acc / R;
}

void for_each_tuple(Index m, int n, const std::function<void(const std::vector<Index>&)>& f) {
  if (n < 1) throw ArgumentError("oracle: n must be >= 1");
  std::vector<Index> t(static_cast<std::size_t>(n), 0);
  while (true) {
    f(t);
    int pos = n - 1;
    while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == m) {
      t[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

double tuple_average(const DiscreteSpace& s, const SubsetRef& H, const std::vector<Index>& t, Index x) {
  double acc = 0.0;
  for (const Index i : t) {
    const double kv = k(s, x, H[i]);
    if (std::isinf(kv)) return kInf;
    acc += kv;
  }
  return acc / static_cast<double>(t.size());
}

}  // namespace

ExtendedValue grid_q(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int resolution) {
  double best = kInf;
  for_each_grid_point(H.indices().size(), resolution, [&](const std::vector<int>& c) {
    double worst = 0.0;
    for (const Index x : L) worst = std::max(worst, grid_potential(space, H, c, resolution, x));
    best = std::min(best, worst);
  });
  return to_ext(best);
}

ExtendedValue grid_qlower(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int resolution) {
  double best = 0.0;
  for_each_grid_point(H.indices().size(), resolution, [&](const std::vector<int>& c) {
    double least = kInf;
    for (const Index x : L) least = std::min(least, grid_potential(space, H, c, resolution, x));
    best = std::max(best, least);
  });
  return to_ext(best);
}

ExtendedValue grid_w(const DiscreteSpace& space, const SubsetRef& H, int resolution) {
  double best = kInf;
  const std::size_t m = H.indices().size();
  for_each_grid_point(m, resolution, [&](const std::vector<int>& c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m && !std::isinf(acc); ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (c[i] == 0 || c[j] == 0) continue;
        const double kv = k(space, H.indices()[i], H.indices()[j]);
        if (std::isinf(kv)) {
          acc = kInf;
          break;
        }
        acc += static_cast<double>(c[i]) * c[j] * kv;
      }
    }
    best = std::min(best, acc / (static_cast<double>(resolution) * resolution));
  });
  return to_ext(best);
}

ExtendedValue enum_diameter(const DiscreteSpace& space, const SubsetRef& H, int n) {
  if (n < 2) throw ArgumentError("oracle: D_n needs n >= 2");
  double best = kInf;
  for_each_tuple(H.size(), n, [&](const std::vector<Index>& t) {
    double acc = 0.0;
    for (std::size_t a = 0; a < t.size(); ++a) {
      for (std::size_t b = a + 1; b < t.size(); ++b) acc += k(space, H[t[a]], H[t[b]]);
    }
    best = std::min(best, 2.0 * acc / (static_cast<double>(n) * (n - 1)));
  });
  return to_ext(best);
}

ExtendedValue enum_cheb(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n) {
  double best = 0.0;
  for_each_tuple(H.size(), n, [&](const std::vector<Index>& t) {
    double least = kInf;
    for (const Index x : L) least = std::min(least, tuple_average(space, H, t, x));
    best = std::max(best, least);
  });
  return to_ext(best);
}

ExtendedValue enum_dual_cheb(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n) {
  double best = kInf;
  for_each_tuple(H.size(), n, [&](const std::vector<Index>& t) {
    double worst = 0.0;
    for (const Index x : L) worst = std::max(worst, tuple_average(space, H, t, x));
    best = std::min(best, worst);
  });
  return to_ext(best);
}

MwBracket mw_game(const Eigen::MatrixXd& payoff, int rounds) {
  const Index m = payoff.rows();
  const Index n = payoff.cols();
  if (m == 0 || n == 0 || !payoff.allFinite()) throw ArgumentError("mw_game: payoff must be finite and non-empty");
  const double lo = payoff.minCoeff();
  const double span = std::max(payoff.maxCoeff() - lo, 1e-300);
  const Eigen::MatrixXd loss = (payoff.array() - lo) / span;

  const double eta = std::sqrt(8.0 * std::log(static_cast<double>(std::max<Index>(m, 2))) / rounds);
  Eigen::VectorXd cumulative = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd row_avg = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd col_avg = Eigen::VectorXd::Zero(n);
  for (int t = 0; t < rounds; ++t) {
    Eigen::VectorXd p = (-eta * (cumulative.array() - cumulative.minCoeff())).exp();
    p /= p.sum();
    Index j = 0;
    (p.transpose() * loss).maxCoeff(&j);
    cumulative += loss.col(j);
    row_avg += p;
    col_avg(j) += 1.0;
  }
  row_avg /= row_avg.sum();
  col_avg /= col_avg.sum();

  MwBracket b;
  b.rounds = rounds;
  b.upper = (row_avg.transpose() * payoff).maxCoeff();
  b.lower = (payoff * col_avg).minCoeff();
  return b;
}

}  // namespace rendezkit::oracle
