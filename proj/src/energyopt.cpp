#include "rendezkit/energyopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rendezkit/random.hpp"
#include "rendezkit/serialize.hpp"

namespace rendezkit {

namespace {

using Clique = std::vector<Index>;

// Maximal sets of points with pairwise finite kernel (Bron-Kerbosch with pivoting).
void bron_kerbosch(const DiscreteSpace& space, Clique& r, std::vector<Index> p, std::vector<Index> x,
                   std::vector<Clique>& out) {
  if (p.empty() && x.empty()) {
    Clique c = r;
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
    return;
  }
  const auto adjacent = [&](Index a, Index b) { return a != b && !space.is_infinite(a, b); };
  Index pivot = !p.empty() ? p.front() : x.front();
  std::size_t best_deg = 0;
  for (const auto* set : {&p, &x}) {
    for (const Index u : *set) {
      const auto deg = static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [&](Index v) { return adjacent(u, v); }));
      if (deg > best_deg) {
        best_deg = deg;
        pivot = u;
      }
    }
  }
  const std::vector<Index> candidates = p;
  for (const Index v : candidates) {
    if (adjacent(pivot, v)) continue;
    std::vector<Index> p2, x2;
    for (const Index u : p) {
      if (adjacent(v, u)) p2.push_back(u);
    }
    for (const Index u : x) {
      if (adjacent(v, u)) x2.push_back(u);
    }
    r.push_back(v);
    bron_kerbosch(space, r, std::move(p2), std::move(x2), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

std::vector<Clique> finite_blocks(const DiscreteSpace& space, const std::vector<Index>& pts) {
  bool complete = true;
  for (std::size_t a = 0; a < pts.size() && complete; ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (space.is_infinite(pts[a], pts[b])) {
        complete = false;
        break;
      }
    }
  }
  if (complete) return {pts};

  std::vector<Clique> out;
  if (pts.size() <= 20) {
    Clique r;
    bron_kerbosch(space, r, pts, {}, out);
  } else {
    // Greedy maximal block grown from each point; an upper bound only.
    for (const Index seed : pts) {
      Clique c{seed};
      for (const Index v : pts) {
        if (v == seed) continue;
        if (std::all_of(c.begin(), c.end(), [&](Index u) { return !space.is_infinite(u, v); })) c.push_back(v);
      }
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Global minimum of mu^T A mu over the simplex by enumerating faces: the
// minimizer lies in the relative interior of some face S, where
// A_S mu = lambda 1 and 1^T mu = 1.
Eigen::VectorXd exact_face_minimum(const Eigen::MatrixXd& A) {
  const Index m = A.rows();
  Eigen::VectorXd best = Eigen::VectorXd::Zero(m);
  double best_value = std::numeric_limits<double>::infinity();
  for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
    std::vector<Index> face;
    for (Index i = 0; i < m; ++i) {
      if (mask & (1UL << i)) face.push_back(i);
    }
    const auto s = static_cast<Index>(face.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
    for (Index a = 0; a < s; ++a) {
      for (Index b = 0; b < s; ++b) kkt(a, b) = A(face[static_cast<std::size_t>(a)], face[static_cast<std::size_t>(b)]);
      kkt(a, s) = kkt(s, a) = 1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) continue;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
    rhs(s) = 1.0;
    const Eigen::VectorXd sol = lu.solve(rhs);
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(m);
    bool feasible = true;
    for (Index a = 0; a < s; ++a) {
      if (sol(a) < -1e-12) {
        feasible = false;
        break;
      }
      mu(face[static_cast<std::size_t>(a)]) = std::max(0.0, sol(a));
    }
    if (!feasible || mu.sum() <= 0.0) continue;
    mu /= mu.sum();
    const double value = mu.dot(A * mu);
    if (value < best_value) {
      best_value = value;
      best = mu;
    }
  }
  return best;
}

}  // namespace

EnergyResult minimize_quadratic_on_simplex(const Eigen::MatrixXd& A, Eigen::VectorXd mu, const EnergyOptions& opts) {
  const Index m = A.rows();
  EnergyResult res;
  Eigen::VectorXd g = A * mu;
  const double floor = 1e-15 * std::max(1.0, A.cwiseAbs().maxCoeff());
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (it % 64 == 0) g = A * mu;
    const double f = mu.dot(g);
    Index s = 0;
    g.minCoeff(&s);
    if (f - g(s) <= opts.relative_gap * std::max(std::abs(f), floor)) break;

    Index v = -1;
    for (Index i = 0; i < m; ++i) {
      if (mu(i) > 0.0 && (v < 0 || g(i) > g(v))) v = i;
    }
    const double fw_slope = g(s) - f;
    const double away_slope = (v >= 0 && mu(v) < 1.0) ? f - g(v) : 0.0;

    Eigen::VectorXd d;
    Eigen::VectorXd ad;
    double gamma_max;
    double slope;
    double curvature;
    if (fw_slope <= away_slope) {
      d = -mu;
      d(s) += 1.0;
      ad = A.col(s) - g;
      gamma_max = 1.0;
      slope = fw_slope;
      curvature = A(s, s) - 2.0 * g(s) + f;
    } else {
      d = mu;
      d(v) -= 1.0;
      ad = g - A.col(v);
      gamma_max = mu(v) / (1.0 - mu(v));
      slope = away_slope;
      curvature = f - 2.0 * g(v) + A(v, v);
    }
    double gamma = curvature > 0.0 ? std::clamp(-slope / curvature, 0.0, gamma_max) : gamma_max;
    if (!(gamma > 0.0)) break;
    mu += gamma * d;
    g += gamma * ad;
    for (Index i = 0; i < m; ++i) {
      if (mu(i) < 1e-17) mu(i) = 0.0;
    }
    mu /= mu.sum();
  }
  g = A * mu;
  const double f = std::max(0.0, mu.dot(g));
  res.iterations = it;
  res.certificate_gap = std::max(0.0, f - g.minCoeff());
  res.value = f;
  res.minimizer = ProbabilityMeasure::from_weights(mu);
  return res;
}

EnergyResult w_energy(const DiscreteSpace& space, const SubsetRef& H, const EnergyOptions& opts) {
  H.validate(space.size(), "H");
  const Index n = space.size();
  std::vector<Index> feasible;
  for (const Index y : H) {
    if (!space.is_infinite(y, y)) feasible.push_back(y);
  }
  EnergyResult best;
  if (feasible.empty()) {
    // Every atom of every measure on H carries infinite self-energy.
    best.value = kInfinity;
    best.minimizer = ProbabilityMeasure::uniform_on(n, H, space.label());
    return best;
  }

  bool have = false;
  for (const Clique& block : finite_blocks(space, feasible)) {
    const auto m = static_cast<Index>(block.size());
    Eigen::MatrixXd A(m, m);
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) A(a, b) = space.finite_value(block[static_cast<std::size_t>(a)], block[static_cast<std::size_t>(b)]);
    }
    Eigen::VectorXd start = m <= opts.exact_face_limit ? exact_face_minimum(A)
                                                        : Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    EnergyResult r = minimize_quadratic_on_simplex(A, std::move(start), opts);
    r.minimizer = ProbabilityMeasure::embed(n, SubsetRef(block), r.minimizer.weights(), space.label());
    r.value = energy(space, r.minimizer);
    if (!have || r.value < best.value) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

bool EnergyChainReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.passed; });
}

EnergyChainReport energy_chain_check(const DiscreteSpace& space, const SubsetRef& H, double tol, Index v_size_limit) {
  EnergyChainReport rep;
  rep.w = w_energy(space, H).value;
  rep.q = q_value(space, H, H).value;
  rep.u = u_value(space, H).value;
  if (H.size() <= v_size_limit) rep.v = v_value(space, H).value;

  const auto check = [&](std::string name, ExtendedValue lhs, ExtendedValue rhs) {
    const double t = tol * std::max(1.0, rhs.value_or(1.0));
    rep.checks.push_back({std::move(name), lhs, rhs, approx_le(lhs, rhs, t)});
  };
  check("w <= q", rep.w, rep.q);
  check("q <= u", rep.q, rep.u);
  if (rep.v) {
    check("w <= v", rep.w, *rep.v);
    check("v <= q", *rep.v, rep.q);
  }
  return rep;
}

MaxPrincipleReport max_principle_check(const DiscreteSpace& space, int sample_measures, std::uint64_t seed,
                                       double tol) {
  const Index n = space.size();
  MaxPrincipleReport rep;
  rep.worst_slack = -std::numeric_limits<double>::infinity();
  Rng rng(seed);

  const auto examine = [&](const ProbabilityMeasure& mu) {
    ++rep.samples;
    const auto u = potentials(space, mu);
    ExtendedValue on_support(0.0);
    for (const Index i : mu.support()) on_support = max(on_support, u[static_cast<std::size_t>(i)]);
    Index arg = 0;
    for (Index x = 1; x < n; ++x) {
      if (u[static_cast<std::size_t>(arg)] < u[static_cast<std::size_t>(x)]) arg = x;
    }
    const ExtendedValue overall = u[static_cast<std::size_t>(arg)];
    double slack;
    if (on_support.is_infinite()) {
      slack = 0.0;
    } else if (overall.is_infinite()) {
      slack = std::numeric_limits<double>::infinity();
    } else {
      slack = overall.value() - on_support.value();
    }
    if (slack > rep.worst_slack) {
      rep.worst_slack = slack;
      if (slack > tol * std::max(1.0, on_support.value_or(1.0))) {
        rep.holds = false;
        rep.counterexample = mu;
        rep.violating_point = arg;
      }
    }
  };

  for (Index i = 0; i < n; ++i) examine(ProbabilityMeasure::dirac(n, i, space.label()));
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (int s = 0; s < sample_measures; ++s) {
    std::iota(order.begin(), order.end(), Index{0});
    const auto k = static_cast<Index>(1 + rng.below(static_cast<std::uint64_t>(n)));
    for (Index a = 0; a < k; ++a) {
      const auto b = a + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - a)));
      std::swap(order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(b)]);
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (Index a = 0; a < k; ++a) w(order[static_cast<std::size_t>(a)]) = rng.exponential() + 1e-300;
    w /= w.sum();
    examine(ProbabilityMeasure::from_weights(std::move(w), space.label()));
  }
  return rep;
}

std::string energy_result_to_json(const EnergyResult& r) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["value"] = r.value;
  j["weights"] = std::vector<double>(r.minimizer.weights().data(), r.minimizer.weights().data() + r.minimizer.size());
  j["iterations"] = r.iterations;
  j["gap"] = real_to_json(r.certificate_gap);
  return j.dump();
}

}  // namespace rendezkit
