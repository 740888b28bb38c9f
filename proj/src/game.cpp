#include "rendezkit/game.hpp"

#include <algorithm>
#include <cmath>

#include "rendezkit/matrix_game.hpp"
#include "rendezkit/serialize.hpp"

namespace rendezkit {

namespace {

Eigen::MatrixXd finite_block(const DiscreteSpace& space, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  Eigen::MatrixXd out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = space.finite_value(rows[i], cols[j]);
    }
  }
  return out;
}

// First column point of `cols` at which `row` has an infinite kernel entry.
std::optional<Index> first_infinite(const DiscreteSpace& space, Index row, const SubsetRef& cols) {
  for (const Index x : cols) {
    if (space.is_infinite(row, x)) return x;
  }
  return std::nullopt;
}

void validate_pair(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L) {
  H.validate(space.size(), "H");
  L.validate(space.size(), "L");
}

}  // namespace

std::string to_string(GameStatus status) {
  switch (status) {
    case GameStatus::optimal: return "optimal";
    case GameStatus::infinite: return "infinite";
    case GameStatus::restricted_support: return "restricted-support";
  }
  return "?";
}

double game_tolerance(const DiscreteSpace& space) { return 1e-9 * std::max(1.0, space.max_finite_entry() / 1e6); }

GameSolution q_value(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L) {
  validate_pair(space, H, L);
  const Index n = space.size();

  std::vector<Index> rows;
  std::vector<std::pair<Index, Index>> witness;
  for (const Index y : H) {
    if (const auto x = first_infinite(space, y, L)) {
      witness.emplace_back(y, *x);
    } else {
      rows.push_back(y);
    }
  }

  GameSolution sol;
  if (rows.empty()) {
    sol.value = kInfinity;
    sol.status = GameStatus::infinite;
    sol.min_strategy = ProbabilityMeasure::uniform_on(n, H, space.label());
    std::vector<Index> cols;
    for (const auto& [y, x] : witness) cols.push_back(x);
    sol.max_strategy = ProbabilityMeasure::uniform_on(n, SubsetRef(cols), space.label());
    sol.infinity_witness = std::move(witness);
    return sol;
  }

  const auto res = solve_matrix_game(finite_block(space, rows, L.indices()));
  sol.min_strategy = ProbabilityMeasure::embed(n, SubsetRef(rows), res.row_strategy, space.label());
  sol.max_strategy = ProbabilityMeasure::embed(n, L, res.col_strategy, space.label());
  // Report what the returned mu actually achieves on L.
  sol.value = sup_potential(space, sol.min_strategy, L).value;
  sol.gap = std::max(0.0, sol.value.value() - res.lower);
  return sol;
}

GameSolution q_lower(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L) {
  validate_pair(space, H, L);
  const Index n = space.size();

  std::vector<Index> cols;
  std::vector<std::pair<Index, Index>> witness;
  for (const Index x : L) {
    if (const auto y = first_infinite(space, x, H)) {
      witness.emplace_back(*y, x);
    } else {
      cols.push_back(x);
    }
  }

  GameSolution sol;
  if (cols.empty()) {
    // Uniform nu on H charges, for every x in L, some y with k(y,x) = +inf.
    sol.value = kInfinity;
    sol.status = GameStatus::infinite;
    sol.max_strategy = ProbabilityMeasure::uniform_on(n, H, space.label());
    sol.min_strategy = ProbabilityMeasure::uniform_on(n, L, space.label());
    sol.infinity_witness = std::move(witness);
    return sol;
  }

  // max_nu min_x (K^T nu)_x = -(min_nu max_x of -K): nu becomes the row
  // (minimizing) player of the negated game.
  const Eigen::MatrixXd block = finite_block(space, H.indices(), cols);
  const auto res = solve_matrix_game(-block);
  sol.max_strategy = ProbabilityMeasure::embed(n, H, res.row_strategy, space.label());
  sol.min_strategy = ProbabilityMeasure::embed(n, SubsetRef(cols), res.col_strategy, space.label());
  const SubsetRef finite_cols(cols);
  sol.value = inf_potential(space, sol.max_strategy, finite_cols).value;
  sol.gap = std::max(0.0, -res.lower - sol.value.value());
  if (finite_cols.size() != L.size()) {
    sol.attained = inf_potential(space, sol.max_strategy, L).value == sol.value;
  }
  return sol;
}

GameSolution u_value(const DiscreteSpace& space, const SubsetRef& H) {
  return q_value(space, H, SubsetRef::all(space.size()));
}

GameSolution v_value(const DiscreteSpace& space, const SubsetRef& H, std::optional<Index> max_support) {
  H.validate(space.size(), "H");
  const Index h = H.size();
  if (!max_support && h > 20) {
    throw ArgumentError("v_value: |H| = " + std::to_string(h) + " > 20 needs an explicit support bound");
  }
  const Index bound = std::min(h, max_support.value_or(h));
  if (bound < 1) throw ArgumentError("v_value: support bound must be >= 1");

  std::optional<GameSolution> best;
  std::vector<Index> pick;
  // Supports in order of size, then lexicographically, so the first optimum
  // found has the smallest support.
  for (Index size = 1; size <= bound; ++size) {
    std::vector<Index> comb(static_cast<std::size_t>(size));
    for (Index k = 0; k < size; ++k) comb[static_cast<std::size_t>(k)] = k;
    while (true) {
      pick.clear();
      for (const Index k : comb) pick.push_back(H[k]);
      const SubsetRef S(pick);
      GameSolution g = q_value(space, S, S);
      if (!best || g.value < best->value) best = std::move(g);
      if (best->value == ExtendedValue(0.0)) break;

      Index k = size - 1;
      while (k >= 0 && comb[static_cast<std::size_t>(k)] == h - size + k) --k;
      if (k < 0) break;
      ++comb[static_cast<std::size_t>(k)];
      for (Index r = k + 1; r < size; ++r) comb[static_cast<std::size_t>(r)] = comb[static_cast<std::size_t>(r - 1)] + 1;
    }
    if (best->value == ExtendedValue(0.0)) break;
  }
  if (bound < h) best->status = GameStatus::restricted_support;
  return *best;
}

double duality_gap(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L) {
  const ExtendedValue a = q_value(space, H, L).value;
  const ExtendedValue b = q_lower(space, L, H).value;
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite() || b.is_infinite()) {
    throw PropertyViolation("duality: q(H,L) and q_(L,H) disagree on +inf");
  }
  return std::abs(a.value() - b.value());
}

std::string game_solution_to_json(const GameSolution& sol) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["value"] = sol.value;
  j["status"] = to_string(sol.status);
  j["gap"] = real_to_json(sol.gap);
  j["attained"] = sol.attained;
  const auto weights = [](const ProbabilityMeasure& m) {
    return std::vector<double>(m.weights().data(), m.weights().data() + m.size());
  };
  j["min_strategy"] = weights(sol.min_strategy);
  j["max_strategy"] = weights(sol.max_strategy);
  if (!sol.infinity_witness.empty()) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& [a, b] : sol.infinity_witness) w.push_back({a, b});
    j["infinity_witness"] = std::move(w);
  }
  return j.dump();
}

}  // namespace rendezkit
