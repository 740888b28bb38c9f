#ifndef RENDEZKIT_GAME_HPP
#define RENDEZKIT_GAME_HPP

// Energies defined as min-max / max-min games over probability measures:
//
//   q(H,L)  = inf_{mu on H} sup_{x in L} U^mu(x)
//   q_(H,L) = sup_{nu on H} inf_{x in L} U^nu(x)
//   u(H)    = q(H, X)
//   v(H)    = inf_{mu on H} sup_{x in supp mu} U^mu(x)
//
// Every finite space is compact, so q = q# and q_ = q_#, and the minimax
// identity q(H,L) = q_(L,H) is plain LP duality. The two sides are solved
// on different LPs so that comparing them is a real check.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rendezkit/measure.hpp"
#include "rendezkit/space.hpp"

namespace rendezkit {

enum class GameStatus { optimal, infinite, restricted_support };

std::string to_string(GameStatus status);

struct GameSolution {
  ExtendedValue value;
  // The player taking the infimum (mu for q; the x-mixture for q_).
  ProbabilityMeasure min_strategy;
  // The player taking the supremum (the x-mixture for q; nu for q_).
  ProbabilityMeasure max_strategy;
  // Difference between what the two strategies guarantee; 0 for infinite games.
  double gap = 0.0;
  GameStatus status = GameStatus::optimal;
  // False when the optimum is a supremum that no single measure reaches
  // (max-min with infinite kernel entries); `value` is still exact.
  bool attained = true;
  // For status infinite: (row point, column point) pairs with k = +inf,
  // one per point of the player that cannot avoid them.
  std::vector<std::pair<Index, Index>> infinity_witness;
};

/// Solver tolerance: 1e-9 absolute, scaled with entries above 1e6.
double game_tolerance(const DiscreteSpace& space);

// q(H,L). Points of H that see +inf somewhere on L are excluded from the
// minimizer's support; if none remain the value is +inf.
GameSolution q_value(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L);

// q_(H,L). Columns x in L with k(y,x) = +inf for some y in H are pushed to
// +inf by any fully supported nu, so the game reduces to the remaining
// columns; if none remain the value is +inf.
GameSolution q_lower(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L);

// u(H) = q(H, X).
GameSolution u_value(const DiscreteSpace& space, const SubsetRef& H);

/// v(H) by enumerating supports S of H (|S| <= max_support), as
/// min_S q(S, S). Without a bound, |H| must be at most 20.
GameSolution v_value(const DiscreteSpace& space, const SubsetRef& H, std::optional<Index> max_support = std::nullopt);

/// |q(H,L) - q_(L,H)|; 0 when both are +inf. Throws PropertyViolation if
/// exactly one side is infinite.
double duality_gap(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L);

std::string game_solution_to_json(const GameSolution& sol);

}  // namespace rendezkit

#endif  // RENDEZKIT_GAME_HPP
