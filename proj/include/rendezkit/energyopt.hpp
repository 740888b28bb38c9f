#ifndef RENDEZKIT_ENERGYOPT_HPP
#define RENDEZKIT_ENERGYOPT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rendezkit/game.hpp"
#include "rendezkit/measure.hpp"

namespace rendezkit {

struct EnergyResult {
  ExtendedValue value;
  ProbabilityMeasure minimizer;
  int iterations = 0;
  // W(mu) - min over supp-feasible x of U^mu(x); >= 0, 0 at a stationary point.
  double certificate_gap = 0.0;
};

struct EnergyOptions {
  double relative_gap = 1e-8;
  int max_iterations = 100000;
  // Up to this many feasible points the global minimum is found by exact
  // enumeration of faces before the conditional-gradient polish.
  Index exact_face_limit = 12;
};

/// w(H) = min over mu on H of mu^T K mu.
EnergyResult w_energy(const DiscreteSpace& space, const SubsetRef& H, const EnergyOptions& opts = {});

/// Away-step conditional gradient for min mu^T A mu over the simplex, from
/// `start`. A must be finite. Exposed for testing.
EnergyResult minimize_quadratic_on_simplex(const Eigen::MatrixXd& A, Eigen::VectorXd start, const EnergyOptions& opts);

struct InequalityCheck {
  std::string name;
  ExtendedValue lhs;
  ExtendedValue rhs;
  bool passed = false;
};

struct EnergyChainReport {
  ExtendedValue w, q, u;
  std::optional<ExtendedValue> v;
  std::vector<InequalityCheck> checks;
  bool passed() const;
};

/// w(H) <= q(H) <= u(H), plus w <= v <= q when |H| allows computing v.
EnergyChainReport energy_chain_check(const DiscreteSpace& space, const SubsetRef& H, double tol = 1e-8,
                                     Index v_size_limit = 12);

struct MaxPrincipleReport {
  bool holds = true;
  // max over sampled mu of (sup_X U^mu - sup_{supp mu} U^mu); <= 0 means holds.
  double worst_slack = 0.0;
  int samples = 0;
  std::optional<ProbabilityMeasure> counterexample;
  Index violating_point = -1;
};

/// Samples Dirac measures first, then random supports with Dirichlet
/// weights, and tests U^mu(x) <= max over supp mu of U^mu for every x.
/// Passing is evidence, not proof.
MaxPrincipleReport max_principle_check(const DiscreteSpace& space, int sample_measures, std::uint64_t seed,
                                       double tol = 1e-12);

std::string energy_result_to_json(const EnergyResult& r);

}  // namespace rendezkit

#endif  // RENDEZKIT_ENERGYOPT_HPP
