#ifndef RENDEZKIT_MEASURE_HPP
#define RENDEZKIT_MEASURE_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rendezkit/extended.hpp"
#include "rendezkit/space.hpp"

namespace rendezkit {

/// Probability weights over the points of a DiscreteSpace.
class ProbabilityMeasure {
 public:
  ProbabilityMeasure() = default;

  /// Accepts nonnegative finite weights whose sum is within 1e-9 of 1 and
  /// renormalizes them; anything further off is rejected.
  static ProbabilityMeasure from_weights(Eigen::VectorXd weights, std::string space_label = {});

  static ProbabilityMeasure dirac(Index n, Index at, std::string space_label = {});
  static ProbabilityMeasure uniform(Index n, std::string space_label = {});
  static ProbabilityMeasure uniform_on(Index n, const SubsetRef& support, std::string space_label = {});

  /// Weights given on the points of `subset`, zero elsewhere.
  static ProbabilityMeasure embed(Index n, const SubsetRef& subset, const Eigen::VectorXd& local_weights,
                                  std::string space_label = {});

  Index size() const { return weights_.size(); }
  const Eigen::VectorXd& weights() const { return weights_; }
  double operator[](Index i) const { return weights_(i); }
  const std::string& space_label() const { return space_label_; }

  SubsetRef support() const;
  bool concentrated_on(const SubsetRef& subset) const;

 private:
  Eigen::VectorXd weights_;
  std::string space_label_;
};

/// Attained sup or inf of a potential over a subset (smallest index on ties).
struct PotentialExtremum {
  ExtendedValue value;
  Index index = -1;
};

// U^mu(x) = sum_y mu_y k(x, y).
ExtendedValue potential(const DiscreteSpace& space, const ProbabilityMeasure& mu, Index x);

/// U^mu at every point of the space.
std::vector<ExtendedValue> potentials(const DiscreteSpace& space, const ProbabilityMeasure& mu);

// Q(mu; L) = sup over L of U^mu.
PotentialExtremum sup_potential(const DiscreteSpace& space, const ProbabilityMeasure& mu, const SubsetRef& L);

// Q_(mu; L) = inf over L of U^mu.
PotentialExtremum inf_potential(const DiscreteSpace& space, const ProbabilityMeasure& mu, const SubsetRef& L);

// W(mu, nu) = double integral of k against mu x nu; symmetric.
ExtendedValue mutual_energy(const DiscreteSpace& space, const ProbabilityMeasure& mu, const ProbabilityMeasure& nu);

inline ExtendedValue energy(const DiscreteSpace& space, const ProbabilityMeasure& mu) {
  return mutual_energy(space, mu, mu);
}

// A(mu, L) = [inf_L U^mu, sup_L U^mu].
ExtInterval measure_interval(const DiscreteSpace& space, const ProbabilityMeasure& mu, const SubsetRef& L);

std::string measure_to_json(const ProbabilityMeasure& mu);
ProbabilityMeasure measure_from_json(std::string_view text);

}  // namespace rendezkit

#endif  // RENDEZKIT_MEASURE_HPP
