#include "rendezkit/measure.hpp"

#include <cmath>

#include "rendezkit/serialize.hpp"

namespace rendezkit {

namespace {

void check_compatible(const DiscreteSpace& space, const ProbabilityMeasure& mu) {
  if (mu.size() != space.size()) {
    throw ArgumentError("measure has " + std::to_string(mu.size()) + " weights but the space has " +
                        std::to_string(space.size()) + " points");
  }
  if (!mu.space_label().empty() && !space.label().empty() && mu.space_label() != space.label()) {
    throw ArgumentError("measure belongs to space '" + mu.space_label() + "', not '" + space.label() + "'");
  }
}

void check_point(const DiscreteSpace& space, Index x) {
  if (x < 0 || x >= space.size()) throw ArgumentError("point index " + std::to_string(x) + " out of range");
}

}  // namespace

ProbabilityMeasure ProbabilityMeasure::from_weights(Eigen::VectorXd weights, std::string space_label) {
  if (weights.size() == 0) throw ArgumentError("measure: no weights");
  long double total = 0.0L;
  for (Index i = 0; i < weights.size(); ++i) {
    const double w = weights(i);
    if (!std::isfinite(w) || w < 0.0) throw ArgumentError("measure: invalid weight at index " + std::to_string(i));
    total += w;
  }
  if (std::abs(static_cast<double>(total) - 1.0) > 1e-9) {
    throw ArgumentError("measure: weights sum to " + std::to_string(static_cast<double>(total)) + ", not 1");
  }
  weights /= static_cast<double>(total);
  ProbabilityMeasure mu;
  mu.weights_ = std::move(weights);
  mu.space_label_ = std::move(space_label);
  return mu;
}

ProbabilityMeasure ProbabilityMeasure::dirac(Index n, Index at, std::string space_label) {
  if (at < 0 || at >= n) throw ArgumentError("dirac: index out of range");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  w(at) = 1.0;
  return from_weights(std::move(w), std::move(space_label));
}

ProbabilityMeasure ProbabilityMeasure::uniform(Index n, std::string space_label) {
  if (n <= 0) throw ArgumentError("uniform: need at least one point");
  return from_weights(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)), std::move(space_label));
}

ProbabilityMeasure ProbabilityMeasure::uniform_on(Index n, const SubsetRef& support, std::string space_label) {
  support.validate(n, "uniform_on");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (const Index i : support) w(i) = 1.0 / static_cast<double>(support.size());
  return from_weights(std::move(w), std::move(space_label));
}

ProbabilityMeasure ProbabilityMeasure::embed(Index n, const SubsetRef& subset, const Eigen::VectorXd& local_weights,
                                             std::string space_label) {
  subset.validate(n, "embed");
  if (local_weights.size() != subset.size()) throw ArgumentError("embed: weight/subset size mismatch");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (Index k = 0; k < subset.size(); ++k) w(subset[k]) = std::max(0.0, local_weights(k));
  const double total = w.sum();
  if (total <= 0.0) throw ArgumentError("embed: zero total mass");
  // Solver output can drift by more than the ingestion tolerance; rescale first.
  w /= total;
  return from_weights(std::move(w), std::move(space_label));
}

SubsetRef ProbabilityMeasure::support() const {
  std::vector<Index> idx;
  for (Index i = 0; i < weights_.size(); ++i) {
    if (weights_(i) > 0.0) idx.push_back(i);
  }
  return SubsetRef(std::move(idx));
}

bool ProbabilityMeasure::concentrated_on(const SubsetRef& subset) const { return support().subset_of(subset); }

ExtendedValue potential(const DiscreteSpace& space, const ProbabilityMeasure& mu, Index x) {
  check_compatible(space, mu);
  check_point(space, x);
  long double acc = 0.0L;
  for (Index y = 0; y < space.size(); ++y) {
    const double w = mu[y];
    if (w == 0.0) continue;
    if (space.is_infinite(x, y)) return kInfinity;
    acc += static_cast<long double>(w) * space.finite_value(x, y);
  }
  return static_cast<double>(acc);
}

std::vector<ExtendedValue> potentials(const DiscreteSpace& space, const ProbabilityMeasure& mu) {
  check_compatible(space, mu);
  std::vector<ExtendedValue> out;
  out.reserve(static_cast<std::size_t>(space.size()));
  for (Index x = 0; x < space.size(); ++x) out.push_back(potential(space, mu, x));
  return out;
}

PotentialExtremum sup_potential(const DiscreteSpace& space, const ProbabilityMeasure& mu, const SubsetRef& L) {
  check_compatible(space, mu);
  L.validate(space.size(), "sup_potential: L");
  PotentialExtremum best{potential(space, mu, L[0]), L[0]};
  for (Index k = 1; k < L.size(); ++k) {
    const ExtendedValue u = potential(space, mu, L[k]);
    if (best.value < u) best = {u, L[k]};
  }
  return best;
}

PotentialExtremum inf_potential(const DiscreteSpace& space, const ProbabilityMeasure& mu, const SubsetRef& L) {
  check_compatible(space, mu);
  L.validate(space.size(), "inf_potential: L");
  PotentialExtremum best{potential(space, mu, L[0]), L[0]};
  for (Index k = 1; k < L.size(); ++k) {
    const ExtendedValue u = potential(space, mu, L[k]);
    if (u < best.value) best = {u, L[k]};
  }
  return best;
}

ExtendedValue mutual_energy(const DiscreteSpace& space, const ProbabilityMeasure& mu, const ProbabilityMeasure& nu) {
  check_compatible(space, mu);
  check_compatible(space, nu);
  const std::vector<ExtendedValue> u = potentials(space, mu);
  std::vector<double> w(nu.weights().data(), nu.weights().data() + nu.size());
  return ext_weighted_sum<double>(w, u);
}

ExtInterval measure_interval(const DiscreteSpace& space, const ProbabilityMeasure& mu, const SubsetRef& L) {
  return make_interval(inf_potential(space, mu, L).value, sup_potential(space, mu, L).value);
}

std::string measure_to_json(const ProbabilityMeasure& mu) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["space_label"] = mu.space_label();
  j["weights"] = std::vector<double>(mu.weights().data(), mu.weights().data() + mu.size());
  return j.dump();
}

ProbabilityMeasure measure_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("measure file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array()) {
    throw ValidationError("measure file: expected an object with a \"weights\" array");
  }
  const auto w = j["weights"].get<std::vector<double>>();
  try {
    return ProbabilityMeasure::from_weights(Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Index>(w.size())),
                                            j.value("space_label", std::string{}));
  } catch (const ArgumentError& e) {
    throw ValidationError(std::string("measure file: ") + e.what());
  }
}

}  // namespace rendezkit
