#include "doctest.h"

#include "fixtures.hpp"
#include "rendezkit/measure.hpp"
#include "rendezkit/random.hpp"

using namespace rendezkit;

TEST_CASE("weights must sum to one") {
  Eigen::VectorXd w(2);
  w << 0.5, 0.5 + 5e-10;
  CHECK(ProbabilityMeasure::from_weights(w).weights().sum() == doctest::Approx(1.0).epsilon(1e-15));
  w << 0.5, 0.6;
  CHECK_THROWS_AS(ProbabilityMeasure::from_weights(w), ArgumentError);
  w << -0.1, 1.1;
  CHECK_THROWS_AS(ProbabilityMeasure::from_weights(w), ArgumentError);
}

TEST_CASE("potentials on the two-point space") {
  const auto s = build_discrete2();
  const auto mu = ProbabilityMeasure::uniform(2);
  CHECK(potential(s, mu, 0) == ExtendedValue(0.5));
  CHECK(energy(s, mu) == ExtendedValue(0.5));
  const auto da = ProbabilityMeasure::dirac(2, 0);
  CHECK(energy(s, da) == ExtendedValue(0.0));
  CHECK(sup_potential(s, da, SubsetRef::all(2)).value == ExtendedValue(1.0));
  CHECK(sup_potential(s, da, SubsetRef::all(2)).index == 1);
  CHECK(inf_potential(s, da, SubsetRef::all(2)).index == 0);
  CHECK(measure_interval(s, da, SubsetRef::all(2)) == make_interval(ExtendedValue(0.0), ExtendedValue(1.0)));
}

TEST_CASE("infinite kernel entries and the zero-weight convention") {
  const auto s = fixtures::inf_diagonal3();
  const auto d0 = ProbabilityMeasure::dirac(3, 0);
  CHECK(potential(s, d0, 0).is_infinite());
  CHECK(potential(s, d0, 1) == ExtendedValue(1.0));
  CHECK(energy(s, d0).is_infinite());
  // W(d0, d1) = k(0,1), finite although both self-energies are infinite.
  CHECK(mutual_energy(s, d0, ProbabilityMeasure::dirac(3, 1)) == ExtendedValue(1.0));
}

TEST_CASE("embedding and support") {
  Eigen::VectorXd local(2);
  local << 0.25, 0.75;
  const auto mu = ProbabilityMeasure::embed(4, SubsetRef({1, 3}), local);
  CHECK(mu[0] == 0.0);
  CHECK(mu[3] == 0.75);
  CHECK(mu.support() == SubsetRef({1, 3}));
  CHECK(mu.concentrated_on(SubsetRef({1, 2, 3})));
  CHECK_FALSE(mu.concentrated_on(SubsetRef({1})));
}

TEST_CASE("property: mutual energy is symmetric and the potential averages to it") {
  const auto s = fixtures::five_point(true);
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd a(5), b(5);
    for (int i = 0; i < 5; ++i) {
      a(i) = rng.exponential();
      b(i) = rng.exponential();
    }
    const auto mu = ProbabilityMeasure::from_weights(a / a.sum());
    const auto nu = ProbabilityMeasure::from_weights(b / b.sum());
    const double ab = mutual_energy(s, mu, nu).value();
    CHECK(ab == doctest::Approx(mutual_energy(s, nu, mu).value()).epsilon(1e-13));
    double direct = 0.0;
    for (Index x = 0; x < 5; ++x) direct += nu[x] * potential(s, mu, x).value();
    CHECK(ab == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("labels must agree") {
  const auto s = build_discrete2();
  const auto mu = ProbabilityMeasure::uniform(2, "other");
  CHECK_THROWS(potential(s, mu, 0));
  CHECK_THROWS(potential(s, ProbabilityMeasure::uniform(3), 0));
}

TEST_CASE("measure json round trip") {
  Eigen::VectorXd w(3);
  w << 0.2, 0.3, 0.5;
  const auto mu = ProbabilityMeasure::from_weights(w, "x");
  const auto back = measure_from_json(measure_to_json(mu));
  CHECK(back.weights().isApprox(mu.weights()));
  CHECK(back.space_label() == "x");
}
