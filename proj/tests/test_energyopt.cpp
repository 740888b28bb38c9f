#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "json.hpp"
#include "rendezkit/energyopt.hpp"
#include "rendezkit/random.hpp"

using namespace rendezkit;

TEST_CASE("two-point space energies") {
  const auto s = build_discrete2();
  const auto X = SubsetRef::all(2);
  CHECK(w_energy(s, X).value.value() == doctest::Approx(0.0));
  CHECK(w_energy(s, SubsetRef({0})).value.value() == doctest::Approx(0.0));
  const auto rep = energy_chain_check(s, X);
  CHECK(rep.passed());
  REQUIRE(rep.v.has_value());
  CHECK(rep.q.value() == doctest::Approx(0.5));
}

TEST_CASE("infinite diagonal: w is infinite") {
  const auto s = build_interval_grid(0.0, 1.0, 9, Kernel::parse("neglog"));
  const auto r = w_energy(s, SubsetRef::all(9));
  CHECK(r.value.is_infinite());
  CHECK(r.minimizer.weights().sum() == doctest::Approx(1.0));
  CHECK(energy_chain_check(s, SubsetRef::all(9)).passed());
}

TEST_CASE("frozen Gaussian energies") {
  const auto g = fixtures::five_point(true);
  const auto X = SubsetRef::all(5);
  const SubsetRef H({0, 1, 3});
  CHECK(w_energy(g, X).value.value() == doctest::Approx(0.502449414383575).epsilon(1e-9));
  CHECK(w_energy(g, H).value.value() == doctest::Approx(0.680545382753541).epsilon(1e-9));
  const auto rep = energy_chain_check(g, X);
  CHECK(rep.passed());
  REQUIRE(rep.v.has_value());
  CHECK(rep.v->value() == doctest::Approx(0.502449414383575).epsilon(1e-9));
  CHECK(rep.q.value() == doctest::Approx(0.578402061486288).epsilon(1e-9));
  CHECK(energy_chain_check(g, H).u.value() == doctest::Approx(0.680545382753541).epsilon(1e-9));
}

TEST_CASE("first-order certificate at the minimizer") {
  const auto g = fixtures::five_point(true);
  const auto r = w_energy(g, SubsetRef::all(5));
  CHECK(r.certificate_gap >= -1e-12);
  CHECK(r.certificate_gap <= 1e-7);
}

TEST_CASE("conditional gradient on a PSD quadratic") {
  Eigen::MatrixXd A(3, 3);
  A << 2, 0, 0, 0, 1, 0, 0, 0, 2;
  EnergyOptions opts;
  const auto r = minimize_quadratic_on_simplex(A, Eigen::VectorXd::Constant(3, 1.0 / 3.0), opts);
  // Optimum weights are proportional to the inverse diagonal: (1/4, 1/2, 1/4).
  CHECK(r.value.value() == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(r.minimizer[1] == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("property: energy chain on random metric spaces") {
  Rng rng(17);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng.below(7));
    std::vector<std::vector<double>> pts(n, std::vector<double>(2));
    for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
    std::vector<std::vector<ExtendedValue>> k(n, std::vector<ExtendedValue>(n, ExtendedValue(0.0)));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        k[i][j] = k[j][i] = ExtendedValue(std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]));
      }
    }
    const auto s = DiscreteSpace::from_matrix(k);
    CHECK(energy_chain_check(s, SubsetRef::all(n)).passed());
  }
}

TEST_CASE("maximum principle") {
  const auto two = max_principle_check(build_discrete2(), 50, 1);
  CHECK_FALSE(two.holds);
  REQUIRE(two.counterexample.has_value());
  CHECK(two.worst_slack == doctest::Approx(1.0));

  const auto grid = max_principle_check(build_interval_grid(0.0, 1.0, 21, Kernel::parse("euclid")), 200, 2);
  CHECK_FALSE(grid.holds);

  const auto neglog = max_principle_check(build_interval_grid(0.0, 1.0, 21, Kernel::parse("neglog")), 200, 3);
  CHECK(neglog.holds);
  CHECK(neglog.samples >= 21);
}

TEST_CASE("energy json") {
  const auto j = nlohmann::json::parse(energy_result_to_json(w_energy(build_discrete2(), SubsetRef::all(2))));
  CHECK(j["schema"] == 1);
  CHECK(j["weights"].size() == 2);
}
