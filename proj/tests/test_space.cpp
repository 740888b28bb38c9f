#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "rendezkit/space.hpp"

using namespace rendezkit;

TEST_CASE("two-point discrete space") {
  const auto s = build_discrete2();
  REQUIRE(s.size() == 2);
  CHECK(s.kernel(0, 0) == ExtendedValue(0.0));
  CHECK(s.kernel(0, 1) == ExtendedValue(1.0));
  CHECK(s.label() == "discrete2");
  CHECK_FALSE(s.has_infinite_entries());
}

TEST_CASE("validation names the offending entry") {
  try {
    DiscreteSpace::from_matrix({{0.0, 1.0}, {2.0, 0.0}});
    FAIL("asymmetric kernel accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
  }
  CHECK_THROWS_AS(DiscreteSpace::from_matrix({{0.0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(DiscreteSpace::from_matrix({}), ValidationError);
  CHECK_THROWS_AS(DiscreteSpace::from_matrix({{0.0, 1.0}, {kInfinity, 0.0}}), ValidationError);
  Eigen::MatrixXd neg(1, 1);
  neg << -1.0;
  CHECK_THROWS_AS(DiscreteSpace::from_parts(neg, BoolMatrix::Constant(1, 1, false)), ValidationError);
}

TEST_CASE("interval grid coordinates and kernels") {
  const auto s = build_interval_grid(0.0, 1.0, 3, Kernel{KernelKind::euclid, 1.0});
  CHECK(s.coords()(2, 0) == 1.0);
  CHECK(s.kernel(0, 2) == ExtendedValue(1.0));
  CHECK(s.kernel(0, 1) == ExtendedValue(0.5));
  CHECK(s.label() == "interval[0,1]:N=3:euclid");

  const auto lg = build_interval_grid(0.0, 1.0, 3, Kernel::parse("neglog"));
  CHECK(lg.kernel(1, 1).is_infinite());
  CHECK(lg.kernel(0, 2) == ExtendedValue(0.0));
  CHECK(lg.kernel(0, 1).value() == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(build_interval_grid(0.0, 2.0, 3, Kernel::parse("neglog")), DomainError);

  const auto rz = build_interval_grid(0.0, 1.0, 5, Kernel::parse("riesz:2"));
  CHECK(rz.kernel(0, 0).is_infinite());
  CHECK(rz.kernel(0, 1).value() == doctest::Approx(16.0));
}

TEST_CASE("kernel parsing") {
  CHECK(Kernel::parse("riesz:0.5").exponent == 0.5);
  CHECK(Kernel::parse("riesz:2").name() == "riesz:2");
  CHECK_THROWS_AS(Kernel::parse("riesz:-1"), ArgumentError);
  CHECK_THROWS_AS(Kernel::parse("riesz:x"), ArgumentError);
  CHECK_THROWS_AS(Kernel::parse("gauss"), ArgumentError);
}

TEST_CASE("circle grid is circulant with chordal distances") {
  const Index N = 8;
  const auto s = build_circle_grid(N, CircleMetric::chordal);
  for (Index i = 0; i < N; ++i) {
    for (Index j = 0; j < N; ++j) {
      const double expect = 2.0 * std::sin(std::numbers::pi * static_cast<double>((j - i + N) % N) / N);
      CHECK(s.kernel(i, j).value() == doctest::Approx(expect).epsilon(1e-14));
      CHECK(s.kernel(i, j) == s.kernel(0, (j - i + N) % N));
    }
  }
  const auto g = build_circle_grid(N, CircleMetric::geodesic);
  CHECK(g.kernel(0, 4).value() == doctest::Approx(std::numbers::pi));
}

TEST_CASE("subset parsing") {
  CHECK(SubsetRef::parse("all", 4) == SubsetRef::all(4));
  CHECK(SubsetRef::parse("3,1,1", 4).indices() == std::vector<Index>{1, 3});
  CHECK(SubsetRef::parse("1..3", 5).indices() == std::vector<Index>{1, 2, 3});
  CHECK_THROWS_AS(SubsetRef::parse("3..1", 5), ArgumentError);
  CHECK_THROWS_AS(SubsetRef::parse("x", 5), ArgumentError);
  CHECK_THROWS_AS(SubsetRef::parse("7", 5).validate(5, "H"), ArgumentError);
  CHECK_THROWS_AS(SubsetRef().validate(5, "H"), ArgumentError);
  CHECK(SubsetRef({0, 2}).subset_of(SubsetRef::all(3)));
  CHECK_FALSE(SubsetRef::all(3).subset_of(SubsetRef({0, 2})));
}

TEST_CASE("json and csv round trips") {
  const auto s = fixtures::inf_diagonal3();
  const auto back = space_from_json(space_to_json(s));
  REQUIRE(back.size() == 3);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) CHECK(back.kernel(i, j) == s.kernel(i, j));
  }
  CHECK(back.label() == "infdiag3");
  const auto c = space_from_csv("inf,1\n1,inf\n");
  CHECK(c.kernel(0, 0).is_infinite());
  CHECK_THROWS_AS(space_from_csv("0,-1\n-1,0\n"), ValidationError);
  CHECK_THROWS_AS(space_from_json("{\"kernel\": 3}"), ValidationError);
  CHECK_THROWS_AS(space_from_json("not json"), ValidationError);
}

TEST_CASE("space files from disk") {
  const auto csv = load_space_file(std::string(RENDEZKIT_TEST_DATA) + "/two_point.csv");
  CHECK(csv.kernel(0, 1) == ExtendedValue(1.0));
  const auto js = load_space_file(std::string(RENDEZKIT_TEST_DATA) + "/with_inf.json");
  CHECK(js.kernel(1, 1).is_infinite());
  CHECK_THROWS_AS(load_space_file(std::string(RENDEZKIT_TEST_DATA) + "/asymmetric.json"), ValidationError);
  CHECK_THROWS_AS(load_space_file("/nonexistent/space.json"), ValidationError);
}
