#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "rendezkit/confopt.hpp"
#include "rendezkit/game.hpp"
#include "rendezkit/random.hpp"
#include "json.hpp"

using namespace rendezkit;

namespace {

DiscreteSpace euclid_grid(Index n) { return build_interval_grid(0.0, 1.0, n, Kernel{KernelKind::euclid, 1.0}); }

SearchOptions local(std::uint64_t seed = 0) {
  SearchOptions o;
  o.method = SearchMethod::local_search;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("multiset counts") {
  CHECK(multiset_count(3, 2) == 6);
  CHECK(multiset_count(257, 3) == 2862209);
  CHECK(multiset_count(1000, 50) == UINT64_MAX);
}

TEST_CASE("neglog grid: D_2 and D_3") {
  const auto s = build_interval_grid(0.0, 1.0, 257, Kernel::parse("neglog"));
  const auto X = SubsetRef::all(257);
  CHECK(nth_diameter(s, X, 2).value == ExtendedValue(0.0));
  const auto d3 = nth_diameter(s, X, 3);
  CHECK(d3.value.value() == doctest::Approx(2.0 / 3.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(d3.points == std::vector<Index>{0, 128, 256});
  CHECK(diameter_objective(s, d3.points) == d3.value);
  CHECK_THROWS_AS(nth_diameter(s, X, 5), BudgetError);
  CHECK_THROWS_AS(nth_diameter(s, X, 1), ArgumentError);
}

TEST_CASE("euclid grid Chebyshev constants") {
  const auto s = euclid_grid(11);
  const auto X = SubsetRef::all(11);
  CHECK(cheb_n(s, X, X, 1).value == ExtendedValue(0.0));
  CHECK(cheb_n(s, X, X, 2).value.value() == doctest::Approx(0.5));
  CHECK(cheb_n(s, X, X, 3).value.value() == doctest::Approx(1.0 / 3.0));
  CHECK(dual_cheb_n(s, X, X, 1).value.value() == doctest::Approx(0.5));
  const auto mb2 = dual_cheb_n(s, X, X, 2);
  CHECK(mb2.value.value() == doctest::Approx(0.5));
  CHECK(mb2.points == std::vector<Index>{0, 10});
}

TEST_CASE("two-point space tuples") {
  const auto s = build_discrete2();
  const auto X = SubsetRef::all(2);
  CHECK(cheb_n(s, X, X, 1).value == ExtendedValue(0.0));
  CHECK(cheb_n(s, X, X, 2).value.value() == doctest::Approx(0.5));
  CHECK(cheb_n(s, X, X, 3).value.value() == doctest::Approx(1.0 / 3.0));
  CHECK(nth_diameter(s, X, 2).value == ExtendedValue(0.0));
  CHECK(modified_cheb_n(s, SubsetRef({0}), 2).value.value() == doctest::Approx(1.0));
  CHECK(cheb_n(s, X, SubsetRef({0}), 2).value.value() == doctest::Approx(1.0));
}

TEST_CASE("frozen values on the five-point instance") {
  // Independent full-enumeration oracle values.
  const auto s = fixtures::five_point(false);
  const auto X = SubsetRef::all(5);
  const SubsetRef H({0, 1, 3});
  CHECK(nth_diameter(s, X, 3).value == ExtendedValue(0.0));
  CHECK(cheb_n(s, X, X, 2).value.value() == doctest::Approx(0.707106781186548).epsilon(1e-12));
  CHECK(cheb_n(s, X, X, 3).value.value() == doctest::Approx(0.659015389359931).epsilon(1e-12));
  CHECK(dual_cheb_n(s, X, X, 2).value.value() == doctest::Approx(0.806225774829855).epsilon(1e-12));
  CHECK(dual_cheb_n(s, H, X, 3).value.value() == doctest::Approx(0.806225774829855).epsilon(1e-12));

  const auto g = fixtures::five_point(true);
  CHECK(nth_diameter(g, X, 3).value.value() == doctest::Approx(0.290364721859832).epsilon(1e-12));
  CHECK(cheb_n(g, X, X, 3).value.value() == doctest::Approx(0.522045776761016).epsilon(1e-12));
}

TEST_CASE("infinite diagonal: M_n finite below N, Mbar_n infinite") {
  const auto s = build_interval_grid(0.0, 1.0, 9, Kernel::parse("neglog"));
  const auto X = SubsetRef::all(9);
  for (int n = 1; n <= 4; ++n) {
    CHECK(cheb_n(s, X, X, n).value.is_finite());
    CHECK(dual_cheb_n(s, X, X, n).value.is_infinite());
  }
  const auto [m, mbar] = cheb_limits_via_games(s, X, X);
  CHECK(m.is_infinite());
  CHECK(mbar.is_infinite());
  const auto three = fixtures::inf_diagonal3();
  CHECK(cheb_n(three, SubsetRef::all(3), SubsetRef::all(3), 2).value.is_finite());
}

TEST_CASE("property: local search never beats exact and usually matches") {
  Rng rng(9);
  int matched = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const int n = 3 + static_cast<int>(rng.below(6));
    std::vector<std::vector<ExtendedValue>> k(n, std::vector<ExtendedValue>(n, ExtendedValue(0.0)));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) k[i][j] = k[j][i] = ExtendedValue(rng.uniform());
    }
    const auto s = DiscreteSpace::from_matrix(k);
    const auto X = SubsetRef::all(n);
    const int tuple = 2 + static_cast<int>(rng.below(3));
    const auto e = nth_diameter(s, X, tuple);
    const auto l = nth_diameter(s, X, tuple, local(t));
    CHECK(l.value.value() >= e.value.value() - 1e-12);
    CHECK(diameter_objective(s, l.points) == l.value);
    const auto ce = cheb_n(s, X, X, tuple);
    const auto cl = cheb_n(s, X, X, tuple, local(t));
    CHECK(cl.value.value() <= ce.value.value() + 1e-12);
    CHECK(cheb_objective(s, cl.points, X) == cl.value);
    const auto de = dual_cheb_n(s, X, X, tuple);
    const auto dl = dual_cheb_n(s, X, X, tuple, local(t));
    CHECK(dl.value.value() >= de.value.value() - 1e-12);
    CHECK(dual_cheb_objective(s, dl.points, X) == dl.value);
    matched += std::abs(l.value.value() - e.value.value()) < 1e-12;
  }
  CHECK(matched >= trials * 3 / 4);
}

TEST_CASE("local search is deterministic in the seed") {
  const auto s = build_interval_grid(0.0, 1.0, 65, Kernel::parse("neglog"));
  const auto X = SubsetRef::all(65);
  const auto a = nth_diameter(s, X, 6, local(3));
  const auto b = nth_diameter(s, X, 6, local(3));
  CHECK(a.points == b.points);
  CHECK(a.value == b.value);
}

TEST_CASE("fekete_limit brackets") {
  SequenceEstimate inc;
  inc.direction = Direction::increasing;
  inc.terms = {{1, ExtendedValue(0.0), true}, {2, ExtendedValue(0.5), true}, {3, ExtendedValue(1.0 / 3.0), true},
               {4, ExtendedValue(0.5), true}};
  const auto b = fekete_limit(inc, ExtendedValue(0.5));
  CHECK(b.lo().value() == doctest::Approx(0.5));
  CHECK(b.hi().value() == doctest::Approx(0.5));
  CHECK(inc.exact_terms_upto == 4);

  SequenceEstimate two;
  two.terms = {{1, ExtendedValue(0.0), true}, {2, ExtendedValue(0.5), true}};
  CHECK_THROWS_AS(fekete_limit(two), ArgumentError);

  // 2 s_2 = 0 < 1 s_1 + 1 s_1 = 2: not quasi-increasing.
  SequenceEstimate bad;
  bad.direction = Direction::increasing;
  bad.terms = {{1, ExtendedValue(1.0), true}, {2, ExtendedValue(0.0), true}, {3, ExtendedValue(1.0), true}};
  CHECK(quasi_monotone_violation(bad) > 0.0);
  CHECK_THROWS_AS(fekete_limit(bad), DataError);

  SequenceEstimate dec;
  dec.direction = Direction::decreasing;
  dec.terms = {{1, ExtendedValue(0.5), true}, {2, ExtendedValue(0.5), true}, {3, ExtendedValue(0.5), false}};
  const auto d = fekete_limit(dec, ExtendedValue(0.5));
  CHECK(d.is_singleton(1e-12));
  CHECK(dec.exact_terms_upto == 2);
}

TEST_CASE("witness json") {
  const auto j = nlohmann::json::parse(witness_to_json(dual_cheb_n(fixtures::inf_diagonal3(), SubsetRef::all(3), SubsetRef::all(3), 2)));
  CHECK(j["schema"] == 1);
  CHECK(j["value"] == "inf");
  CHECK(j["method"] == "exact");
}
