#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "json.hpp"
#include "rendezkit/game.hpp"
#include "rendezkit/matrix_game.hpp"
#include "rendezkit/random.hpp"

using namespace rendezkit;

namespace {

const SubsetRef kAll2 = SubsetRef::all(2);
const SubsetRef kA({0});

}  // namespace

TEST_CASE("two-point example") {
  const auto s = build_discrete2();
  const auto q = q_value(s, kAll2, kAll2);
  CHECK(q.value.value() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q.gap <= 1e-12);
  CHECK(q.min_strategy[0] == doctest::Approx(0.5));
  CHECK(q_value(s, kA, kA).value == ExtendedValue(0.0));
  CHECK(q_lower(s, kAll2, kAll2).value.value() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(u_value(s, kA).value == ExtendedValue(1.0));
  CHECK(u_value(s, kAll2).value.value() == doctest::Approx(0.5));
  CHECK(v_value(s, kAll2).value == ExtendedValue(0.0));
  CHECK(duality_gap(s, kAll2, kAll2) <= 1e-12);
}

TEST_CASE("small matrix games") {
  Eigen::MatrixXd one(1, 1);
  one << 3.0;
  const auto r1 = solve_matrix_game(one);
  CHECK(r1.upper == 3.0);
  CHECK(r1.lower == 3.0);

  // Matching pennies shifted to be nonnegative.
  Eigen::MatrixXd mp(2, 2);
  mp << 2, 0, 0, 2;
  const auto r2 = solve_matrix_game(mp);
  CHECK(r2.upper == doctest::Approx(1.0));
  CHECK(r2.lower == doctest::Approx(1.0));

  // Rows minimize: a dominated row gets no weight.
  Eigen::MatrixXd dom(2, 2);
  dom << 1, 2, 3, 4;
  const auto r3 = solve_matrix_game(dom);
  CHECK(r3.row_strategy(0) == doctest::Approx(1.0));
  CHECK(r3.upper == doctest::Approx(2.0));
}

TEST_CASE("frozen values on the five-point instance") {
  // Independent LP oracle (HiGHS) values.
  const auto s = fixtures::five_point(false);
  const auto X = SubsetRef::all(5);
  const SubsetRef H({0, 1, 3});
  CHECK(q_value(s, X, X).value.value() == doctest::Approx(0.733369438010049).epsilon(1e-10));
  CHECK(q_lower(s, X, X).value.value() == doctest::Approx(0.733369438010050).epsilon(1e-10));
  CHECK(q_value(s, H, X).value.value() == doctest::Approx(0.735777934019442).epsilon(1e-10));
  CHECK(q_lower(s, H, X).value.value() == doctest::Approx(0.530873650267236).epsilon(1e-10));
  CHECK(q_lower(s, X, H).value.value() == doctest::Approx(0.735777934019442).epsilon(1e-10));
  CHECK(q_value(s, X, H).value.value() == doctest::Approx(0.530873650267236).epsilon(1e-10));
  CHECK(v_value(s, X).value == ExtendedValue(0.0));

  const auto g = fixtures::five_point(true);
  CHECK(q_value(g, X, X).value.value() == doctest::Approx(0.578402061486288).epsilon(1e-10));
  CHECK(u_value(g, H).value.value() == doctest::Approx(0.680545382753541).epsilon(1e-10));
  CHECK(v_value(g, X).value.value() == doctest::Approx(0.502449414383575).epsilon(1e-10));
}

TEST_CASE("infinite entries") {
  const auto s = fixtures::inf_diagonal3();
  const auto X = SubsetRef::all(3);
  const auto q = q_value(s, X, X);
  CHECK(q.value.is_infinite());
  CHECK(q.status == GameStatus::infinite);
  CHECK(q.infinity_witness.size() == 3);
  CHECK(q_lower(s, X, X).value.is_infinite());
  CHECK(duality_gap(s, X, X) == 0.0);

  // Points 0 and 2 only: q({0},{2}) = 2, q({0,2},{1}) = 1.
  CHECK(q_value(s, SubsetRef({0}), SubsetRef({2})).value == ExtendedValue(2.0));
  CHECK(q_value(s, SubsetRef({0, 2}), SubsetRef({1})).value == ExtendedValue(1.0));
  // Row 1 sees +inf on L = {1}, so only 0 and 2 may carry mass.
  const auto r = q_value(s, X, SubsetRef({1}));
  CHECK(r.value == ExtendedValue(1.0));
  CHECK(r.min_strategy[1] == 0.0);
  // qlower(X, {0,1}): every column has an infinite entry from X.
  CHECK(q_lower(s, X, SubsetRef({0, 1})).value.is_infinite());
  // qlower({0}, {0,1}): column 0 is pushed to inf, value k(0,1) = 1.
  CHECK(q_lower(s, SubsetRef({0}), SubsetRef({0, 1})).value == ExtendedValue(1.0));
}

TEST_CASE("unattained supremum is flagged") {
  // H = {0,1}, L = {0,2}, k(0,1) = inf. Column 0 is inf for any nu charging
  // point 1, so the game reduces to column 2 where delta_0 gives 2. But
  // delta_0 itself has U(0) = 0; only delta_0 + eps delta_1 gets close.
  const auto s = DiscreteSpace::from_matrix({{0.0, kInfinity, 2.0}, {kInfinity, 0.0, 1.0}, {2.0, 1.0, 0.0}});
  const auto r = q_lower(s, SubsetRef({0, 1}), SubsetRef({0, 2}));
  CHECK(r.value == ExtendedValue(2.0));
  CHECK_FALSE(r.attained);
  CHECK(q_lower(s, SubsetRef({0, 1}), SubsetRef({2})).attained);
}

TEST_CASE("v with a support bound reports restricted support") {
  const auto g = fixtures::five_point(true);
  const auto r = v_value(g, SubsetRef::all(5), 2);
  CHECK(r.status == GameStatus::restricted_support);
  CHECK(r.value.value() >= 0.502449414383575 - 1e-12);
  CHECK_THROWS_AS(v_value(build_interval_grid(0, 1, 21, Kernel{}), SubsetRef::all(21)), ArgumentError);
}

TEST_CASE("property: random games, duality and certificates") {
  Rng rng(42);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(rng.below(7));
    std::vector<std::vector<ExtendedValue>> k(n, std::vector<ExtendedValue>(n, ExtendedValue(0.0)));
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) k[i][j] = k[j][i] = ExtendedValue(rng.uniform() * 3.0);
    }
    const auto s = DiscreteSpace::from_matrix(k);
    std::vector<Index> h, l;
    for (int i = 0; i < n; ++i) {
      if (rng.below(2)) h.push_back(i);
      if (rng.below(2)) l.push_back(i);
    }
    if (h.empty()) h.push_back(0);
    if (l.empty()) l.push_back(n - 1);
    const SubsetRef H(h), L(l);
    const auto q = q_value(s, H, L);
    const auto ql = q_lower(s, L, H);
    CHECK(std::abs(q.value.value() - ql.value.value()) <= 1e-9);
    CHECK(q.gap <= 1e-9);
    CHECK(q.min_strategy.concentrated_on(H));
    // The returned measure achieves the value.
    CHECK(sup_potential(s, q.min_strategy, L).value.value() == doctest::Approx(q.value.value()).epsilon(1e-12));
    // q_ <= q once H is inside L.
    if (H.subset_of(L)) CHECK(q_lower(s, H, L).value.value() <= q.value.value() + 1e-9);
    CHECK(u_value(s, H).value.value() >= q_value(s, H, H).value.value() - 1e-9);
  }
}

TEST_CASE("json output") {
  const auto j = nlohmann::json::parse(game_solution_to_json(q_value(fixtures::inf_diagonal3(), SubsetRef::all(3), SubsetRef::all(3))));
  CHECK(j["schema"] == 1);
  CHECK(j["value"] == "inf");
  CHECK(j["status"] == "infinite");
}
