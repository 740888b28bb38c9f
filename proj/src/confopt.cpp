#include "rendezkit/confopt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "rendezkit/game.hpp"
#include "rendezkit/random.hpp"
#include "rendezkit/serialize.hpp"

namespace rendezkit {

namespace {

// Extended sum with a total order: any infinite term dominates.
struct Sum {
  long double finite = 0.0L;
  int infinite = 0;

  void add(const DiscreteSpace& s, Index a, Index b) {
    if (s.is_infinite(a, b)) {
      ++infinite;
    } else {
      finite += s.finite_value(a, b);
    }
  }
  void remove(const DiscreteSpace& s, Index a, Index b) {
    if (s.is_infinite(a, b)) {
      --infinite;
    } else {
      finite -= s.finite_value(a, b);
    }
  }
  bool is_infinite() const { return infinite > 0; }
  ExtendedValue scaled(double factor) const {
    if (infinite > 0) return kInfinity;
    const double v = static_cast<double>(finite * factor);
    return v < 0.0 ? 0.0 : v;
  }
};

// a < b strictly, with a relative slack so round-off never counts as progress.
bool less_than(const Sum& a, const Sum& b) {
  if (a.is_infinite() || b.is_infinite()) return !a.is_infinite() && b.is_infinite();
  const long double slack = 1e-12L * std::max(1.0L, std::abs(b.finite));
  return a.finite < b.finite - slack;
}

// Lexicographically ordered walk over non-decreasing index sequences of
// length n into a candidate list of size m.
class MultisetWalker {
 public:
  MultisetWalker(Index m, int n) : m_(m), n_(n), pos_(static_cast<std::size_t>(n)) {}

  // push(depth, candidate) -> false prunes the subtree; pop undoes push;
  // leaf() is called on every complete multiset.
  template <typename Push, typename Pop, typename Leaf>
  void run(Push&& push, Pop&& pop, Leaf&& leaf) {
    recurse(0, 0, push, pop, leaf);
  }

  const std::vector<Index>& positions() const { return pos_; }

 private:
  template <typename Push, typename Pop, typename Leaf>
  void recurse(int depth, Index start, Push& push, Pop& pop, Leaf& leaf) {
    if (depth == n_) {
      leaf();
      return;
    }
    for (Index c = start; c < m_; ++c) {
      pos_[static_cast<std::size_t>(depth)] = c;
      if (push(depth, c)) recurse(depth + 1, c, push, pop, leaf);
      pop(depth, c);
    }
  }

  Index m_;
  int n_;
  std::vector<Index> pos_;
};

void check_budget(Index m, int n, const SearchOptions& opts, const char* what) {
  const std::uint64_t count = multiset_count(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n));
  if (count > opts.exact_budget) {
    throw BudgetError(std::string(what) + ": exact search over C(" + std::to_string(m) + "+" + std::to_string(n) +
                      "-1, " + std::to_string(n) + ") = " + std::to_string(count) + " multisets exceeds the budget of " +
                      std::to_string(opts.exact_budget));
  }
}

std::vector<Index> to_points(const SubsetRef& H, const std::vector<Index>& positions) {
  std::vector<Index> pts;
  pts.reserve(positions.size());
  for (const Index p : positions) pts.push_back(H[p]);
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Potentials of the tuple over L, as per-point extended sums.
class PotentialState {
 public:
  PotentialState(const DiscreteSpace& space, const SubsetRef& L) : space_(space), L_(L), sums_(L.indices().size()) {}

  void add(Index w) {
    for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k].add(space_, L_.indices()[k], w);
  }
  void remove(Index w) {
    for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k].remove(space_, L_.indices()[k], w);
  }
  Sum min() const {
    return *std::min_element(sums_.begin(), sums_.end(), [](const Sum& a, const Sum& b) { return key_less(a, b); });
  }
  Sum max() const {
    return *std::max_element(sums_.begin(), sums_.end(), [](const Sum& a, const Sum& b) { return key_less(a, b); });
  }
  // Extremum after swapping `out` for `in`, without mutating the state.
  Sum swapped_extremum(Index out, Index in, bool want_max) const {
    Sum best;
    bool first = true;
    for (std::size_t k = 0; k < sums_.size(); ++k) {
      Sum s = sums_[k];
      s.remove(space_, L_.indices()[k], out);
      s.add(space_, L_.indices()[k], in);
      if (first || (want_max ? key_less(best, s) : key_less(s, best))) {
        best = s;
        first = false;
      }
    }
    return best;
  }

 private:
  static bool key_less(const Sum& a, const Sum& b) {
    if (a.is_infinite() || b.is_infinite()) return !a.is_infinite() && b.is_infinite();
    return a.finite < b.finite;
  }

  const DiscreteSpace& space_;
  const SubsetRef& L_;
  std::vector<Sum> sums_;
};

enum class Goal { minimize, maximize };

struct LocalResult {
  std::vector<Index> positions;
  Sum value;
};

bool improves(const Sum& candidate, const Sum& current, Goal goal) {
  return goal == Goal::minimize ? less_than(candidate, current) : less_than(current, candidate);
}

std::vector<Index> initial_positions(Index m, int n, int restart, Rng& rng) {
  std::vector<Index> pos(static_cast<std::size_t>(n));
  if (restart == 0) {
    // Evenly spread over the candidate order.
    for (int j = 0; j < n; ++j) {
      pos[static_cast<std::size_t>(j)] =
          n == 1 ? (m - 1) / 2 : static_cast<Index>(std::llround(static_cast<double>(j) * (m - 1) / (n - 1)));
    }
  } else {
    for (auto& p : pos) p = static_cast<Index>(rng.below(static_cast<std::uint64_t>(m)));
  }
  return pos;
}

// Single-point exchange descent, first improvement. `eval_swap(pos, j, c)`
// returns the objective with position j replaced by candidate c;
// `eval_full(pos)` evaluates from scratch.
template <typename EvalSwap, typename EvalFull>
LocalResult local_search(Index m, int n, Goal goal, const SearchOptions& opts, EvalSwap&& eval_swap,
                         EvalFull&& eval_full) {
  LocalResult best;
  bool have_best = false;
  const int restarts = std::max(1, opts.restarts);
  for (int r = 0; r < restarts; ++r) {
    Rng rng(opts.seed, static_cast<std::uint64_t>(r));
    std::vector<Index> pos = initial_positions(m, n, r, rng);
    Sum current = eval_full(pos);
    bool moved = true;
    while (moved) {
      moved = false;
      for (int j = 0; j < n && !moved; ++j) {
        for (Index c = 0; c < m; ++c) {
          if (c == pos[static_cast<std::size_t>(j)]) continue;
          const Sum cand = eval_swap(pos, j, c);
          if (improves(cand, current, goal)) {
            pos[static_cast<std::size_t>(j)] = c;
            current = eval_full(pos);
            moved = true;
            break;
          }
        }
      }
    }
    std::sort(pos.begin(), pos.end());
    const bool better = !have_best || improves(current, best.value, goal) ||
                        (!improves(best.value, current, goal) && pos < best.positions);
    if (better) {
      best = {pos, current};
      have_best = true;
    }
  }
  return best;
}

}  // namespace

std::string to_string(SearchMethod method) { return method == SearchMethod::exact ? "exact" : "local-search"; }

SearchMethod parse_search_method(std::string_view text) {
  if (text == "exact") return SearchMethod::exact;
  if (text == "local-search" || text == "local") return SearchMethod::local_search;
  throw ArgumentError("unknown method '" + std::string(text) + "' (exact, local-search)");
}

std::uint64_t multiset_count(std::uint64_t m, std::uint64_t n) {
  // C(m+n-1, n), built incrementally as C(m-1+i, i).
  if (m == 0) return n == 0 ? 1 : 0;
  long double c = 1.0L;
  for (std::uint64_t i = 1; i <= n; ++i) {
    c = c * static_cast<long double>(m - 1 + i) / static_cast<long double>(i);
    if (c > 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(c));
}

ExtendedValue diameter_objective(const DiscreteSpace& space, const std::vector<Index>& points) {
  const auto n = points.size();
  if (n < 2) throw ArgumentError("diameter objective needs n >= 2");
  Sum s;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = j + 1; l < n; ++l) s.add(space, points[j], points[l]);
  }
  return s.scaled(2.0 / (static_cast<double>(n) * static_cast<double>(n - 1)));
}

namespace {

std::vector<ExtendedValue> tuple_potentials(const DiscreteSpace& space, const std::vector<Index>& points,
                                            const SubsetRef& L) {
  if (points.empty()) throw ArgumentError("Chebyshev objective needs n >= 1");
  std::vector<ExtendedValue> out;
  for (const Index x : L) {
    Sum s;
    for (const Index w : points) s.add(space, x, w);
    out.push_back(s.scaled(1.0 / static_cast<double>(points.size())));
  }
  return out;
}

}  // namespace

ExtendedValue cheb_objective(const DiscreteSpace& space, const std::vector<Index>& points, const SubsetRef& L) {
  const auto p = tuple_potentials(space, points, L);
  return *std::min_element(p.begin(), p.end());
}

ExtendedValue dual_cheb_objective(const DiscreteSpace& space, const std::vector<Index>& points, const SubsetRef& L) {
  const auto p = tuple_potentials(space, points, L);
  return *std::max_element(p.begin(), p.end());
}

TupleWitness nth_diameter(const DiscreteSpace& space, const SubsetRef& H, int n, const SearchOptions& opts) {
  H.validate(space.size(), "H");
  if (n < 2) throw ArgumentError("nth_diameter: n must be >= 2");
  const Index m = H.size();
  const auto pair_sum = [&](const std::vector<Index>& pos) {
    Sum s;
    for (int j = 0; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) s.add(space, H[pos[static_cast<std::size_t>(j)]], H[pos[static_cast<std::size_t>(l)]]);
    }
    return s;
  };

  std::vector<Index> best_pos;
  if (opts.method == SearchMethod::exact) {
    check_budget(m, n, opts, "nth_diameter");
    MultisetWalker walker(m, n);
    std::vector<Sum> partial(static_cast<std::size_t>(n) + 1);
    Sum best;
    bool have = false;
    walker.run(
        [&](int depth, Index c) {
          Sum s = partial[static_cast<std::size_t>(depth)];
          for (int l = 0; l < depth; ++l) s.add(space, H[walker.positions()[static_cast<std::size_t>(l)]], H[c]);
          partial[static_cast<std::size_t>(depth) + 1] = s;
          // Every added pair is >= 0, so a partial sum at or above the best
          // cannot lead to a strictly better multiset.
          return !have || less_than(s, best);
        },
        [](int, Index) {},
        [&]() {
          const Sum& s = partial[static_cast<std::size_t>(n)];
          if (!have || less_than(s, best)) {
            best = s;
            best_pos = walker.positions();
            have = true;
          }
        });
  } else {
    auto result = local_search(
        m, n, Goal::minimize, opts,
        [&](const std::vector<Index>& pos, int j, Index c) {
          Sum s = pair_sum(pos);
          for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            s.remove(space, H[pos[static_cast<std::size_t>(j)]], H[pos[static_cast<std::size_t>(l)]]);
            s.add(space, H[c], H[pos[static_cast<std::size_t>(l)]]);
          }
          return s;
        },
        pair_sum);
    best_pos = std::move(result.positions);
  }

  TupleWitness w;
  w.points = to_points(H, best_pos);
  w.value = diameter_objective(space, w.points);
  w.method = opts.method;
  w.n = n;
  return w;
}

namespace {

TupleWitness chebyshev_search(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n,
                              const SearchOptions& opts, Goal goal, const char* what) {
  H.validate(space.size(), "H");
  L.validate(space.size(), "L");
  if (n < 1) throw ArgumentError(std::string(what) + ": n must be >= 1");
  const Index m = H.size();
  const bool want_max_over_L = goal == Goal::minimize;  // Mb: min over w of max over x

  std::vector<Index> best_pos;
  if (opts.method == SearchMethod::exact) {
    check_budget(m, n, opts, what);
    MultisetWalker walker(m, n);
    PotentialState state(space, L);
    Sum best;
    bool have = false;
    walker.run(
        [&](int, Index c) {
          state.add(H[c]);
          // Potentials only grow along the walk: for min-max, a partial max at
          // or above the best is hopeless.
          return goal == Goal::maximize || !have || less_than(state.max(), best);
        },
        [&](int, Index c) { state.remove(H[c]); },
        [&]() {
          const Sum v = want_max_over_L ? state.max() : state.min();
          if (!have || improves(v, best, goal)) {
            best = v;
            best_pos = walker.positions();
            have = true;
          }
        });
  } else {
    PotentialState state(space, L);
    std::vector<Index> loaded;
    const auto load = [&](const std::vector<Index>& pos) {
      for (const Index p : loaded) state.remove(H[p]);
      for (const Index p : pos) state.add(H[p]);
      loaded = pos;
    };
    auto result = local_search(
        m, n, goal, opts,
        [&](const std::vector<Index>& pos, int j, Index c) {
          if (pos != loaded) load(pos);
          return state.swapped_extremum(H[pos[static_cast<std::size_t>(j)]], H[c], want_max_over_L);
        },
        [&](const std::vector<Index>& pos) {
          load(pos);
          return want_max_over_L ? state.max() : state.min();
        });
    best_pos = std::move(result.positions);
  }

  TupleWitness w;
  w.points = to_points(H, best_pos);
  w.value = want_max_over_L ? dual_cheb_objective(space, w.points, L) : cheb_objective(space, w.points, L);
  w.method = opts.method;
  w.n = n;
  return w;
}

}  // namespace

TupleWitness cheb_n(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n,
                    const SearchOptions& opts) {
  return chebyshev_search(space, H, L, n, opts, Goal::maximize, "cheb_n");
}

TupleWitness dual_cheb_n(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n,
                         const SearchOptions& opts) {
  return chebyshev_search(space, H, L, n, opts, Goal::minimize, "dual_cheb_n");
}

TupleWitness modified_cheb_n(const DiscreteSpace& space, const SubsetRef& H, int n, const SearchOptions& opts) {
  return cheb_n(space, SubsetRef::all(space.size()), H, n, opts);
}

double quasi_monotone_violation(const SequenceEstimate& seq) {
  double worst = -std::numeric_limits<double>::infinity();
  std::vector<const SequenceTerm*> exact(static_cast<std::size_t>(1));
  for (const auto& t : seq.terms) {
    if (!t.exact || t.n < 1) continue;
    if (static_cast<std::size_t>(t.n) >= exact.size()) exact.resize(static_cast<std::size_t>(t.n) + 1, nullptr);
    exact[static_cast<std::size_t>(t.n)] = &t;
  }
  const bool increasing = seq.direction == Direction::increasing;
  for (std::size_t a = 1; a < exact.size(); ++a) {
    for (std::size_t b = a; a + b < exact.size(); ++b) {
      const SequenceTerm* sa = exact[a];
      const SequenceTerm* sb = exact[b];
      const SequenceTerm* sab = exact[a + b];
      if (!sa || !sb || !sab) continue;
      const bool rhs_inf = sa->value.is_infinite() || sb->value.is_infinite();
      const bool lhs_inf = sab->value.is_infinite();
      double v;
      if (rhs_inf || lhs_inf) {
        // increasing needs lhs >= rhs; decreasing needs lhs <= rhs.
        const bool bad = increasing ? (rhs_inf && !lhs_inf) : (lhs_inf && !rhs_inf);
        v = bad ? std::numeric_limits<double>::infinity() : 0.0;
      } else {
        const double lhs = static_cast<double>(a + b) * sab->value.value();
        const double rhs = static_cast<double>(a) * sa->value.value() + static_cast<double>(b) * sb->value.value();
        v = (increasing ? rhs - lhs : lhs - rhs) / static_cast<double>(a + b);
      }
      worst = std::max(worst, v);
    }
  }
  return worst == -std::numeric_limits<double>::infinity() ? 0.0 : worst;
}

ExtInterval fekete_limit(SequenceEstimate& seq, std::optional<ExtendedValue> bound, double tol) {
  if (seq.terms.size() < 3) throw ArgumentError("fekete_limit: need at least 3 terms");
  std::sort(seq.terms.begin(), seq.terms.end(), [](const SequenceTerm& a, const SequenceTerm& b) { return a.n < b.n; });

  double scale = 1.0;
  for (const auto& t : seq.terms) {
    if (t.value.is_finite()) scale = std::max(scale, t.value.value());
  }
  const double violation = quasi_monotone_violation(seq);
  if (violation > tol * scale) {
    throw DataError("fekete_limit: exact terms violate quasi-monotonicity by " + std::to_string(violation) +
                    " (an upstream optimization did not reach its optimum)");
  }

  seq.exact_terms_upto = 0;
  for (const auto& t : seq.terms) {
    if (!t.exact) break;
    seq.exact_terms_upto = t.n;
  }

  ExtendedValue extreme = seq.terms.front().value;
  for (const auto& t : seq.terms) {
    extreme = seq.direction == Direction::increasing ? max(extreme, t.value) : min(extreme, t.value);
  }
  seq.limit_bracket = seq.direction == Direction::increasing ? make_interval(extreme, bound.value_or(kInfinity))
                                                             : make_interval(bound.value_or(ExtendedValue(0.0)), extreme);
  return seq.limit_bracket;
}

std::pair<ExtendedValue, ExtendedValue> cheb_limits_via_games(const DiscreteSpace& space, const SubsetRef& H,
                                                             const SubsetRef& L) {
  return {q_lower(space, H, L).value, q_value(space, H, L).value};
}

std::string witness_to_json(const TupleWitness& w) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["n"] = w.n;
  j["value"] = w.value;
  j["points"] = w.points;
  j["method"] = to_string(w.method);
  return j.dump();
}

}  // namespace rendezkit
