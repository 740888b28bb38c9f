#include "rendezkit/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "rendezkit/confopt.hpp"
#include "rendezkit/energyopt.hpp"
#include "rendezkit/error.hpp"
#include "rendezkit/game.hpp"
#include "rendezkit/oracle.hpp"
#include "rendezkit/random.hpp"
#include "rendezkit/rendezvous.hpp"
#include "rendezkit/serialize.hpp"

namespace rendezkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kCheckBudget = 200'000;

// a - b on the extended line, with inf - inf = 0.
double ext_diff(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return kInf;
  if (b.is_infinite()) return -kInf;
  return a.value() - b.value();
}

double scale_of(const ExtendedValue& v) { return std::max(1.0, v.value_or(1.0)); }

std::string show(const ExtendedValue& v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

std::string show(const ExtInterval& v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

class Recorder {
 public:
  Recorder(std::string id, double tol) : rep_(std::move(id), tol) { rep_.trials = 1; }

  void le(const std::string& what, const ExtendedValue& lhs, const ExtendedValue& rhs) {
    add(what + ": " + show(lhs) + " <= " + show(rhs), ext_diff(lhs, rhs) / scale_of(rhs));
  }

  void eq(const std::string& what, const ExtendedValue& a, const ExtendedValue& b) {
    add(what + ": " + show(a) + " = " + show(b), std::abs(ext_diff(a, b)) / scale_of(b));
  }

  void within(const std::string& what, const ExtendedValue& v, double lo, double hi) {
    double slack = v.is_infinite() ? kInf : std::max(lo - v.value(), v.value() - hi);
    std::ostringstream s;
    s.precision(12);
    s << what << ": " << v << " in [" << lo << ", " << hi << "]";
    add(s.str(), slack / std::max(1.0, std::abs(hi)));
  }

  void subset(const std::string& what, const ExtInterval& a, const ExtInterval& b) {
    double slack;
    if (a.empty()) {
      slack = -kInf;
    } else if (b.empty()) {
      slack = kInf;
    } else {
      slack = std::max(ext_diff(b.lo(), a.lo()) / scale_of(a.lo()), ext_diff(a.hi(), b.hi()) / scale_of(b.hi()));
    }
    add(what + ": " + show(a) + " in " + show(b), slack);
  }

  void fail(const std::string& what) { add(what, kInf); }

  PropertyReport finish() {
    if (!violations_.empty()) {
      std::string joined;
      for (const auto& v : violations_) joined += (joined.empty() ? "" : "; ") + v;
      rep_.failures.push_back({InstanceSpec{}, joined, {}});
    }
    return std::move(rep_);
  }

 private:
  void add(const std::string& what, double slack) {
    rep_.worst_slack = std::max(rep_.worst_slack, slack);
    if (slack > rep_.tolerance) violations_.push_back(what);
  }

  PropertyReport rep_;
  std::vector<std::string> violations_;
};

bool exact_ok(Index m, int n) {
  return multiset_count(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n)) <= kCheckBudget;
}

std::vector<SubsetRef> nonempty_subsets(const SubsetRef& H) {
  std::vector<SubsetRef> out;
  const auto m = static_cast<unsigned>(H.size());
  for (unsigned mask = 1; mask < (1U << m); ++mask) {
    std::vector<Index> pts;
    for (unsigned i = 0; i < m; ++i) {
      if (mask & (1U << i)) pts.push_back(H[i]);
    }
    out.emplace_back(std::move(pts));
  }
  return out;
}

// The compact-support variants: inf / sup over all subsets K of H.
ExtendedValue q_sharp(const DiscreteSpace& s, const SubsetRef& H, const SubsetRef& L) {
  ExtendedValue best = kInfinity;
  for (const auto& K : nonempty_subsets(H)) best = min(best, q_value(s, K, L).value);
  return best;
}

ExtendedValue qlower_sharp(const DiscreteSpace& s, const SubsetRef& H, const SubsetRef& L) {
  ExtendedValue best(0.0);
  for (const auto& K : nonempty_subsets(H)) best = max(best, q_lower(s, K, L).value);
  return best;
}

std::string label_of(const SubsetRef& s) { return "{" + s.to_string() + "}"; }

}  // namespace

std::string to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::metric_random: return "metric-random";
    case KernelFamily::psd_random: return "psd-random";
    case KernelFamily::discrete: return "discrete";
    case KernelFamily::grid: return "grid";
    case KernelFamily::infinite_diagonal: return "infinite-diagonal";
  }
  return "?";
}

std::string to_string(SubsetPolicy p) {
  switch (p) {
    case SubsetPolicy::nested: return "nested";
    case SubsetPolicy::random: return "random";
    case SubsetPolicy::full: return "full";
  }
  return "?";
}

KernelFamily parse_kernel_family(std::string_view text) {
  for (auto f : {KernelFamily::metric_random, KernelFamily::psd_random, KernelFamily::discrete, KernelFamily::grid,
                 KernelFamily::infinite_diagonal}) {
    if (text == to_string(f)) return f;
  }
  throw ArgumentError("unknown kernel family '" + std::string(text) + "'");
}

SubsetPolicy parse_subset_policy(std::string_view text) {
  for (auto p : {SubsetPolicy::nested, SubsetPolicy::random, SubsetPolicy::full}) {
    if (text == to_string(p)) return p;
  }
  throw ArgumentError("unknown subset policy '" + std::string(text) + "'");
}

Instance gen_instance(const InstanceSpec& spec) {
  const int n = spec.size;
  if (n < 2 || n > 64) throw ArgumentError("gen_instance: size must be in [2, 64]");
  const auto stream = static_cast<std::uint64_t>(spec.family) * 131 + static_cast<std::uint64_t>(n);
  Rng rng(spec.seed, stream);
  const std::string label = to_string(spec.family) + ":n=" + std::to_string(n) + ":seed=" + std::to_string(spec.seed);

  Instance inst;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  BoolMatrix inf = BoolMatrix::Constant(n, n, false);
  Eigen::MatrixXd coords;
  const auto planar_points = [&] {
    coords.resize(n, 2);
    for (int i = 0; i < n; ++i) {
      coords(i, 0) = rng.uniform();
      coords(i, 1) = rng.uniform();
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) K(i, j) = K(j, i) = (coords.row(i) - coords.row(j)).norm();
    }
  };
  switch (spec.family) {
    case KernelFamily::metric_random:
      planar_points();
      break;
    case KernelFamily::psd_random: {
      Eigen::MatrixXd B(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) B(i, j) = rng.uniform();
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) K(i, j) = K(j, i) = B.col(i).dot(B.col(j)) / n;
      }
      break;
    }
    case KernelFamily::discrete:
      K = Eigen::MatrixXd::Ones(n, n);
      K.diagonal().setZero();
      break;
    case KernelFamily::grid:
      inst.space = build_interval_grid(0.0, 1.0, n, Kernel{KernelKind::euclid, 0.0});
      break;
    case KernelFamily::infinite_diagonal:
      planar_points();
      for (int i = 0; i < n; ++i) {
        inf(i, i) = true;
        for (int j = i + 1; j < n; ++j) {
          if (rng.uniform() < 0.15) inf(i, j) = inf(j, i) = true;
        }
      }
      break;
  }
  if (spec.family != KernelFamily::grid) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (inf(i, j)) K(i, j) = 0.0;
      }
    }
    inst.space = DiscreteSpace::from_parts(std::move(K), std::move(inf), label, std::move(coords));
  }

  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  const auto prefix = [&](std::size_t k) { return SubsetRef(std::vector<Index>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k))); };
  const auto random_subset = [&] {
    const auto k = 1 + rng.below(static_cast<std::uint64_t>(n));
    std::vector<Index> p = perm;
    for (std::size_t i = 0; i < k; ++i) std::swap(p[i], p[i + rng.below(static_cast<std::uint64_t>(n) - i)]);
    return SubsetRef(std::vector<Index>(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k)));
  };

  const auto nn = static_cast<std::size_t>(n);
  std::size_t a = 1 + rng.below(nn);
  std::size_t b = 1 + rng.below(nn);
  if (a > b) std::swap(a, b);
  switch (spec.policy) {
    case SubsetPolicy::full:
      inst.H = inst.L = SubsetRef::all(n);
      inst.chain = {prefix((nn + 2) / 3), prefix((2 * nn + 2) / 3), SubsetRef::all(n)};
      break;
    case SubsetPolicy::nested:
      inst.H = prefix(a);
      inst.L = prefix(b);
      inst.chain = {inst.H, inst.L, SubsetRef::all(n)};
      break;
    case SubsetPolicy::random:
      inst.chain = {prefix(a), prefix(b), SubsetRef::all(n)};
      inst.H = random_subset();
      inst.L = random_subset();
      break;
  }
  return inst;
}

PropertyReport::PropertyReport(std::string id, double tol)
    : property_id(std::move(id)), worst_slack(-std::numeric_limits<double>::infinity()), tolerance(tol) {}

void PropertyReport::merge(const PropertyReport& other) {
  trials += other.trials;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  worst_slack = std::max(worst_slack, other.worst_slack);
}

PropertyReport check_chain(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, double tol) {
  Recorder r("chain", tol);
  const auto qlo = q_lower(space, H, L).value;
  const auto q = q_value(space, H, L).value;
  r.le("qlower(H,L) <= q(L,H)", qlo, q_value(space, L, H).value);
  if (H.subset_of(L)) r.le("qlower(H,L) <= q(H,L)", qlo, q);
  if (H.size() <= 8) {
    r.eq("q#(H,L) = q(H,L)", q_sharp(space, H, L), q);
    r.eq("qlower#(H,L) = qlower(H,L)", qlower_sharp(space, H, L), qlo);
  }
  return r.finish();
}

PropertyReport check_duality(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, double tol,
                             double fault) {
  Recorder r("duality", tol);
  auto q = q_value(space, H, L).value;
  if (fault != 0.0 && q.is_finite()) q = ExtendedValue(q.value() + fault);
  r.eq("q(H,L) = qlower(L,H)", q, q_lower(space, L, H).value);
  return r.finish();
}

PropertyReport check_MqL(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n_max, double tol) {
  Recorder r("MqL", tol);
  const auto qlo = q_lower(space, H, L).value;
  const auto q = q_value(space, H, L).value;
  for (int n = 1; n <= n_max && exact_ok(H.size(), n); ++n) {
    const std::string tag = "n=" + std::to_string(n);
    r.le("M_n(H,L) <= qlower(H,L), " + tag, cheb_n(space, H, L, n).value, qlo);
    r.le("q(H,L) <= Mbar_n(H,L), " + tag, q, dual_cheb_n(space, H, L, n).value);
  }
  const auto [m, mbar] = cheb_limits_via_games(space, H, L);
  r.eq("M(H,L) = qlower(H,L)", m, qlo);
  r.eq("Mbar(H,L) = q(H,L)", mbar, q);
  return r.finish();
}

PropertyReport check_dn_mn(const DiscreteSpace& space, const SubsetRef& H, int n_max, double tol) {
  Recorder r("dn_mn", tol);
  for (int n = 2; n <= n_max && exact_ok(H.size(), n); ++n) {
    r.le("D_n(H) <= M_n(H), n=" + std::to_string(n), nth_diameter(space, H, n).value, cheb_n(space, H, H, n).value);
  }
  return r.finish();
}

PropertyReport check_monotone(const DiscreteSpace& space, const std::vector<SubsetRef>& chain, const SubsetRef& H,
                              const SubsetRef& L, int n_max, double tol) {
  Recorder r("monotone", tol);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const SubsetRef& small = chain[i];
    const SubsetRef& big = chain[i + 1];
    if (!small.subset_of(big)) {
      r.fail("chain is not nested at step " + std::to_string(i));
      continue;
    }
    const std::string step = " [" + label_of(small) + " in " + label_of(big) + "]";

    // Growing H with L fixed: values non-increasing, intervals shrink.
    r.le("u" + step, u_value(space, big).value, u_value(space, small).value);
    if (big.size() <= 10) r.le("v" + step, v_value(space, big).value, v_value(space, small).value);
    r.le("w" + step, w_energy(space, big).value, w_energy(space, small).value);
    r.le("q(.,L)" + step, q_value(space, big, L).value, q_value(space, small, L).value);
    r.le("qlower(L,.)" + step, q_lower(space, L, big).value, q_lower(space, L, small).value);
    r.subset("R(.,L)" + step, rendezvous_interval(space, big, L), rendezvous_interval(space, small, L));
    r.subset("A(.,L)" + step, average_interval(space, big, L), average_interval(space, small, L));
    for (int n = 1; n <= n_max; ++n) {
      const std::string tag = " n=" + std::to_string(n) + step;
      if (n >= 2 && exact_ok(big.size(), n)) {
        r.le("D_n" + tag, nth_diameter(space, big, n).value, nth_diameter(space, small, n).value);
      }
      if (exact_ok(L.size(), n)) {
        r.le("M_n(L,.)" + tag, cheb_n(space, L, big, n).value, cheb_n(space, L, small, n).value);
      }
      if (exact_ok(big.size(), n)) {
        r.subset("R_n(.,L)" + tag, rendezvous_interval_n(space, big, L, n), rendezvous_interval_n(space, small, L, n));
      }
    }

    // Growing L with H fixed: values non-decreasing, intervals grow.
    r.le("q(H,.)" + step, q_value(space, H, small).value, q_value(space, H, big).value);
    r.le("qlower(.,H)" + step, q_lower(space, small, H).value, q_lower(space, big, H).value);
    r.subset("R(H,.)" + step, rendezvous_interval(space, H, small), rendezvous_interval(space, H, big));
    r.subset("A(H,.)" + step, average_interval(space, H, small), average_interval(space, H, big));
    for (int n = 1; n <= n_max && exact_ok(big.size(), n); ++n) {
      const std::string tag = " n=" + std::to_string(n) + step;
      r.le("M_n(.,H)" + tag, cheb_n(space, small, H, n).value, cheb_n(space, big, H, n).value);
      if (exact_ok(H.size(), n)) {
        r.subset("R_n(H,.)" + tag, rendezvous_interval_n(space, H, small, n), rendezvous_interval_n(space, H, big, n));
      }
    }
  }
  return r.finish();
}

PropertyReport check_uniqueness(const DiscreteSpace& space, double tol) {
  Recorder r("uniqueness", tol);
  const auto X = SubsetRef::all(space.size());
  const auto A = average_interval(space, X, X);
  if (A.empty()) {
    r.fail("A(X,X) is empty");
  } else {
    r.eq("A(X,X) singleton: hi = lo", A.hi(), A.lo());
  }
  if (!space.has_infinite_entries()) {
    const auto R = rendezvous_interval(space, X, X);
    r.eq("R(X,X).lo = A(X,X).lo", R.lo(), A.lo());
    r.eq("R(X,X).hi = A(X,X).hi", R.hi(), A.hi());
  }
  return r.finish();
}

PropertyReport check_energy_chain(const DiscreteSpace& space, const SubsetRef& H, double tol) {
  Recorder r("energy_chain", tol);
  const auto rep = energy_chain_check(space, H, tol, 10);
  for (const auto& c : rep.checks) r.le(c.name, c.lhs, c.rhs);
  return r.finish();
}

PropertyReport check_oracle_grid(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n_max,
                                 double tol) {
  Recorder r("oracle_grid", tol);
  const double bracket = 2.0 / oracle::kGridResolution * space.max_finite_entry();
  const auto upper_side = [&](const std::string& what, const ExtendedValue& fast, const ExtendedValue& grid) {
    // grid is an upper bound: fast <= grid <= fast + bracket.
    r.le(what + " fast <= grid", fast, grid);
    r.le(what + " grid <= fast + bracket", grid, fast.is_finite() ? ExtendedValue(fast.value() + bracket) : fast);
  };
  const auto lower_side = [&](const std::string& what, const ExtendedValue& fast, const ExtendedValue& grid) {
    r.le(what + " grid <= fast", grid, fast);
    r.le(what + " fast <= grid + bracket", fast, grid.is_finite() ? ExtendedValue(grid.value() + bracket) : grid);
  };
  upper_side("q(H,L)", q_value(space, H, L).value, oracle::grid_q(space, H, L));
  lower_side("qlower(H,L)", q_lower(space, H, L).value, oracle::grid_qlower(space, H, L));
  upper_side("w(H)", w_energy(space, H).value, oracle::grid_w(space, H));
  for (int n = 1; n <= n_max; ++n) {
    const std::string tag = " n=" + std::to_string(n);
    if (n >= 2) r.eq("D_n(H)" + tag, nth_diameter(space, H, n).value, oracle::enum_diameter(space, H, n));
    r.eq("M_n(H,L)" + tag, cheb_n(space, H, L, n).value, oracle::enum_cheb(space, H, L, n));
    r.eq("Mbar_n(H,L)" + tag, dual_cheb_n(space, H, L, n).value, oracle::enum_dual_cheb(space, H, L, n));
  }
  return r.finish();
}

PropertyReport check_oracle_mw(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, double tol) {
  Recorder r("oracle_mw", tol);
  // q: rows of H that see no +inf on L.
  std::vector<Index> rows;
  for (const Index y : H) {
    if (std::none_of(L.begin(), L.end(), [&](Index x) { return space.is_infinite(y, x); })) rows.push_back(y);
  }
  if (!rows.empty()) {
    Eigen::MatrixXd P(static_cast<Index>(rows.size()), L.size());
    for (Index i = 0; i < P.rows(); ++i) {
      for (Index j = 0; j < P.cols(); ++j) P(i, j) = space.finite_value(rows[static_cast<std::size_t>(i)], L[j]);
    }
    const auto b = oracle::mw_game(P);
    r.within("q(H,L) in MW bracket", q_value(space, H, L).value, b.lower - tol, b.upper + tol);
  }
  // qlower: columns of L that see no +inf from H; -value of the game on -K.
  std::vector<Index> cols;
  for (const Index x : L) {
    if (std::none_of(H.begin(), H.end(), [&](Index y) { return space.is_infinite(y, x); })) cols.push_back(x);
  }
  if (!cols.empty()) {
    Eigen::MatrixXd P(H.size(), static_cast<Index>(cols.size()));
    for (Index i = 0; i < P.rows(); ++i) {
      for (Index j = 0; j < P.cols(); ++j) P(i, j) = -space.finite_value(H[i], cols[static_cast<std::size_t>(j)]);
    }
    const auto b = oracle::mw_game(P);
    r.within("qlower(H,L) in MW bracket", q_lower(space, H, L).value, -b.upper - tol, -b.lower + tol);
  }
  return r.finish();
}

const std::vector<std::string>& all_property_ids() {
  static const std::vector<std::string> ids{"MqL",        "chain",      "dn_mn",     "duality",  "energy_chain",
                                            "monotone",   "oracle_grid", "oracle_mw", "uniqueness"};
  return ids;
}

SuiteConfig parse_suite_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("suite config: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("suite config must be a JSON object");
  SuiteConfig c;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "seed") {
        c.seed = val.get<std::uint64_t>();
      } else if (key == "instances") {
        c.instances = val.get<int>();
      } else if (key == "sizes") {
        const auto v = val.get<std::vector<int>>();
        if (v.size() != 2) throw ArgumentError("suite config: sizes must be [min, max]");
        c.min_size = v[0];
        c.max_size = v[1];
      } else if (key == "families") {
        c.families.clear();
        for (const auto& f : val) c.families.push_back(parse_kernel_family(f.get<std::string>()));
      } else if (key == "policies") {
        c.policies.clear();
        for (const auto& p : val) c.policies.push_back(parse_subset_policy(p.get<std::string>()));
      } else if (key == "properties") {
        c.properties = val.get<std::vector<std::string>>();
        for (const auto& p : c.properties) {
          const auto& ids = all_property_ids();
          if (std::find(ids.begin(), ids.end(), p) == ids.end()) throw ArgumentError("suite config: unknown property '" + p + "'");
        }
      } else if (key == "n_max") {
        c.n_max = val.get<int>();
      } else if (key == "exhaustive_n") {
        c.exhaustive_n = val.get<int>();
      } else if (key == "oracle_max_size") {
        c.oracle_max_size = val.get<int>();
      } else if (key == "threads") {
        c.threads = val.get<int>();
      } else if (key == "inject_fault") {
        c.inject_fault = val.get<bool>();
      } else {
        throw ArgumentError("suite config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("suite config: ") + e.what());
  }
  if (c.min_size < 2 || c.max_size > 64 || c.min_size > c.max_size) throw ArgumentError("suite config: sizes must satisfy 2 <= min <= max <= 64");
  if (c.instances < 0 || c.n_max < 1 || c.exhaustive_n < 1) throw ArgumentError("suite config: counts must be positive");
  if (c.families.empty() || c.policies.empty()) throw ArgumentError("suite config: families and policies must be non-empty");
  return c;
}

bool SuiteResult::passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const PropertyReport& r) { return r.passed(); });
}

int effective_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("RENDEZKIT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
  }
  return std::max(1, n);
}

std::string instance_to_json(const Instance& inst, const InstanceSpec& spec) {
  nlohmann::json j;
  j["seed"] = spec.seed;
  j["size"] = spec.size;
  j["family"] = to_string(spec.family);
  j["policy"] = to_string(spec.policy);
  j["space"] = nlohmann::json::parse(space_to_json(inst.space));
  j["H"] = inst.H.to_string();
  j["L"] = inst.L.to_string();
  return j.dump();
}

namespace {

struct Outcome {
  PropertyReport report;
  std::string line;
};

std::vector<Outcome> run_instance(const SuiteConfig& cfg, const InstanceSpec& spec,
                                  const std::vector<std::string>& props) {
  const Instance inst = gen_instance(spec);
  const auto& s = inst.space;
  std::vector<Outcome> out;
  for (const auto& id : props) {
    PropertyReport rep(id);
    bool ran = true;
    try {
      if (id == "chain") {
        rep = check_chain(s, inst.H, inst.L);
      } else if (id == "duality") {
        rep = check_duality(s, inst.H, inst.L, kCheckTolerance, cfg.inject_fault ? 1e-3 : 0.0);
      } else if (id == "MqL") {
        rep = check_MqL(s, inst.H, inst.L, cfg.n_max);
      } else if (id == "dn_mn") {
        rep = check_dn_mn(s, inst.H, cfg.n_max);
      } else if (id == "monotone") {
        rep = check_monotone(s, inst.chain, inst.H, inst.L, std::min(cfg.n_max, 3));
      } else if (id == "uniqueness") {
        rep = check_uniqueness(s);
      } else if (id == "energy_chain") {
        rep = check_energy_chain(s, inst.H);
      } else if (id == "oracle_grid") {
        ran = s.size() <= cfg.oracle_max_size;
        if (ran) rep = check_oracle_grid(s, inst.H, inst.L, cfg.exhaustive_n);
      } else if (id == "oracle_mw") {
        rep = check_oracle_mw(s, inst.H, inst.L);
      }
    } catch (const Error& e) {
      rep = PropertyReport(id);
      rep.trials = 1;
      rep.worst_slack = std::numeric_limits<double>::infinity();
      rep.failures.push_back({spec, std::string("exception: ") + e.what(), {}});
    }
    if (!ran) continue;
    for (auto& f : rep.failures) {
      f.spec = spec;
      f.instance_json = instance_to_json(inst, spec);
    }
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["property"] = id;
    j["seed"] = spec.seed;
    j["size"] = spec.size;
    j["family"] = to_string(spec.family);
    j["policy"] = to_string(spec.policy);
    j["passed"] = rep.passed();
    j["worst_slack"] = real_to_json(rep.worst_slack);
    if (!rep.passed()) {
      j["details"] = rep.failures.front().details;
      j["instance"] = nlohmann::json::parse(rep.failures.front().instance_json);
    }
    out.push_back({std::move(rep), j.dump()});
  }
  return out;
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& cfg, std::ostream* lines) {
  std::vector<std::string> props = cfg.properties.empty() ? all_property_ids() : cfg.properties;
  std::sort(props.begin(), props.end());

  std::vector<InstanceSpec> schedule;
  const int span = cfg.max_size - cfg.min_size + 1;
  for (int i = 0; i < cfg.instances; ++i) {
    for (const auto fam : cfg.families) {
      InstanceSpec spec;
      spec.seed = cfg.seed + static_cast<std::uint64_t>(i);
      spec.size = cfg.min_size + i % span;
      spec.family = fam;
      spec.policy = cfg.policies[static_cast<std::size_t>(i) % cfg.policies.size()];
      schedule.push_back(spec);
    }
  }

  std::vector<std::vector<Outcome>> results(schedule.size());
  const int workers = std::min<int>(effective_threads(cfg.threads), std::max<int>(1, static_cast<int>(schedule.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::string> fatal(static_cast<std::size_t>(workers));
  const auto work = [&](int w) {
    for (std::size_t i = next++; i < schedule.size(); i = next++) {
      try {
        results[i] = run_instance(cfg, schedule[i], props);
      } catch (const std::exception& e) {
        fatal[static_cast<std::size_t>(w)] = e.what();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (const auto& f : fatal) {
    if (!f.empty()) throw DataError("verify suite aborted: " + f);
  }

  SuiteResult res;
  res.instances = static_cast<int>(schedule.size());
  std::map<std::string, PropertyReport> merged;
  for (const auto& id : props) merged.emplace(id, PropertyReport(id));
  for (const auto& id : props) {
    auto& agg = merged.at(id);
    for (const auto& per_instance : results) {
      for (const auto& o : per_instance) {
        if (o.report.property_id != id) continue;
        agg.merge(o.report);
        if (lines) *lines << o.line << '\n';
      }
    }
  }
  for (auto& [id, rep] : merged) res.reports.push_back(std::move(rep));
  return res;
}

}  // namespace rendezkit
