#include "rendezkit/rendezvous.hpp"

#include <sstream>

#include "rendezkit/error.hpp"
#include "rendezkit/game.hpp"
#include "rendezkit/serialize.hpp"

namespace rendezkit {

ExtInterval rendezvous_interval_n(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n,
                                  const SearchOptions& opts) {
  if (n < 1) throw ArgumentError("rendezvous_interval_n: n must be >= 1");
  const auto lo = cheb_n(space, H, L, n, opts).value;
  const auto hi = dual_cheb_n(space, H, L, n, opts).value;
  return make_interval(lo, hi);
}

ExtInterval rendezvous_interval(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L) {
  const auto [m, mbar] = cheb_limits_via_games(space, H, L);
  return make_interval(m, mbar);
}

ExtInterval average_interval(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L) {
  return make_interval(q_lower(space, H, L).value, q_value(space, H, L).value);
}

ExtInterval RendezvousReport::truncated_intersection() const {
  std::vector<ExtInterval> ivs;
  ivs.reserve(R_n.size());
  for (const auto& row : R_n) ivs.push_back(row.interval());
  return intersect_intervals<double>(ivs);
}

RendezvousReport rendezvous_report(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n_max,
                                   const SearchOptions& opts) {
  if (n_max < 1) throw ArgumentError("rendezvous_report: n_max must be >= 1");
  RendezvousReport rep;
  rep.H_label = H.to_string();
  rep.L_label = L.to_string();
  for (int n = 1; n <= n_max; ++n) {
    SearchOptions o = opts;
    if (o.method == SearchMethod::exact &&
        multiset_count(static_cast<std::uint64_t>(H.size()), static_cast<std::uint64_t>(n)) > o.exact_budget) {
      o.method = SearchMethod::local_search;
    }
    RnRow row;
    row.n = n;
    row.method = o.method;
    row.cheb = cheb_n(space, H, L, n, o).value;
    row.dual_cheb = dual_cheb_n(space, H, L, n, o).value;
    rep.R_n.push_back(row);
  }
  rep.R = rendezvous_interval(space, H, L);
  rep.A = average_interval(space, H, L);
  if (rep.R.is_singleton(kSingletonTolerance)) rep.unique_number = rep.R.hi();
  return rep;
}

RACompare compare_R_A(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n_max, double tol) {
  RACompare c;
  const auto rep = rendezvous_report(space, H, L, n_max);
  c.R = rep.R;
  c.A = rep.A;
  c.truncated = rep.truncated_intersection();
  c.finite_kernel = !space.has_infinite_entries();
  const auto close = [&](const ExtendedValue& a, const ExtendedValue& b) {
    return approx_equal(a, b, tol * std::max(1.0, b.value_or(1.0)));
  };
  if (c.R.empty() || c.A.empty()) {
    c.equal = c.R.empty() && c.A.empty();
  } else {
    c.equal = close(c.R.lo(), c.A.lo()) && close(c.R.hi(), c.A.hi());
  }
  c.A_in_R = c.A.subset_of(c.R, tol);
  c.A_in_truncated = c.A.subset_of(c.truncated, tol);

  std::ostringstream note;
  if (c.equal) {
    note << "R = A = " << c.A;
  } else {
    note << "R = " << c.R << " differs from A = " << c.A;
  }
  if (c.A.hi().is_infinite()) note << "; upper endpoints infinite";
  if (!c.truncated.empty() && c.truncated.hi().is_infinite()) note << "; Mb_n infinite for every recorded n";
  c.note = note.str();
  return c;
}

namespace {

nlohmann::json rn_rows_json(const RendezvousReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.R_n) {
    rows.push_back({{"n", row.n}, {"M_n", row.cheb}, {"Mbar_n", row.dual_cheb}, {"interval", row.interval()},
                    {"method", to_string(row.method)}});
  }
  return rows;
}

}  // namespace

std::string report_to_json(const RendezvousReport& r) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["H"] = r.H_label;
  j["L"] = r.L_label;
  j["R_n"] = rn_rows_json(r);
  j["R"] = r.R;
  j["A"] = r.A;
  j["truncated_R"] = r.truncated_intersection();
  j["unique_number"] = r.unique_number ? nlohmann::json(*r.unique_number) : nlohmann::json(nullptr);
  return j.dump();
}

std::string compare_to_json(const RACompare& c) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["R"] = c.R;
  j["A"] = c.A;
  j["truncated_R"] = c.truncated;
  j["equal"] = c.equal;
  j["A_subset_R"] = c.A_in_R;
  j["A_subset_truncated_R"] = c.A_in_truncated;
  j["finite_kernel"] = c.finite_kernel;
  j["note"] = c.note;
  return j.dump();
}

std::string rn_csv(const RendezvousReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "n,M_n,Mbar_n,method\n";
  for (const auto& row : r.R_n) out << row.n << ',' << row.cheb << ',' << row.dual_cheb << ',' << to_string(row.method) << '\n';
  return out.str();
}

}  // namespace rendezkit
