#ifndef RENDEZKIT_RENDEZVOUS_HPP
#define RENDEZKIT_RENDEZVOUS_HPP

// Rendezvous and average intervals:
//
//   R_n(H,L) = [M_n(H,L), Mb_n(H,L)]
//   R(H,L)   = [M(H,L),   Mb(H,L)]   (read off the games)
//   A(H,L)   = [q_(H,L),  q(H,L)]
//
// An interval with hi < lo is empty.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rendezkit/confopt.hpp"
#include "rendezkit/extended.hpp"
#include "rendezkit/space.hpp"

namespace rendezkit {

inline constexpr double kSingletonTolerance = 1e-6;

ExtInterval rendezvous_interval_n(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n,
                                  const SearchOptions& opts = {});

/// R(H,L) through the identities M = q_ and Mb = q on compact sets.
ExtInterval rendezvous_interval(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L);

ExtInterval average_interval(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L);

struct RnRow {
  int n = 0;
  ExtendedValue cheb;       // M_n
  ExtendedValue dual_cheb;  // Mb_n
  SearchMethod method = SearchMethod::exact;
  ExtInterval interval() const { return make_interval(cheb, dual_cheb); }
};

struct RendezvousReport {
  std::vector<RnRow> R_n;
  ExtInterval R;
  ExtInterval A;
  std::optional<ExtendedValue> unique_number;
  std::string H_label, L_label;

  /// Intersection of the recorded R_n only; R itself comes from the games.
  ExtInterval truncated_intersection() const;
};

/// R_n for n = 1..n_max (exact while the budget allows, local search
/// beyond), then R and A.
RendezvousReport rendezvous_report(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n_max,
                                   const SearchOptions& opts = {});

struct RACompare {
  ExtInterval R;
  ExtInterval A;
  ExtInterval truncated;  // intersection of R_1..R_n_max
  bool equal = false;     // R = A within tolerance
  bool A_in_R = false;
  bool A_in_truncated = false;
  bool finite_kernel = false;
  std::string note;
};

RACompare compare_R_A(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n_max = 3,
                      double tol = kSingletonTolerance);

std::string report_to_json(const RendezvousReport& r);
std::string compare_to_json(const RACompare& c);

/// "n,M_n,Mbar_n,method" rows, with inf spelled out.
std::string rn_csv(const RendezvousReport& r);

}  // namespace rendezkit

#endif  // RENDEZKIT_RENDEZVOUS_HPP
