#ifndef RENDEZKIT_CONFOPT_HPP
#define RENDEZKIT_CONFOPT_HPP

// n-point configuration quantities (points may repeat):
//
//   D_n(H)    = min over w in H^n of 2/(n(n-1)) sum_{j<l} k(w_j, w_l)
//   M_n(H,L)  = max over w in H^n of min_{x in L} (1/n) sum_j k(x, w_j)
//   Mb_n(H,L) = min over w in H^n of max_{x in L} (1/n) sum_j k(x, w_j)
//   C_n(H)    = M_n(X, H)
//
// All objectives are symmetric in w, so exact search enumerates multisets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rendezkit/extended.hpp"
#include "rendezkit/space.hpp"

namespace rendezkit {

enum class SearchMethod { exact, local_search };

std::string to_string(SearchMethod method);
SearchMethod parse_search_method(std::string_view text);

struct SearchOptions {
  SearchMethod method = SearchMethod::exact;
  int restarts = 32;
  std::uint64_t seed = 0;
  // Largest number of multisets exact enumeration may visit.
  std::uint64_t exact_budget = 5'000'000;
};

struct TupleWitness {
  std::vector<Index> points;  // sorted, repetitions allowed
  ExtendedValue value;
  SearchMethod method = SearchMethod::exact;
  int n = 0;
};

/// Number of size-n multisets drawn from m items, saturating at UINT64_MAX.
std::uint64_t multiset_count(std::uint64_t m, std::uint64_t n);

// Objectives evaluated from scratch on a given tuple (the witness self-check).
ExtendedValue diameter_objective(const DiscreteSpace& space, const std::vector<Index>& points);
ExtendedValue cheb_objective(const DiscreteSpace& space, const std::vector<Index>& points, const SubsetRef& L);
ExtendedValue dual_cheb_objective(const DiscreteSpace& space, const std::vector<Index>& points, const SubsetRef& L);

TupleWitness nth_diameter(const DiscreteSpace& space, const SubsetRef& H, int n, const SearchOptions& opts = {});
TupleWitness cheb_n(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n,
                    const SearchOptions& opts = {});
TupleWitness dual_cheb_n(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n,
                         const SearchOptions& opts = {});
TupleWitness modified_cheb_n(const DiscreteSpace& space, const SubsetRef& H, int n, const SearchOptions& opts = {});

enum class Direction { increasing, decreasing };

struct SequenceTerm {
  int n = 0;
  ExtendedValue value;
  bool exact = false;
};

/// A sequence that is quasi-monotone in the sense
///   increasing: (n+m) s_{n+m} >= n s_n + m s_m,
///   decreasing: (n+m) s_{n+m} <= n s_n + m s_m,
/// whose limit is then its sup (resp. inf).
struct SequenceEstimate {
  std::vector<SequenceTerm> terms;
  Direction direction = Direction::increasing;
  ExtInterval limit_bracket;
  int exact_terms_upto = 0;
};

/// Largest worst-case violation of quasi-monotonicity over triples
/// (n, m, n+m) of exact terms; <= 0 means none. +inf counts as a violation
/// only when it sits on the wrong side.
double quasi_monotone_violation(const SequenceEstimate& seq);

/// Bracket for the limit licensed by quasi-monotonicity: [max term, bound]
/// for increasing sequences, [bound, min term] for decreasing ones. No
/// extrapolation. Throws DataError when exact terms break quasi-monotonicity
/// by more than `tol`, ArgumentError with fewer than 3 terms.
ExtInterval fekete_limit(SequenceEstimate& seq, std::optional<ExtendedValue> bound = std::nullopt, double tol = 1e-9);

/// (M(H,L), Mb(H,L)) on a finite space, read off the games:
/// M = q_(H,L) and Mb = q(H,L).
std::pair<ExtendedValue, ExtendedValue> cheb_limits_via_games(const DiscreteSpace& space, const SubsetRef& H,
                                                             const SubsetRef& L);

std::string witness_to_json(const TupleWitness& w);

}  // namespace rendezkit

#endif  // RENDEZKIT_CONFOPT_HPP
