#ifndef RENDEZKIT_ORACLE_HPP
#define RENDEZKIT_ORACLE_HPP

// Brute-force cross-checks that share no code with the fast paths.
// They only use the kernel accessors and their own arithmetic.

#include <cstdint>
#include <vector>

#include "rendezkit/extended.hpp"
#include "rendezkit/space.hpp"

namespace rendezkit::oracle {

inline constexpr int kGridResolution = 200;

/// Grid over the simplex on H with step 1/resolution (H small). The grid
/// optimum of each objective bounds the true one from one side:
/// q <= grid_q, grid_qlower <= q_, w <= grid_w.
ExtendedValue grid_q(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L,
                     int resolution = kGridResolution);
ExtendedValue grid_qlower(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L,
                          int resolution = kGridResolution);
ExtendedValue grid_w(const DiscreteSpace& space, const SubsetRef& H, int resolution = kGridResolution);

// Full ordered-tuple enumeration over H^n.
ExtendedValue enum_diameter(const DiscreteSpace& space, const SubsetRef& H, int n);
ExtendedValue enum_cheb(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n);
ExtendedValue enum_dual_cheb(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n);

struct MwBracket {
  double lower = 0.0;  // guaranteed by the averaged column strategy
  double upper = 0.0;  // guaranteed by the averaged row strategy
  int rounds = 0;
};

/// Multiplicative weights on the finite game min_rows max_cols P. Both ends
/// are exact guarantees of the averaged strategies, so the game value lies
/// in [lower, upper] however far the iteration got.
MwBracket mw_game(const Eigen::MatrixXd& payoff, int rounds = 20000);

}  // namespace rendezkit::oracle

#endif  // RENDEZKIT_ORACLE_HPP
