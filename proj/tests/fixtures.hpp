#ifndef RENDEZKIT_TESTS_FIXTURES_HPP
#define RENDEZKIT_TESTS_FIXTURES_HPP

#include <cmath>
#include <vector>

#include "rendezkit/space.hpp"

namespace fixtures {

using rendezkit::DiscreteSpace;
using rendezkit::ExtendedValue;
using rendezkit::kInfinity;

// Five planar points used for the frozen oracle values.
inline const double kPoints[5][2] = {{0, 0}, {1, 0}, {0, 1}, {0.3, 0.4}, {0.9, 0.8}};

inline double dist(int i, int j) { return std::hypot(kPoints[i][0] - kPoints[j][0], kPoints[i][1] - kPoints[j][1]); }

inline DiscreteSpace five_point(bool gaussian) {
  std::vector<std::vector<ExtendedValue>> k(5, std::vector<ExtendedValue>(5, ExtendedValue(0.0)));
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) {
      const double d = dist(i, j);
      k[i][j] = k[j][i] = gaussian ? std::exp(-d * d) : d;
    }
  }
  return DiscreteSpace::from_matrix(k, gaussian ? "five:gauss" : "five:euclid");
}

// Three points, infinite diagonal, finite off-diagonal.
inline DiscreteSpace inf_diagonal3() {
  return DiscreteSpace::from_matrix({{kInfinity, 1.0, 2.0}, {1.0, kInfinity, 1.0}, {2.0, 1.0, kInfinity}}, "infdiag3");
}

}  // namespace fixtures

#endif  // RENDEZKIT_TESTS_FIXTURES_HPP
