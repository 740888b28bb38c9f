#ifndef RENDEZKIT_SPACE_HPP
#define RENDEZKIT_SPACE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rendezkit/extended.hpp"

namespace rendezkit {

using Index = Eigen::Index;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Finite point set with a symmetric kernel k : X x X -> [0, +inf].
///
/// The kernel is held as two dense matrices: the finite values, and a mask
/// of the entries equal to +inf (whose finite slot is kept at 0). Both are
/// exactly symmetric and every finite value is >= 0.
class DiscreteSpace {
 public:
  DiscreteSpace() = default;

  /// Validates squareness, exact symmetry (value and tag) and nonnegativity.
  static DiscreteSpace from_matrix(const std::vector<std::vector<ExtendedValue>>& kernel, std::string label = {},
                                   Eigen::MatrixXd coords = {});
  static DiscreteSpace from_parts(Eigen::MatrixXd finite, BoolMatrix infinite, std::string label = {},
                                  Eigen::MatrixXd coords = {});

  Index size() const { return finite_.rows(); }
  const std::string& label() const { return label_; }
  const Eigen::MatrixXd& coords() const { return coords_; }
  bool has_coords() const { return coords_.rows() == size() && coords_.cols() > 0; }

  ExtendedValue kernel(Index i, Index j) const {
    return infinite_(i, j) ? kInfinity : ExtendedValue(finite_(i, j));
  }
  bool is_infinite(Index i, Index j) const { return infinite_(i, j); }
  double finite_value(Index i, Index j) const { return finite_(i, j); }

  const Eigen::MatrixXd& finite_part() const { return finite_; }
  const BoolMatrix& infinite_mask() const { return infinite_; }

  bool has_infinite_entries() const { return infinite_.any(); }
  double max_finite_entry() const { return size() == 0 ? 0.0 : finite_.maxCoeff(); }

  std::vector<std::vector<ExtendedValue>> kernel_rows() const;

 private:
  std::string label_;
  Eigen::MatrixXd coords_;
  Eigen::MatrixXd finite_;
  BoolMatrix infinite_;
};

/// Sorted, duplicate-free list of point indices into a DiscreteSpace.
class SubsetRef {
 public:
  SubsetRef() = default;
  explicit SubsetRef(std::vector<Index> indices);

  static SubsetRef all(Index n);

  /// "all", or a comma list of indices and inclusive ranges "i..j".
  static SubsetRef parse(std::string_view text, Index n);

  const std::vector<Index>& indices() const { return indices_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  Index operator[](Index k) const { return indices_[static_cast<std::size_t>(k)]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(Index i) const;
  bool subset_of(const SubsetRef& other) const;

  /// Throws ArgumentError unless all indices lie in [0, n) and, when
  /// `allow_empty` is false, the subset is non-empty.
  void validate(Index n, const char* what, bool allow_empty = false) const;

  std::string to_string() const;

  friend bool operator==(const SubsetRef&, const SubsetRef&) = default;

 private:
  std::vector<Index> indices_;
};

enum class KernelKind { euclid, discrete, neglog, riesz };

/// A kernel from the built-in zoo; `exponent` is used by riesz only.
struct Kernel {
  KernelKind kind = KernelKind::euclid;
  double exponent = 1.0;

  /// "euclid", "discrete", "neglog", "riesz:<s>" (s > 0).
  static Kernel parse(std::string_view text);
  std::string name() const;
};

/// k(x, y) for points given as coordinate vectors of equal dimension.
ExtendedValue kernel_eval(const Kernel& kernel, std::span<const double> x, std::span<const double> y);

/// Kernel of a distance |x - y| (the zoo is radial apart from `discrete`).
ExtendedValue kernel_of_distance(const Kernel& kernel, double distance);

/// Closed grid a + i (b - a) / (N - 1), i = 0..N-1.
DiscreteSpace build_interval_grid(double a, double b, Index n_points, const Kernel& kernel);

enum class CircleMetric { chordal, geodesic };

/// N-th roots of unity with chordal or geodesic (arc length) distance.
DiscreteSpace build_circle_grid(Index n_points, CircleMetric metric);

/// Two-point space {a, b} with the discrete metric.
DiscreteSpace build_discrete2();

// Space file: {"schema": 1, "label", "coords"?, "kernel": [[...]]} with "inf".
std::string space_to_json(const DiscreteSpace& space);
DiscreteSpace space_from_json(std::string_view text);
DiscreteSpace space_from_csv(std::string_view text, std::string label = "csv");
DiscreteSpace load_space_file(const std::string& path);

}  // namespace rendezkit

#endif  // RENDEZKIT_SPACE_HPP
