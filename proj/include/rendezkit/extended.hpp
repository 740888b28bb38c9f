#ifndef RENDEZKIT_EXTENDED_HPP
#define RENDEZKIT_EXTENDED_HPP

// Nonnegative extended reals [0, +inf] and closed intervals over them.
//
// +inf is a separate tag, never an IEEE infinity hiding inside a double, so
// the product 0 * inf can be defined as 0 (the convention every energy and
// potential in this library relies on).

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <string>

#include "rendezkit/error.hpp"

namespace rendezkit {

template <typename Scalar>
class Extended {
 public:
  using scalar_type = Scalar;

  constexpr Extended() = default;

  // Implicit on purpose: finite literals read naturally at call sites.
  Extended(Scalar v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(v)) {
      throw ArgumentError("extended value: non-finite scalar " + std::to_string(static_cast<double>(v)) +
                          " (use Extended::infinity())");
    }
    if (v < Scalar(0)) {
      throw ArgumentError("extended value: negative scalar " + std::to_string(static_cast<double>(v)));
    }
  }

  static constexpr Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  Scalar value() const {
    if (infinite_) throw ArgumentError("extended value: value() called on +inf");
    return value_;
  }

  // Finite part, or `fallback` for +inf.
  constexpr Scalar value_or(Scalar fallback) const { return infinite_ ? fallback : value_; }

  friend constexpr bool operator==(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::partial_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Extended(a.value_ + b.value_);
  }

  // Nonnegative scalar times extended value, with 0 * inf = 0.
  friend Extended operator*(Scalar w, const Extended& a) {
    if (w < Scalar(0) || !std::isfinite(w)) throw ArgumentError("extended value: invalid multiplier");
    if (w == Scalar(0)) return Extended();
    if (a.infinite_) return infinity();
    return Extended(w * a.value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Extended& a) {
    if (a.infinite_) return os << "inf";
    return os << a.value_;
  }

 private:
  Scalar value_ = Scalar(0);
  bool infinite_ = false;
};

template <typename Scalar>
constexpr Extended<Scalar> min(const Extended<Scalar>& a, const Extended<Scalar>& b) {
  return (b < a) ? b : a;
}

template <typename Scalar>
constexpr Extended<Scalar> max(const Extended<Scalar>& a, const Extended<Scalar>& b) {
  return (a < b) ? b : a;
}

/// |a - b| <= tol for finite values; two infinities are equal, inf vs finite never is.
template <typename Scalar>
bool approx_equal(const Extended<Scalar>& a, const Extended<Scalar>& b, Scalar tol) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
  return std::abs(a.value() - b.value()) <= tol;
}

/// a <= b + tol, exact on the infinity tag.
template <typename Scalar>
bool approx_le(const Extended<Scalar>& a, const Extended<Scalar>& b, Scalar tol) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return a.value() <= b.value() + tol;
}

/// Running sum of extended values that also supports removing a term again;
/// infinities are counted rather than absorbed, so subtraction stays exact.
template <typename Scalar>
class ExtendedAccumulator {
 public:
  void add(const Extended<Scalar>& v) {
    if (v.is_infinite()) {
      ++infinite_terms_;
    } else {
      finite_ += v.value();
    }
  }
  void remove(const Extended<Scalar>& v) {
    if (v.is_infinite()) {
      --infinite_terms_;
    } else {
      finite_ -= v.value();
    }
  }
  bool is_infinite() const { return infinite_terms_ > 0; }
  long double finite_part() const { return finite_; }

  // Sum scaled by a positive factor; tiny negative round-off is clamped to 0.
  Extended<Scalar> scaled(Scalar factor) const {
    if (infinite_terms_ > 0) return Extended<Scalar>::infinity();
    const auto v = static_cast<Scalar>(finite_ * factor);
    return Extended<Scalar>(v < Scalar(0) ? Scalar(0) : v);
  }

 private:
  long double finite_ = 0.0L;
  int infinite_terms_ = 0;
};

/// Sum of w_i * v_i with 0 * inf = 0, accumulated in long double.
template <typename Scalar>
Extended<Scalar> ext_weighted_sum(std::span<const Scalar> weights, std::span<const Extended<Scalar>> values) {
  if (weights.size() != values.size()) {
    throw ArgumentError("ext_weighted_sum: " + std::to_string(weights.size()) + " weights vs " +
                        std::to_string(values.size()) + " values");
  }
  long double acc = 0.0L;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const Scalar w = weights[i];
    if (!(w >= Scalar(0)) || !std::isfinite(w)) {
      throw ArgumentError("ext_weighted_sum: invalid weight at position " + std::to_string(i));
    }
    if (w == Scalar(0)) continue;
    if (values[i].is_infinite()) return Extended<Scalar>::infinity();
    acc += static_cast<long double>(w) * static_cast<long double>(values[i].value());
  }
  return Extended<Scalar>(static_cast<Scalar>(acc));
}

/// Closed interval [lo, hi] inside [0, +inf]; empty exactly when hi < lo.
/// Endpoints are kept even for empty intervals so intersection stays a
/// plain max/min over them.
template <typename Scalar>
class Interval {
 public:
  using value_type = Extended<Scalar>;

  Interval() : lo_(Scalar(0)), hi_(value_type::infinity()) {}
  Interval(value_type lo, value_type hi) : lo_(lo), hi_(hi) {}

  static Interval full() { return Interval(); }

  const value_type& lo() const { return lo_; }
  const value_type& hi() const { return hi_; }
  bool empty() const { return hi_ < lo_; }

  bool contains(const value_type& t) const { return !empty() && lo_ <= t && t <= hi_; }

  /// this ⊆ other, with endpoint slack `tol` on finite endpoints.
  bool subset_of(const Interval& other, Scalar tol = Scalar(0)) const {
    if (empty()) return true;
    if (other.empty()) return false;
    return approx_le(other.lo_, lo_, tol) && approx_le(hi_, other.hi_, tol);
  }

  /// Non-empty and hi - lo <= rel_tol * max(1, hi); [inf, inf] counts.
  bool is_singleton(Scalar rel_tol) const {
    if (empty()) return false;
    if (hi_.is_infinite()) return lo_.is_infinite();
    const Scalar hi = hi_.value();
    return hi - lo_.value() <= rel_tol * std::max(Scalar(1), hi);
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    if (iv.empty()) return os << "empty";
    return os << '[' << iv.lo_ << ", " << iv.hi_ << ']';
  }

 private:
  value_type lo_;
  value_type hi_;
};

template <typename Scalar>
Interval<Scalar> make_interval(Extended<Scalar> lo, Extended<Scalar> hi) {
  return Interval<Scalar>(lo, hi);
}

/// [max lo, min hi] over the family; the empty family gives [0, inf].
template <typename Scalar>
Interval<Scalar> intersect_intervals(std::span<const Interval<Scalar>> intervals) {
  Interval<Scalar> out = Interval<Scalar>::full();
  for (const auto& iv : intervals) {
    out = Interval<Scalar>(max(out.lo(), iv.lo()), min(out.hi(), iv.hi()));
  }
  return out;
}

using ExtendedValue = Extended<double>;
using ExtInterval = Interval<double>;

inline const ExtendedValue kInfinity = ExtendedValue::infinity();

}  // namespace rendezkit

#endif  // RENDEZKIT_EXTENDED_HPP
