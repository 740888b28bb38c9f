#ifndef RENDEZKIT_SERIALIZE_HPP
#define RENDEZKIT_SERIALIZE_HPP

// JSON encodings shared by every file format: finite extended values are
// JSON numbers, +inf is the string "inf".

#include <string>

#include "json.hpp"

#include "rendezkit/extended.hpp"

namespace rendezkit {

inline constexpr int kSchemaVersion = 1;

template <typename Scalar>
void to_json(nlohmann::json& j, const Extended<Scalar>& v) {
  if (v.is_infinite()) {
    j = "inf";
  } else {
    j = static_cast<double>(v.value());
  }
}

template <typename Scalar>
void from_json(const nlohmann::json& j, Extended<Scalar>& v) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw ValidationError("expected number or \"inf\", got \"" + j.get<std::string>() + "\"");
    v = Extended<Scalar>::infinity();
  } else if (j.is_number()) {
    const double x = j.get<double>();
    if (x < 0) throw ValidationError("negative kernel/energy value " + std::to_string(x));
    v = Extended<Scalar>(static_cast<Scalar>(x));
  } else {
    throw ValidationError("expected number or \"inf\", got " + j.dump());
  }
}

template <typename Scalar>
void to_json(nlohmann::json& j, const Interval<Scalar>& iv) {
  j = nlohmann::json{{"lo", iv.lo()}, {"hi", iv.hi()}, {"empty", iv.empty()}};
}

/// Real number that may be +/-inf or NaN (slacks, gaps): non-finite as strings.
inline nlohmann::json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace rendezkit

#endif  // RENDEZKIT_SERIALIZE_HPP
