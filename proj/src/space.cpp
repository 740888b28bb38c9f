#include "rendezkit/space.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rendezkit/serialize.hpp"

namespace rendezkit {

namespace {

std::string pair_name(Index i, Index j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Index parse_index(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ArgumentError("subset: cannot parse index '" + std::string(s) + "'");
  }
  return static_cast<Index>(v);
}

}  // namespace

DiscreteSpace DiscreteSpace::from_parts(Eigen::MatrixXd finite, BoolMatrix infinite, std::string label,
                                        Eigen::MatrixXd coords) {
  const Index n = finite.rows();
  if (finite.cols() != n || infinite.rows() != n || infinite.cols() != n) {
    throw ValidationError("kernel matrix must be square");
  }
  if (n == 0) throw ValidationError("kernel matrix must have at least one point");
  if (coords.size() != 0 && coords.rows() != n) {
    throw ValidationError("coords: expected " + std::to_string(n) + " rows, got " + std::to_string(coords.rows()));
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (infinite(i, j)) {
        finite(i, j) = 0.0;
        continue;
      }
      const double v = finite(i, j);
      if (!std::isfinite(v)) throw ValidationError("kernel entry " + pair_name(i, j) + " is not a finite number");
      if (v < 0.0) throw ValidationError("kernel entry " + pair_name(i, j) + " is negative");
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (infinite(i, j) != infinite(j, i) || finite(i, j) != finite(j, i)) {
        throw ValidationError("kernel is not symmetric at " + pair_name(i, j));
      }
    }
  }
  DiscreteSpace s;
  s.label_ = std::move(label);
  s.coords_ = std::move(coords);
  s.finite_ = std::move(finite);
  s.infinite_ = std::move(infinite);
  return s;
}

DiscreteSpace DiscreteSpace::from_matrix(const std::vector<std::vector<ExtendedValue>>& kernel, std::string label,
                                         Eigen::MatrixXd coords) {
  const auto n = static_cast<Index>(kernel.size());
  Eigen::MatrixXd finite = Eigen::MatrixXd::Zero(n, n);
  BoolMatrix infinite = BoolMatrix::Constant(n, n, false);
  for (Index i = 0; i < n; ++i) {
    const auto& row = kernel[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != n) {
      throw ValidationError("kernel matrix must be square: row " + std::to_string(i) + " has " +
                            std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    }
    for (Index j = 0; j < n; ++j) {
      const auto& v = row[static_cast<std::size_t>(j)];
      if (v.is_infinite()) {
        infinite(i, j) = true;
      } else {
        finite(i, j) = v.value();
      }
    }
  }
  return from_parts(std::move(finite), std::move(infinite), std::move(label), std::move(coords));
}

std::vector<std::vector<ExtendedValue>> DiscreteSpace::kernel_rows() const {
  std::vector<std::vector<ExtendedValue>> rows(static_cast<std::size_t>(size()));
  for (Index i = 0; i < size(); ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(size()));
    for (Index j = 0; j < size(); ++j) row.push_back(kernel(i, j));
  }
  return rows;
}

// --- SubsetRef -------------------------------------------------------------

SubsetRef::SubsetRef(std::vector<Index> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

SubsetRef SubsetRef::all(Index n) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  return SubsetRef(std::move(idx));
}

SubsetRef SubsetRef::parse(std::string_view text, Index n) {
  text = trim(text);
  if (text == "all") return all(n);
  std::vector<Index> idx;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) throw ArgumentError("subset: empty item in list");
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      idx.push_back(parse_index(item));
      continue;
    }
    const Index lo = parse_index(item.substr(0, dots));
    const Index hi = parse_index(item.substr(dots + 2));
    if (hi < lo) throw ArgumentError("subset: reversed range '" + std::string(item) + "'");
    for (Index i = lo; i <= hi; ++i) idx.push_back(i);
  }
  SubsetRef s(std::move(idx));
  s.validate(n, "subset");
  return s;
}

bool SubsetRef::contains(Index i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

bool SubsetRef::subset_of(const SubsetRef& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

void SubsetRef::validate(Index n, const char* what, bool allow_empty) const {
  if (!allow_empty && indices_.empty()) throw ArgumentError(std::string(what) + ": empty subset");
  for (const Index i : indices_) {
    if (i < 0 || i >= n) {
      throw ArgumentError(std::string(what) + ": index " + std::to_string(i) + " out of range [0," +
                          std::to_string(n) + ")");
    }
  }
}

std::string SubsetRef::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(indices_[k]);
  }
  return out;
}

// --- kernel zoo --------------------------------------------------------------

Kernel Kernel::parse(std::string_view text) {
  text = trim(text);
  if (text == "euclid") return {KernelKind::euclid, 1.0};
  if (text == "discrete") return {KernelKind::discrete, 1.0};
  if (text == "neglog") return {KernelKind::neglog, 1.0};
  if (text.starts_with("riesz")) {
    double s = 1.0;
    if (text.size() > 5) {
      if (text[5] != ':') throw ArgumentError("kernel: expected riesz:<s>, got '" + std::string(text) + "'");
      const std::string num(text.substr(6));
      std::size_t used = 0;
      try {
        s = std::stod(num, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != num.size()) throw ArgumentError("kernel: bad riesz exponent '" + num + "'");
    }
    if (!(s > 0.0)) throw ArgumentError("kernel: riesz exponent must be > 0");
    return {KernelKind::riesz, s};
  }
  throw ArgumentError("kernel: unknown kernel '" + std::string(text) + "' (euclid, discrete, neglog, riesz:s)");
}

std::string Kernel::name() const {
  switch (kind) {
    case KernelKind::euclid: return "euclid";
    case KernelKind::discrete: return "discrete";
    case KernelKind::neglog: return "neglog";
    case KernelKind::riesz: {
      std::ostringstream os;
      os << "riesz:" << exponent;
      return os.str();
    }
  }
  return "?";
}

ExtendedValue kernel_of_distance(const Kernel& kernel, double d) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw ArgumentError("kernel: invalid distance");
  switch (kernel.kind) {
    case KernelKind::euclid: return d;
    case KernelKind::discrete: return d == 0.0 ? 0.0 : 1.0;
    case KernelKind::neglog:
      if (d == 0.0) return kInfinity;
      // Points a hair beyond distance 1 from rounding still map to k = 0.
      if (d > 1.0 + 1e-12) {
        throw DomainError("neglog kernel: |x-y| = " + std::to_string(d) + " > 1 would give a negative kernel");
      }
      return d >= 1.0 ? 0.0 : -std::log(d);
    case KernelKind::riesz:
      if (d == 0.0) return kInfinity;
      return std::pow(d, -kernel.exponent);
  }
  return 0.0;
}

ExtendedValue kernel_eval(const Kernel& kernel, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("kernel_eval: dimension mismatch");
  if (kernel.kind == KernelKind::discrete) {
    return std::equal(x.begin(), x.end(), y.begin()) ? 0.0 : 1.0;
  }
  long double sq = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double diff = static_cast<long double>(x[i]) - y[i];
    sq += diff * diff;
  }
  return kernel_of_distance(kernel, static_cast<double>(std::sqrt(sq)));
}

DiscreteSpace build_interval_grid(double a, double b, Index n_points, const Kernel& kernel) {
  if (!(a < b)) throw ArgumentError("interval grid: need a < b");
  if (n_points < 2) throw ArgumentError("interval grid: need N >= 2");
  Eigen::MatrixXd coords(n_points, 1);
  for (Index i = 0; i < n_points; ++i) {
    coords(i, 0) = a + (b - a) * static_cast<double>(i) / static_cast<double>(n_points - 1);
  }
  coords(n_points - 1, 0) = b;
  Eigen::MatrixXd finite = Eigen::MatrixXd::Zero(n_points, n_points);
  BoolMatrix infinite = BoolMatrix::Constant(n_points, n_points, false);
  for (Index i = 0; i < n_points; ++i) {
    for (Index j = i; j < n_points; ++j) {
      const double xi = coords(i, 0);
      const double xj = coords(j, 0);
      const ExtendedValue k = kernel_eval(kernel, std::span<const double>(&xi, 1), std::span<const double>(&xj, 1));
      if (k.is_infinite()) {
        infinite(i, j) = infinite(j, i) = true;
      } else {
        finite(i, j) = finite(j, i) = k.value();
      }
    }
  }
  std::ostringstream label;
  label << "interval[" << a << "," << b << "]:N=" << n_points << ":" << kernel.name();
  return DiscreteSpace::from_parts(std::move(finite), std::move(infinite), label.str(), std::move(coords));
}

DiscreteSpace build_circle_grid(Index n_points, CircleMetric metric) {
  if (n_points < 3) throw ArgumentError("circle grid: need N >= 3");
  const double pi = std::numbers::pi;
  Eigen::MatrixXd coords(n_points, 2);
  for (Index i = 0; i < n_points; ++i) {
    const double t = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n_points);
    coords(i, 0) = std::cos(t);
    coords(i, 1) = std::sin(t);
  }
  // Entries depend only on the cyclic index distance, which keeps the
  // matrix exactly symmetric and circulant.
  Eigen::VectorXd by_step(n_points);
  for (Index d = 0; d < n_points; ++d) {
    const Index step = std::min(d, n_points - d);
    by_step(d) = metric == CircleMetric::chordal
                     ? 2.0 * std::sin(pi * static_cast<double>(step) / static_cast<double>(n_points))
                     : (2.0 * pi / static_cast<double>(n_points)) * static_cast<double>(step);
  }
  Eigen::MatrixXd finite(n_points, n_points);
  for (Index i = 0; i < n_points; ++i) {
    for (Index j = 0; j < n_points; ++j) finite(i, j) = by_step(std::abs(i - j));
  }
  std::string label = "circle:N=" + std::to_string(n_points) + (metric == CircleMetric::chordal ? ":chordal" : ":geodesic");
  return DiscreteSpace::from_parts(std::move(finite), BoolMatrix::Constant(n_points, n_points, false), std::move(label),
                                   std::move(coords));
}

DiscreteSpace build_discrete2() {
  Eigen::MatrixXd k(2, 2);
  k << 0, 1, 1, 0;
  return DiscreteSpace::from_parts(std::move(k), BoolMatrix::Constant(2, 2, false), "discrete2");
}

// --- files -------------------------------------------------------------------

std::string space_to_json(const DiscreteSpace& space) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["label"] = space.label();
  if (space.has_coords()) {
    nlohmann::json coords = nlohmann::json::array();
    for (Index i = 0; i < space.size(); ++i) {
      nlohmann::json p = nlohmann::json::array();
      for (Index d = 0; d < space.coords().cols(); ++d) p.push_back(space.coords()(i, d));
      coords.push_back(std::move(p));
    }
    j["coords"] = std::move(coords);
  }
  j["kernel"] = space.kernel_rows();
  return j.dump();
}

DiscreteSpace space_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("space file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kernel") || !j["kernel"].is_array()) {
    throw ValidationError("space file: expected an object with a \"kernel\" array");
  }
  std::vector<std::vector<ExtendedValue>> rows;
  for (const auto& row : j["kernel"]) {
    if (!row.is_array()) throw ValidationError("space file: kernel rows must be arrays");
    rows.push_back(row.get<std::vector<ExtendedValue>>());
  }
  Eigen::MatrixXd coords;
  if (j.contains("coords") && !j["coords"].is_null()) {
    const auto& c = j["coords"];
    if (!c.is_array() || c.empty() || !c[0].is_array()) throw ValidationError("space file: bad \"coords\"");
    const auto dim = static_cast<Index>(c[0].size());
    coords.resize(static_cast<Index>(c.size()), dim);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_array() || static_cast<Index>(c[i].size()) != dim) {
        throw ValidationError("space file: ragged \"coords\"");
      }
      for (Index d = 0; d < dim; ++d) coords(static_cast<Index>(i), d) = c[i][static_cast<std::size_t>(d)].get<double>();
    }
  }
  const std::string label = j.value("label", std::string{});
  return DiscreteSpace::from_matrix(rows, label, std::move(coords));
}

DiscreteSpace space_from_csv(std::string_view text, std::string label) {
  std::vector<std::vector<ExtendedValue>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<ExtendedValue> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view tok = trim(rest.substr(0, comma));
      if (tok == "inf") {
        row.push_back(kInfinity);
      } else {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
          throw ValidationError("csv kernel: cannot parse token '" + std::string(tok) + "'");
        }
        if (v < 0.0) throw ValidationError("csv kernel: negative entry '" + std::string(tok) + "'");
        if (!std::isfinite(v)) throw ValidationError("csv kernel: use the token inf for +inf");
        row.emplace_back(v);
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  return DiscreteSpace::from_matrix(rows, std::move(label));
}

DiscreteSpace load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open space file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const bool is_csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
  return is_csv ? space_from_csv(text, path) : space_from_json(text);
}

}  // namespace rendezkit
