#include "rendezkit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <variant>

#include "rendezkit/confopt.hpp"
#include "rendezkit/energyopt.hpp"
#include "rendezkit/error.hpp"
#include "rendezkit/game.hpp"
#include "rendezkit/rendezvous.hpp"
#include "rendezkit/serialize.hpp"
#include "rendezkit/verify.hpp"

namespace rendezkit {

namespace {

struct SpaceArgs {
  std::string builder;
  std::string kernel = "euclid";
  long N = 0;
  double a = 0.0;
  double b = 1.0;
  std::string metric = "chordal";
  std::string file;
};

struct QueryArgs {
  std::string quantity;
  std::string H = "all";
  std::string L = "all";
  int n = 2;
  std::string method = "exact";
  std::uint64_t seed = 0;
  int restarts = 32;
  std::uint64_t budget = SearchOptions{}.exact_budget;
  std::string format = "json";
  std::string output;
};

const std::vector<std::string> kQuantities{"q", "qlower", "u", "v", "w", "Dn", "Mn", "Mbarn", "Cn",
                                           "R", "Rn", "A", "chain", "duality"};

void add_space_options(CLI::App* cmd, SpaceArgs& s) {
  cmd->add_option("--builder", s.builder, "discrete2 | interval | circle | matrix-file")
      ->check(CLI::IsMember({"discrete2", "interval", "circle", "matrix-file"}));
  cmd->add_option("--kernel", s.kernel, "euclid | discrete | neglog | riesz:s (interval builder)");
  cmd->add_option("--a", s.a, "interval left end");
  cmd->add_option("--b", s.b, "interval right end");
  cmd->add_option("--metric", s.metric, "circle metric")->check(CLI::IsMember({"chordal", "geodesic"}));
  cmd->add_option("--file", s.file, "space file (.json or .csv) for matrix-file");
}

void add_query_options(CLI::App* cmd, QueryArgs& q) {
  cmd->add_option("--quantity", q.quantity, "quantity to compute")->required()->check(CLI::IsMember(kQuantities));
  cmd->add_option("--H", q.H, "subset: all | i,j,... | i..j");
  cmd->add_option("--L", q.L, "subset: all | i,j,... | i..j");
  cmd->add_option("--n", q.n, "tuple size (Dn, Mn, Mbarn, Cn, Rn)");
  cmd->add_option("--method", q.method, "exact | local-search")->check(CLI::IsMember({"exact", "local-search"}));
  cmd->add_option("--seed", q.seed, "seed for local search");
  cmd->add_option("--restarts", q.restarts, "local search restarts");
  cmd->add_option("--budget", q.budget, "exact enumeration budget (multisets)");
  cmd->add_option("--output", q.output, "write the result here instead of stdout");
}

DiscreteSpace build_space(const SpaceArgs& s, long N) {
  if (s.builder == "discrete2") return build_discrete2();
  if (s.builder == "interval") {
    if (N < 2) throw ArgumentError("interval builder needs --N >= 2");
    return build_interval_grid(s.a, s.b, N, Kernel::parse(s.kernel));
  }
  if (s.builder == "circle") {
    if (N < 1) throw ArgumentError("circle builder needs --N >= 1");
    return build_circle_grid(N, s.metric == "geodesic" ? CircleMetric::geodesic : CircleMetric::chordal);
  }
  if (s.builder == "matrix-file") {
    if (s.file.empty()) throw ArgumentError("matrix-file builder needs --file");
    return load_space_file(s.file);
  }
  throw ArgumentError("a space is required: --builder discrete2|interval|circle|matrix-file");
}

SearchOptions search_options(const QueryArgs& q) {
  SearchOptions o;
  o.method = parse_search_method(q.method);
  o.seed = q.seed;
  o.restarts = q.restarts;
  o.exact_budget = q.budget;
  return o;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw DataError("cannot write '" + path + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string interval_json(const std::string& quantity, const QueryArgs& q, const ExtInterval& iv) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["quantity"] = quantity;
  j["H"] = q.H;
  j["L"] = q.L;
  j["interval"] = iv;
  const bool single = iv.is_singleton(kSingletonTolerance);
  j["singleton"] = single;
  j["value"] = single ? nlohmann::json(iv.hi()) : nlohmann::json(nullptr);
  return j.dump();
}

std::string with_quantity(const std::string& json_text, const std::string& quantity) {
  auto j = nlohmann::json::parse(json_text);
  j["quantity"] = quantity;
  return j.dump();
}

std::string chain_json(const EnergyChainReport& r) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["quantity"] = "chain";
  j["w"] = r.w;
  j["q"] = r.q;
  j["u"] = r.u;
  j["v"] = r.v ? nlohmann::json(*r.v) : nlohmann::json(nullptr);
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"passed", c.passed}});
  j["checks"] = checks;
  j["passed"] = r.passed();
  return j.dump();
}

std::string fmt(const ExtendedValue& v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

int cmd_compute(const SpaceArgs& sa, const QueryArgs& qa, std::ostream& out, std::ostream& err) {
  const DiscreteSpace space = build_space(sa, sa.N);
  const SubsetRef H = SubsetRef::parse(qa.H, space.size());
  const SubsetRef L = SubsetRef::parse(qa.L, space.size());
  const SearchOptions opts = search_options(qa);
  const std::string& qty = qa.quantity;
  if (qa.format == "csv" && qty != "Rn") throw ArgumentError("--format csv is only available for Rn");

  std::string text;
  std::string summary;
  if (qty == "q" || qty == "qlower" || qty == "u" || qty == "v") {
    GameSolution sol = qty == "q"        ? q_value(space, H, L)
                       : qty == "qlower" ? q_lower(space, H, L)
                       : qty == "u"      ? u_value(space, H)
                                         : v_value(space, H);
    text = with_quantity(game_solution_to_json(sol), qty);
    summary = qty + " = " + fmt(sol.value) + " (" + to_string(sol.status) + ")";
  } else if (qty == "w") {
    const auto r = w_energy(space, H);
    text = with_quantity(energy_result_to_json(r), qty);
    summary = "w = " + fmt(r.value);
  } else if (qty == "Dn" || qty == "Mn" || qty == "Mbarn" || qty == "Cn") {
    TupleWitness w = qty == "Dn"   ? nth_diameter(space, H, qa.n, opts)
                     : qty == "Mn" ? cheb_n(space, H, L, qa.n, opts)
                     : qty == "Mbarn" ? dual_cheb_n(space, H, L, qa.n, opts)
                                      : modified_cheb_n(space, H, qa.n, opts);
    text = with_quantity(witness_to_json(w), qty);
    summary = qty + " (n=" + std::to_string(qa.n) + ") = " + fmt(w.value) + " [" + to_string(w.method) + "]";
  } else if (qty == "R" || qty == "A") {
    const auto iv = qty == "R" ? rendezvous_interval(space, H, L) : average_interval(space, H, L);
    text = interval_json(qty, qa, iv);
    std::ostringstream s;
    s.precision(17);
    s << qty << " = " << iv;
    summary = s.str();
  } else if (qty == "Rn") {
    const auto rep = rendezvous_report(space, H, L, qa.n, opts);
    text = qa.format == "csv" ? rn_csv(rep) : with_quantity(report_to_json(rep), qty);
    std::ostringstream s;
    s.precision(17);
    s << "R_n for n <= " << qa.n << ", last " << rep.R_n.back().interval() << "; R = " << rep.R;
    summary = s.str();
  } else if (qty == "chain") {
    const auto r = energy_chain_check(space, H);
    text = chain_json(r);
    summary = std::string("chain ") + (r.passed() ? "passes" : "FAILS") + ": w = " + fmt(r.w) + ", q = " + fmt(r.q) +
              ", u = " + fmt(r.u);
  } else if (qty == "duality") {
    const double gap = duality_gap(space, H, L);
    nlohmann::json j;
    j["schema"] = kSchemaVersion;
    j["quantity"] = "duality";
    j["q_HL"] = q_value(space, H, L).value;
    j["qlower_LH"] = q_lower(space, L, H).value;
    j["gap"] = real_to_json(gap);
    text = j.dump();
    std::ostringstream s;
    s << "duality gap = " << gap;
    summary = s.str();
  }
  emit(text, qa.output, out);
  err << space.label() << ": " << summary << '\n';
  return kExitOk;
}

using SweepValue = std::variant<ExtendedValue, ExtInterval>;

SweepValue sweep_cell(const DiscreteSpace& space, const QueryArgs& qa) {
  const SubsetRef H = SubsetRef::parse(qa.H, space.size());
  const SubsetRef L = SubsetRef::parse(qa.L, space.size());
  const SearchOptions opts = search_options(qa);
  const std::string& qty = qa.quantity;
  if (qty == "q") return q_value(space, H, L).value;
  if (qty == "qlower") return q_lower(space, H, L).value;
  if (qty == "u") return u_value(space, H).value;
  if (qty == "v") return v_value(space, H).value;
  if (qty == "w") return w_energy(space, H).value;
  if (qty == "Dn") return nth_diameter(space, H, qa.n, opts).value;
  if (qty == "Mn") return cheb_n(space, H, L, qa.n, opts).value;
  if (qty == "Mbarn") return dual_cheb_n(space, H, L, qa.n, opts).value;
  if (qty == "Cn") return modified_cheb_n(space, H, qa.n, opts).value;
  if (qty == "R") return rendezvous_interval(space, H, L);
  if (qty == "A") return average_interval(space, H, L);
  if (qty == "Rn") return rendezvous_interval_n(space, H, L, qa.n, opts);
  if (qty == "duality") return ExtendedValue(duality_gap(space, H, L));
  throw ArgumentError("quantity '" + qty + "' cannot be swept");
}

int cmd_sweep(const SpaceArgs& sa, const QueryArgs& qa, const std::vector<long>& Ns, std::ostream& out,
              std::ostream& err) {
  if (Ns.empty()) throw ArgumentError("sweep needs --Ns");
  if (sa.builder != "interval" && sa.builder != "circle") throw ArgumentError("sweep needs the interval or circle builder");
  if (qa.quantity == "chain") throw ArgumentError("quantity 'chain' cannot be swept");

  // Cells are independent; run them in bounded waves and collect in order.
  std::vector<SweepValue> cells(Ns.size());
  const auto threads = static_cast<std::size_t>(effective_threads(0));
  for (std::size_t start = 0; start < Ns.size(); start += threads) {
    std::vector<std::future<SweepValue>> wave;
    for (std::size_t i = start; i < std::min(Ns.size(), start + threads); ++i) {
      wave.push_back(std::async(std::launch::async, [&, i] { return sweep_cell(build_space(sa, Ns[i]), qa); }));
    }
    for (std::size_t k = 0; k < wave.size(); ++k) cells[start + k] = wave[k].get();
  }

  std::ostringstream csv;
  csv.precision(17);
  const bool scalar = std::holds_alternative<ExtendedValue>(cells.front());
  csv << (scalar ? "N,value,trend\n" : "N,lo,hi,width\n");
  std::optional<ExtendedValue> prev;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    csv << Ns[i] << ',';
    if (scalar) {
      const auto v = std::get<ExtendedValue>(cells[i]);
      std::string trend;
      if (prev) {
        const double d = v.is_finite() && prev->is_finite() ? v.value() - prev->value() : 0.0;
        trend = (v == *prev || std::abs(d) <= 1e-12) ? "flat" : (*prev < v ? "up" : "down");
      }
      csv << v << ',' << trend << '\n';
      prev = v;
    } else {
      const auto iv = std::get<ExtInterval>(cells[i]);
      csv << iv.lo() << ',' << iv.hi() << ',';
      if (iv.empty()) {
        csv << "empty";
      } else if (iv.hi().is_infinite()) {
        csv << "inf";
      } else {
        csv << iv.hi().value() - iv.lo().value();
      }
      csv << '\n';
    }
  }
  emit(csv.str(), qa.output, out);

  if (scalar && sa.builder == "interval" && qa.quantity == "Dn" && Kernel::parse(sa.kernel).kind == KernelKind::neglog &&
      sa.a == 0.0 && sa.b == 1.0) {
    const auto last = std::get<ExtendedValue>(cells.back());
    const double log4 = std::log(4.0);
    err << "D_" << qa.n << " at N=" << Ns.back() << " is " << fmt(last) << "; continuum bracket [" << fmt(last)
        << ", log 4 = " << log4 << "]" << (approx_le(last, ExtendedValue(log4), 1e-3) ? "" : " (above log 4!)") << '\n';
  }
  err << "sweep of " << qa.quantity << " over " << Ns.size() << " grids done\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string config_path;
  std::string config_json;
  std::optional<std::uint64_t> seed;
  std::optional<int> instances;
  std::string sizes;
  std::optional<int> exhaustive_n;
  std::optional<int> n_max;
  std::optional<int> threads;
  std::vector<std::string> properties;
  bool inject_fault = false;
  std::string output;
};

int cmd_verify(const VerifyArgs& va, std::ostream& out, std::ostream& err) {
  nlohmann::json cfg = nlohmann::json::object();
  if (!va.config_path.empty()) {
    std::ifstream f(va.config_path);
    if (!f) throw ArgumentError("cannot read config '" + va.config_path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    try {
      cfg = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
      throw ArgumentError(std::string("config: ") + e.what());
    }
  }
  if (!va.config_json.empty()) {
    try {
      cfg.update(nlohmann::json::parse(va.config_json));
    } catch (const nlohmann::json::exception& e) {
      throw ArgumentError(std::string("--config-json: ") + e.what());
    }
  }
  if (va.seed) cfg["seed"] = *va.seed;
  if (va.instances) cfg["instances"] = *va.instances;
  if (va.exhaustive_n) cfg["exhaustive_n"] = *va.exhaustive_n;
  if (va.n_max) cfg["n_max"] = *va.n_max;
  if (va.threads) cfg["threads"] = *va.threads;
  if (!va.properties.empty()) cfg["properties"] = va.properties;
  if (va.inject_fault) cfg["inject_fault"] = true;
  if (!va.sizes.empty()) {
    const auto dots = va.sizes.find("..");
    try {
      if (dots == std::string::npos) {
        const int s = std::stoi(va.sizes);
        cfg["sizes"] = {s, s};
      } else {
        cfg["sizes"] = {std::stoi(va.sizes.substr(0, dots)), std::stoi(va.sizes.substr(dots + 2))};
      }
    } catch (const std::logic_error&) {
      throw ArgumentError("--sizes must look like 2..4");
    }
  }
  const SuiteConfig config = parse_suite_config(cfg.dump());

  std::ostringstream lines;
  const SuiteResult res = run_suite(config, &lines);
  emit(lines.str(), va.output, out);
  for (const auto& r : res.reports) {
    err << r.property_id << ": " << r.trials << " trials, " << r.failures.size() << " failures, worst slack "
        << r.worst_slack << '\n';
  }
  err << (res.passed() ? "verify: all properties hold" : "verify: FAILURES (instances are in the report lines)") << '\n';
  return res.exit_code();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rendezkit: energies, Chebyshev constants and rendezvous intervals on finite kernel spaces"};
  app.require_subcommand(1);

  SpaceArgs compute_space;
  QueryArgs compute_query;
  auto* compute = app.add_subcommand("compute", "compute one quantity");
  add_space_options(compute, compute_space);
  compute->add_option("--N", compute_space.N, "number of grid points");
  add_query_options(compute, compute_query);
  compute->add_option("--format", compute_query.format, "json | csv (csv for Rn)")->check(CLI::IsMember({"json", "csv"}));

  SpaceArgs sweep_space;
  QueryArgs sweep_query;
  std::vector<long> Ns;
  auto* sweep = app.add_subcommand("sweep", "one quantity over several grid sizes (CSV)");
  add_space_options(sweep, sweep_space);
  add_query_options(sweep, sweep_query);
  sweep->add_option("--Ns", Ns, "grid sizes, comma separated")->delimiter(',')->required();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "run the property suite (JSON lines)");
  verify->add_option("--config", verify_args.config_path, "suite config JSON file");
  verify->add_option("--config-json", verify_args.config_json, "suite config as inline JSON");
  verify->add_option("--seed", verify_args.seed, "base seed");
  verify->add_option("--instances", verify_args.instances, "instances per kernel family");
  verify->add_option("--sizes", verify_args.sizes, "size range, e.g. 2..8");
  verify->add_option("--exhaustive-n", verify_args.exhaustive_n, "largest n for oracle comparisons");
  verify->add_option("--n-max", verify_args.n_max, "largest n for tuple properties");
  verify->add_option("--threads", verify_args.threads, "worker threads (capped by RENDEZKIT_THREADS)");
  verify->add_option("--properties", verify_args.properties, "subset of properties")->delimiter(',');
  verify->add_flag("--inject-fault", verify_args.inject_fault, "perturb the duality check to exercise the failure path");
  verify->add_option("--output", verify_args.output, "write JSON lines here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compute) return cmd_compute(compute_space, compute_query, out, err);
    if (*sweep) return cmd_sweep(sweep_space, sweep_query, Ns, out, err);
    return cmd_verify(verify_args, out, err);
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const PropertyViolation& e) {
    err << "property violation: " << e.what() << '\n';
    return kExitProperty;
  } catch (const std::exception& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace rendezkit
