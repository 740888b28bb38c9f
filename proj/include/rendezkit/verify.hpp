#ifndef RENDEZKIT_VERIFY_HPP
#define RENDEZKIT_VERIFY_HPP

// Property suites over generated finite instances. A failure on a valid
// instance is a solver defect; reports carry the instance for replay.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rendezkit/space.hpp"

namespace rendezkit {

enum class KernelFamily { metric_random, psd_random, discrete, grid, infinite_diagonal };
enum class SubsetPolicy { nested, random, full };

std::string to_string(KernelFamily f);
std::string to_string(SubsetPolicy p);
KernelFamily parse_kernel_family(std::string_view text);
SubsetPolicy parse_subset_policy(std::string_view text);

struct InstanceSpec {
  std::uint64_t seed = 0;
  int size = 2;
  KernelFamily family = KernelFamily::metric_random;
  SubsetPolicy policy = SubsetPolicy::full;
};

struct Instance {
  DiscreteSpace space;
  SubsetRef H, L;
  // Nested prefixes of one random ordering, ending with the whole space.
  std::vector<SubsetRef> chain;
};

/// Deterministic in `spec`.
Instance gen_instance(const InstanceSpec& spec);

struct PropertyFailure {
  InstanceSpec spec;
  std::string details;
  std::string instance_json;  // space plus H and L
};

struct PropertyReport {
  std::string property_id;
  int trials = 0;
  std::vector<PropertyFailure> failures;
  // Largest relative slack seen (lhs - rhs for "<=", |a - b| for "=");
  // -inf when nothing was compared.
  double worst_slack;
  double tolerance = 1e-8;

  PropertyReport(std::string id = {}, double tol = 1e-8);
  bool passed() const { return failures.empty(); }
  void merge(const PropertyReport& other);
};

inline constexpr double kCheckTolerance = 1e-8;

// q_(H,L) <= q(L,H); q_(H,L) <= q(H,L) when H is in L; q# = q and q_# = q_.
PropertyReport check_chain(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L,
                           double tol = kCheckTolerance);
// q(H,L) = q_(L,H).
PropertyReport check_duality(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L,
                             double tol = kCheckTolerance, double fault = 0.0);
// M_n(H,L) <= q_(H,L) and Mb_n(H,L) >= q(H,L) for exact n <= n_max.
PropertyReport check_MqL(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n_max,
                         double tol = kCheckTolerance);
// D_n(H) <= M_n(H) for 2 <= n <= n_max.
PropertyReport check_dn_mn(const DiscreteSpace& space, const SubsetRef& H, int n_max, double tol = kCheckTolerance);
// Every monotone direction along the nested chain, first with L fixed and the
// chain as H, then with H fixed and the chain as L.
PropertyReport check_monotone(const DiscreteSpace& space, const std::vector<SubsetRef>& chain, const SubsetRef& H,
                              const SubsetRef& L, int n_max, double tol = kCheckTolerance);
// A(X,X) is a singleton; R(X,X) = A(X,X) for finite-valued kernels.
PropertyReport check_uniqueness(const DiscreteSpace& space, double tol = 1e-6);
// w <= v <= q <= u.
PropertyReport check_energy_chain(const DiscreteSpace& space, const SubsetRef& H, double tol = kCheckTolerance);
// Fast paths against the simplex-grid and enumeration oracles (|X| <= 4).
PropertyReport check_oracle_grid(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L, int n_max,
                                 double tol = kCheckTolerance);
// q and q_ inside the multiplicative-weights bracket.
PropertyReport check_oracle_mw(const DiscreteSpace& space, const SubsetRef& H, const SubsetRef& L,
                               double tol = kCheckTolerance);

struct SuiteConfig {
  std::uint64_t seed = 1;
  int instances = 12;  // per family
  int min_size = 2;
  int max_size = 8;
  std::vector<KernelFamily> families{KernelFamily::metric_random, KernelFamily::psd_random, KernelFamily::discrete,
                                     KernelFamily::grid, KernelFamily::infinite_diagonal};
  std::vector<SubsetPolicy> policies{SubsetPolicy::nested, SubsetPolicy::random, SubsetPolicy::full};
  std::vector<std::string> properties;  // empty: all
  int n_max = 4;
  int exhaustive_n = 3;
  int oracle_max_size = 4;
  int threads = 0;  // 0: hardware concurrency, capped by RENDEZKIT_THREADS
  bool inject_fault = false;
};

/// Throws ArgumentError on unknown keys or bad values.
SuiteConfig parse_suite_config(std::string_view json_text);

const std::vector<std::string>& all_property_ids();

struct SuiteResult {
  std::vector<PropertyReport> reports;  // one per property, sorted by id
  int instances = 0;
  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
};

/// Runs every selected property on every scheduled instance. JSON lines go to
/// `lines` (if given) ordered by property id, then schedule position.
SuiteResult run_suite(const SuiteConfig& config, std::ostream* lines = nullptr);

/// Worker count: `requested` (or the hardware) capped by RENDEZKIT_THREADS.
int effective_threads(int requested);

std::string instance_to_json(const Instance& inst, const InstanceSpec& spec);

}  // namespace rendezkit

#endif  // RENDEZKIT_VERIFY_HPP
