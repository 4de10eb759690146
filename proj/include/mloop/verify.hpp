#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mloop/limits.hpp"
#include "mloop/loop.hpp"
#include "mloop/verdict.hpp"

namespace mloop {

inline constexpr std::string_view kArtifactVersion = "1.0.0";

/// `abelian:a,b,...`, `zassenhaus81`, `trivial`, `product:<spec>x<spec>`
/// (split at the first 'x'). Throws BadGeneratorSpec.
CayleyLoop loop_from_spec(std::string_view spec, const Limits& limits = kDefaultLimits);

struct VerifyOptions {
  std::uint64_t seed = 0;
  Limits limits = kDefaultLimits;
  /// The four-variable identity runs over all n^4 quadruples up to this
  /// count and over eq4_samples seeded quadruples beyond it.
  std::uint64_t eq4_exhaustive_max = 50'000'000;
  std::uint64_t eq4_samples = 2'000'000;
  std::size_t containment_subloops = 32;
  std::size_t chain_cyclic_subgroups = 24;
  std::size_t nongenerator_trials = 200;
};

struct VerdictReport {
  std::string artifact_version{kArtifactVersion};
  std::string loop_name;
  std::size_t loop_order = 0;
  std::vector<CheckOutcome> checks;

  bool all_passed() const;
  nlohmann::ordered_json to_json() const;
};

/// Registered suites in registration order, "all" last.
const std::vector<std::string>& suite_names();
/// Check names of a suite in registration order; empty for unknown suites.
std::vector<std::string> suite_checks(std::string_view suite);

/// Runs every check of `suite` on a CML. Throws NotCML, OrderOverflow from
/// guards, and std::invalid_argument for unknown suites.
VerdictReport run_suite(const CayleyLoop& loop, std::string_view suite,
                        const VerifyOptions& options = {});

}  // namespace mloop
