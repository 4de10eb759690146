#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mloop/limits.hpp"
#include "mloop/loop.hpp"
#include "mloop/perm_group.hpp"
#include "mloop/subloop.hpp"

namespace mloop {

/// Stages of the P/D construction for N_K(H). Stage sets are sorted index
/// lists; p_stages descend and d_stages ascend.
struct NormalizerTrace {
  std::vector<std::vector<Index>> p_stages;
  std::vector<std::vector<Index>> d_stages;
  Subloop result;  // <final D>; equal to final D when d_closed
  int iterations = 0;

  // Audit flags. A healthy trace has all of them true and no violations.
  bool p_equals_d = false;
  bool d_closed = false;
  bool monotone = false;
  bool h_normal_in_result = false;
  /// x ∈ K \ result with H normal in <H ∪ {x}>. Filled only when audited.
  std::vector<Index> maximality_violations;

  bool healthy() const noexcept {
    return p_equals_d && d_closed && monotone && h_normal_in_result &&
           maximality_violations.empty();
  }
};

/// N_K(H) by the P/D fixpoint. Associator arguments are used exactly in the
/// orders (H,H,x), (H,x,P), (H,D,x). Throws NotNested, CrossLoop, NotCML, and
/// ChainStalled past |K| + 2 iterations. `audit` adds the maximality scan.
NormalizerTrace normalizer(const CayleyLoop& loop, const Subloop& k, const Subloop& h,
                           bool audit = true);

struct OracleRuns {
  std::vector<Subloop> runs;  // one greedy saturation per addition order
  bool unanimous = true;
};

/// Greedy saturation S = H, adding any x with H normal in <S ∪ {x}>, over
/// `runs` seeded addition orders.
OracleRuns normalizer_oracle(const CayleyLoop& loop, const Subloop& k, const Subloop& h,
                             std::uint64_t seed = 0, std::size_t runs = 5);

struct NormalizerCondition {
  bool holds = true;
  std::optional<Subloop> witness;            // least self-normalizing proper H
  std::vector<Subloop> subloops;             // proper subloops, lattice order
  std::vector<std::size_t> normalizer_sizes; // aligned with subloops
};

/// Exhaustive over the subloop lattice; throws OrderOverflow past the guard.
NormalizerCondition normalizer_condition(const CayleyLoop& loop,
                                         const Limits& limits = kDefaultLimits);

/// H, N(H), N(N(H)), ... up to L. Throws ChainStalled if a term repeats
/// before reaching L.
std::vector<Subloop> normalizer_chain(const CayleyLoop& loop, const Subloop& h);

struct SubnormalSystem {
  std::vector<Subloop> terms;  // 1 = H_0 ⊂ H_1 ⊂ ... ⊂ L
};

/// Trivial subloop followed by the normalizer chain of H, each term checked
/// normal in the next (NotNormal otherwise).
SubnormalSystem ascending_subnormal_system(const CayleyLoop& loop, const Subloop& h);

/// H, N_G(H), N_G(N_G(H)), ... up to G. Throws ChainStalled.
std::vector<PermGroup> subgroup_normalizer_chain(const PermGroup& g, const PermGroup& h,
                                                 const Limits& limits = kDefaultLimits);

}  // namespace mloop
