#pragma once

#include <vector>

#include "mloop/limits.hpp"
#include "mloop/loop.hpp"
#include "mloop/perm_group.hpp"
#include "mloop/subloop.hpp"
#include "mloop/verdict.hpp"

namespace mloop {

/// L(x): y -> x·y
Permutation translation(const CayleyLoop& loop, Index x);
/// L(x, y) = L(xy)^-1 L(x) L(y)
Permutation inner_mapping(const CayleyLoop& loop, Index x, Index y);

/// Multiplication group M(L) and inner mapping group I(L) of a commutative
/// loop. R(x) = L(x) here, so only left translations generate M, and
/// T(x) = L(x)^-1 R(x) is the identity.
struct MultGroupBundle {
  CayleyLoop loop;
  PermGroup mult;                          // M
  PermGroup inner;                         // I, the stabilizer of 0 in M
  std::vector<Permutation> translations;   // translations[x] = L(x)
};

/// Throws NotCommutative for non-commutative loops and OrderOverflow when
/// the loop exceeds limits.max_order.
MultGroupBundle multiplication_group(const CayleyLoop& loop,
                                     const Limits& limits = kDefaultLimits);

/// H* = {α ∈ M : α(x)H = xH for all x}; throws NotNormal.
PermGroup h_star(const MultGroupBundle& bundle, const Subloop& h,
                 const Limits& limits = kDefaultLimits);

/// N·1 = {α(0) : α ∈ N}; verifies the orbit is a normal subloop and that
/// N ≤ (N·1)*. Throws NotSubgroup unless N ≤ M.
Subloop orbit_of_identity(const MultGroupBundle& bundle, const PermGroup& n,
                          const Limits& limits = kDefaultLimits);

/// M(L/H) ≅ M/H*: order identity plus the induced action on cosets, checked
/// elementwise (well defined, homomorphic, onto, kernel exactly H*).
CheckOutcome verify_lemma1(const MultGroupBundle& bundle, const Subloop& h,
                           const Limits& limits = kDefaultLimits);
/// Z(M) = {L(a) : a ∈ Z(L)} and a -> L(a) is an isomorphism.
CheckOutcome verify_prop1(const MultGroupBundle& bundle, const Limits& limits = kDefaultLimits);
/// M' = <I, M(L')> = (L')* = normal closure of I in M.
CheckOutcome verify_lemma7(const MultGroupBundle& bundle, const Limits& limits = kDefaultLimits);

}  // namespace mloop
