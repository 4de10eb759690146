#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mloop/limits.hpp"
#include "mloop/loop.hpp"
#include "mloop/subloop.hpp"

namespace mloop {

Subloop generate_subloop(const CayleyLoop& loop, std::span<const Index> generators);
/// <base ∪ {x}> for a subloop `base`.
Subloop extend_subloop(const Subloop& base, Index x);
Subloop intersect(const Subloop& a, const Subloop& b);

/// (h, y, x) with h ∈ H, x, y ∈ K and (h, y, x) ∉ H, least in (h, y, x)
/// lexicographic order. Throws NotNested unless H ⊆ K.
std::optional<std::array<Index, 3>> normality_witness(const Subloop& h, const Subloop& k);
bool is_normal(const Subloop& h, const Subloop& k);
inline bool is_normal(const Subloop& h) { return is_normal(h, Subloop::whole(h.parent())); }
/// Independent route: θ(H) = H for every inner mapping L(x, y), x, y ∈ K.
bool is_normal_by_inner_maps(const Subloop& h, const Subloop& k);

struct Quotient {
  CayleyLoop loop;
  std::vector<Index> projection;       // element -> coset index
  std::vector<Index> representatives;  // coset index -> least element
};

/// L/H with least-index coset representatives; throws NotNormal.
Quotient quotient(const CayleyLoop& loop, const Subloop& h,
                  const Limits& limits = kDefaultLimits);

/// Every subloop, sorted by (size, elements). Throws OrderOverflow above
/// limits.lattice_order.
std::vector<Subloop> all_subloops(const CayleyLoop& loop, const Limits& limits = kDefaultLimits);

/// Elements that commute and associate (in all three positions) with all.
Subloop center(const CayleyLoop& loop);
Subloop associator_subloop(const CayleyLoop& loop);
Subloop cube_subloop(const CayleyLoop& loop);

struct CentralSeries {
  std::vector<Subloop> terms;            // Z0 ⊂ Z1 ⊂ ... (stabilized)
  std::optional<int> nilpotency_class;   // empty: does not reach L
};

CentralSeries upper_central_series(const CayleyLoop& loop);

/// Maximal subloops as preimages of the maximal subgroups of L/L'.
std::vector<Subloop> maximal_subloops(const CayleyLoop& loop);
/// Maximal proper members of a complete subloop list.
std::vector<Subloop> maximal_elements(const std::vector<Subloop>& lattice);

Subloop frattini_subloop(const CayleyLoop& loop);

/// Sampled non-generator oracle: elements never observed to be needed to
/// generate L. Every trial picks a generating set S of a proper subloop and
/// marks x as a generator when <x, S> = L. A superset of the Frattini
/// subloop; equal to it once every maximal subloop has been hit.
std::vector<Index> sampled_non_generators(const CayleyLoop& loop, std::size_t trials,
                                          std::uint64_t seed);

/// For every prime p dividing the exponent, x -> x^p is onto.
bool is_divisible(const CayleyLoop& loop);
std::size_t loop_exponent(const CayleyLoop& loop);

std::vector<std::size_t> prime_factors(std::size_t n);

}  // namespace mloop
