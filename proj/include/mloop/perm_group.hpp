#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mloop/limits.hpp"
#include "mloop/loop.hpp"

namespace mloop {

/// A bijection on {0..n-1} stored as its image array.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Index> images);  // throws unless bijective
  static Permutation identity(std::size_t degree);
  /// Cycle notation helper: cycles({{0,1,2}}, 5) is (0 1 2) on 5 points.
  static Permutation cycles(const std::vector<std::vector<Index>>& cs, std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  Index operator()(Index point) const noexcept { return images_[point]; }
  std::span<const Index> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  std::size_t order() const;
  /// Least point moved, or degree() for the identity.
  std::size_t least_moved_point() const noexcept;

  /// Composition as maps: (a * b)(x) = a(b(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  std::string to_string() const;  // "[1,2,0]"

 private:
  struct Unchecked {};
  Permutation(std::vector<Index> images, Unchecked) : images_(std::move(images)) {}
  std::vector<Index> images_;
};

Permutation pow(const Permutation& p, long long k);
Permutation commutator(const Permutation& a, const Permutation& b);  // a^-1 b^-1 a b

/// Permutation group with a deterministic Schreier-Sims stabilizer chain.
/// Immutable; copies share the chain.
class PermGroup {
 public:
  /// Empty generator list gives the trivial group. Throws DegreeMismatch.
  static PermGroup from_generators(std::size_t degree, std::vector<Permutation> generators);

  std::size_t degree() const noexcept;
  const std::vector<Permutation>& generators() const noexcept;
  std::uint64_t order() const noexcept;
  bool contains(const Permutation& p) const;  // throws DegreeMismatch
  bool is_trivial() const noexcept { return order() == 1; }

  /// Base points and orbit sizes of the chain, base first.
  std::vector<Index> base() const;
  std::vector<std::size_t> orbit_sizes() const;

  /// All elements as transversal products u_1 u_2 ... u_k in chain order.
  /// Throws OrderOverflow above limits.group_elements.
  std::vector<Permutation> elements(const Limits& limits = kDefaultLimits) const;

  bool is_subgroup_of(const PermGroup& other) const;
  friend bool same_group(const PermGroup& a, const PermGroup& b);

 private:
  struct Chain;
  explicit PermGroup(std::shared_ptr<const Chain> chain) : chain_(std::move(chain)) {}
  std::shared_ptr<const Chain> chain_;
};

PermGroup group_from_generators(std::size_t degree, std::vector<Permutation> generators);
std::vector<Permutation> enumerate_elements(const PermGroup& g,
                                            const Limits& limits = kDefaultLimits);

/// Subgroup generated by `candidates`; only elements not yet generated
/// become generators.
PermGroup generated_subgroup(std::size_t degree, std::span<const Permutation> candidates);

PermGroup center_of_group(const PermGroup& g, const Limits& limits = kDefaultLimits);
PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> s);
PermGroup derived_subgroup(const PermGroup& g);
/// Subgroup generated by the union of generator lists.
PermGroup join(const PermGroup& a, const PermGroup& b);

/// Z_0 = 1, Z_{i+1} = {g : [g, x] ∈ Z_i for all generators x}, until stable.
std::vector<PermGroup> upper_central_series(const PermGroup& g,
                                            const Limits& limits = kDefaultLimits);
/// Nilpotency class when the ascending centers reach G.
std::optional<int> nilpotency_class(const PermGroup& g, const Limits& limits = kDefaultLimits);

/// Φ(G) = <G', g^r : g ∈ G> with r the product of the primes dividing |G|;
/// throws NotNilpotent.
PermGroup frattini_subgroup(const PermGroup& g, const Limits& limits = kDefaultLimits);
/// Intersection of maximal subgroups found by exhaustive subgroup search.
/// Throws OrderOverflow above limits.frattini_oracle.
PermGroup frattini_subgroup_oracle(const PermGroup& g, const Limits& limits = kDefaultLimits);

/// {g ∈ G : g^-1 H g = H}; throws NotSubgroup unless H ≤ G.
PermGroup normalizer_of_subgroup(const PermGroup& g, const PermGroup& h,
                                 const Limits& limits = kDefaultLimits);

/// Literal p-power surjectivity for each prime p dividing the exponent.
bool is_divisible_group(const PermGroup& g, const Limits& limits = kDefaultLimits);

}  // namespace mloop
