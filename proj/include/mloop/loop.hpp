#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mloop/limits.hpp"

namespace mloop {

using Index = std::uint32_t;

namespace detail {
struct LoopData;
}

class LoopElement;

/// A finite loop given by its Cayley table over 0-based element indices.
///
/// Element 0 is the two-sided identity. Instances are immutable and cheap to
/// copy: copies share one table, and two CayleyLoop values denote the same
/// loop (for CrossLoop purposes) only if they share it.
class CayleyLoop {
 public:
  /// Validates the Latin-square and identity laws; throws NotLatinSquare,
  /// NoIdentity, BadDimension or OrderOverflow.
  static CayleyLoop from_table(std::size_t order, std::vector<Index> table,
                               std::string name = {},
                               const Limits& limits = kDefaultLimits);

  std::size_t order() const noexcept;
  const std::string& name() const noexcept;
  std::span<const Index> table() const noexcept;
  std::span<const Index> row(Index a) const noexcept;

  Index mul(Index a, Index b) const noexcept;
  Index inv(Index a) const noexcept;
  /// The unique x with a·x = b.
  Index left_div(Index a, Index b) const noexcept;
  /// k with (a·b)·c = (a·(b·c))·k.
  Index associator(Index a, Index b, Index c) const noexcept;
  /// k-fold product inside the cyclic subloop <a>; negative k uses inv(a).
  Index pow(Index a, long long k) const noexcept;
  /// Order of a as an element of the cyclic subloop <a>.
  std::size_t element_order(Index a) const noexcept;

  /// Cached result of the exhaustive CML identity scan.
  bool is_cml() const;
  bool is_commutative() const;

  LoopElement element(Index i) const;
  CayleyLoop renamed(std::string name) const;

  bool same_as(const CayleyLoop& other) const noexcept { return data_ == other.data_; }
  friend bool operator==(const CayleyLoop& a, const CayleyLoop& b);

 private:
  explicit CayleyLoop(std::shared_ptr<const detail::LoopData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::LoopData> data_;

  friend class LoopElement;
};

/// An element index bound to its parent loop.
class LoopElement {
 public:
  LoopElement(const CayleyLoop& loop, Index index);

  Index index() const noexcept { return index_; }
  const CayleyLoop& loop() const noexcept { return loop_; }

  friend bool operator==(const LoopElement& a, const LoopElement& b) {
    return a.loop_.same_as(b.loop_) && a.index_ == b.index_;
  }

 private:
  CayleyLoop loop_;
  Index index_;
};

LoopElement mul(const LoopElement& a, const LoopElement& b);
LoopElement inv(const LoopElement& a);
LoopElement pow(const LoopElement& a, long long k);
LoopElement associator(const LoopElement& a, const LoopElement& b, const LoopElement& c);

struct Violation {
  std::string law;
  std::array<Index, 3> triple{};
};

struct LoopDiagnostics {
  bool is_latin = false;
  bool has_identity = false;
  bool is_commutative = false;
  bool is_cml = false;
  bool is_associative = false;
  std::optional<Violation> first_violation;
};

/// Runs every law over the raw table, which need not be a valid loop.
/// first_violation reports the first failed law in the order latin,
/// identity, commutative, cml, associative, at its lexicographically least
/// witness.
LoopDiagnostics diagnose_table(std::size_t order, std::span<const Index> table);
LoopDiagnostics diagnose(const CayleyLoop& loop);

/// Loop file: '#' comment lines, then n, then n rows of n indices.
CayleyLoop parse_loop(std::string_view text, const Limits& limits = kDefaultLimits);
std::string serialize_loop(const CayleyLoop& loop);

CayleyLoop direct_product(const CayleyLoop& a, const CayleyLoop& b,
                          const Limits& limits = kDefaultLimits);
CayleyLoop gen_abelian(std::span<const int> moduli, const Limits& limits = kDefaultLimits);
CayleyLoop gen_zassenhaus81();
CayleyLoop trivial_loop();

/// Base-3 index of a 4-tuple over Z3, first coordinate most significant.
constexpr Index zassenhaus_index(int t1, int t2, int t3, int t4) {
  return static_cast<Index>(((t1 * 3 + t2) * 3 + t3) * 3 + t4);
}

}  // namespace mloop
