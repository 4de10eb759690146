#pragma once

#include <span>
#include <string>
#include <vector>

#include "mloop/loop.hpp"

namespace mloop {

/// A closed, inverse-closed subset of a parent loop, kept as sorted indices
/// plus a membership mask.
class Subloop {
 public:
  /// Throws NotASubloop unless `elements` is closed under the parent's
  /// multiplication (for finite loops this implies division closure).
  static Subloop from_elements(const CayleyLoop& parent, std::vector<Index> elements);
  static Subloop whole(const CayleyLoop& parent);
  static Subloop trivial(const CayleyLoop& parent);

  const CayleyLoop& parent() const noexcept { return parent_; }
  std::span<const Index> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(Index x) const noexcept { return x < mask_.size() && mask_[x]; }
  const std::vector<char>& mask() const noexcept { return mask_; }

  bool is_trivial() const noexcept { return elements_.size() == 1; }
  bool is_whole() const noexcept { return elements_.size() == parent_.order(); }
  bool is_subset_of(const Subloop& other) const noexcept;

  /// "0,27,54"
  std::string to_string() const;

  friend bool operator==(const Subloop& a, const Subloop& b) {
    return a.parent_.same_as(b.parent_) && a.elements_ == b.elements_;
  }
  /// Orders by (size, lexicographic elements).
  friend bool operator<(const Subloop& a, const Subloop& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements_ < b.elements_;
  }

 private:
  Subloop(CayleyLoop parent, std::vector<Index> sorted, std::vector<char> mask)
      : parent_(std::move(parent)), elements_(std::move(sorted)), mask_(std::move(mask)) {}

  CayleyLoop parent_;
  std::vector<Index> elements_;
  std::vector<char> mask_;

  friend Subloop make_subloop_unchecked(const CayleyLoop&, std::vector<char>);
};

/// Builds a Subloop from a membership mask already known to be closed.
Subloop make_subloop_unchecked(const CayleyLoop& parent, std::vector<char> mask);

bool is_closed(const CayleyLoop& loop, std::span<const Index> elements);

}  // namespace mloop
