#pragma once

#include <cstddef>

namespace mloop {

// Size guards. All exhaustive algorithms check the relevant one before
// starting and raise OrderOverflow naming it.
struct Limits {
  std::size_t max_order = 1024;        // loop order (constructors, products)
  std::size_t lattice_order = 128;     // loops whose full subloop lattice is enumerated
  std::size_t group_elements = 1000000;  // permutation-group element enumeration
  std::size_t frattini_oracle = 512;   // exhaustive maximal-subgroup oracle
};

inline const Limits kDefaultLimits{};

}  // namespace mloop
