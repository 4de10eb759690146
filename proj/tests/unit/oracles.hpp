#pragma once

// Brute-force reference computations that share no code with the library
// beyond the Cayley table and the Permutation value type.

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "mloop/loop.hpp"
#include "mloop/perm_group.hpp"

namespace oracle {

using mloop::Index;
using Tuple = std::array<int, 4>;

inline int mod3(int v) { return ((v % 3) + 3) % 3; }

inline Tuple tuple_of(Index i) {
  return {static_cast<int>(i / 27), static_cast<int>(i / 9 % 3), static_cast<int>(i / 3 % 3),
          static_cast<int>(i % 3)};
}

inline Index index_of(const Tuple& t) {
  return static_cast<Index>(((t[0] * 3 + t[1]) * 3 + t[2]) * 3 + t[3]);
}

// (x1+y1, x2+y2, x3+y3, x4+y4+(x3-y3)(x1y2-x2y1)) over Z3
inline Tuple zmul(const Tuple& x, const Tuple& y) {
  return {mod3(x[0] + y[0]), mod3(x[1] + y[1]), mod3(x[2] + y[2]),
          mod3(x[3] + y[3] + (x[2] - y[2]) * (x[0] * y[1] - x[1] * y[0]))};
}

// k with (ab)c = (a(bc))k, found by search over all 81 tuples.
inline Index zassociator(Index a, Index b, Index c) {
  const Tuple ta = tuple_of(a), tb = tuple_of(b), tc = tuple_of(c);
  const Tuple lhs = zmul(zmul(ta, tb), tc);
  const Tuple base = zmul(ta, zmul(tb, tc));
  for (Index k = 0; k < 81; ++k)
    if (zmul(base, tuple_of(k)) == lhs) return k;
  return 81;
}

// Group order by breadth-first closure over products with generators.
inline std::set<mloop::Permutation> closure(std::size_t degree,
                                            const std::vector<mloop::Permutation>& gens) {
  std::set<mloop::Permutation> seen{mloop::Permutation::identity(degree)};
  std::vector<mloop::Permutation> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<mloop::Permutation> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        auto p = s * g;
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return seen;
}

// Every subset containing 0 that is closed under the table, by bitmask.
inline std::vector<std::vector<Index>> subloops_by_subsets(const mloop::CayleyLoop& loop) {
  const std::size_t n = loop.order();
  std::vector<std::vector<Index>> out;
  for (std::uint32_t bits = 0; bits < (1u << (n - 1)); ++bits) {
    std::vector<Index> s{0};
    for (std::size_t i = 1; i < n; ++i)
      if (bits >> (i - 1) & 1u) s.push_back(static_cast<Index>(i));
    std::vector<char> in(n, 0);
    for (Index x : s) in[x] = 1;
    bool closed = true;
    for (Index a : s)
      for (Index b : s) closed = closed && in[loop.mul(a, b)];
    if (closed) out.push_back(std::move(s));
  }
  return out;
}

// Normality by cosets: x(yH) = (xy)H and (xH)y = (xy)H as sets.
inline bool normal_by_cosets(const mloop::CayleyLoop& loop, const std::vector<Index>& h) {
  const std::size_t n = loop.order();
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      std::set<Index> a, b, c;
      for (Index e : h) {
        a.insert(loop.mul(x, loop.mul(y, e)));
        b.insert(loop.mul(loop.mul(x, y), e));
        c.insert(loop.mul(loop.mul(x, e), y));
      }
      if (a != b || b != c) return false;
    }
  return true;
}

// Cayley table of the symmetric group on 3 points, identity first.
inline mloop::CayleyLoop s3_loop() {
  std::vector<std::array<Index, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                          {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<Index> table(36);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j) {
      std::array<Index, 3> c{};
      for (Index p = 0; p < 3; ++p) c[p] = perms[i][perms[j][p]];
      for (Index k = 0; k < 6; ++k)
        if (perms[k] == c) table[i * 6 + j] = k;
    }
  return mloop::CayleyLoop::from_table(6, std::move(table), "S3");
}

}  // namespace oracle
