#include <string>

#include "mloop/error.hpp"
#include "mloop/loop.hpp"

namespace mloop {

namespace {

void check_order(std::size_t order, const Limits& limits) {
  if (order > limits.max_order) {
    throw Error(ErrorKind::OrderOverflow, "max-order guard: order " + std::to_string(order) +
                                              " exceeds " + std::to_string(limits.max_order));
  }
}

}  // namespace

CayleyLoop direct_product(const CayleyLoop& a, const CayleyLoop& b, const Limits& limits) {
  const std::size_t n1 = a.order();
  const std::size_t n2 = b.order();
  check_order(n1 * n2, limits);
  const std::size_t n = n1 * n2;
  std::vector<Index> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto x1 = static_cast<Index>(x / n2), x2 = static_cast<Index>(x % n2);
    for (std::size_t y = 0; y < n; ++y) {
      const auto y1 = static_cast<Index>(y / n2), y2 = static_cast<Index>(y % n2);
      table[x * n + y] = static_cast<Index>(a.mul(x1, y1) * n2 + b.mul(x2, y2));
    }
  }
  std::string name = a.name() + " x " + b.name();
  return CayleyLoop::from_table(n, std::move(table), std::move(name), limits);
}

CayleyLoop gen_abelian(std::span<const int> moduli, const Limits& limits) {
  std::size_t n = 1;
  std::string name = "abelian:";
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 2) {
      throw Error(ErrorKind::BadGeneratorSpec, "abelian moduli must be >= 2, got " +
                                                   std::to_string(moduli[i]));
    }
    n *= static_cast<std::size_t>(moduli[i]);
    check_order(n, limits);
    name += (i ? "," : "") + std::to_string(moduli[i]);
  }
  const std::size_t k = moduli.size();
  // Mixed radix, first modulus most significant.
  auto digits = [&](std::size_t v) {
    std::vector<int> d(k);
    for (std::size_t i = k; i-- > 0;) {
      d[i] = static_cast<int>(v % static_cast<std::size_t>(moduli[i]));
      v /= static_cast<std::size_t>(moduli[i]);
    }
    return d;
  };
  std::vector<std::vector<int>> coords(n);
  for (std::size_t v = 0; v < n; ++v) coords[v] = digits(v);
  std::vector<Index> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t v = 0;
      for (std::size_t i = 0; i < k; ++i)
        v = v * static_cast<std::size_t>(moduli[i]) +
            static_cast<std::size_t>((coords[x][i] + coords[y][i]) % moduli[i]);
      table[x * n + y] = static_cast<Index>(v);
    }
  return CayleyLoop::from_table(n, std::move(table), k == 0 ? "trivial" : name, limits);
}

CayleyLoop trivial_loop() { return CayleyLoop::from_table(1, {0}, "trivial"); }

CayleyLoop gen_zassenhaus81() {
  constexpr std::size_t n = 81;
  auto mod3 = [](int v) { return ((v % 3) + 3) % 3; };
  std::vector<Index> table(n * n);
  for (int x = 0; x < 81; ++x) {
    const int x1 = x / 27, x2 = x / 9 % 3, x3 = x / 3 % 3, x4 = x % 3;
    for (int y = 0; y < 81; ++y) {
      const int y1 = y / 27, y2 = y / 9 % 3, y3 = y / 3 % 3, y4 = y % 3;
      table[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] = zassenhaus_index(
          mod3(x1 + y1), mod3(x2 + y2), mod3(x3 + y3),
          mod3(x4 + y4 + (x3 - y3) * (x1 * y2 - x2 * y1)));
    }
  }
  return CayleyLoop::from_table(n, std::move(table), "zassenhaus81");
}

}  // namespace mloop
