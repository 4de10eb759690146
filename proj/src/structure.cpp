#include "mloop/structure.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "mloop/error.hpp"

namespace mloop {

// ---------------------------------------------------------------- Subloop

bool is_closed(const CayleyLoop& loop, std::span<const Index> elements) {
  std::vector<char> mask(loop.order(), 0);
  for (Index x : elements) {
    if (x >= loop.order()) return false;
    mask[x] = 1;
  }
  if (elements.empty()) return false;
  for (Index a : elements)
    for (Index b : elements)
      if (!mask[loop.mul(a, b)]) return false;
  return true;
}

Subloop make_subloop_unchecked(const CayleyLoop& parent, std::vector<char> mask) {
  std::vector<Index> elements;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) elements.push_back(static_cast<Index>(i));
  return Subloop(parent, std::move(elements), std::move(mask));
}

Subloop Subloop::from_elements(const CayleyLoop& parent, std::vector<Index> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!is_closed(parent, elements)) {
    throw Error(ErrorKind::NotASubloop, "element set is not closed under multiplication");
  }
  std::vector<char> mask(parent.order(), 0);
  for (Index x : elements) mask[x] = 1;
  return Subloop(parent, std::move(elements), std::move(mask));
}

Subloop Subloop::whole(const CayleyLoop& parent) {
  return make_subloop_unchecked(parent, std::vector<char>(parent.order(), 1));
}

Subloop Subloop::trivial(const CayleyLoop& parent) {
  std::vector<char> mask(parent.order(), 0);
  mask[0] = 1;
  return make_subloop_unchecked(parent, std::move(mask));
}

bool Subloop::is_subset_of(const Subloop& other) const noexcept {
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](Index x) { return other.contains(x); });
}

std::string Subloop::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < elements_.size(); ++i) os << (i ? "," : "") << elements_[i];
  return os.str();
}

// ------------------------------------------------------------- generation

namespace {

// Closes `list`/`mask` under multiplication, assuming list[0, closed_prefix)
// is already closed.
void close_from(const CayleyLoop& loop, std::vector<Index>& list, std::vector<char>& mask,
                std::size_t closed_prefix) {
  for (std::size_t i = closed_prefix; i < list.size(); ++i) {
    const Index a = list[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const Index b = list[j];
      const Index ab = loop.mul(a, b);
      if (!mask[ab]) {
        mask[ab] = 1;
        list.push_back(ab);
      }
      const Index ba = loop.mul(b, a);
      if (!mask[ba]) {
        mask[ba] = 1;
        list.push_back(ba);
      }
    }
  }
}

}  // namespace

Subloop generate_subloop(const CayleyLoop& loop, std::span<const Index> generators) {
  std::vector<char> mask(loop.order(), 0);
  std::vector<Index> list{0};
  mask[0] = 1;
  for (Index g : generators) {
    if (g >= loop.order()) {
      throw Error(ErrorKind::BadDimension, "element index " + std::to_string(g) +
                                               " out of range for order " +
                                               std::to_string(loop.order()));
    }
    if (!mask[g]) {
      mask[g] = 1;
      list.push_back(g);
    }
  }
  close_from(loop, list, mask, 1);
  return make_subloop_unchecked(loop, std::move(mask));
}

Subloop extend_subloop(const Subloop& base, Index x) {
  if (base.contains(x)) return base;
  std::vector<Index> list(base.elements().begin(), base.elements().end());
  std::vector<char> mask = base.mask();
  const std::size_t prefix = list.size();
  mask[x] = 1;
  list.push_back(x);
  close_from(base.parent(), list, mask, prefix);
  return make_subloop_unchecked(base.parent(), std::move(mask));
}

Subloop intersect(const Subloop& a, const Subloop& b) {
  if (!a.parent().same_as(b.parent())) throw Error(ErrorKind::CrossLoop, "intersect");
  std::vector<char> mask(a.parent().order(), 0);
  for (Index x : a.elements()) mask[x] = b.contains(x) ? 1 : 0;
  return make_subloop_unchecked(a.parent(), std::move(mask));
}

// ---------------------------------------------------------------- normality

std::optional<std::array<Index, 3>> normality_witness(const Subloop& h, const Subloop& k) {
  if (!h.parent().same_as(k.parent())) throw Error(ErrorKind::CrossLoop, "normality");
  if (!h.is_subset_of(k)) throw Error(ErrorKind::NotNested, "H is not contained in K");
  const CayleyLoop& loop = h.parent();
  for (Index a : h.elements())
    for (Index y : k.elements())
      for (Index x : k.elements())
        if (!h.contains(loop.associator(a, y, x))) return std::array<Index, 3>{a, y, x};
  return std::nullopt;
}

bool is_normal(const Subloop& h, const Subloop& k) { return !normality_witness(h, k); }

bool is_normal_by_inner_maps(const Subloop& h, const Subloop& k) {
  if (!h.is_subset_of(k)) throw Error(ErrorKind::NotNested, "H is not contained in K");
  const CayleyLoop& loop = h.parent();
  for (Index x : k.elements())
    for (Index y : k.elements()) {
      // L(x,y) = L(xy)^-1 L(x) L(y)
      const Index xy = loop.mul(x, y);
      for (Index a : h.elements())
        if (!h.contains(loop.left_div(xy, loop.mul(x, loop.mul(y, a))))) return false;
    }
  return true;
}

// ----------------------------------------------------------------- quotient

Quotient quotient(const CayleyLoop& loop, const Subloop& h, const Limits& limits) {
  if (auto w = normality_witness(h, Subloop::whole(loop))) {
    std::ostringstream os;
    os << "associator (" << (*w)[0] << "," << (*w)[1] << "," << (*w)[2] << ") leaves H";
    throw Error(ErrorKind::NotNormal, os.str());
  }
  const std::size_t n = loop.order();
  constexpr Index kUnset = ~Index{0};
  std::vector<Index> projection(n, kUnset);
  std::vector<Index> reps;
  for (Index x = 0; x < n; ++x) {
    if (projection[x] != kUnset) continue;
    const auto c = static_cast<Index>(reps.size());
    reps.push_back(x);
    for (Index a : h.elements()) projection[loop.mul(x, a)] = c;
  }
  const std::size_t m = reps.size();
  std::vector<Index> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = projection[loop.mul(reps[i], reps[j])];
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (projection[loop.mul(x, y)] != table[projection[x] * m + projection[y]])
        throw Error(ErrorKind::NotNormal, "coset product is not well defined");
  std::string name = loop.name() + "/" + std::to_string(h.size());
  return Quotient{CayleyLoop::from_table(m, std::move(table), std::move(name), limits),
                  std::move(projection), std::move(reps)};
}

// ------------------------------------------------------------------ lattice

namespace {

struct MaskHash {
  std::size_t operator()(const std::vector<char>& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (char c : m) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

std::vector<Subloop> all_subloops(const CayleyLoop& loop, const Limits& limits) {
  const std::size_t n = loop.order();
  if (n > limits.lattice_order) {
    throw Error(ErrorKind::OrderOverflow, "lattice guard: order " + std::to_string(n) +
                                              " exceeds " + std::to_string(limits.lattice_order));
  }
  // Every subloop is reached from {1} by adjoining one element at a time,
  // so closing the found set under S -> <S, x> is complete.
  std::vector<Subloop> found{Subloop::trivial(loop)};
  std::unordered_set<std::vector<char>, MaskHash> seen{found.front().mask()};
  std::vector<char> skip(n);
  for (std::size_t q = 0; q < found.size(); ++q) {
    const Subloop s = found[q];
    std::fill(skip.begin(), skip.end(), 0);
    for (Index x = 0; x < n; ++x) {
      if (s.contains(x) || skip[x]) continue;
      // Generators of the same cyclic subloop give the same extension.
      const std::size_t ord = loop.element_order(x);
      for (std::size_t k = 1; k < ord; ++k)
        if (std::gcd(k, ord) == 1) skip[loop.pow(x, static_cast<long long>(k))] = 1;
      Subloop t = extend_subloop(s, x);
      if (seen.insert(t.mask()).second) found.push_back(std::move(t));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

// ------------------------------------------------------------- invariants

Subloop center(const CayleyLoop& loop) {
  const auto n = static_cast<Index>(loop.order());
  std::vector<char> mask(n, 0);
  for (Index x = 0; x < n; ++x) {
    bool central = true;
    for (Index a = 0; a < n && central; ++a) {
      if (loop.mul(x, a) != loop.mul(a, x)) central = false;
      for (Index b = 0; b < n && central; ++b)
        if (loop.associator(x, a, b) != 0 || loop.associator(a, x, b) != 0 ||
            loop.associator(a, b, x) != 0)
          central = false;
    }
    mask[x] = central ? 1 : 0;
  }
  return make_subloop_unchecked(loop, std::move(mask));
}

namespace {

void require_cml(const CayleyLoop& loop, const char* op) {
  if (!loop.is_cml()) throw Error(ErrorKind::NotCML, std::string(op) + " needs a CML");
}

}  // namespace

Subloop associator_subloop(const CayleyLoop& loop) {
  require_cml(loop, "associator_subloop");
  const auto n = static_cast<Index>(loop.order());
  std::vector<char> hit(n, 0);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c) hit[loop.associator(a, b, c)] = 1;
  std::vector<Index> gens;
  for (Index x = 0; x < n; ++x)
    if (hit[x]) gens.push_back(x);
  Subloop result = generate_subloop(loop, gens);
  if (!is_normal(result)) throw Error(ErrorKind::NotNormal, "associator subloop");
  return result;
}

Subloop cube_subloop(const CayleyLoop& loop) {
  require_cml(loop, "cube_subloop");
  const auto n = static_cast<Index>(loop.order());
  std::vector<Index> cubes;
  for (Index x = 0; x < n; ++x) cubes.push_back(loop.pow(x, 3));
  std::sort(cubes.begin(), cubes.end());
  cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
  if (!is_closed(loop, cubes)) throw Error(ErrorKind::NotASubloop, "cubes are not closed");
  for (Index c : cubes)
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        if (loop.associator(c, a, b) != 0)
          throw Error(ErrorKind::NotASubloop, "cube " + std::to_string(c) + " is not central");
  return Subloop::from_elements(loop, std::move(cubes));
}

CentralSeries upper_central_series(const CayleyLoop& loop) {
  require_cml(loop, "upper_central_series");
  CentralSeries series;
  series.terms.push_back(Subloop::trivial(loop));
  while (true) {
    const Subloop& z = series.terms.back();
    if (z.is_whole()) {
      series.nilpotency_class = static_cast<int>(series.terms.size() - 1);
      break;
    }
    const Quotient q = quotient(loop, z);
    const Subloop zq = center(q.loop);
    std::vector<char> mask(loop.order(), 0);
    for (std::size_t x = 0; x < loop.order(); ++x) mask[x] = zq.contains(q.projection[x]);
    Subloop next = make_subloop_unchecked(loop, std::move(mask));
    if (next == z) break;
    series.terms.push_back(std::move(next));
  }
  return series;
}

// ------------------------------------------------------ maximal / Frattini

std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> ps;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::vector<Subloop> maximal_subloops(const CayleyLoop& loop) {
  if (loop.order() == 1) throw Error(ErrorKind::TrivialLoop, "trivial loop has no maximal subloop");
  const Subloop derived = associator_subloop(loop);
  const Quotient a = quotient(loop, derived);  // abelian group
  const auto an = static_cast<Index>(a.loop.order());

  std::vector<Subloop> result;
  for (std::size_t p : prime_factors(an)) {
    // Maximal subgroups of index p contain A^p; they are the hyperplanes of
    // the GF(p)-space V = A / A^p.
    std::vector<Index> powers;
    for (Index x = 0; x < an; ++x) powers.push_back(a.loop.pow(x, static_cast<long long>(p)));
    const Subloop ap = generate_subloop(a.loop, powers);
    const Quotient v = quotient(a.loop, ap);
    const auto vn = static_cast<Index>(v.loop.order());

    std::vector<Index> basis;
    Subloop span = Subloop::trivial(v.loop);
    for (Index x = 0; x < vn; ++x)
      if (!span.contains(x)) {
        basis.push_back(x);
        span = extend_subloop(span, x);
      }
    const std::size_t d = basis.size();

    // coords[v] over the basis; elementary abelian so any product order works.
    std::vector<std::vector<std::size_t>> coords(vn, std::vector<std::size_t>(d));
    std::vector<std::size_t> c(d, 0);
    while (true) {
      Index e = 0;
      for (std::size_t i = 0; i < d; ++i)
        e = v.loop.mul(e, v.loop.pow(basis[i], static_cast<long long>(c[i])));
      coords[e] = c;
      std::size_t i = 0;
      while (i < d && ++c[i] == p) c[i++] = 0;
      if (i == d) break;
    }

    // Functionals up to scalars: last nonzero coefficient equal to 1.
    std::vector<std::size_t> f(d, 0);
    while (true) {
      std::size_t i = 0;
      while (i < d && ++f[i] == p) f[i++] = 0;
      if (i == d) break;
      const auto lead = std::find_if(f.rbegin(), f.rend(), [](std::size_t t) { return t != 0; });
      if (*lead != 1) continue;
      std::vector<char> mask(loop.order(), 0);
      for (std::size_t x = 0; x < loop.order(); ++x) {
        const auto& cx = coords[v.projection[a.projection[x]]];
        std::size_t s = 0;
        for (std::size_t k = 0; k < d; ++k) s += f[k] * cx[k];
        mask[x] = (s % p == 0) ? 1 : 0;
      }
      result.push_back(make_subloop_unchecked(loop, std::move(mask)));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<Subloop> maximal_elements(const std::vector<Subloop>& lattice) {
  std::vector<Subloop> result;
  for (const Subloop& s : lattice) {
    if (s.is_whole()) continue;
    const bool maximal = std::none_of(lattice.begin(), lattice.end(), [&](const Subloop& t) {
      return !t.is_whole() && t.size() > s.size() && s.is_subset_of(t);
    });
    if (maximal) result.push_back(s);
  }
  std::sort(result.begin(), result.end());
  return result;
}

Subloop frattini_subloop(const CayleyLoop& loop) {
  const auto maximal = maximal_subloops(loop);
  Subloop result = Subloop::whole(loop);
  for (const Subloop& m : maximal) result = intersect(result, m);
  return result;
}

std::vector<Index> sampled_non_generators(const CayleyLoop& loop, std::size_t trials,
                                          std::uint64_t seed) {
  const auto n = static_cast<Index>(loop.order());
  std::vector<char> generator(n, 0);
  std::mt19937_64 rng(seed);
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  for (std::size_t t = 0; t < trials && n > 1; ++t) {
    for (Index i = n - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
    // Greedy: adjoin elements while the span stays proper, so S ends up
    // generating a maximal subloop.
    Subloop span = Subloop::trivial(loop);
    for (Index y : order) {
      if (span.contains(y)) continue;
      Subloop next = extend_subloop(span, y);
      if (!next.is_whole()) span = std::move(next);
    }
    for (Index x = 0; x < n; ++x)
      if (!generator[x] && extend_subloop(span, x).is_whole()) generator[x] = 1;
  }
  std::vector<Index> result;
  for (Index x = 0; x < n; ++x)
    if (!generator[x]) result.push_back(x);
  return result;
}

// ------------------------------------------------------------ divisibility

std::size_t loop_exponent(const CayleyLoop& loop) {
  std::size_t e = 1;
  for (Index x = 0; x < loop.order(); ++x) e = std::lcm(e, loop.element_order(x));
  return e;
}

bool is_divisible(const CayleyLoop& loop) {
  const auto n = static_cast<Index>(loop.order());
  for (std::size_t p : prime_factors(loop_exponent(loop))) {
    std::vector<char> hit(n, 0);
    for (Index x = 0; x < n; ++x) hit[loop.pow(x, static_cast<long long>(p))] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
  }
  return true;
}

}  // namespace mloop
