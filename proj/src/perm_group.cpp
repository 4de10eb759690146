#include "mloop/perm_group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mloop/error.hpp"
#include "mloop/structure.hpp"

namespace mloop {

// ------------------------------------------------------------ Permutation

Permutation::Permutation(std::vector<Index> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (Index v : images_) {
    if (v >= images_.size() || seen[v]) {
      throw Error(ErrorKind::DegreeMismatch, "image array is not a bijection");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Index> im(degree);
  std::iota(im.begin(), im.end(), Index{0});
  return Permutation(std::move(im), Unchecked{});
}

Permutation Permutation::cycles(const std::vector<std::vector<Index>>& cs, std::size_t degree) {
  std::vector<Index> im(degree);
  std::iota(im.begin(), im.end(), Index{0});
  for (const auto& c : cs)
    for (std::size_t i = 0; i < c.size(); ++i) im[c[i]] = c[(i + 1) % c.size()];
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Index> im(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) im[images_[i]] = static_cast<Index>(i);
  return Permutation(std::move(im), Unchecked{});
}

std::size_t Permutation::order() const {
  std::size_t result = 1;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::size_t Permutation::least_moved_point() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return i;
  return images_.size();
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "compose");
  std::vector<Index> im(a.degree());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = a.images_[b.images_[i]];
  return Permutation(std::move(im), Permutation::Unchecked{});
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) os << (i ? "," : "") << images_[i];
  os << ']';
  return os.str();
}

Permutation pow(const Permutation& p, long long k) {
  Permutation base = k < 0 ? p.inverse() : p;
  if (k < 0) k = -k;
  Permutation r = Permutation::identity(p.degree());
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  return a.inverse() * b.inverse() * a * b;
}

// ------------------------------------------------------- stabilizer chain

struct PermGroup::Chain {
  struct Level {
    Index base = 0;
    std::vector<Permutation> gens;          // strong generators S^(l)
    std::vector<Index> orbit;               // discovery order, orbit[0] = base
    std::vector<int> where;                 // point -> orbit slot or -1
    std::vector<Permutation> transversal;   // u(base) = orbit[k]
    std::vector<Permutation> transversal_inv;
    std::vector<std::size_t> applied;       // gens already applied to orbit[k]
    std::vector<std::size_t> checked;       // Schreier pairs already sifted
  };

  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::vector<Level> levels;

  void push_level(Index base) {
    Level l;
    l.base = base;
    l.where.assign(degree, -1);
    l.orbit.push_back(base);
    l.where[base] = 0;
    l.transversal.push_back(Permutation::identity(degree));
    l.transversal_inv.push_back(Permutation::identity(degree));
    l.applied.push_back(0);
    l.checked.push_back(0);
    levels.push_back(std::move(l));
  }

  static void extend_orbit(Level& l) {
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      for (std::size_t s = l.applied[k]; s < l.gens.size(); ++s) {
        const Index img = l.gens[s](l.orbit[k]);
        if (l.where[img] >= 0) continue;
        l.where[img] = static_cast<int>(l.orbit.size());
        l.orbit.push_back(img);
        l.transversal.push_back(l.gens[s] * l.transversal[k]);
        l.transversal_inv.push_back(l.transversal.back().inverse());
        l.applied.push_back(0);
        l.checked.push_back(0);
      }
      l.applied[k] = l.gens.size();
    }
  }

  // Returns the residue and the level where sifting stopped.
  std::pair<Permutation, std::size_t> sift(Permutation h, std::size_t from) const {
    for (std::size_t l = from; l < levels.size(); ++l) {
      const Index b = h(levels[l].base);
      const int k = levels[l].where[b];
      if (k < 0) return {std::move(h), l};
      h = levels[l].transversal_inv[static_cast<std::size_t>(k)] * h;
    }
    return {std::move(h), levels.size()};
  }

  // Deterministic Schreier-Sims: base points are least moved points, and
  // Schreier generators are processed in (orbit slot, generator) order.
  void build() {
    for (const Permutation& s : generators) {
      if (s.is_identity()) continue;
      const bool fixes_base = std::all_of(levels.begin(), levels.end(),
                                          [&](const Level& l) { return s(l.base) == l.base; });
      if (fixes_base) push_level(static_cast<Index>(s.least_moved_point()));
    }
    for (const Permutation& s : generators) {
      if (s.is_identity()) continue;
      for (Level& l : levels) {
        l.gens.push_back(s);
        if (s(l.base) != l.base) break;
      }
    }
    auto i = static_cast<std::ptrdiff_t>(levels.size()) - 1;
    while (i >= 0) {
      const auto li = static_cast<std::size_t>(i);
      extend_orbit(levels[li]);
      bool restarted = false;
      for (std::size_t k = 0; k < levels[li].orbit.size() && !restarted; ++k) {
        while (levels[li].checked[k] < levels[li].gens.size()) {
          Level& l = levels[li];
          const Permutation& s = l.gens[l.checked[k]];
          ++l.checked[k];
          const Index img = s(l.orbit[k]);
          const auto slot = static_cast<std::size_t>(l.where[img]);
          Permutation schreier = l.transversal_inv[slot] * s * l.transversal[k];
          auto [h, j] = sift(std::move(schreier), li + 1);
          if (h.is_identity()) continue;
          if (j == levels.size()) push_level(static_cast<Index>(h.least_moved_point()));
          for (std::size_t m = li + 1; m <= j; ++m) levels[m].gens.push_back(h);
          i = static_cast<std::ptrdiff_t>(j);
          restarted = true;
          break;
        }
      }
      if (!restarted) --i;
    }
  }
};

PermGroup PermGroup::from_generators(std::size_t degree, std::vector<Permutation> generators) {
  for (const Permutation& g : generators)
    if (g.degree() != degree) {
      throw Error(ErrorKind::DegreeMismatch, "generator of degree " + std::to_string(g.degree()) +
                                                 ", expected " + std::to_string(degree));
    }
  auto chain = std::make_shared<Chain>();
  chain->degree = degree;
  chain->generators = std::move(generators);
  chain->build();
  return PermGroup(std::move(chain));
}

std::size_t PermGroup::degree() const noexcept { return chain_->degree; }
const std::vector<Permutation>& PermGroup::generators() const noexcept {
  return chain_->generators;
}

std::uint64_t PermGroup::order() const noexcept {
  std::uint64_t r = 1;
  for (const auto& l : chain_->levels) r *= l.orbit.size();
  return r;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree()) throw Error(ErrorKind::DegreeMismatch, "contains");
  return chain_->sift(p, 0).first.is_identity();
}

std::vector<Index> PermGroup::base() const {
  std::vector<Index> b;
  for (const auto& l : chain_->levels) b.push_back(l.base);
  return b;
}

std::vector<std::size_t> PermGroup::orbit_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& l : chain_->levels) s.push_back(l.orbit.size());
  return s;
}

std::vector<Permutation> PermGroup::elements(const Limits& limits) const {
  if (order() > limits.group_elements) {
    throw Error(ErrorKind::OrderOverflow, "element guard: group order " + std::to_string(order()) +
                                              " exceeds " + std::to_string(limits.group_elements));
  }
  std::vector<Permutation> out{Permutation::identity(degree())};
  // Right-to-left so that out = { u_0 u_1 ... u_{k-1} } with level 0 varying slowest.
  for (auto l = chain_->levels.rbegin(); l != chain_->levels.rend(); ++l) {
    std::vector<Permutation> next;
    next.reserve(out.size() * l->transversal.size());
    for (const Permutation& u : l->transversal)
      for (const Permutation& rest : out) next.push_back(u * rest);
    out = std::move(next);
  }
  return out;
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (degree() != other.degree()) throw Error(ErrorKind::DegreeMismatch, "is_subgroup_of");
  return std::all_of(generators().begin(), generators().end(),
                     [&](const Permutation& g) { return other.contains(g); });
}

bool same_group(const PermGroup& a, const PermGroup& b) {
  return a.order() == b.order() && a.is_subgroup_of(b);
}

PermGroup group_from_generators(std::size_t degree, std::vector<Permutation> generators) {
  return PermGroup::from_generators(degree, std::move(generators));
}

std::vector<Permutation> enumerate_elements(const PermGroup& g, const Limits& limits) {
  return g.elements(limits);
}

// --------------------------------------------------------- group routines

PermGroup generated_subgroup(std::size_t degree, std::span<const Permutation> candidates) {
  std::vector<Permutation> gens;
  PermGroup g = PermGroup::from_generators(degree, {});
  for (const Permutation& c : candidates) {
    if (g.contains(c)) continue;
    gens.push_back(c);
    g = PermGroup::from_generators(degree, gens);
  }
  return g;
}

PermGroup center_of_group(const PermGroup& g, const Limits& limits) {
  std::vector<Permutation> central;
  for (const Permutation& x : g.elements(limits)) {
    const bool commutes = std::all_of(g.generators().begin(), g.generators().end(),
                                      [&](const Permutation& s) { return x * s == s * x; });
    if (commutes) central.push_back(x);
  }
  return generated_subgroup(g.degree(), central);
}

PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> s) {
  std::vector<Permutation> gens;
  for (const Permutation& x : s)
    if (!x.is_identity()) gens.push_back(x);
  PermGroup n = PermGroup::from_generators(g.degree(), gens);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gens.size() && !changed; ++i)
      for (const Permutation& t : g.generators()) {
        Permutation c = t.inverse() * gens[i] * t;
        if (n.contains(c)) continue;
        gens.push_back(std::move(c));
        n = PermGroup::from_generators(g.degree(), gens);
        changed = true;
        break;
      }
  }
  return n;
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = commutator(gens[i], gens[j]);
      if (!c.is_identity() && std::find(comms.begin(), comms.end(), c) == comms.end())
        comms.push_back(std::move(c));
    }
  return normal_closure(g, comms);
}

PermGroup join(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "join");
  std::vector<Permutation> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return PermGroup::from_generators(a.degree(), std::move(gens));
}

std::vector<PermGroup> upper_central_series(const PermGroup& g, const Limits& limits) {
  std::vector<PermGroup> series{PermGroup::from_generators(g.degree(), {})};
  const auto elements = g.elements(limits);
  while (true) {
    const PermGroup& z = series.back();
    std::vector<Permutation> next;
    for (const Permutation& x : elements) {
      const bool central_mod = std::all_of(
          g.generators().begin(), g.generators().end(),
          [&](const Permutation& s) { return z.contains(commutator(x, s)); });
      if (central_mod) next.push_back(x);
    }
    PermGroup zn = generated_subgroup(g.degree(), next);
    if (zn.order() == z.order()) break;
    series.push_back(std::move(zn));
  }
  return series;
}

std::optional<int> nilpotency_class(const PermGroup& g, const Limits& limits) {
  const auto series = upper_central_series(g, limits);
  if (series.back().order() != g.order()) return std::nullopt;
  return static_cast<int>(series.size() - 1);
}

PermGroup frattini_subgroup(const PermGroup& g, const Limits& limits) {
  if (!nilpotency_class(g, limits)) throw Error(ErrorKind::NotNilpotent, "frattini_subgroup");
  std::vector<Permutation> candidates = derived_subgroup(g).generators();
  // Φ(G/G') = (G/G')^r with r the radical of |G|; r = p for p-groups.
  long long r = 1;
  for (std::size_t p : prime_factors(static_cast<std::size_t>(g.order()))) r *= static_cast<long long>(p);
  for (const Permutation& x : g.elements(limits)) candidates.push_back(pow(x, r));
  return generated_subgroup(g.degree(), candidates);
}

PermGroup frattini_subgroup_oracle(const PermGroup& g, const Limits& limits) {
  if (g.order() > limits.frattini_oracle) {
    throw Error(ErrorKind::OrderOverflow, "frattini oracle guard: group order " +
                                              std::to_string(g.order()) + " exceeds " +
                                              std::to_string(limits.frattini_oracle));
  }
  // Cayley table of G (identity first), then the generic subloop lattice.
  const auto elements = g.elements(limits);
  std::vector<Permutation> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  auto index_of = [&](const Permutation& p) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
    return static_cast<Index>(it - sorted.begin());
  };
  std::vector<Index> slot(sorted.size());
  for (std::size_t i = 0; i < elements.size(); ++i) slot[index_of(elements[i])] = static_cast<Index>(i);
  const std::size_t n = elements.size();
  std::vector<Index> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table[i * n + j] = slot[index_of(elements[i] * elements[j])];
  Limits lattice = limits;
  lattice.lattice_order = std::max(lattice.lattice_order, n);
  lattice.max_order = std::max(lattice.max_order, n);
  const CayleyLoop cayley = CayleyLoop::from_table(n, std::move(table), "cayley", lattice);

  if (n == 1) return g;
  Subloop meet = Subloop::whole(cayley);
  for (const Subloop& m : maximal_elements(all_subloops(cayley, lattice))) meet = intersect(meet, m);
  std::vector<Permutation> members;
  for (Index x : meet.elements()) members.push_back(elements[x]);
  return generated_subgroup(g.degree(), members);
}

PermGroup normalizer_of_subgroup(const PermGroup& g, const PermGroup& h, const Limits& limits) {
  if (g.degree() != h.degree()) throw Error(ErrorKind::DegreeMismatch, "normalizer_of_subgroup");
  if (!h.is_subgroup_of(g)) throw Error(ErrorKind::NotSubgroup, "H is not a subgroup of G");
  std::vector<Permutation> normalizing;
  for (const Permutation& x : g.elements(limits)) {
    const Permutation xi = x.inverse();
    const bool fixes = std::all_of(h.generators().begin(), h.generators().end(),
                                   [&](const Permutation& s) { return h.contains(xi * s * x); });
    if (fixes) normalizing.push_back(x);
  }
  return generated_subgroup(g.degree(), normalizing);
}

bool is_divisible_group(const PermGroup& g, const Limits& limits) {
  auto elements = g.elements(limits);
  std::size_t exponent = 1;
  for (const Permutation& x : elements) exponent = std::lcm(exponent, x.order());
  for (std::size_t p : prime_factors(exponent)) {
    std::vector<Permutation> image;
    image.reserve(elements.size());
    for (const Permutation& x : elements) image.push_back(pow(x, static_cast<long long>(p)));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image.size() != elements.size()) return false;
  }
  return true;
}

}  // namespace mloop
