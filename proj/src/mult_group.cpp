#include "mloop/mult_group.hpp"

#include <algorithm>
#include <set>

#include "mloop/error.hpp"
#include "mloop/structure.hpp"

namespace mloop {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "fail";
}

Permutation translation(const CayleyLoop& loop, Index x) {
  const auto row = loop.row(x);
  return Permutation(std::vector<Index>(row.begin(), row.end()));
}

Permutation inner_mapping(const CayleyLoop& loop, Index x, Index y) {
  return translation(loop, loop.mul(x, y)).inverse() * translation(loop, x) *
         translation(loop, y);
}

namespace {

// coset[x] = least element of xH.
std::vector<Index> coset_ids(const CayleyLoop& loop, const Subloop& h) {
  std::vector<Index> id(loop.order());
  for (Index x = 0; x < loop.order(); ++x) {
    Index least = x;
    for (Index e : h.elements()) least = std::min(least, loop.mul(x, e));
    id[x] = least;
  }
  return id;
}

nlohmann::ordered_json subloop_json(const Subloop& s) { return s.to_string(); }

}  // namespace

MultGroupBundle multiplication_group(const CayleyLoop& loop, const Limits& limits) {
  if (loop.order() > limits.max_order) {
    throw Error(ErrorKind::OrderOverflow, "max-order guard: loop order " +
                                              std::to_string(loop.order()) + " exceeds " +
                                              std::to_string(limits.max_order));
  }
  if (!loop.is_commutative()) {
    throw Error(ErrorKind::NotCommutative, "multiplication group needs a commutative loop");
  }
  const std::size_t n = loop.order();
  std::vector<Permutation> translations;
  translations.reserve(n);
  for (Index x = 0; x < n; ++x) translations.push_back(translation(loop, x));
  PermGroup mult = generated_subgroup(n, translations);

  // Distinct L(x, y) in (x, y) order; generated_subgroup drops redundant ones.
  std::set<Permutation> seen;
  std::vector<Permutation> inner_gens;
  for (Index x = 1; x < n; ++x)
    for (Index y = 1; y < n; ++y) {
      Permutation t = translations[loop.mul(x, y)].inverse() * translations[x] * translations[y];
      if (t.is_identity() || !seen.insert(t).second) continue;
      if (t(0) != 0) throw Error(ErrorKind::NotSubgroup, "inner mapping moves the identity");
      inner_gens.push_back(std::move(t));
    }
  PermGroup inner = generated_subgroup(n, inner_gens);
  if (mult.order() != n * inner.order()) {
    throw Error(ErrorKind::NotSubgroup, "inner mapping group is not the stabilizer of 0: |M|=" +
                                            std::to_string(mult.order()) + " |I|=" +
                                            std::to_string(inner.order()));
  }
  return MultGroupBundle{loop, std::move(mult), std::move(inner), std::move(translations)};
}

PermGroup h_star(const MultGroupBundle& bundle, const Subloop& h, const Limits& limits) {
  const CayleyLoop& loop = bundle.loop;
  if (!is_normal(h)) throw Error(ErrorKind::NotNormal, "H* needs a normal subloop");
  const auto coset = coset_ids(loop, h);
  std::vector<Permutation> members;
  for (const Permutation& a : bundle.mult.elements(limits)) {
    bool fixes = true;
    for (Index x = 0; x < loop.order() && fixes; ++x) fixes = coset[a(x)] == coset[x];
    if (fixes) members.push_back(a);
  }
  return generated_subgroup(loop.order(), members);
}

Subloop orbit_of_identity(const MultGroupBundle& bundle, const PermGroup& n, const Limits& limits) {
  if (n.degree() != bundle.loop.order() || !n.is_subgroup_of(bundle.mult)) {
    throw Error(ErrorKind::NotSubgroup, "N is not a subgroup of M");
  }
  std::vector<Index> orbit{0};
  std::vector<char> seen(bundle.loop.order(), 0);
  seen[0] = 1;
  for (std::size_t k = 0; k < orbit.size(); ++k)
    for (const Permutation& g : n.generators()) {
      const Index img = g(orbit[k]);
      if (!seen[img]) {
        seen[img] = 1;
        orbit.push_back(img);
      }
    }
  Subloop h = Subloop::from_elements(bundle.loop, std::move(orbit));
  if (!is_normal(h)) throw Error(ErrorKind::NotNormal, "orbit of 0 is not normal: " + h.to_string());
  const PermGroup star = h_star(bundle, h, limits);
  if (!n.is_subgroup_of(star)) throw Error(ErrorKind::NotSubgroup, "N is not contained in H*");
  return h;
}

CheckOutcome verify_lemma1(const MultGroupBundle& bundle, const Subloop& h, const Limits& limits) {
  const CayleyLoop& loop = bundle.loop;
  const Quotient q = quotient(loop, h, limits);
  const MultGroupBundle qb = multiplication_group(q.loop, limits);
  const PermGroup star = h_star(bundle, h, limits);
  const std::size_t m = q.loop.order();

  nlohmann::ordered_json w;
  w["H"] = subloop_json(h);
  w["order_M"] = bundle.mult.order();
  w["order_M_quotient"] = qb.mult.order();
  w["order_H_star"] = star.order();
  bool ok = qb.mult.order() * star.order() == bundle.mult.order();
  if (!ok) w["failure"] = "order identity";

  // Induced action on cosets, indexed by quotient element.
  auto induce = [&](const Permutation& a) -> std::optional<Permutation> {
    std::vector<Index> im(m);
    for (Index c = 0; c < m; ++c) im[c] = q.projection[a(q.representatives[c])];
    for (Index x = 0; x < loop.order(); ++x)
      if (q.projection[a(x)] != im[q.projection[x]]) return std::nullopt;
    return Permutation(std::move(im));
  };

  const auto elements = bundle.mult.elements(limits);
  std::vector<Permutation> induced;
  induced.reserve(elements.size());
  std::size_t kernel = 0;
  for (std::size_t i = 0; ok && i < elements.size(); ++i) {
    auto img = induce(elements[i]);
    if (!img) {
      ok = false;
      w["failure"] = "induced action not well defined";
      w["alpha"] = elements[i].to_string();
      break;
    }
    if (!qb.mult.contains(*img)) {
      ok = false;
      w["failure"] = "induced action leaves M(L/H)";
      w["alpha"] = elements[i].to_string();
      break;
    }
    const bool in_kernel = img->is_identity();
    if (in_kernel != star.contains(elements[i])) {
      ok = false;
      w["failure"] = "kernel differs from H*";
      w["alpha"] = elements[i].to_string();
      break;
    }
    kernel += in_kernel;
    induced.push_back(std::move(*img));
  }
  if (ok) {
    for (const Permutation& s : bundle.mult.generators()) {
      const Permutation is = *induce(s);
      for (std::size_t i = 0; ok && i < elements.size(); ++i) {
        if (*induce(elements[i] * s) != induced[i] * is) {
          ok = false;
          w["failure"] = "induced action not homomorphic";
          w["alpha"] = elements[i].to_string();
          w["generator"] = s.to_string();
        }
      }
      if (!ok) break;
    }
  }
  if (ok) {
    std::vector<Permutation> image = induced;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    w["image_size"] = image.size();
    if (image.size() != qb.mult.order()) {
      ok = false;
      w["failure"] = "induced action not onto M(L/H)";
    }
  }
  w["kernel_size"] = kernel;
  if (ok && kernel != star.order()) {
    ok = false;
    w["failure"] = "kernel size differs from |H*|";
  }
  return make_outcome("coset_action_kernel", ok, std::move(w));
}

CheckOutcome verify_prop1(const MultGroupBundle& bundle, const Limits& limits) {
  const CayleyLoop& loop = bundle.loop;
  const Subloop z = center(loop);
  const PermGroup zm = center_of_group(bundle.mult, limits);

  nlohmann::ordered_json w;
  w["center_L"] = subloop_json(z);
  w["order_Z_M"] = zm.order();
  bool ok = zm.order() == z.size();
  if (!ok) w["failure"] = "orders differ";
  for (Index a : z.elements()) {
    if (!ok) break;
    if (!zm.contains(bundle.translations[a])) {
      ok = false;
      w["failure"] = "L(a) not central in M";
      w["a"] = a;
    }
  }
  // Injective because L(a)(0) = a; homomorphic when L(a)L(b) = L(ab).
  for (Index a : z.elements())
    for (Index b : z.elements()) {
      if (!ok) break;
      if (bundle.translations[a] * bundle.translations[b] != bundle.translations[loop.mul(a, b)]) {
        ok = false;
        w["failure"] = "L(a)L(b) != L(ab)";
        w["a"] = a;
        w["b"] = b;
      }
    }
  return make_outcome("center_translation_isomorphism", ok, std::move(w));
}

CheckOutcome verify_lemma7(const MultGroupBundle& bundle, const Limits& limits) {
  const CayleyLoop& loop = bundle.loop;
  const std::size_t n = loop.order();
  const Subloop lprime = associator_subloop(loop);

  const PermGroup derived = derived_subgroup(bundle.mult);
  std::vector<Permutation> gens = bundle.inner.generators();
  for (Index u : lprime.elements()) gens.push_back(bundle.translations[u]);
  const PermGroup joined = generated_subgroup(n, gens);
  const PermGroup star = h_star(bundle, lprime, limits);
  const PermGroup closure = normal_closure(bundle.mult, bundle.inner.generators());

  const std::array<const PermGroup*, 4> groups{&derived, &joined, &star, &closure};
  const std::array<const char*, 4> names{"derived", "join_I_M(L')", "L'_star",
                                         "normal_closure_I"};
  nlohmann::ordered_json w;
  for (std::size_t i = 0; i < 4; ++i) w[names[i]] = groups[i]->order();
  bool ok = true;
  for (std::size_t i = 0; i < 4 && ok; ++i)
    for (std::size_t j = i + 1; j < 4 && ok; ++j)
      if (!same_group(*groups[i], *groups[j])) {
        ok = false;
        w["failure"] = std::string(names[i]) + " != " + names[j];
      }
  return make_outcome("derived_subgroup_four_way", ok, std::move(w));
}

}  // namespace mloop
