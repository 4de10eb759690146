#include "mloop/normalizer.hpp"

#include <algorithm>
#include <random>

#include "mloop/error.hpp"
#include "mloop/structure.hpp"

namespace mloop {

namespace {

using Mask = std::vector<char>;

std::vector<Index> to_list(const Mask& m) {
  std::vector<Index> out;
  for (Index x = 0; x < m.size(); ++x)
    if (m[x]) out.push_back(x);
  return out;
}

bool subset(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

void check_inputs(const CayleyLoop& loop, const Subloop& k, const Subloop& h) {
  if (!loop.same_as(k.parent()) || !loop.same_as(h.parent()))
    throw Error(ErrorKind::CrossLoop, "normalizer arguments belong to different loops");
  if (!h.is_subset_of(k)) throw Error(ErrorKind::NotNested, "H is not contained in K");
  if (!loop.is_cml()) throw Error(ErrorKind::NotCML, "normalizer needs a CML");
}

}  // namespace

NormalizerTrace normalizer(const CayleyLoop& loop, const Subloop& k, const Subloop& h,
                           bool audit) {
  check_inputs(loop, k, h);
  const std::size_t n = loop.order();
  const auto hs = h.elements();

  // P(S) = {x ∈ K : (h, s, x) ∈ H for h ∈ H, s ∈ S}
  auto p_stage = [&](const std::vector<Index>& s) {
    Mask out(n, 0);
    for (Index x : k.elements()) {
      bool ok = true;
      for (Index a : hs) {
        for (Index b : s)
          if (!h.contains(loop.associator(a, b, x))) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      out[x] = ok;
    }
    return out;
  };
  // D(P) = {x ∈ K : (h, x, p) ∈ H for h ∈ H, p ∈ P}
  auto d_stage = [&](const std::vector<Index>& p) {
    Mask out(n, 0);
    for (Index x : k.elements()) {
      bool ok = true;
      for (Index a : hs) {
        for (Index b : p)
          if (!h.contains(loop.associator(a, x, b))) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      out[x] = ok;
    }
    return out;
  };

  const std::vector<Index> h_list(hs.begin(), hs.end());
  std::vector<Mask> ps{p_stage(h_list)};
  std::vector<Mask> ds{d_stage(to_list(ps.back()))};
  const std::size_t cap = k.size() + 2;
  while (true) {
    Mask p = p_stage(to_list(ds.back()));
    Mask d = d_stage(to_list(p));
    if (p == ps.back() && d == ds.back()) break;
    ps.push_back(std::move(p));
    ds.push_back(std::move(d));
    if (ps.size() > cap) {
      throw Error(ErrorKind::ChainStalled, "P/D stages did not stabilize within " +
                                               std::to_string(cap) + " iterations");
    }
  }

  const Mask& final_d = ds.back();
  std::vector<Index> d_list = to_list(final_d);
  Subloop result = generate_subloop(loop, d_list);
  NormalizerTrace t{{}, {}, result, static_cast<int>(ps.size()), false, false, false, false, {}};
  for (const Mask& m : ps) t.p_stages.push_back(to_list(m));
  for (const Mask& m : ds) t.d_stages.push_back(to_list(m));
  t.p_equals_d = ps.back() == final_d;
  t.d_closed = result.size() == d_list.size();
  t.monotone = true;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!subset(h.mask(), ps[i]) || !subset(h.mask(), ds[i])) t.monotone = false;
    if (i > 0 && (!subset(ps[i], ps[i - 1]) || !subset(ds[i - 1], ds[i]))) t.monotone = false;
  }
  t.h_normal_in_result = h.is_subset_of(result) && is_normal(h, result);
  if (audit) {
    for (Index x : k.elements()) {
      if (result.contains(x)) continue;
      if (is_normal(h, extend_subloop(h, x))) t.maximality_violations.push_back(x);
    }
  }
  return t;
}

OracleRuns normalizer_oracle(const CayleyLoop& loop, const Subloop& k, const Subloop& h,
                             std::uint64_t seed, std::size_t runs) {
  check_inputs(loop, k, h);
  std::mt19937_64 rng(seed);
  std::vector<Index> order(k.elements().begin(), k.elements().end());
  OracleRuns out;
  for (std::size_t r = 0; r < runs; ++r) {
    for (std::size_t i = order.size(); i-- > 1;) std::swap(order[i], order[rng() % (i + 1)]);
    Subloop s = h;
    bool grew = true;
    while (grew) {
      grew = false;
      for (Index x : order) {
        if (s.contains(x)) continue;
        Subloop next = extend_subloop(s, x);
        if (!next.is_subset_of(k) || !is_normal(h, next)) continue;
        s = std::move(next);
        grew = true;
      }
    }
    if (!out.runs.empty() && !(s == out.runs.front())) out.unanimous = false;
    out.runs.push_back(std::move(s));
  }
  return out;
}

NormalizerCondition normalizer_condition(const CayleyLoop& loop, const Limits& limits) {
  NormalizerCondition out;
  const Subloop whole = Subloop::whole(loop);
  for (Subloop& s : all_subloops(loop, limits)) {
    if (s.is_whole()) continue;
    const NormalizerTrace t = normalizer(loop, whole, s, /*audit=*/false);
    const bool grows = t.result.size() > s.size();
    if (!grows && out.holds) {
      out.holds = false;
      out.witness = s;
    }
    out.normalizer_sizes.push_back(t.result.size());
    out.subloops.push_back(std::move(s));
  }
  return out;
}

std::vector<Subloop> normalizer_chain(const CayleyLoop& loop, const Subloop& h) {
  const Subloop whole = Subloop::whole(loop);
  std::vector<Subloop> chain{h};
  while (!chain.back().is_whole()) {
    Subloop next = normalizer(loop, whole, chain.back(), /*audit=*/false).result;
    if (next == chain.back()) {
      throw Error(ErrorKind::ChainStalled, "normalizer chain stalls at " + next.to_string());
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

SubnormalSystem ascending_subnormal_system(const CayleyLoop& loop, const Subloop& h) {
  SubnormalSystem sys;
  sys.terms.push_back(Subloop::trivial(loop));
  for (Subloop& s : normalizer_chain(loop, h))
    if (!(s == sys.terms.back())) sys.terms.push_back(std::move(s));
  for (std::size_t i = 0; i + 1 < sys.terms.size(); ++i) {
    if (!is_normal(sys.terms[i], sys.terms[i + 1])) {
      throw Error(ErrorKind::NotNormal, sys.terms[i].to_string() + " is not normal in " +
                                            sys.terms[i + 1].to_string());
    }
  }
  return sys;
}

std::vector<PermGroup> subgroup_normalizer_chain(const PermGroup& g, const PermGroup& h,
                                                 const Limits& limits) {
  std::vector<PermGroup> chain{h};
  while (chain.back().order() != g.order()) {
    PermGroup next = normalizer_of_subgroup(g, chain.back(), limits);
    if (next.order() == chain.back().order()) {
      throw Error(ErrorKind::ChainStalled, "subgroup normalizer chain stalls at order " +
                                               std::to_string(next.order()));
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

}  // namespace mloop
