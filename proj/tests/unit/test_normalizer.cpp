#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mloop/mult_group.hpp"
#include "mloop/normalizer.hpp"
#include "mloop/structure.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mloop;
using support::abelian;
using support::kind_of;
using support::z81;

namespace {

const std::vector<Subloop>& z81_lattice() {
  static const std::vector<Subloop> l = all_subloops(z81());
  return l;
}

bool subset(const std::vector<Index>& a, const std::vector<Index>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Subloop e1_subloop() {
  return generate_subloop(z81(), std::vector<Index>{zassenhaus_index(1, 0, 0, 0)});
}

// Union of every subloop of K in which H is normal; a subloop only when the
// normalizer is unique.
std::vector<Index> normal_hosts_union(const std::vector<Subloop>& lattice, const Subloop& k,
                                      const Subloop& h) {
  std::set<Index> u;
  for (const Subloop& s : lattice)
    if (h.is_subset_of(s) && s.is_subset_of(k) && is_normal(h, s))
      u.insert(s.elements().begin(), s.elements().end());
  return {u.begin(), u.end()};
}

void check_trace_shape(const NormalizerTrace& t, const Subloop& h) {
  REQUIRE(!t.p_stages.empty());
  REQUIRE(t.p_stages.size() == t.d_stages.size());
  const std::vector<Index> hv(h.elements().begin(), h.elements().end());
  CHECK(subset(hv, t.p_stages.front()));
  CHECK(subset(hv, t.d_stages.front()));
  for (std::size_t i = 1; i < t.p_stages.size(); ++i) {
    CHECK(subset(t.p_stages[i], t.p_stages[i - 1]));
    CHECK(subset(t.d_stages[i - 1], t.d_stages[i]));
  }
  CHECK(t.monotone);
  CHECK(h.is_subset_of(t.result));
  CHECK(t.h_normal_in_result);
  CHECK(is_normal(h, t.result));
  CHECK(subset(t.d_stages.back(), std::vector<Index>(t.result.elements().begin(),
                                                    t.result.elements().end())));
}

}  // namespace

TEST_SUITE("normalizer") {
  TEST_CASE("abelian loops: the normalizer is K") {
    const CayleyLoop l = abelian({3, 3, 3});
    const Subloop whole = Subloop::whole(l);
    for (const Subloop& h : all_subloops(l)) {
      const NormalizerTrace t = normalizer(l, whole, h);
      CHECK(t.result.is_whole());
      CHECK(t.healthy());
      check_trace_shape(t, h);
    }
    const Subloop k = generate_subloop(l, std::vector<Index>{1, 3});
    const Subloop h = generate_subloop(l, std::vector<Index>{1});
    CHECK(normalizer(l, k, h).result == k);
  }

  TEST_CASE("central and normal subloops are normalized by L") {
    const Subloop whole = Subloop::whole(z81());
    const NormalizerTrace c = normalizer(z81(), whole, center(z81()));
    CHECK(c.result.is_whole());
    CHECK(c.healthy());
    for (const Subloop& h : z81_lattice())
      if (is_normal(h)) {
        const NormalizerTrace t = normalizer(z81(), whole, h);
        CHECK(t.result.is_whole());
        CHECK(t.healthy());
      }
  }

  TEST_CASE("associator conditions follow the literal argument order") {
    // P1 uses (h, h', x); for a subloop of a CML every such associator lies in
    // the group <h, h'>, so P1 = K.
    const Subloop h = e1_subloop();
    const NormalizerTrace t = normalizer(z81(), Subloop::whole(z81()), h);
    CHECK(t.p_stages.front().size() == 81);
    // D1 = {x : (h, x, p) ∈ H for h ∈ H, p ∈ K} computed directly.
    std::vector<Index> d1;
    for (Index x = 0; x < 81; ++x) {
      bool ok = true;
      for (Index hh : h.elements())
        for (Index p = 0; p < 81 && ok; ++p) ok = h.contains(z81().associator(hh, x, p));
      if (ok) d1.push_back(x);
    }
    CHECK(t.d_stages.front() == d1);
  }

  TEST_CASE("trace invariants over the full lattices") {
    const CayleyLoop a = abelian({3, 3, 3});
    for (const CayleyLoop* l : {&z81(), &a}) {
      const Subloop whole = Subloop::whole(*l);
      for (const Subloop& h : all_subloops(*l)) {
        const NormalizerTrace t = normalizer(*l, whole, h, false);
        check_trace_shape(t, h);
        CHECK(t.iterations <= static_cast<int>(l->order()) + 2);
      }
    }
  }

  TEST_CASE("the largest normal host is not unique for <e1>") {
    // H = <e1> is normal in every 2-generated subloop <H, x> because those are
    // abelian groups, yet the union of its normal hosts is all of L. Greedy
    // saturation therefore ends in different maximal subloops depending on
    // the addition order, and the fixpoint result <D> is a proper subset of
    // each of them.
    const Subloop h = e1_subloop();
    const Subloop whole = Subloop::whole(z81());
    for (Index x = 0; x < 81; ++x) REQUIRE(is_normal(h, extend_subloop(h, x)));
    CHECK(normal_hosts_union(z81_lattice(), whole, h).size() == 81);

    const NormalizerTrace t = normalizer(z81(), whole, h);
    CHECK(t.result.to_string() == "0,1,2,27,28,29,54,55,56");
    CHECK(t.result == generate_subloop(z81(), std::vector<Index>{27, 1}));
    CHECK(t.result.is_subset_of(whole));
    CHECK(t.d_closed);
    CHECK(t.h_normal_in_result);
    CHECK_FALSE(t.p_equals_d);
    CHECK(t.maximality_violations.size() == 72);
    CHECK_FALSE(t.healthy());

    const OracleRuns runs = normalizer_oracle(z81(), whole, h, 0, 5);
    REQUIRE(runs.runs.size() == 5);
    CHECK_FALSE(runs.unanimous);
    std::set<std::string> distinct;
    for (const Subloop& s : runs.runs) {
      CHECK(s.size() == 27);
      CHECK(is_normal(h, s));
      CHECK(t.result.is_subset_of(s));
      distinct.insert(s.to_string());
    }
    CHECK(distinct.size() > 1);
  }

  TEST_CASE("oracle agrees with the fixpoint when the normalizer is unique") {
    const Subloop whole = Subloop::whole(z81());
    std::size_t unique = 0, agree = 0;
    for (const Subloop& h : z81_lattice()) {
      const auto u = normal_hosts_union(z81_lattice(), whole, h);
      if (!is_closed(z81(), u)) continue;
      const Subloop top = Subloop::from_elements(z81(), u);
      if (!is_normal(h, top)) continue;
      ++unique;
      const OracleRuns runs = normalizer_oracle(z81(), whole, h, 3, 5);
      CHECK(runs.unanimous);
      CHECK(runs.runs.front() == top);
      agree += normalizer(z81(), whole, h).result == top;
    }
    // The remaining 39 subloops have several maximal normal hosts.
    CHECK(unique == 146);
    CHECK(agree == unique);
  }

  TEST_CASE("oracle trivial cases") {
    const Subloop whole = Subloop::whole(z81());
    const Subloop z = center(z81());
    for (const Subloop& s : normalizer_oracle(z81(), whole, z).runs) CHECK(s.is_whole());
    const Subloop h = e1_subloop();
    for (const Subloop& s : normalizer_oracle(z81(), h, h).runs) CHECK(s == h);
    CHECK(kind_of([&] { normalizer_oracle(z81(), h, whole); }) == ErrorKind::NotNested);
  }

  TEST_CASE("errors") {
    const Subloop h = e1_subloop();
    CHECK(kind_of([&] { normalizer(z81(), h, Subloop::whole(z81())); }) == ErrorKind::NotNested);
    const CayleyLoop other = abelian({3});
    CHECK(kind_of([&] { normalizer(z81(), Subloop::whole(other), Subloop::trivial(other)); }) ==
          ErrorKind::CrossLoop);
    const CayleyLoop s3 = oracle::s3_loop();
    CHECK(kind_of([&] { normalizer(s3, Subloop::whole(s3), Subloop::trivial(s3)); }) ==
          ErrorKind::NotCML);
  }

  TEST_CASE("normalizer condition") {
    const NormalizerCondition e = normalizer_condition(abelian({3, 3}));
    CHECK(e.holds);
    CHECK(normalizer_condition(trivial_loop()).holds);
    const NormalizerCondition z = normalizer_condition(z81());
    CHECK(z.holds);
    CHECK_FALSE(z.witness);
    CHECK(z.subloops.size() == 184);
    REQUIRE(z.normalizer_sizes.size() == z.subloops.size());
    for (std::size_t i = 0; i < z.subloops.size(); ++i)
      CHECK(z.normalizer_sizes[i] > z.subloops[i].size());
    CHECK(normalizer_condition(abelian({3, 3, 3})).holds);
    Limits small;
    small.lattice_order = 27;
    CHECK(kind_of([&] { normalizer_condition(z81(), small); }) == ErrorKind::OrderOverflow);
  }

  TEST_CASE("normalizer chains reach L within the class bound") {
    const int cls = *upper_central_series(z81()).nilpotency_class;
    for (const Subloop& h : z81_lattice()) {
      const auto chain = normalizer_chain(z81(), h);
      REQUIRE(!chain.empty());
      CHECK(chain.front() == h);
      CHECK(chain.back().is_whole());
      CHECK(static_cast<int>(chain.size()) - 1 <= cls);
      for (std::size_t i = 1; i < chain.size(); ++i) CHECK(is_normal(chain[i - 1], chain[i]));
    }
    for (const Subloop& m : maximal_subloops(z81())) CHECK(normalizer_chain(z81(), m).size() == 2);
    const CayleyLoop a = abelian({3, 3});
    for (const Subloop& h : all_subloops(a))
      CHECK(normalizer_chain(a, h).size() == (h.is_whole() ? 1u : 2u));
  }

  TEST_CASE("ascending subnormal systems") {
    const auto trivial = ascending_subnormal_system(z81(), Subloop::trivial(z81()));
    REQUIRE(trivial.terms.size() == 2);
    CHECK(trivial.terms.back().is_whole());
    const auto whole = ascending_subnormal_system(z81(), Subloop::whole(z81()));
    CHECK(whole.terms.size() == 2);
    const auto e1 = ascending_subnormal_system(z81(), e1_subloop());
    CHECK(e1.terms.size() <= 4);
    CHECK(e1.terms.front().is_trivial());
    CHECK(e1.terms[1] == e1_subloop());
    for (std::size_t i = 1; i < e1.terms.size(); ++i) {
      CHECK(e1.terms[i - 1].size() < e1.terms[i].size());
      CHECK(is_normal(e1.terms[i - 1], e1.terms[i]));
    }
  }

  TEST_CASE("subgroup normalizer chains in M") {
    const MultGroupBundle b = multiplication_group(z81());
    const auto elements = b.mult.elements();
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      const Permutation& g = elements[rng() % elements.size()];
      const PermGroup h = PermGroup::from_generators(81, {g});
      const auto chain = subgroup_normalizer_chain(b.mult, h);
      CHECK(same_group(chain.front(), h));
      CHECK(same_group(chain.back(), b.mult));
      CHECK(chain.size() - 1 <= 3);
    }
    const PermGroup d8 = PermGroup::from_generators(
        4, {Permutation::cycles({{0, 1, 2, 3}}, 4), Permutation::cycles({{0, 2}}, 4)});
    const PermGroup s4 = PermGroup::from_generators(
        4, {Permutation::cycles({{0, 1}}, 4), Permutation::cycles({{0, 1, 2, 3}}, 4)});
    // D8 is self-normalizing in S4.
    CHECK(kind_of([&] { subgroup_normalizer_chain(s4, d8); }) == ErrorKind::ChainStalled);
  }
}
