#include <doctest.h>

#include <random>
#include <string>

#include "mloop/error.hpp"
#include "mloop/loop.hpp"
#include "mloop/structure.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mloop;

using support::kind_of;
using support::message_of;
using support::z81;

TEST_SUITE("loop_core") {
  TEST_CASE("parse accepts the singleton and cyclic tables") {
    const CayleyLoop one = parse_loop("1\n0");
    CHECK(one.order() == 1);
    CHECK(one.mul(0, 0) == 0);

    const CayleyLoop z3 = parse_loop("3\n0 1 2\n1 2 0\n2 0 1");
    CHECK(z3.order() == 3);
    CHECK(z3.mul(1, 2) == 0);
    CHECK(z3 == gen_abelian(std::vector<int>{3}));
  }

  TEST_CASE("parse reports the repeated value of a bad row") {
    const auto f = [] { parse_loop("2\n0 1\n1 1"); };
    CHECK(kind_of(f) == ErrorKind::NotLatinSquare);
    CHECK(message_of(f).starts_with("NotLatinSquare row=1"));
  }

  TEST_CASE("parse reports a repeated column value") {
    const auto f = [] { parse_loop("3\n0 1 2\n1 2 0\n2 2 1"); };
    CHECK(kind_of(f) == ErrorKind::NotLatinSquare);
  }

  TEST_CASE("parse rejects shape, token and identity errors") {
    CHECK(kind_of([] { parse_loop("3\n0 1 2\n1 2 0"); }) == ErrorKind::BadDimension);
    CHECK(kind_of([] { parse_loop("2\n0 1\n1"); }) == ErrorKind::BadDimension);
    CHECK(kind_of([] { parse_loop("2\n0 x\n1 0"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_loop("2\n0 1.5\n1 0"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_loop(""); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_loop("0\n"); }) == ErrorKind::BadDimension);
    CHECK(kind_of([] { parse_loop("2\n1 0\n0 1"); }) == ErrorKind::NoIdentity);
    CHECK(kind_of([] { parse_loop("2\n0 1\n1 2"); }) == ErrorKind::NotLatinSquare);
  }

  TEST_CASE("parse enforces the order guard before reading rows") {
    Limits small;
    small.max_order = 2;
    CHECK(kind_of([&] { parse_loop("3\n0 1 2\n1 2 0\n2 0 1", small); }) ==
          ErrorKind::OrderOverflow);
  }

  TEST_CASE("comments and the name header survive a round trip") {
    const CayleyLoop l = parse_loop("# a comment\n# name: klein\n\n4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n");
    CHECK(l.name() == "klein");
    const std::string text = serialize_loop(l);
    CHECK(text.starts_with("# name: klein\n4\n"));
    const CayleyLoop back = parse_loop(text);
    CHECK(back == l);
    CHECK(back.name() == "klein");
    CHECK(parse_loop(serialize_loop(z81())) == z81());
  }

  TEST_CASE("diagnose separates groups, CMLs and broken tables") {
    const auto z3 = diagnose(gen_abelian(std::vector<int>{3}));
    CHECK(z3.is_cml);
    CHECK(z3.is_associative);
    CHECK_FALSE(z3.first_violation);

    const auto z = diagnose(z81());
    CHECK(z.is_latin);
    CHECK(z.has_identity);
    CHECK(z.is_commutative);
    CHECK(z.is_cml);
    CHECK_FALSE(z.is_associative);
    REQUIRE(z.first_violation);
    CHECK(z.first_violation->law == "associative");

    // Z5 with rows 3 and 4 exchanged: still Latin, no longer a CML.
    std::vector<Index> t(25);
    for (Index i = 0; i < 5; ++i)
      for (Index j = 0; j < 5; ++j) t[i * 5 + j] = (i + j) % 5;
    for (Index j = 0; j < 5; ++j) std::swap(t[3 * 5 + j], t[4 * 5 + j]);
    const auto swapped = diagnose_table(5, t);
    CHECK(swapped.is_latin);
    CHECK_FALSE(swapped.is_cml);
    CHECK_FALSE(swapped.is_associative);
    REQUIRE(swapped.first_violation);
    CHECK(swapped.first_violation->law == "identity");
  }

  TEST_CASE("diagnose flags a commutative loop that is not a CML") {
    const CayleyLoop l = parse_loop(
        "6\n0 1 2 3 4 5\n1 0 3 2 5 4\n2 3 4 5 0 1\n3 2 5 4 1 0\n4 5 0 1 3 2\n5 4 1 0 2 3");
    const auto d = diagnose(l);
    CHECK(d.is_commutative);
    CHECK_FALSE(d.is_cml);
    CHECK_FALSE(d.is_associative);
    REQUIRE(d.first_violation);
    CHECK(d.first_violation->law == "cml");
    const auto [x, y, z] = d.first_violation->triple;
    CHECK(l.mul(l.mul(x, x), l.mul(y, z)) != l.mul(l.mul(x, y), l.mul(x, z)));
  }

  TEST_CASE("the order-81 table matches the defining tuple formula") {
    const CayleyLoop& l = z81();
    REQUIRE(l.order() == 81);
    for (Index a = 0; a < 81; ++a)
      for (Index b = 0; b < 81; ++b)
        REQUIRE(l.mul(a, b) == oracle::index_of(oracle::zmul(oracle::tuple_of(a),
                                                              oracle::tuple_of(b))));
    CHECK(zassenhaus_index(0, 0, 0, 0) == 0);
    CHECK(zassenhaus_index(1, 0, 0, 0) == 27);
    CHECK(zassenhaus_index(0, 0, 0, 1) == 1);
  }

  TEST_CASE("associators of the order-81 loop agree with tuple arithmetic") {
    const CayleyLoop& l = z81();
    const Index e1 = zassenhaus_index(1, 0, 0, 0), e2 = zassenhaus_index(0, 1, 0, 0);
    const Index e3 = zassenhaus_index(0, 0, 1, 0), e4 = zassenhaus_index(0, 0, 0, 1);
    CHECK(l.associator(e1, e2, e3) == e4);
    CHECK(oracle::zassociator(e1, e2, e3) == e4);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 3000; ++i) {
      const auto a = static_cast<Index>(rng() % 81), b = static_cast<Index>(rng() % 81),
                 c = static_cast<Index>(rng() % 81);
      REQUIRE(l.associator(a, b, c) == oracle::zassociator(a, b, c));
    }
  }

  TEST_CASE("element arithmetic") {
    const CayleyLoop z3 = gen_abelian(std::vector<int>{3});
    CHECK(mul(z3.element(1), z3.element(2)).index() == 0);
    CHECK(inv(z3.element(1)).index() == 2);
    CHECK(pow(z3.element(1), 0).index() == 0);
    CHECK(pow(z3.element(1), -1).index() == 2);
    CHECK(pow(z3.element(1), 5).index() == 2);
    CHECK(associator(z3.element(1), z3.element(2), z3.element(2)).index() == 0);

    const CayleyLoop& l = z81();
    for (Index x = 0; x < 81; ++x) {
      CHECK(l.pow(x, 3) == 0);
      CHECK(l.pow(x, 0) == 0);
      CHECK(l.mul(x, l.inv(x)) == 0);
      CHECK(l.pow(x, -1) == l.inv(x));
      CHECK(l.element_order(x) == (x == 0 ? 1u : 3u));
    }
    const CayleyLoop z9 = gen_abelian(std::vector<int>{9});
    CHECK(z9.element_order(3) == 3);
    CHECK(z9.element_order(1) == 9);
    CHECK(z9.pow(2, 4) == 8);
    CHECK(z9.pow(2, -2) == 5);
  }

  TEST_CASE("element operations refuse operands from different loops") {
    const CayleyLoop a = gen_abelian(std::vector<int>{3});
    const CayleyLoop b = gen_abelian(std::vector<int>{3});
    CHECK(kind_of([&] { mul(a.element(1), b.element(1)); }) == ErrorKind::CrossLoop);
    CHECK(kind_of([&] { associator(a.element(1), a.element(1), b.element(1)); }) ==
          ErrorKind::CrossLoop);
    CHECK_THROWS_AS(a.element(3), Error);
  }

  TEST_CASE("associators of pairs vanish and the CML symmetries hold") {
    const CayleyLoop& l = z81();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5000; ++i) {
      const auto x = static_cast<Index>(rng() % 81), y = static_cast<Index>(rng() % 81),
                 z = static_cast<Index>(rng() % 81);
      REQUIRE(l.associator(x, x, y) == 0);
      const Index a = l.associator(x, y, z);
      REQUIRE(a == l.associator(y, z, x));
      REQUIRE(a == l.associator(l.inv(y), x, z));
      REQUIRE(a == l.inv(l.associator(y, x, z)));
    }
  }

  TEST_CASE("two elements generate an associative subloop") {
    const CayleyLoop prod = direct_product(z81(), gen_abelian(std::vector<int>{3}));
    for (const CayleyLoop* l : {&z81(), &prod}) {
      std::mt19937_64 rng(3);
      for (int i = 0; i < 40; ++i) {
        const auto x = static_cast<Index>(rng() % l->order());
        const auto y = static_cast<Index>(rng() % l->order());
        const Subloop s = generate_subloop(*l, std::vector<Index>{x, y});
        for (Index a : s.elements())
          for (Index b : s.elements())
            for (Index c : s.elements()) REQUIRE(l->associator(a, b, c) == 0);
      }
    }
  }

  TEST_CASE("direct products encode pairs as i*n2 + j") {
    const CayleyLoop z3 = gen_abelian(std::vector<int>{3});
    const CayleyLoop p = direct_product(z3, z3);
    CHECK(p.order() == 9);
    CHECK(p == gen_abelian(std::vector<int>{3, 3}));
    CHECK(direct_product(z81(), trivial_loop()) == z81());

    const CayleyLoop big = direct_product(z81(), z3);
    CHECK(big.order() == 243);
    CHECK(diagnose(big).is_cml);
    for (Index i = 0; i < 81; i += 7)
      for (Index j = 0; j < 3; ++j)
        for (Index k = 0; k < 81; k += 5)
          CHECK(big.mul(i * 3 + j, k * 3 + 2) == z81().mul(i, k) * 3 + z3.mul(j, 2));

    Limits small;
    small.max_order = 200;
    CHECK(kind_of([&] { direct_product(z81(), z3, small); }) == ErrorKind::OrderOverflow);
  }

  TEST_CASE("abelian generator uses mixed radix") {
    const CayleyLoop k4 = gen_abelian(std::vector<int>{2, 2});
    CHECK(k4.order() == 4);
    for (Index x = 0; x < 4; ++x) CHECK(k4.mul(x, x) == 0);
    const CayleyLoop e27 = gen_abelian(std::vector<int>{3, 3, 3});
    CHECK(diagnose(e27).is_associative);
    const CayleyLoop z3z2 = gen_abelian(std::vector<int>{3, 2});
    CHECK(z3z2.mul(2 * 2 + 1, 1 * 2 + 1) == 0);  // (2,1) + (1,1) = (0,0)
    CHECK(kind_of([] { gen_abelian(std::vector<int>{1}); }) == ErrorKind::BadGeneratorSpec);
    Limits small;
    small.max_order = 26;
    CHECK(kind_of([&] { gen_abelian(std::vector<int>{3, 3, 3}, small); }) ==
          ErrorKind::OrderOverflow);
  }

  TEST_CASE("quotients pick least coset representatives") {
    const CayleyLoop z9 = gen_abelian(std::vector<int>{9});
    const Quotient q = quotient(z9, generate_subloop(z9, std::vector<Index>{3}));
    CHECK(q.loop == gen_abelian(std::vector<int>{3}));
    CHECK(q.representatives == std::vector<Index>{0, 1, 2});
    CHECK(q.projection == std::vector<Index>{0, 1, 2, 0, 1, 2, 0, 1, 2});

    const Quotient a = quotient(z81(), associator_subloop(z81()));
    CHECK(a.loop.order() == 27);
    const auto d = diagnose(a.loop);
    CHECK(d.is_associative);
    CHECK(d.is_commutative);
    for (Index x = 0; x < 27; ++x) CHECK(a.loop.pow(x, 3) == 0);

    CHECK(quotient(z81(), Subloop::whole(z81())).loop.order() == 1);
    CHECK(quotient(z81(), Subloop::trivial(z81())).loop == z81());
  }

  TEST_CASE("quotient by a non-normal subloop names the leaving associator") {
    const Subloop h = generate_subloop(z81(), std::vector<Index>{zassenhaus_index(1, 0, 0, 0)});
    const auto f = [&] { quotient(z81(), h); };
    CHECK(kind_of(f) == ErrorKind::NotNormal);
    CHECK(message_of(f).find("associator") != std::string::npos);
  }

  TEST_CASE("quotients of a CML by normal subloops are CMLs") {
    const CayleyLoop prod = direct_product(z81(), gen_abelian(std::vector<int>{3}));
    for (const Subloop& h : all_subloops(z81())) {
      if (!is_normal(h)) continue;
      CHECK(diagnose(quotient(z81(), h).loop).is_cml);
    }
    CHECK(diagnose(quotient(prod, center(prod)).loop).is_cml);
  }
}
