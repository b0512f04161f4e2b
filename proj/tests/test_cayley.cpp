#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "cml/builtins.hpp"
#include "cml/errors.hpp"
#include "cml/identities.hpp"
#include "cml/io.hpp"
#include "cml/structure.hpp"
#include "cml/subloops.hpp"

using namespace cml;

namespace {

oracle::Table as_table(const CayleyLoop& q) {
  oracle::Table t(q.size(), std::vector<int>(q.size()));
  for (int a = 0; a < q.size(); ++a)
    for (int b = 0; b < q.size(); ++b) t[a][b] = q.mul(a, b);
  return t;
}

// Noncommutative loop of order 5; fails both commutativity and the Moufang
// identity.
CayleyLoop loop5() {
  return CayleyLoop::validate(
      {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 3, 4, 0, 1}, {3, 4, 1, 2, 0},
       {4, 2, 0, 1, 3}},
      "loop5");
}

}  // namespace

TEST_CASE("validate detects identity and rejects bad tables") {
  CayleyLoop z3 = CayleyLoop::validate({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(z3.size() == 3);
  CHECK(z3.identity() == 0);
  CHECK(z3.mul(1, 2) == 0);

  CHECK_THROWS_AS(CayleyLoop::validate({{0, 1, 2}, {1, 1, 0}, {2, 0, 1}}),
                  NotLatinSquare);
  // Latin square whose only left-identity row is not a right identity.
  CHECK_THROWS_AS(CayleyLoop::validate({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}),
                  NoIdentity);
  CHECK_THROWS_AS(CayleyLoop::validate({{0, 1}, {0, 1}}), NotLatinSquare);
}

TEST_CASE("cml81 is accepted and matches its defining formula") {
  const CayleyLoop& q = cml81();
  CHECK(q.size() == 81);
  CHECK(oracle::is_latin(as_table(q)));
  CHECK(q.cml_flag());

  // product formula: (x+y mod 3, wa+wb + (x1-y1)(x2*y3-x3*y2) mod 3)
  auto idx = [](int x1, int x2, int x3, int w) {
    return ((x1 * 3 + x2) * 3 + x3) * 3 + w;
  };
  for (int a = 0; a < 81; ++a) {
    int a1 = a / 27, a2 = (a / 9) % 3, a3 = (a / 3) % 3, aw = a % 3;
    for (int b = 0; b < 81; ++b) {
      int b1 = b / 27, b2 = (b / 9) % 3, b3 = (b / 3) % 3, bw = b % 3;
      int term = (a1 - b1) * (a2 * b3 - a3 * b2);
      int w = ((aw + bw + term) % 3 + 3) % 3;
      int expected = idx((a1 + b1) % 3, (a2 + b2) % 3, (a3 + b3) % 3, w);
      REQUIRE(q.mul(a, b) == expected);
    }
  }
}

TEST_CASE("identity law and division") {
  for (const char* name : {"cyclic:9", "abelian:2,9", "cml81"}) {
    CayleyLoop q = make_builtin(name);
    CAPTURE(name);
    for (int x = 0; x < q.size(); ++x) {
      CHECK(q.mul(q.identity(), x) == x);
      CHECK(q.mul(x, q.identity()) == x);
      CHECK(q.ldiv(x, x) == q.identity());
    }
  }

  CayleyLoop z9 = cyclic(9);
  CHECK(z9.inverse(4) == 5);

  // IP property on cml81: the inverse is two-sided and x^-1(xy) = y.
  const CayleyLoop& q = cml81();
  for (int x = 0; x < q.size(); ++x) {
    CHECK(q.mul(x, q.inverse(x)) == q.identity());
    CHECK(q.mul(q.inverse(x), x) == q.identity());
    for (int y = 0; y < q.size(); ++y)
      REQUIRE(q.mul(q.inverse(x), q.mul(x, y)) == y);
  }
}

TEST_CASE("is_cml on groups, cml81, and a bad loop") {
  CHECK(is_cml(abelian({3, 3})).ok());
  CHECK(is_cml(cml81()).ok());

  CayleyLoop q5 = loop5();
  CmlCheck c = is_cml(q5);
  CHECK_FALSE(c.ok());
  REQUIRE(c.witness.has_value());
  if (!c.commutative)
    CHECK(q5.mul(c.witness->x, c.witness->y) !=
          q5.mul(c.witness->y, c.witness->x));

  // the Moufang scan agrees with the brute-force oracle
  auto mine = scan::moufang_violation(q5);
  auto ref = oracle::moufang_violation(as_table(q5));
  REQUIRE(mine.has_value());
  REQUIRE(ref.has_value());
  CHECK(mine->x == ref->x);
  CHECK(mine->y == ref->y);
  CHECK(mine->z == ref->z);
}

TEST_CASE("associator calculus") {
  CayleyLoop g = abelian({3, 9});
  for (int a = 0; a < g.size(); a += 5)
    for (int b = 0; b < g.size(); b += 3)
      for (int c = 0; c < g.size(); c += 7)
        CHECK(g.associator(a, b, c) == g.identity());

  const CayleyLoop& q = cml81();
  bool nontrivial = false;
  for (int a = 0; a < 81 && !nontrivial; ++a)
    for (int b = 0; b < 81 && !nontrivial; ++b)
      for (int c = 0; c < 81; ++c)
        if (q.associator(a, b, c) != q.identity()) {
          nontrivial = true;
          break;
        }
  CHECK(nontrivial);

  // defining equation ab*c = (a*bc)(a,b,c), exhaustively
  for (int a = 0; a < 81; ++a)
    for (int b = 0; b < 81; ++b)
      for (int c = 0; c < 81; ++c) {
        int lhs = q.mul(q.mul(a, b), c);
        int rhs = q.mul(q.mul(a, q.mul(b, c)), q.associator(a, b, c));
        REQUIRE(lhs == rhs);
      }
}

TEST_CASE("translations and inner mappings") {
  const CayleyLoop& q = cml81();
  std::vector<int> id = q.translation(q.identity());
  for (int z = 0; z < q.size(); ++z) CHECK(id[z] == z);

  CayleyLoop g = abelian({3, 3});
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) {
      std::vector<int> im = g.inner_mapping(x, y);
      for (int z = 0; z < g.size(); ++z) CHECK(im[z] == z);
    }
}

TEST_CASE("powers and orders") {
  CayleyLoop z9 = cyclic(9);
  CHECK(z9.power(2, 5) == 1);  // 10 mod 9
  CHECK(z9.power(2, 0) == 0);
  CHECK(z9.order_of(3) == 3);
  CHECK(z9.exponent() == 9);

  const CayleyLoop& q = cml81();
  for (int a = 0; a < q.size(); ++a) {
    CHECK(q.power(a, 0) == q.identity());
    int ord = q.order_of(a);
    CHECK((ord == 1 || ord == 3));
    int r = a;
    for (int m = 1; m < ord; ++m) {
      CHECK(r != q.identity());
      r = q.mul(r, a);
    }
    CHECK(r == q.identity());
  }

  // left-normed equals right-normed for |k| <= 2 * exponent
  for (const char* name : {"cyclic:9", "abelian:2,9", "cml81"}) {
    CayleyLoop g2 = make_builtin(name);
    CAPTURE(name);
    oracle::Table t = as_table(g2);
    std::vector<int> inv(g2.size());
    for (int a = 0; a < g2.size(); ++a) inv[a] = g2.inverse(a);
    for (int a = 0; a < g2.size(); ++a)
      for (long long k = -2 * g2.exponent(); k <= 2 * g2.exponent(); ++k)
        REQUIRE(g2.power(a, k) ==
                oracle::right_normed_power(t, g2.identity(), a, k, inv));
  }
}

TEST_CASE("direct products and quotients") {
  CayleyLoop p = direct_product(cyclic(3), cyclic(3));
  CHECK(p.size() == 9);
  CHECK(is_cml(p).ok());

  CayleyLoop z9 = cyclic(9);
  QuotientResult qr = quotient(z9, generate(z9, std::vector<int>{3}));
  CHECK(qr.loop.size() == 3);
  CHECK(qr.loop.order_of(qr.projection[1]) == 3);

  const CayleyLoop& q = cml81();
  SubloopSet z = center(q);
  QuotientResult qz = quotient(q, z);
  CHECK(qz.loop.size() == 27);
  CHECK(qz.loop.is_commutative());
  CHECK(qz.loop.exponent() == 3);
  for (int a = 0; a < 27; ++a)
    for (int b = 0; b < 27; ++b)
      for (int c = 0; c < 27; ++c)
        REQUIRE(qz.loop.associator(a, b, c) == qz.loop.identity());
}

TEST_CASE("builtin catalog") {
  CHECK(cyclic(3).size() == 3);
  CHECK(abelian({3, 9}).size() == 27);
  CHECK(make_builtin("cyclic:9*cml81").size() == 729);
  CHECK_THROWS_AS(make_builtin("nonsense"), UnknownName);
  CHECK_THROWS_AS(make_builtin("cyclic:x"), UnknownName);

  bool has_cml81 = false, has_cyclic = false, has_structured = false;
  for (const std::string& line : catalog()) {
    if (line.find("cml81") == 0) has_cml81 = true;
    if (line.find("cyclic:") == 0) has_cyclic = true;
    if (line.find("structured") == 0) has_structured = true;
  }
  CHECK(has_cml81);
  CHECK(has_cyclic);
  CHECK(has_structured);
}

TEST_CASE("cayley text format round-trips byte for byte") {
  CayleyLoop q = abelian({2, 9});
  std::string text = write_cayley_text(q);
  std::istringstream in(text);
  CayleyLoop back = read_cayley_text(in);
  CHECK(back.same_table(q));
  CHECK(back.name() == q.name());
  CHECK(write_cayley_text(back) == text);

  CayleyLoop bare = CayleyLoop::validate({{0, 1}, {1, 0}});
  std::string t2 = write_cayley_text(bare);
  std::istringstream in2(t2);
  CHECK(write_cayley_text(read_cayley_text(in2)) == t2);
}
