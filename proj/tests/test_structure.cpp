#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "cml/builtins.hpp"
#include "cml/errors.hpp"
#include "cml/structure.hpp"

using namespace cml;

namespace {

oracle::Table as_table(const CayleyLoop& q) {
  oracle::Table t(q.size(), std::vector<int>(q.size()));
  for (int a = 0; a < q.size(); ++a)
    for (int b = 0; b < q.size(); ++b) t[a][b] = q.mul(a, b);
  return t;
}

CayleyLoop loop5() {
  return CayleyLoop::validate(
      {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 3, 4, 0, 1}, {3, 4, 1, 2, 0},
       {4, 2, 0, 1, 3}},
      "loop5");
}

}  // namespace

TEST_CASE("center") {
  CayleyLoop g = abelian({3, 9});
  CHECK(center(g).size() == g.size());

  const CayleyLoop& q = cml81();
  SubloopSet z = center(q);
  CHECK(z.size() == 3);
  // the w-coordinate axis in the (x1,x2,x3,w) encoding
  CHECK(z.indices() == std::vector<int>{0, 1, 2});
  std::vector<int> ref = oracle::center(as_table(q), q.identity());
  CHECK(z.indices() == ref);

  // center of a product is the product of centers
  CayleyLoop prod = direct_product(q, cyclic(9));
  SubloopSet zp = center(prod);
  CHECK(zp.size() == 27);
  for (int a : z.indices())
    for (int b = 0; b < 9; ++b) CHECK(zp.contains(a * 9 + b));
}

TEST_CASE("upper central series and class") {
  CayleyLoop z9 = cyclic(9);
  CentralSeries s9 = upper_central_series(z9);
  CHECK(s9.cls == 1);
  REQUIRE(s9.terms.size() == 2);
  CHECK(s9.terms[0].size() == 1);
  CHECK(s9.terms[1].size() == 9);

  const CayleyLoop& q = cml81();
  CentralSeries sq = upper_central_series(q);
  CHECK(sq.cls == 2);
  REQUIRE(sq.terms.size() == 3);
  CHECK(sq.terms[0].size() == 1);
  CHECK(sq.terms[1].size() == 3);
  CHECK(sq.terms[2].size() == 81);
  for (const SubloopSet& t : sq.terms) CHECK(is_normal(q, t).normal);
  CHECK(sq.terms[0].is_subset_of(sq.terms[1]));
  CHECK(sq.terms[1].is_subset_of(sq.terms[2]));

  // class of a product is the max of the classes
  CHECK(nilpotency_class(direct_product(cyclic(9), q)) == 2);
  CHECK(nilpotency_class(abelian({3, 9})) == 1);

  CHECK_THROWS_AS(upper_central_series(loop5()), SeriesStalled);
}

TEST_CASE("primary decomposition") {
  CayleyLoop z6 = cyclic(6);
  PrimaryDecomposition d6 = p_decomposition(z6);
  REQUIRE(d6.components.size() == 2);
  CHECK(d6.components.at(2).indices() == std::vector<int>{0, 3});
  CHECK(d6.components.at(3).indices() == std::vector<int>{0, 2, 4});

  CayleyLoop q2 = direct_product(cyclic(2), cml81());
  PrimaryDecomposition d = p_decomposition(q2);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components.at(2).size() == 2);
  CHECK(d.components.at(3).size() == 81);
  for (int x : d.components.at(2).indices()) CHECK(is_central(q2, x));

  PrimaryDecomposition dq = p_decomposition(cml81());
  REQUIRE(dq.components.size() == 1);
  CHECK(dq.components.at(3).size() == 81);

  CHECK_THROWS_AS(p_decomposition(loop5()), DecompositionFailure);
}

TEST_CASE("heights in finite loops") {
  CayleyLoop z9 = cyclic(9);
  HeightResult h = height(z9, 3, 3);
  CHECK(h.value == 1);
  CHECK_FALSE(h.saturating);
  HeightResult h0 = height(z9, 0, 3);
  CHECK(h0.saturating);
  CHECK(h0.value == 2);
  CHECK(height(z9, 1, 3).value == 0);

  // exponent-p loop: the identity saturates at index 1
  CayleyLoop z3 = cyclic(3);
  HeightResult he = height(z3, 0, 3);
  CHECK(he.saturating);
  CHECK(he.value == 1);

  const CayleyLoop& q = cml81();
  for (int a = 0; a < q.size(); ++a) {
    HeightResult ha = height(q, a, 3);
    if (a == q.identity()) {
      CHECK(ha.saturating);
    } else {
      CHECK(ha.value == 0);  // the cube map image is {e}
      CHECK_FALSE(ha.saturating);
    }
  }

  // solvability is downward closed: if x^{p^n} = a solves then so does
  // x^{p^k} for k <= n (recomputed image chain as the oracle)
  for (const CayleyLoop* g : std::vector<const CayleyLoop*>{&z9, &q}) {
    std::vector<std::set<int>> images;
    std::set<int> cur;
    for (int x = 0; x < g->size(); ++x) cur.insert(x);
    images.push_back(cur);
    for (int it = 0; it < 6; ++it) {
      std::set<int> next;
      for (int x : cur) next.insert(g->power(x, 3));
      images.push_back(next);
      cur = next;
    }
    for (int a = 0; a < g->size(); ++a) {
      HeightResult ha = height(*g, a, 3);
      for (int k = 0; k <= ha.value; ++k) CHECK(images[k].count(a) == 1);
      if (!ha.saturating) CHECK(images[ha.value + 1].count(a) == 0);
    }
  }
}

TEST_CASE("associator subloop") {
  CayleyLoop g = abelian({3, 9});
  CHECK(associator_subloop(g).size() == 1);

  const CayleyLoop& q = cml81();
  SubloopSet a = associator_subloop(q);
  CHECK(a.size() == 3);
  CHECK(a == center(q));
}

TEST_CASE("cubes are central") {
  std::vector<CayleyLoop> loops;
  loops.push_back(cml81());
  loops.push_back(direct_product(cyclic(9), cml81()));
  for (const CayleyLoop& q : loops) {
    SubloopSet z = center(q);
    for (int x = 0; x < q.size(); ++x) CHECK(z.contains(q.power(x, 3)));
    QuotientResult qr = quotient(q, z);
    CHECK(qr.loop.exponent() == 3);
  }
}

TEST_CASE("structure summary regression for cml81") {
  StructureSummary s = structure_summary(cml81());
  CHECK(s.order == 81);
  CHECK(s.exponent == 3);
  CHECK(s.center_order == 3);
  CHECK(s.cls == 2);
  CHECK(s.series_orders == std::vector<int>{1, 3, 81});
  CHECK(s.primary == std::map<int, int>{{3, 81}});
}
