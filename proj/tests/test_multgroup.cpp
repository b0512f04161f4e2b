#include <algorithm>
#include <set>

#include "doctest.h"

#include "cml/builtins.hpp"
#include "cml/errors.hpp"
#include "cml/multgroup.hpp"
#include "cml/structure.hpp"

using namespace cml;

TEST_CASE("perm basics") {
  Perm a = Perm::from_ints({1, 2, 0});
  Perm b = Perm::from_ints({0, 2, 1});
  CHECK(a.order() == 3);
  CHECK(b.order() == 2);
  CHECK(a.after(a.inverse()).is_identity());
  CHECK(a.after(b)[1] == a[b[1]]);
}

TEST_CASE("multiplication group of an abelian group is its regular representation") {
  for (int n : {3, 9}) {
    CayleyLoop z = cyclic(n);
    PermGroup m = mult_group(z);
    CHECK(m.order() == static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
      CHECK(m.contains(Perm::from_ints(z.translation(x))));
    CHECK(inner_group(z).order() == 1);
  }
  CayleyLoop z3 = cyclic(3);
  auto census = element_order_census(mult_group(z3));
  CHECK(census == std::map<long long, long long>{{1, 1}, {3, 2}});
  CHECK(element_order_census(mult_group(cyclic(1))) ==
        std::map<long long, long long>{{1, 1}});
}

TEST_CASE("multiplication group of cml81") {
  const CayleyLoop& q = cml81();
  PermGroup m = mult_group(q);
  CHECK(m.order() == 2187);
  CHECK(is_p_group(m, 3));

  // transitivity: orbit of the identity is everything
  std::set<int> orbit;
  for (const Perm& p : m.elements()) orbit.insert(p[q.identity()]);
  CHECK(orbit.size() == 81);

  // orbit-stabilizer cross-check: |M| = |Q| * |I(Q)|
  PermGroup inn = inner_group(q);
  CHECK(inn.order() == 27);
  CHECK(m.order() == 81 * inn.order());

  // I(Q) equals the stabilizer of the identity in M
  std::vector<Perm> stab;
  for (const Perm& p : m.elements())
    if (p[q.identity()] == q.identity()) stab.push_back(p);
  std::sort(stab.begin(), stab.end());
  REQUIRE(stab.size() == inn.order());
  for (std::size_t i = 0; i < stab.size(); ++i)
    CHECK(stab[i] == inn.elements()[i]);

  // every inner generator fixes the identity
  for (const Perm& g : inn.generators()) CHECK(g[q.identity()] == q.identity());

  auto census = element_order_census(m);
  for (const auto& [ord, cnt] : census) {
    long long o = ord;
    while (o % 3 == 0) o /= 3;
    CHECK(o == 1);
  }

  // M' and M/Z(M) are 3-groups
  PermGroup derived = derived_subgroup(m);
  CHECK(is_p_group(derived, 3));
  PermGroup zm = group_center(m);
  std::size_t quot = m.order() / zm.order();
  while (quot % 3 == 0) quot /= 3;
  CHECK(quot == 1);
}

TEST_CASE("center and derived subgroup of abelian groups") {
  PermGroup m = mult_group(cyclic(9));
  CHECK(group_center(m).order() == m.order());
  CHECK(derived_subgroup(m).order() == 1);
}

TEST_CASE("center formula Z(M) = { L(a) : a in Z(Q) }") {
  CHECK(check_center_formula(cyclic(9)).ok);

  CenterFormulaCheck c81 = check_center_formula(cml81());
  CHECK(c81.ok);
  CHECK(c81.center_order == 3);

  CenterFormulaCheck cp = check_center_formula(direct_product(cyclic(9), cml81()));
  CHECK(cp.ok);
  CHECK(cp.center_order == 27);
}

TEST_CASE("central factor split M = M(D) x M(H)") {
  CentralFactorReport r33 = check_central_factor_split(cyclic(3), cyclic(3));
  CHECK(r33.ok());

  CentralFactorReport r9 = check_central_factor_split(cyclic(9), cml81());
  CHECK(r9.ok());
  CHECK(r9.md_order == 9);
  CHECK(r9.mh_order == 2187);
  CHECK(r9.m_order == 19683);

  CentralFactorReport r2 = check_central_factor_split(cyclic(2), cml81());
  CHECK(r2.ok());
  CHECK(r2.md_order == 2);
  CHECK(r2.m_order == 2 * 2187);

  // the 2-primary part of M is exactly M(D) and sits in the center of M
  CayleyLoop q = direct_product(cyclic(2), cml81());
  PermGroup m = mult_group(q);
  std::vector<Perm> two_part;
  for (const Perm& p : m.elements()) {
    long long o = p.order();
    while (o % 2 == 0) o /= 2;
    if (o == 1) two_part.push_back(p);
  }
  CHECK(two_part.size() == 2);
  for (const Perm& p : two_part)
    for (const Perm& r : m.reduced_generators())
      CHECK(p.after(r) == r.after(p));

  CHECK_THROWS_AS(check_central_factor_split(cml81(), cyclic(3)),
                  NotCentralFactor);
}

TEST_CASE("multiplication groups of 3-loops are 3-groups") {
  CHECK(check_mult_group_is_3_group(cyclic(27)));
  CHECK(check_mult_group_is_3_group(cml81()));
  CHECK(check_mult_group_is_3_group(abelian({3, 9})));
  CHECK_THROWS_AS(check_mult_group_is_3_group(cyclic(2)), PreconditionViolated);
}

TEST_CASE("closure cap") {
  CHECK_THROWS_AS(mult_group(cml81(), 10), CapExceeded);
}

TEST_CASE("group summary report values") {
  GroupSummary s = mult_group_summary(cml81());
  CHECK(s.degree == 81);
  CHECK(s.order == 2187);
  CHECK(s.is_3_group);
  CHECK(s.center_order == 3);
  CHECK(s.census.at(1) == 1);
  CHECK(s.census.at(3) == 2186);
}
