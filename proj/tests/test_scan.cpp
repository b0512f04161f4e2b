// The OpenMP kernels must produce exactly the serial reference results:
// same pass/fail, same lexicographically-first witness, independent of the
// thread count.

#include "doctest.h"

#include "cml/builtins.hpp"
#include "cml/identities.hpp"
#include "cml/scan.hpp"

using namespace cml;

namespace {

CayleyLoop loop5() {
  return CayleyLoop::validate(
      {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 3, 4, 0, 1}, {3, 4, 1, 2, 0},
       {4, 2, 0, 1, 3}},
      "loop5");
}

bool same(const std::optional<scan::Triple>& a,
          const std::optional<scan::Triple>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (*a == *b);
}

bool same(const std::optional<scan::Quad>& a, const std::optional<scan::Quad>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (*a == *b);
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference") {
  std::vector<CayleyLoop> loops;
  loops.push_back(cml81());
  loops.push_back(cyclic(27));
  loops.push_back(loop5());
  loops.push_back(abelian({2, 9}));

  for (const CayleyLoop& q : loops) {
    CAPTURE(q.name());
    for (int threads : {2, 4}) {
      CAPTURE(threads);
      CHECK(same(scan::moufang_violation(q, threads),
                 scan::serial::moufang_violation(q)));
      CHECK(same(scan::inner_twist_violation(q, threads),
                 scan::serial::inner_twist_violation(q)));
      CHECK(same(scan::associator_cube_violation(q, threads),
                 scan::serial::associator_cube_violation(q)));
      CHECK(same(scan::associator_power_violation(q, identity_exponent_grid(),
                                                  threads),
                 scan::serial::associator_power_violation(
                     q, identity_exponent_grid())));
      CHECK(scan::central_mask(q, threads) == scan::serial::central_mask(q));
      CHECK(scan::associator_value_mask(q, threads) ==
            scan::serial::associator_value_mask(q));
      CHECK(same(scan::associator_expansion_violation_sampled(q, 2000, 42,
                                                              threads),
                 scan::serial::associator_expansion_violation_sampled(q, 2000,
                                                                      42)));
    }
  }

  // exhaustive quadruple scan on small loops only
  for (const CayleyLoop* q : {&loops[1], &loops[2]}) {
    CHECK(same(scan::associator_expansion_violation(*q, 2),
               scan::serial::associator_expansion_violation(*q)));
  }
}

TEST_CASE("witness is the lexicographically first violation") {
  CayleyLoop q5 = loop5();
  auto w = scan::moufang_violation(q5, 4);
  REQUIRE(w.has_value());
  // nothing lexicographically smaller violates
  bool found_smaller = false;
  for (int x = 0; x <= w->x && !found_smaller; ++x)
    for (int y = 0; y < q5.size() && !found_smaller; ++y)
      for (int z = 0; z < q5.size(); ++z) {
        if (x == w->x && (y > w->y || (y == w->y && z >= w->z))) break;
        int sq = q5.mul(x, x);
        if (q5.mul(sq, q5.mul(y, z)) != q5.mul(q5.mul(x, y), q5.mul(x, z))) {
          found_smaller = true;
          break;
        }
      }
  CHECK_FALSE(found_smaller);
}

TEST_CASE("sampled expansion scan is seed-deterministic") {
  const CayleyLoop& q = cml81();
  auto a = scan::associator_expansion_violation_sampled(q, 5000, 7, 2);
  auto b = scan::associator_expansion_violation_sampled(q, 5000, 7, 4);
  CHECK(same(a, b));
}

TEST_CASE("identity report on Z27: everything holds, quadruple scan exhaustive") {
  IdentityReport rep = check_identities(cyclic(27));
  CHECK(rep.all_passed());
  REQUIRE(rep.checks.size() == 4);
  CHECK(rep.checks.back().exhaustive);  // order 27 is under the threshold
  CHECK(rep.checks.back().checked == 531441);

  // above order 40 the quadruple scan samples unless forced
  IdentityReport rep81 = check_identities(cml81());
  CHECK(rep81.all_passed());
  CHECK_FALSE(rep81.checks.back().exhaustive);
  ScanConfig force;
  force.exhaustive_quad = true;
  IdentityReport rep81x = check_identities(cml81(), force);
  CHECK(rep81x.all_passed());
  CHECK(rep81x.checks.back().exhaustive);
}
