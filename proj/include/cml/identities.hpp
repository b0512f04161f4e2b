#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cml/cayley_loop.hpp"
#include "cml/rng.hpp"
#include "cml/scan.hpp"

namespace cml {

struct ScanConfig {
  int threads = 0;             // <= 0: all cores
  bool exhaustive_quad = false;
  long long sample_budget = 100000;
  std::uint64_t seed = kDefaultSeed;
};

struct CmlCheck {
  bool commutative = false;
  bool moufang = false;
  std::optional<scan::Triple> witness;  // first violating pair/triple
  bool ok() const { return commutative && moufang; }
};

// Commutativity plus the defining identity x^2*yz = xy*xz, exhaustively.
CmlCheck is_cml(const CayleyLoop& q, const ScanConfig& cfg = {});

struct IdentityCheck {
  std::string id;          // the identity, written out
  bool exhaustive = true;  // false when the quadruple scan was sampled
  long long checked = 0;
  bool passed = false;
  std::vector<int> witness;  // empty when passed
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  std::uint64_t seed = 0;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

// The associator calculus on a CML:
//   L(x,y)z = z*(z,y,x)                 exhaustively,
//   (x^p,y^r,z^s) = (x,y,z)^{prs}       on an exponent grid,
//   (x,y,z)^3 = e                       exhaustively,
//   (xy,u,v) = (x,u,v)((x,u,v),x,y)(y,u,v)((y,u,v),y,x)
//                                       exhaustively when n^4 fits the
//                                       budget or cfg.exhaustive_quad is
//                                       set, else on seeded samples.
IdentityReport check_identities(const CayleyLoop& q, const ScanConfig& cfg = {});

// Exponent grid used by the associator power identity.
const std::vector<int>& identity_exponent_grid();

}  // namespace cml
