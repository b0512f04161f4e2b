#include "cml/identities.hpp"

namespace cml {

CmlCheck is_cml(const CayleyLoop& q, const ScanConfig& cfg) {
  CmlCheck r;
  auto comm = scan::commutativity_violation(q, cfg.threads);
  r.commutative = !comm.has_value();
  if (!r.commutative) {
    r.witness = comm;
    return r;
  }
  auto mv = scan::moufang_violation(q, cfg.threads);
  r.moufang = !mv.has_value();
  r.witness = mv;
  return r;
}

const std::vector<int>& identity_exponent_grid() {
  static const std::vector<int> grid{-2, -1, 0, 1, 2, 3};
  return grid;
}

IdentityReport check_identities(const CayleyLoop& q, const ScanConfig& cfg) {
  IdentityReport rep;
  rep.seed = cfg.seed;
  const long long n = q.size();
  const long long n3 = n * n * n;

  {
    IdentityCheck c;
    c.id = "L(x,y)z = z(z,y,x)";
    c.checked = n3;
    auto w = scan::inner_twist_violation(q, cfg.threads);
    c.passed = !w.has_value();
    if (w) c.witness = {w->x, w->y, w->z};
    rep.checks.push_back(std::move(c));
  }
  {
    IdentityCheck c;
    const auto& grid = identity_exponent_grid();
    c.id = "(x^p,y^r,z^s) = (x,y,z)^(prs)";
    c.checked = n3 * static_cast<long long>(grid.size() * grid.size() * grid.size());
    auto w = scan::associator_power_violation(q, grid, cfg.threads);
    c.passed = !w.has_value();
    if (w) c.witness = {w->x, w->y, w->z};
    rep.checks.push_back(std::move(c));
  }
  {
    IdentityCheck c;
    c.id = "(x,y,z)^3 = 1";
    c.checked = n3;
    auto w = scan::associator_cube_violation(q, cfg.threads);
    c.passed = !w.has_value();
    if (w) c.witness = {w->x, w->y, w->z};
    rep.checks.push_back(std::move(c));
  }
  {
    IdentityCheck c;
    c.id = "(xy,u,v) = (x,u,v)((x,u,v),x,y)(y,u,v)((y,u,v),y,x)";
    const long long n4 = n3 * n;
    std::optional<scan::Quad> w;
    // exhaustive up to order 40, sampled above that unless forced
    if (cfg.exhaustive_quad || n <= 40) {
      c.exhaustive = true;
      c.checked = n4;
      w = scan::associator_expansion_violation(q, cfg.threads);
    } else {
      c.exhaustive = false;
      c.checked = cfg.sample_budget;
      w = scan::associator_expansion_violation_sampled(q, cfg.sample_budget,
                                                       cfg.seed, cfg.threads);
    }
    c.passed = !w.has_value();
    if (w) c.witness = {w->x, w->y, w->u, w->v};
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace cml
