#include "cml/structure.hpp"

#include <algorithm>

#include "cml/errors.hpp"
#include "cml/scan.hpp"

namespace cml {

SubloopSet center(const CayleyLoop& q, const ScanConfig& cfg) {
  std::vector<std::uint8_t> mask = scan::central_mask(q, cfg.threads);
  std::vector<int> idx;
  for (int x = 0; x < q.size(); ++x)
    if (mask[x]) idx.push_back(x);
  SubloopSet z = SubloopSet::from_indices(q, idx);
  // central elements must already be closed under multiplication
  SubloopSet closed = generate(q, idx);
  if (!(closed == z))
    throw DecompositionFailure("central elements are not closed");
  z.mark_normal();
  return z;
}

bool is_central(const CayleyLoop& q, int x) {
  const int n = q.size();
  const int e = q.identity();
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z)
      if (q.associator(x, y, z) != e) return false;
  return true;
}

CentralSeries upper_central_series(const CayleyLoop& q, const ScanConfig& cfg) {
  CentralSeries s;
  s.terms.push_back(SubloopSet::trivial(q));
  const int n = q.size();

  // Z_{i+1} is the pullback of Z(Q / Z_i); track the projection maps by
  // recomputing the quotient of Q by the current term.
  while (s.terms.back().size() < n) {
    const SubloopSet& cur = s.terms.back();
    QuotientResult qr = quotient(q, cur);
    SubloopSet zq = center(qr.loop, cfg);
    if (zq.size() == 1) throw SeriesStalled();
    std::vector<int> pulled;
    for (int x = 0; x < n; ++x)
      if (zq.contains(qr.projection[x])) pulled.push_back(x);
    SubloopSet next = SubloopSet::from_indices(q, pulled);
    next.mark_normal();
    s.terms.push_back(std::move(next));
  }
  s.cls = static_cast<int>(s.terms.size()) - 1;
  return s;
}

int nilpotency_class(const CayleyLoop& q, const ScanConfig& cfg) {
  return upper_central_series(q, cfg).cls;
}

namespace {

std::vector<int> prime_factors(long long m) {
  std::vector<int> ps;
  for (long long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      ps.push_back(static_cast<int>(p));
      while (m % p == 0) m /= p;
    }
  if (m > 1) ps.push_back(static_cast<int>(m));
  return ps;
}

bool is_prime_power_of(int m, int p) {
  while (m % p == 0) m /= p;
  return m == 1;
}

}  // namespace

PrimaryDecomposition p_decomposition(const CayleyLoop& q) {
  const int n = q.size();
  PrimaryDecomposition d;
  for (int p : prime_factors(q.exponent())) {
    std::vector<int> comp;
    for (int x = 0; x < n; ++x)
      if (is_prime_power_of(q.order_of(x), p)) comp.push_back(x);
    SubloopSet cs = SubloopSet::from_indices(q, comp);
    SubloopSet closed = generate(q, comp);
    if (!(closed == cs))
      throw DecompositionFailure("p-component is not a subloop for p = " +
                                 std::to_string(p));
    if (p != 3) {
      for (int x : comp)
        if (!is_central(q, x))
          throw DecompositionFailure(
              "component for p = " + std::to_string(p) +
              " contains the non-central element " + std::to_string(x));
    }
    d.components.emplace(p, std::move(cs));
  }

  // Reconstruction: the multi-product over one element per component must
  // hit every loop element exactly once.
  long long prod = 1;
  for (const auto& [p, comp] : d.components) prod *= comp.size();
  if (prod != n)
    throw DecompositionFailure("component orders do not multiply to |Q|");
  std::vector<int> partial{q.identity()};
  for (const auto& [p, comp] : d.components) {
    std::vector<int> next;
    next.reserve(partial.size() * comp.size());
    for (int a : partial)
      for (int b : comp.indices()) next.push_back(q.mul(a, b));
    partial = std::move(next);
  }
  std::vector<char> hit(n, 0);
  for (int x : partial) {
    if (hit[x])
      throw DecompositionFailure("reconstruction map is not injective");
    hit[x] = 1;
  }
  return d;
}

HeightResult height(const CayleyLoop& q, int a, int p) {
  const int n = q.size();
  std::vector<char> cur(n, 1);  // image chain, starting from all of Q
  int k = 0;
  for (;;) {
    std::vector<char> next(n, 0);
    for (int x = 0; x < n; ++x)
      if (cur[x]) next[q.power(x, p)] = 1;
    if (next == cur) break;  // stable image reached
    if (!next[a]) return HeightResult{k, false};
    cur = std::move(next);
    ++k;
  }
  return HeightResult{k, true};
}

SubloopSet associator_subloop(const CayleyLoop& q, const ScanConfig& cfg) {
  std::vector<std::uint8_t> mask = scan::associator_value_mask(q, cfg.threads);
  std::vector<int> vals;
  for (int x = 0; x < q.size(); ++x)
    if (mask[x]) vals.push_back(x);
  SubloopSet a = normal_closure(q, vals);

  QuotientResult qr = quotient(q, a);
  const int m = qr.loop.size();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        if (qr.loop.associator(x, y, z) != qr.loop.identity())
          throw DecompositionFailure(
              "quotient by the associator subloop is not associative");
  return a;
}

StructureSummary structure_summary(const CayleyLoop& q, const ScanConfig& cfg) {
  StructureSummary s;
  s.order = q.size();
  s.exponent = q.exponent();
  CentralSeries cs = upper_central_series(q, cfg);
  s.center_order = cs.terms.size() > 1 ? cs.terms[1].size() : 1;
  s.cls = cs.cls;
  for (const SubloopSet& t : cs.terms) s.series_orders.push_back(t.size());
  for (const auto& [p, comp] : p_decomposition(q).components)
    s.primary[p] = comp.size();
  return s;
}

}  // namespace cml
