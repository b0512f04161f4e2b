#include "cml/multgroup.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "cml/errors.hpp"
#include "cml/structure.hpp"
#include "cml/subloops.hpp"

namespace cml {

Perm::Perm(int degree) : img_(degree) {
  for (int i = 0; i < degree; ++i) img_[i] = static_cast<std::uint16_t>(i);
}

Perm::Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {}

Perm Perm::from_ints(const std::vector<int>& images) {
  std::vector<std::uint16_t> v(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    v[i] = static_cast<std::uint16_t>(images[i]);
  return Perm(std::move(v));
}

Perm Perm::after(const Perm& g) const {
  const int n = degree();
  std::vector<std::uint16_t> v(n);
  for (int i = 0; i < n; ++i) v[i] = img_[g.img_[i]];
  return Perm(std::move(v));
}

Perm Perm::inverse() const {
  const int n = degree();
  std::vector<std::uint16_t> v(n);
  for (int i = 0; i < n; ++i) v[img_[i]] = static_cast<std::uint16_t>(i);
  return Perm(std::move(v));
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

long long Perm::order() const {
  const int n = degree();
  std::vector<char> seen(n, 0);
  long long ord = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    long long len = 0;
    int j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = img_[j];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::uint64_t Perm::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint16_t v : img_) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

// Simple pool + hash set keyed by full image arrays.
struct PermSet {
  std::vector<Perm> pool;
  std::unordered_multimap<std::uint64_t, std::uint32_t> index;

  bool insert(Perm p) {
    std::uint64_t h = p.hash();
    auto [lo, hi] = index.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (pool[it->second] == p) return false;
    index.emplace(h, static_cast<std::uint32_t>(pool.size()));
    pool.push_back(std::move(p));
    return true;
  }

  bool contains(const Perm& p) const {
    auto [lo, hi] = index.equal_range(p.hash());
    for (auto it = lo; it != hi; ++it)
      if (pool[it->second] == p) return true;
    return false;
  }
};

std::vector<Perm> dedup(std::vector<Perm> perms) {
  PermSet s;
  std::vector<Perm> out;
  for (Perm& p : perms)
    if (s.insert(p)) out.push_back(std::move(p));
  return out;
}

// BFS closure of the generator set under right composition.
PermSet bfs_closure(const std::vector<Perm>& gens, int degree, std::size_t cap) {
  PermSet s;
  s.insert(Perm(degree));
  std::size_t head = 0;
  while (head < s.pool.size()) {
    Perm cur = s.pool[head++];
    for (const Perm& g : gens) {
      Perm next = cur.after(g);
      if (s.insert(std::move(next)) && s.pool.size() > cap)
        throw CapExceeded(cap, s.pool.size());
    }
  }
  return s;
}

// Continue a closure after feeding an extra generator: reprocess the whole
// pool against the enlarged generator set until the fixed point returns.
void bfs_extend(PermSet& s, std::vector<Perm>& gens, const Perm& extra,
                std::size_t cap) {
  gens.push_back(extra);
  s.insert(extra);
  std::size_t head = 0;
  while (head < s.pool.size()) {
    Perm cur = s.pool[head++];
    for (const Perm& g : gens) {
      Perm next = cur.after(g);
      if (s.insert(std::move(next)) && s.pool.size() > cap)
        throw CapExceeded(cap, s.pool.size());
    }
  }
}

}  // namespace

PermGroup PermGroup::closure(std::vector<Perm> generators, std::size_t cap) {
  if (generators.empty()) throw Error("closure needs at least one generator");
  const int degree = generators[0].degree();
  std::vector<Perm> gens = dedup(std::move(generators));
  PermSet s = bfs_closure(gens, degree, cap);

  PermGroup g;
  g.degree_ = degree;
  g.generators_ = gens;
  g.reduced_ = gens;
  g.elements_ = std::move(s.pool);
  std::sort(g.elements_.begin(), g.elements_.end());
  g.build_index();
  return g;
}

PermGroup PermGroup::from_closed_set(std::vector<Perm> elements) {
  PermGroup g;
  if (elements.empty()) throw Error("empty element set");
  g.degree_ = elements[0].degree();
  std::sort(elements.begin(), elements.end());
  g.elements_ = std::move(elements);
  // Greedy reduced generating set: grow a closure until it covers the set.
  std::vector<Perm> gens;
  PermSet span;
  span.insert(Perm(g.degree_));
  for (const Perm& p : g.elements_) {
    if (span.contains(p)) continue;
    gens.push_back(p);
    span = bfs_closure(gens, g.degree_, g.elements_.size() + 1);
  }
  if (gens.empty()) gens.push_back(Perm(g.degree_));
  g.generators_ = gens;
  g.reduced_ = std::move(gens);
  g.build_index();
  return g;
}

void PermGroup::build_index() {
  const std::size_t m = elements_.size() * 2 + 1;
  buckets_.assign(m, UINT32_MAX);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    std::size_t b = elements_[i].hash() % m;
    while (buckets_[b] != UINT32_MAX) b = (b + 1) % m;
    buckets_[b] = static_cast<std::uint32_t>(i);
  }
}

bool PermGroup::contains(const Perm& p) const {
  if (elements_.empty()) throw NotMaterialized();
  const std::size_t m = buckets_.size();
  std::size_t b = p.hash() % m;
  while (buckets_[b] != UINT32_MAX) {
    if (elements_[buckets_[b]] == p) return true;
    b = (b + 1) % m;
  }
  return false;
}

namespace {

// Greedy generating set of the loop itself: seeds the translation closure.
std::vector<int> loop_generators(const CayleyLoop& q) {
  std::vector<int> gens;
  SubloopSet span = SubloopSet::trivial(q);
  for (int x = 0; x < q.size(); ++x) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = generate(q, gens);
  }
  return gens;
}

}  // namespace

PermGroup mult_group(const CayleyLoop& q, std::size_t cap) {
  const int n = q.size();
  std::vector<Perm> seed;
  for (int x : loop_generators(q)) seed.push_back(Perm::from_ints(q.translation(x)));
  if (seed.empty()) seed.push_back(Perm(n));

  std::vector<Perm> gens = dedup(std::move(seed));
  PermSet s = bfs_closure(gens, n, cap);
  // The translations of a generating set need not generate the whole
  // multiplication group a priori; verify and feed in any strays.
  for (int x = 0; x < n; ++x) {
    Perm lx = Perm::from_ints(q.translation(x));
    if (!s.contains(lx)) bfs_extend(s, gens, lx, cap);
  }

  PermGroup g;
  g.degree_ = n;
  for (int x = 0; x < n; ++x)
    g.generators_.push_back(Perm::from_ints(q.translation(x)));
  g.generators_ = dedup(std::move(g.generators_));
  g.reduced_ = std::move(gens);
  g.elements_ = std::move(s.pool);
  std::sort(g.elements_.begin(), g.elements_.end());
  g.build_index();
  return g;
}

PermGroup inner_group(const CayleyLoop& q, std::size_t cap) {
  const int n = q.size();
  std::vector<Perm> gens;
  {
    PermSet distinct;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        Perm p = Perm::from_ints(q.inner_mapping(x, y));
        if (distinct.insert(p)) gens.push_back(std::move(p));
      }
  }
  return PermGroup::closure(std::move(gens), cap);
}

PermGroup group_center(const PermGroup& g) {
  std::vector<Perm> central;
  for (const Perm& p : g.elements()) {
    bool ok = true;
    for (const Perm& r : g.reduced_generators())
      if (!(p.after(r) == r.after(p))) {
        ok = false;
        break;
      }
    if (ok) central.push_back(p);
  }
  return PermGroup::from_closed_set(std::move(central));
}

PermGroup derived_subgroup(const PermGroup& g) {
  // Normal closure of the commutators of a generating set: alternate
  // subgroup closure with conjugation by the generators until stable.
  const auto& gens = g.reduced_generators();
  std::vector<Perm> seed;
  {
    PermSet distinct;
    for (const Perm& a : gens)
      for (const Perm& b : gens) {
        Perm c = a.inverse().after(b.inverse()).after(a).after(b);
        if (distinct.insert(c)) seed.push_back(std::move(c));
      }
  }
  if (seed.empty()) seed.push_back(Perm(g.degree()));
  for (;;) {
    PermSet s = bfs_closure(seed, g.degree(), g.order());
    bool grew = false;
    for (const Perm& p : s.pool) {
      for (const Perm& r : gens) {
        Perm conj = r.inverse().after(p).after(r);
        if (!s.contains(conj)) {
          seed.push_back(std::move(conj));
          grew = true;
        }
      }
    }
    if (!grew) return PermGroup::from_closed_set(std::move(s.pool));
  }
}

bool is_p_group(const PermGroup& g, int p) {
  std::size_t m = g.order();
  while (m % p == 0) m /= p;
  if (m != 1) return false;
  for (const auto& [ord, cnt] : element_order_census(g)) {
    long long o = ord;
    while (o % p == 0) o /= p;
    if (o != 1) return false;
  }
  return true;
}

std::map<long long, long long> element_order_census(const PermGroup& g) {
  if (g.elements().empty()) throw NotMaterialized();
  std::map<long long, long long> census;
  for (const Perm& p : g.elements()) ++census[p.order()];
  return census;
}

CenterFormulaCheck check_center_formula(const CayleyLoop& q, std::size_t cap,
                                        const ScanConfig& cfg) {
  PermGroup m = mult_group(q, cap);
  PermGroup zm = group_center(m);
  SubloopSet zq = center(q, cfg);

  std::vector<Perm> translations;
  for (int a : zq.indices()) translations.push_back(Perm::from_ints(q.translation(a)));
  std::sort(translations.begin(), translations.end());

  CenterFormulaCheck r;
  r.center_order = zm.order();
  r.central_translations = translations.size();
  if (translations.size() != zm.order()) {
    r.ok = false;
    r.witness = "set sizes differ: |Z(M)| = " + std::to_string(zm.order()) +
                ", central translations = " + std::to_string(translations.size());
    return r;
  }
  for (std::size_t i = 0; i < translations.size(); ++i)
    if (!(translations[i] == zm.elements()[i])) {
      r.ok = false;
      r.witness = "element mismatch at sorted position " + std::to_string(i);
      return r;
    }
  r.ok = true;
  return r;
}

CentralFactorReport check_central_factor_split(const CayleyLoop& d,
                                               const CayleyLoop& h,
                                               std::size_t cap) {
  CayleyLoop q = direct_product(d, h);
  const int n2 = h.size();
  CentralFactorReport rep;

  // D embeds as (a, e_H).
  rep.central_factor = true;
  for (int a = 0; a < d.size(); ++a)
    if (!is_central(q, a * n2 + h.identity())) {
      rep.central_factor = false;
      break;
    }
  if (!rep.central_factor)
    throw NotCentralFactor("first factor is not central in the product");

  PermGroup m = mult_group(q, cap);
  rep.m_order = m.order();

  std::vector<Perm> d_translations;
  for (int a = 0; a < d.size(); ++a)
    d_translations.push_back(Perm::from_ints(q.translation(a * n2 + h.identity())));
  PermGroup md = PermGroup::closure(d_translations, cap);
  rep.md_order = md.order();

  std::vector<Perm> h_translations;
  for (int b = 0; b < h.size(); ++b)
    h_translations.push_back(
        Perm::from_ints(q.translation(d.identity() * n2 + b)));
  PermGroup mh = PermGroup::closure(h_translations, cap);
  rep.mh_order = mh.order();

  // M(D) <= Z(M): commutation against a certified generating set of M.
  rep.md_in_center = true;
  for (const Perm& p : md.elements()) {
    for (const Perm& r : m.reduced_generators())
      if (!(p.after(r) == r.after(p))) {
        rep.md_in_center = false;
        break;
      }
    if (!rep.md_in_center) break;
  }

  rep.intersection_trivial = true;
  for (const Perm& p : md.elements())
    if (!p.is_identity() && mh.contains(p)) {
      rep.intersection_trivial = false;
      break;
    }

  rep.product_covers = md.order() * mh.order() == m.order();

  // a -> L((a, e)) is multiplicative, injective, and onto M(D).
  rep.md_isomorphic_d = d_translations.size() == static_cast<std::size_t>(d.size());
  for (int a = 0; a < d.size() && rep.md_isomorphic_d; ++a)
    for (int b = 0; b < d.size(); ++b) {
      Perm lhs = d_translations[a].after(d_translations[b]);
      if (!(lhs == d_translations[d.mul(a, b)])) {
        rep.md_isomorphic_d = false;
        break;
      }
    }
  if (rep.md_isomorphic_d) {
    std::vector<Perm> sorted = d_translations;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != static_cast<std::size_t>(d.size()) ||
        sorted.size() != md.order())
      rep.md_isomorphic_d = false;
  }
  return rep;
}

bool check_mult_group_is_3_group(const CayleyLoop& q, std::size_t cap) {
  for (int x = 0; x < q.size(); ++x) {
    int m = q.order_of(x);
    while (m % 3 == 0) m /= 3;
    if (m != 1)
      throw PreconditionViolated("loop has an element whose order is not a "
                                 "power of 3");
  }
  return is_p_group(mult_group(q, cap), 3);
}

GroupSummary mult_group_summary(const CayleyLoop& q, std::size_t cap) {
  PermGroup m = mult_group(q, cap);
  GroupSummary s;
  s.degree = m.degree();
  s.order = m.order();
  s.is_3_group = is_p_group(m, 3);
  s.center_order = group_center(m).order();
  s.derived_order = derived_subgroup(m).order();
  s.census = element_order_census(m);
  return s;
}

}  // namespace cml
