#include "cml/mincond.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "cml/errors.hpp"
#include "cml/identities.hpp"
#include "cml/structure.hpp"

namespace cml {

// ---------------------------------------------------------------------------
// fractions
// ---------------------------------------------------------------------------

Fraction Fraction::reduced(long long num, long long den) {
  if (den <= 0) throw PreconditionViolated("fraction denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  if (num == 0) return Fraction{0, 1};
  long long g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

Fraction frac_add(const Fraction& a, const Fraction& b) {
  long long g = std::gcd(a.den, b.den);
  long long den = a.den / g * b.den;
  return Fraction::reduced(a.num * (den / a.den) + b.num * (den / b.den), den);
}

Fraction frac_neg(const Fraction& a) { return Fraction::reduced(-a.num, a.den); }

Fraction frac_scale(const Fraction& a, long long k) {
  long long r = k % a.den;
  return Fraction::reduced(a.num * r, a.den);
}

std::string fraction_to_string(const Fraction& f) {
  if (f.is_zero()) return "0";
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

Fraction fraction_from_string(const std::string& s) {
  if (s == "0") return Fraction{0, 1};
  auto slash = s.find('/');
  if (slash == std::string::npos)
    throw ParseError("fraction must be \"0\" or \"a/b\": " + s);
  long long num, den;
  try {
    num = std::stoll(s.substr(0, slash));
    den = std::stoll(s.substr(slash + 1));
  } catch (const std::exception&) {
    throw ParseError("bad fraction: " + s);
  }
  if (den <= 0) throw ParseError("bad fraction denominator: " + s);
  return Fraction::reduced(num, den);
}

// ---------------------------------------------------------------------------
// structured CML
// ---------------------------------------------------------------------------

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long long int_pow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (1LL << 50) / base) throw CapExceeded(1LL << 50, 0);
    r *= base;
  }
  return r;
}

bool is_power_of(long long m, int p) {
  while (m % p == 0) m /= p;
  return m == 1;
}

}  // namespace

StructuredCml::StructuredCml(std::vector<int> summand_primes,
                             CayleyLoop finite_part, bool verify_cml)
    : primes_(std::move(summand_primes)), finite_(std::move(finite_part)) {
  for (int p : primes_)
    if (!is_prime(p))
      throw PreconditionViolated("summand parameter " + std::to_string(p) +
                                 " is not prime");
  if (verify_cml) {
    CmlCheck c = is_cml(finite_);
    if (!c.ok())
      throw PreconditionViolated("finite part is not a commutative Moufang loop");
    finite_.set_cml_flag(true);
  }
}

SElem StructuredCml::identity() const {
  return SElem{std::vector<Fraction>(primes_.size()), finite_.identity()};
}

bool StructuredCml::is_identity(const SElem& a) const {
  if (a.fin != finite_.identity()) return false;
  for (const Fraction& f : a.div)
    if (!f.is_zero()) return false;
  return true;
}

void StructuredCml::check_element(const SElem& a) const {
  if (a.div.size() != primes_.size())
    throw PreconditionViolated("element has wrong number of summand coordinates");
  for (std::size_t i = 0; i < a.div.size(); ++i) {
    const Fraction& f = a.div[i];
    Fraction canon = Fraction::reduced(f.num, f.den);
    if (!(canon == f)) throw PreconditionViolated("fraction is not canonical");
    if (!f.is_zero() && !is_power_of(f.den, primes_[i]))
      throw PreconditionViolated("fraction denominator is not a power of the "
                                 "summand prime");
  }
  if (a.fin < 0 || a.fin >= finite_.size())
    throw PreconditionViolated("finite coordinate out of range");
}

SElem StructuredCml::mul(const SElem& a, const SElem& b) const {
  SElem r;
  r.div.resize(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i)
    r.div[i] = frac_add(a.div[i], b.div[i]);
  r.fin = finite_.mul(a.fin, b.fin);
  return r;
}

SElem StructuredCml::inv(const SElem& a) const {
  SElem r;
  r.div.resize(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) r.div[i] = frac_neg(a.div[i]);
  r.fin = finite_.inverse(a.fin);
  return r;
}

SElem StructuredCml::pow(const SElem& a, long long k) const {
  SElem r;
  r.div.resize(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i)
    r.div[i] = frac_scale(a.div[i], k);
  r.fin = finite_.power(a.fin, k);
  return r;
}

long long StructuredCml::order_of(const SElem& a) const {
  long long ord = finite_.order_of(a.fin);
  for (const Fraction& f : a.div) ord = std::lcm(ord, f.den);
  return ord;
}

SElem s_mul(const StructuredCml& q, const SElem& a, const SElem& b) {
  return q.mul(a, b);
}
SElem s_inv(const StructuredCml& q, const SElem& a) { return q.inv(a); }
SElem s_pow(const StructuredCml& q, const SElem& a, long long k) {
  return q.pow(a, k);
}
long long s_order(const StructuredCml& q, const SElem& a) { return q.order_of(a); }

// ---------------------------------------------------------------------------
// structured subloops
// ---------------------------------------------------------------------------

StructuredSubloop::StructuredSubloop(const StructuredCml& owner,
                                     std::vector<int> full,
                                     std::vector<SElem> residual_closed)
    : full_(std::move(full)) {
  std::sort(full_.begin(), full_.end());
  full_.erase(std::unique(full_.begin(), full_.end()), full_.end());
  for (int i : full_)
    if (i < 0 || i >= owner.num_summands())
      throw PreconditionViolated("full summand index out of range");
  // canonical form: residual fractions of full summands are projected away
  for (SElem& e : residual_closed) {
    owner.check_element(e);
    for (int i : full_) e.div[i] = Fraction{0, 1};
  }
  std::sort(residual_closed.begin(), residual_closed.end());
  residual_closed.erase(
      std::unique(residual_closed.begin(), residual_closed.end()),
      residual_closed.end());
  residual_ = std::move(residual_closed);
  if (residual_.empty() || !std::binary_search(residual_.begin(), residual_.end(),
                                               owner.identity()))
    throw PreconditionViolated("subloop residual must contain the identity");
}

StructuredSubloop StructuredSubloop::trivial(const StructuredCml& owner) {
  return StructuredSubloop(owner, {}, {owner.identity()});
}

bool StructuredSubloop::contains(const SElem& a) const {
  SElem proj = a;
  for (int i : full_) proj.div[i] = Fraction{0, 1};
  return std::binary_search(residual_.begin(), residual_.end(), proj);
}

bool StructuredSubloop::same_set(const StructuredSubloop& other) const {
  return full_ == other.full_ && residual_ == other.residual_;
}

namespace {

// Distinct inner-mapping permutations of the finite part; inner mappings of
// Q act on the finite coordinate only because D is central.
std::vector<std::vector<int>> distinct_inner_perms(const CayleyLoop& c) {
  std::set<std::vector<int>> seen;
  for (int x = 0; x < c.size(); ++x)
    for (int y = 0; y < c.size(); ++y) seen.insert(c.inner_mapping(x, y));
  return {seen.begin(), seen.end()};
}

// `stop` may abort the closure early once some discovered element settles
// the caller's question; the partial set is then discarded.
std::vector<SElem> closure_elements(const StructuredCml& q,
                                    const std::vector<SElem>& gens,
                                    const std::vector<std::vector<int>>* inner,
                                    std::size_t cap,
                                    const std::function<bool(const SElem&)>* stop
                                    = nullptr) {
  std::set<SElem> members;
  std::vector<SElem> list;  // discovery order; doubles as the worklist
  members.insert(q.identity());
  list.push_back(q.identity());
  bool stopped = false;
  auto add = [&](SElem e) {
    if (members.insert(e).second) {
      if (members.size() > cap) throw CapExceeded(cap, members.size());
      if (stop && (*stop)(e)) stopped = true;
      list.push_back(std::move(e));
    }
  };
  for (const SElem& g : gens) {
    q.check_element(g);
    add(g);
    if (stopped) return {};
  }
  // Every ordered pair is eventually multiplied: when the later of the two
  // elements is processed, the earlier one is already in the list.
  for (std::size_t head = 0; head < list.size() && !stopped; ++head) {
    SElem u = list[head];
    add(q.inv(u));
    if (inner)
      for (const std::vector<int>& perm : *inner) {
        SElem t = u;
        t.fin = perm[u.fin];
        add(std::move(t));
      }
    for (std::size_t i = 0; i <= head && i < list.size() && !stopped; ++i) {
      add(q.mul(u, list[i]));
      add(q.mul(list[i], u));
    }
  }
  if (stopped) return {};
  return {members.begin(), members.end()};
}

}  // namespace

StructuredSubloop s_generate(const StructuredCml& q,
                             const std::vector<SElem>& gens, std::size_t cap) {
  return StructuredSubloop(q, {}, closure_elements(q, gens, nullptr, cap));
}

StructuredSubloop s_normal_closure(const StructuredCml& q,
                                   const std::vector<SElem>& gens,
                                   std::size_t cap) {
  std::vector<std::vector<int>> inner = distinct_inner_perms(q.finite_part());
  return StructuredSubloop(q, {}, closure_elements(q, gens, &inner, cap));
}

// ---------------------------------------------------------------------------
// heights
// ---------------------------------------------------------------------------

namespace {

// Iterated cube-image chain of the finite part: chain[k] = C^{3^k}.
struct CubeChain {
  std::vector<std::vector<char>> images;  // images[k][x]
  int stable_index;                       // first k with images[k] stable
};

CubeChain cube_chain(const CayleyLoop& c) {
  CubeChain cc;
  std::vector<char> cur(c.size(), 1);
  cc.images.push_back(cur);
  for (;;) {
    std::vector<char> next(c.size(), 0);
    for (int x = 0; x < c.size(); ++x)
      if (cur[x]) next[c.power(x, 3)] = 1;
    if (next == cur) break;
    cc.images.push_back(next);
    cur = std::move(next);
  }
  cc.stable_index = static_cast<int>(cc.images.size()) - 1;
  return cc;
}

}  // namespace

Height3 height3(const StructuredCml& q, const SElem& a) {
  q.check_element(a);
  // The divisible part never obstructs: multiplication by 3 is onto every
  // quasicyclic summand. Solvability of x^{3^n} = a is decided by the
  // finite coordinate alone.
  CubeChain cc = cube_chain(q.finite_part());
  const int s = cc.stable_index;
  bool saturating = cc.images[s][a.fin];
  if (saturating) {
    bool has_3_summand = false;
    for (int i = 0; i < q.num_summands(); ++i)
      if (q.summand_prime(i) == 3) has_3_summand = true;
    if (has_3_summand) return Height3{true, 0, true};
    return Height3{false, s, true};
  }
  int k = 0;
  while (k + 1 <= s && cc.images[k + 1][a.fin]) ++k;
  return Height3{false, k, false};
}

// ---------------------------------------------------------------------------
// socle and cogenerators
// ---------------------------------------------------------------------------

StructuredSubloop socle(const StructuredCml& q, int p) {
  if (!is_prime(p)) throw PreconditionViolated("socle parameter must be prime");
  std::vector<std::vector<Fraction>> per_summand(q.num_summands());
  for (int i = 0; i < q.num_summands(); ++i) {
    per_summand[i].push_back(Fraction{0, 1});
    if (q.summand_prime(i) == p)
      for (int a = 1; a < p; ++a)
        per_summand[i].push_back(Fraction::reduced(a, p));
  }
  std::vector<int> fins = layer(q.finite_part(), p).subloop.indices();

  std::vector<SElem> elems;
  std::vector<SElem> partial{q.identity()};
  for (int i = 0; i < q.num_summands(); ++i) {
    std::vector<SElem> next;
    for (const SElem& e : partial)
      for (const Fraction& f : per_summand[i]) {
        SElem t = e;
        t.div[i] = f;
        next.push_back(std::move(t));
      }
    partial = std::move(next);
  }
  for (const SElem& e : partial)
    for (int fin : fins) {
      SElem t = e;
      t.fin = fin;
      elems.push_back(std::move(t));
    }
  return StructuredSubloop(q, {}, std::move(elems));
}

StructuredSubloop s_cogenerator_subloop(const StructuredCml& q) {
  std::set<int> primes(q.summand_primes().begin(), q.summand_primes().end());
  const CayleyLoop& c = q.finite_part();
  for (int x = 0; x < c.size(); ++x) {
    int m = c.order_of(x);
    for (int p = 2; p <= m; ++p)
      if (m % p == 0) {
        primes.insert(p);
        while (m % p == 0) m /= p;
      }
  }
  std::vector<SElem> gens;
  for (int p : primes) {
    StructuredSubloop s = socle(q, p);
    gens.insert(gens.end(), s.residual().begin(), s.residual().end());
  }
  return s_generate(q, gens);
}

SCogeneratingCheck s_is_cogenerating(const StructuredCml& q,
                                     const StructuredSubloop& b, int trials,
                                     std::uint64_t seed) {
  SCogeneratingCheck res;
  res.seed = seed;
  Rng rng(seed);
  std::vector<std::vector<int>> inner = distinct_inner_perms(q.finite_part());

  for (int t = 0; t < trials; ++t) {
    SElem a = q.identity();
    do {
      for (int i = 0; i < q.num_summands(); ++i) {
        int k = static_cast<int>(rng.below(4));
        long long den = int_pow(q.summand_prime(i), k);
        a.div[i] = Fraction::reduced(static_cast<long long>(rng.below(den)), den);
      }
      a.fin = static_cast<int>(rng.below(q.finite_part().size()));
    } while (q.is_identity(a));

    // The closure may stop as soon as it discovers a nonidentity element
    // of B: any intermediate element lies in the final normal closure H,
    // so it already witnesses B meeting H.
    std::function<bool(const SElem&)> in_b = [&](const SElem& e) {
      return !q.is_identity(e) && b.contains(e);
    };
    std::vector<SElem> h = closure_elements(q, {a}, &inner, 1000000, &in_b);
    ++res.trials;
    bool meets = h.empty();  // stopped early: witness found
    for (const SElem& e : h)
      if (!q.is_identity(e) && b.contains(e)) {
        meets = true;
        break;
      }
    if (!meets) {
      res.ok = false;
      res.counterexample_seed_element = a;
      return res;
    }
  }
  res.ok = true;
  return res;
}

// ---------------------------------------------------------------------------
// divisible part, split, complement
// ---------------------------------------------------------------------------

StructuredSubloop divisible_part(const StructuredCml& q,
                                 const StructuredSubloop& h) {
  return StructuredSubloop(q, h.full(), {q.identity()});
}

ReducedSplit reduced_split(const StructuredCml& q) {
  std::vector<int> all(q.num_summands());
  for (int i = 0; i < q.num_summands(); ++i) all[i] = i;
  std::vector<SElem> c_image;
  for (int x = 0; x < q.finite_part().size(); ++x) {
    SElem e = q.identity();
    e.fin = x;
    c_image.push_back(std::move(e));
  }
  return ReducedSplit{StructuredSubloop(q, all, {q.identity()}),
                      StructuredSubloop(q, {}, std::move(c_image))};
}

namespace {

// Greedy generating set of a finite abelian loop (used on the quotient of
// the finite part by its associator subloop).
std::vector<int> abelian_generators(const CayleyLoop& g) {
  std::vector<int> gens;
  SubloopSet span = SubloopSet::trivial(g);
  for (int x = 0; x < g.size(); ++x) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = generate(g, gens);
  }
  return gens;
}

struct HomSearch {
  const CayleyLoop& cq;                  // abelian quotient of the finite part
  const std::vector<long long>& target;  // cyclic orders t_i per summand
  const std::map<int, std::vector<long long>>& required;
  std::vector<int> gens;
  std::vector<std::vector<long long>> val;  // residue vectors per element
  std::vector<char> assigned;

  HomSearch(const CayleyLoop& cq_, const std::vector<long long>& target_,
            const std::map<int, std::vector<long long>>& required_)
      : cq(cq_), target(target_), required(required_) {
    gens = abelian_generators(cq);
    val.assign(cq.size(), {});
    assigned.assign(cq.size(), 0);
  }

  bool check_required(int elem) const {
    auto it = required.find(elem);
    return it == required.end() || it->second == val[elem];
  }

  // Extend the partial map over span * <g> with image v; returns the list
  // of newly assigned elements for rollback, or nullopt on conflict.
  std::optional<std::vector<int>> extend(const std::vector<int>& span, int g,
                                         const std::vector<long long>& v) {
    std::vector<int> added;
    auto rollback = [&]() {
      for (int e : added) assigned[e] = 0;
    };
    int ord = cq.order_of(g);
    int gp = cq.identity();
    std::vector<long long> shift(target.size(), 0);
    for (int t = 0; t < ord; ++t) {
      for (int s : span) {
        int elem = cq.mul(s, gp);
        std::vector<long long> want(target.size());
        for (std::size_t i = 0; i < target.size(); ++i)
          want[i] = (val[s][i] + shift[i]) % target[i];
        if (assigned[elem]) {
          if (val[elem] != want) {
            rollback();
            return std::nullopt;
          }
        } else {
          val[elem] = want;
          assigned[elem] = 1;
          added.push_back(elem);
          if (!check_required(elem)) {
            rollback();
            return std::nullopt;
          }
        }
      }
      gp = cq.mul(gp, g);
      for (std::size_t i = 0; i < target.size(); ++i)
        shift[i] = (shift[i] + v[i]) % target[i];
    }
    return added;
  }

  // Candidate images for a generator of order `ord`: per coordinate the
  // multiples of t_i / gcd(t_i, ord), in ascending order; the zero map
  // comes first overall.
  std::vector<std::vector<long long>> candidates(int ord) const {
    std::vector<std::vector<long long>> per(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
      long long step = target[i] / std::gcd(target[i], static_cast<long long>(ord));
      for (long long r = 0; r < target[i]; r += step) per[i].push_back(r);
    }
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur(target.size(), 0);
    std::vector<std::size_t> pos(target.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < target.size(); ++i) cur[i] = per[i][pos[i]];
      out.push_back(cur);
      std::size_t i = target.size();
      while (i > 0) {
        --i;
        if (++pos[i] < per[i].size()) break;
        pos[i] = 0;
        if (i == 0) return out;
      }
      if (target.empty()) return out;
    }
  }

  bool dfs(std::size_t j, std::vector<int> span) {
    if (j == gens.size()) return true;
    int g = gens[j];
    for (const auto& v : candidates(cq.order_of(g))) {
      auto added = extend(span, g, v);
      if (!added) continue;
      std::vector<int> next_span = span;
      next_span.insert(next_span.end(), added->begin(), added->end());
      if (dfs(j + 1, next_span)) return true;
      for (int e : *added) assigned[e] = 0;
    }
    return false;
  }

  bool run() {
    int e = cq.identity();
    val[e].assign(target.size(), 0);
    assigned[e] = 1;
    if (!check_required(e)) return false;
    return dfs(0, {e});
  }
};

}  // namespace

StructuredSubloop divisible_complement(const StructuredCml& q,
                                       const StructuredSubloop& b) {
  if (!b.is_finite())
    throw PreconditionViolated("B must be finite (no full summands)");
  for (const SElem& e : b.residual())
    if (e.fin == q.finite_part().identity() && !q.is_identity(e))
      throw PreconditionViolated("B meets the divisible part nontrivially");
  // B must be closed; the subloop representation promises it, verify anyway.
  for (const SElem& x : b.residual())
    for (const SElem& y : b.residual())
      if (!b.contains(q.mul(x, y)))
        throw PreconditionViolated("B is not closed under multiplication");

  const CayleyLoop& c = q.finite_part();
  SubloopSet assoc = associator_subloop(c);
  QuotientResult qr = quotient(c, assoc);

  // Homomorphism images live in the exponent-bounded truncation of D.
  std::vector<long long> target(q.num_summands());
  long long expc = c.exponent();
  for (int i = 0; i < q.num_summands(); ++i) {
    long long t = 1;
    long long m = expc;
    while (m % q.summand_prime(i) == 0) {
      m /= q.summand_prime(i);
      t *= q.summand_prime(i);
    }
    target[i] = t;
  }

  // Constraints: psi(pi(fin(b))) = div(b) for every element of B.
  std::map<int, std::vector<long long>> required;
  for (const SElem& e : b.residual()) {
    std::vector<long long> res(q.num_summands());
    for (int i = 0; i < q.num_summands(); ++i) {
      if (target[i] % e.div[i].den != 0)
        throw NoComplementFound(
            "B requires an image outside the exponent-bounded truncation of "
            "the divisible part");
      res[i] = e.div[i].num * (target[i] / e.div[i].den);
    }
    int key = qr.projection[e.fin];
    auto [it, inserted] = required.emplace(key, res);
    if (!inserted && it->second != res)
      throw NoComplementFound(
          "B forces two different images on one coset of the associator "
          "subloop; no complement through B exists");
  }

  HomSearch search(qr.loop, target, required);
  if (!search.run())
    throw NoComplementFound("homomorphism search exhausted");

  std::vector<SElem> graph;
  graph.reserve(c.size());
  for (int x = 0; x < c.size(); ++x) {
    SElem e;
    e.div.resize(q.num_summands());
    const std::vector<long long>& res = search.val[qr.projection[x]];
    for (int i = 0; i < q.num_summands(); ++i)
      e.div[i] = Fraction::reduced(res[i], target[i]);
    e.fin = x;
    graph.push_back(std::move(e));
  }
  StructuredSubloop k(q, {}, graph);

  // The graph of a homomorphism is closed and meets D trivially; make sure
  // it really contains B.
  for (const SElem& x : graph)
    for (const SElem& y : graph)
      if (!k.contains(q.mul(x, y)))
        throw NoComplementFound("complement candidate is not closed");
  for (const SElem& e : b.residual())
    if (!k.contains(e))
      throw NoComplementFound("complement candidate does not contain B");
  return k;
}

ComplementVerification verify_complement_at_level(const StructuredCml& q,
                                                  const StructuredSubloop& k,
                                                  int level, std::size_t cap) {
  ComplementVerification v;

  v.k_meets_d_trivially = true;
  for (const SElem& e : k.residual())
    if (e.fin == q.finite_part().identity() && !q.is_identity(e))
      v.k_meets_d_trivially = false;

  // Enumerate D at this level: all fraction tuples with denominators
  // dividing p_i^level.
  std::vector<long long> radix(q.num_summands());
  long long d_count = 1;
  for (int i = 0; i < q.num_summands(); ++i) {
    radix[i] = int_pow(q.summand_prime(i), level);
    d_count *= radix[i];
    if (d_count > static_cast<long long>(cap))
      throw CapExceeded(cap, static_cast<std::size_t>(d_count));
  }
  std::vector<SElem> d_elems;
  d_elems.reserve(static_cast<std::size_t>(d_count));
  for (long long idx = 0; idx < d_count; ++idx) {
    long long rest = idx;
    SElem e = q.identity();
    for (int i = q.num_summands() - 1; i >= 0; --i) {
      e.div[i] = Fraction::reduced(rest % radix[i], radix[i]);
      rest /= radix[i];
    }
    d_elems.push_back(std::move(e));
  }

  v.k_embeds = true;
  for (const SElem& e : k.residual())
    for (int i = 0; i < q.num_summands(); ++i)
      if (radix[i] % e.div[i].den != 0) v.k_embeds = false;

  std::set<SElem> products;
  for (const SElem& d : d_elems)
    for (const SElem& x : k.residual()) products.insert(q.mul(d, x));
  v.products = static_cast<long long>(products.size());
  v.injective =
      v.products == d_count * static_cast<long long>(k.residual().size());

  if (v.k_embeds) {
    long long target = d_count * q.finite_part().size();
    bool in_level = true;
    for (const SElem& e : products)
      for (int i = 0; i < q.num_summands(); ++i)
        if (radix[i] % e.div[i].den != 0) in_level = false;
    v.covers_truncation = in_level && v.products == target;
  }
  return v;
}

// ---------------------------------------------------------------------------
// factor series
// ---------------------------------------------------------------------------

namespace {

int smallest_prime_factor(int m) {
  for (int p = 2; p * p <= m; ++p)
    if (m % p == 0) return p;
  return m;
}

// Refinement of the upper central series of a finite CML into a normal
// chain with prime-order factors.
std::vector<std::pair<SubloopSet, int>> prime_refinement(const CayleyLoop& c) {
  std::vector<std::pair<SubloopSet, int>> chain;
  CentralSeries ucs = upper_central_series(c);
  SubloopSet cur = SubloopSet::trivial(c);
  for (std::size_t gap = 1; gap < ucs.terms.size(); ++gap) {
    const SubloopSet& tgt = ucs.terms[gap];
    while (!(cur == tgt)) {
      int y = -1;
      for (int x = 0; x < c.size(); ++x)
        if (tgt.contains(x) && !cur.contains(x)) {
          y = x;
          break;
        }
      int m = 1;
      while (!cur.contains(c.power(y, m))) ++m;
      int p = smallest_prime_factor(m);
      int step_gen = c.power(y, m / p);
      std::vector<int> gens = cur.indices();
      gens.push_back(step_gen);
      SubloopSet next = generate(c, gens);
      if (next.size() != p * cur.size())
        throw DecompositionFailure("prime refinement step has wrong index");
      if (!is_normal(c, next).normal)
        throw DecompositionFailure("prime refinement step is not normal");
      chain.emplace_back(next, p);
      cur = chain.back().first;
    }
  }
  return chain;
}

}  // namespace

std::vector<SeriesStep> quasicyclic_factor_series(const StructuredCml& q) {
  std::vector<SeriesStep> steps;
  std::vector<int> full;
  for (int i = 0; i < q.num_summands(); ++i) {
    full.push_back(i);
    steps.push_back(SeriesStep{StructuredSubloop(q, full, {q.identity()}),
                               FactorKind::Quasicyclic, q.summand_prime(i)});
  }
  for (const auto& [sub, p] : prime_refinement(q.finite_part())) {
    std::vector<SElem> residual;
    for (int x : sub.indices()) {
      SElem e = q.identity();
      e.fin = x;
      residual.push_back(std::move(e));
    }
    steps.push_back(SeriesStep{StructuredSubloop(q, full, std::move(residual)),
                               FactorKind::Prime, p});
  }
  return steps;
}

// ---------------------------------------------------------------------------
// truncation
// ---------------------------------------------------------------------------

Truncation truncate(const StructuredCml& q, int k, std::size_t cap) {
  if (k < 0) throw PreconditionViolated("truncation level must be >= 0");
  std::vector<long long> radix(q.num_summands());
  long long n = q.finite_part().size();
  for (int i = 0; i < q.num_summands(); ++i) {
    radix[i] = int_pow(q.summand_prime(i), k);
    n *= radix[i];
    if (n > static_cast<long long>(cap))
      throw CapExceeded(cap, static_cast<std::size_t>(n));
  }

  const int nn = static_cast<int>(n);
  std::vector<SElem> elems(nn);
  for (int idx = 0; idx < nn; ++idx) {
    long long rest = idx;
    SElem e;
    e.fin = static_cast<int>(rest % q.finite_part().size());
    rest /= q.finite_part().size();
    e.div.resize(q.num_summands());
    for (int i = q.num_summands() - 1; i >= 0; --i) {
      e.div[i] = Fraction::reduced(rest % radix[i], radix[i]);
      rest /= radix[i];
    }
    elems[idx] = std::move(e);
  }

  auto encode = [&](const SElem& e) -> int {
    long long idx = 0;
    for (int i = 0; i < q.num_summands(); ++i) {
      long long digit = e.div[i].num * (radix[i] / e.div[i].den);
      idx = idx * radix[i] + digit;
    }
    return static_cast<int>(idx * q.finite_part().size() + e.fin);
  };

  std::vector<std::uint16_t> table(static_cast<std::size_t>(nn) * nn);
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b)
      table[static_cast<std::size_t>(a) * nn + b] =
          static_cast<std::uint16_t>(encode(q.mul(elems[a], elems[b])));

  std::string name = "trunc" + std::to_string(k);
  if (!q.finite_part().name().empty()) name += "_" + q.finite_part().name();
  CayleyLoop loop = CayleyLoop::validate_flat(std::move(table), nn, name);
  return Truncation{std::move(loop), std::move(elems)};
}

}  // namespace cml
