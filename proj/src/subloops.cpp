#include "cml/subloops.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "cml/errors.hpp"

namespace cml {

namespace {

std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

void set_bit(std::vector<std::uint64_t>& bits, int x) {
  bits[static_cast<std::size_t>(x) >> 6] |= (1ULL << (x & 63));
}

bool test_bit(const std::vector<std::uint64_t>& bits, int x) {
  return (bits[static_cast<std::size_t>(x) >> 6] >> (x & 63)) & 1;
}

struct BitsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t w : v) {
      h ^= w;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Closure under multiplication starting from `seed` members (worklist of
// newly added elements against all current members, both orders).
std::vector<std::uint64_t> close_under_mul(const CayleyLoop& q,
                                           std::vector<std::uint64_t> bits,
                                           std::vector<int> work) {
  std::vector<int> members;
  const int n = q.size();
  for (int x = 0; x < n; ++x)
    if (test_bit(bits, x)) members.push_back(x);
  while (!work.empty()) {
    int u = work.back();
    work.pop_back();
    for (std::size_t i = 0; i < members.size(); ++i) {
      int v = members[i];
      for (int w : {q.mul(u, v), q.mul(v, u)}) {
        if (!test_bit(bits, w)) {
          set_bit(bits, w);
          members.push_back(w);
          work.push_back(w);
        }
      }
    }
  }
  return bits;
}

}  // namespace

SubloopSet::SubloopSet(const CayleyLoop& owner,
                       const std::vector<std::uint64_t>& bits)
    : owner_(&owner), bits_(bits) {
  count_ = 0;
  for (std::uint64_t w : bits_) count_ += __builtin_popcountll(w);
}

SubloopSet SubloopSet::trivial(const CayleyLoop& owner) {
  std::vector<std::uint64_t> bits(words_for(owner.size()), 0);
  set_bit(bits, owner.identity());
  return SubloopSet(owner, bits);
}

SubloopSet SubloopSet::whole(const CayleyLoop& owner) {
  const int n = owner.size();
  std::vector<std::uint64_t> bits(words_for(n), 0);
  for (int x = 0; x < n; ++x) set_bit(bits, x);
  return SubloopSet(owner, bits);
}

SubloopSet SubloopSet::from_indices(const CayleyLoop& owner,
                                    const std::vector<int>& indices) {
  std::vector<std::uint64_t> bits(words_for(owner.size()), 0);
  for (int x : indices) set_bit(bits, x);
  return SubloopSet(owner, bits);
}

std::vector<int> SubloopSet::indices() const {
  std::vector<int> out;
  out.reserve(count_);
  for (int x = 0; x < owner_->size(); ++x)
    if (contains(x)) out.push_back(x);
  return out;
}

bool SubloopSet::is_subset_of(const SubloopSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

SubloopSet generate(const CayleyLoop& q, std::span<const int> gens) {
  std::vector<std::uint64_t> bits(words_for(q.size()), 0);
  std::vector<int> work;
  set_bit(bits, q.identity());
  work.push_back(q.identity());
  for (int g : gens) {
    if (!test_bit(bits, g)) {
      set_bit(bits, g);
      work.push_back(g);
    }
  }
  return SubloopSet(q, close_under_mul(q, std::move(bits), std::move(work)));
}

NormalityWitness is_normal(const CayleyLoop& q, const SubloopSet& h) {
  const int n = q.size();
  const std::vector<int> members = h.indices();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int m : members)
        if (!h.contains(q.apply_inner(x, y, m)))
          return NormalityWitness{false, x, y, m};
  return NormalityWitness{true, -1, -1, -1};
}

SubloopSet normal_closure(const CayleyLoop& q, std::span<const int> gens) {
  const int n = q.size();
  SubloopSet h = generate(q, gens);
  for (;;) {
    const std::vector<int> members = h.indices();
    std::vector<int> extra;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int m : members) {
          int img = q.apply_inner(x, y, m);
          if (!h.contains(img)) extra.push_back(img);
        }
    if (extra.empty()) break;
    std::vector<int> all = members;
    all.insert(all.end(), extra.begin(), extra.end());
    h = generate(q, all);
  }
  h.mark_normal();
  return h;
}

std::vector<SubloopSet> all_subloops(const CayleyLoop& q, std::size_t cap) {
  const int n = q.size();
  std::unordered_set<std::vector<std::uint64_t>, BitsHash> seen;
  std::deque<std::vector<std::uint64_t>> queue;

  SubloopSet triv = SubloopSet::trivial(q);
  seen.insert(triv.bits());
  queue.push_back(triv.bits());

  while (!queue.empty()) {
    std::vector<std::uint64_t> cur = std::move(queue.front());
    queue.pop_front();
    for (int x = 0; x < n; ++x) {
      if (test_bit(cur, x)) continue;
      std::vector<std::uint64_t> ext = cur;
      set_bit(ext, x);
      ext = close_under_mul(q, std::move(ext), {x});
      if (seen.insert(ext).second) {
        if (seen.size() > cap) throw CapExceeded(cap, seen.size());
        queue.push_back(std::move(ext));
      }
    }
  }

  std::vector<SubloopSet> out;
  out.reserve(seen.size());
  for (const auto& bits : seen) out.emplace_back(q, bits);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubloopSet> minimal_normal_subloops(const CayleyLoop& q) {
  std::vector<SubloopSet> normals;
  for (SubloopSet& h : all_subloops(q)) {
    if (h.size() == 1) continue;
    if (is_normal(q, h).normal) {
      h.mark_normal();
      normals.push_back(std::move(h));
    }
  }
  std::vector<SubloopSet> out;
  for (const SubloopSet& h : normals) {
    bool minimal = true;
    for (const SubloopSet& k : normals)
      if (!(k == h) && k.is_subset_of(h)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LayerResult layer(const CayleyLoop& q, int p) {
  const int n = q.size();
  std::vector<int> raw;
  for (int x = 0; x < n; ++x)
    if (q.power(x, p) == q.identity()) raw.push_back(x);
  SubloopSet closed = generate(q, raw);
  bool added = closed.size() != static_cast<int>(raw.size());
  return LayerResult{std::move(closed), added};
}

SubloopSet cogenerator_subloop(const CayleyLoop& q) {
  // Union of p-layers over all primes dividing element orders; their
  // product is the generated subloop.
  const int n = q.size();
  std::vector<int> primes;
  for (int x = 0; x < n; ++x) {
    int m = q.order_of(x);
    for (int p = 2; p <= m; ++p) {
      if (m % p != 0) continue;
      while (m % p == 0) m /= p;
      if (std::find(primes.begin(), primes.end(), p) == primes.end())
        primes.push_back(p);
    }
  }
  std::vector<int> gens;
  for (int p : primes)
    for (int x : layer(q, p).subloop.indices()) gens.push_back(x);
  return generate(q, gens);
}

CogeneratingCheck is_cogenerating(const CayleyLoop& q, const SubloopSet& b,
                                  std::uint64_t seed) {
  const int n = q.size();
  CogeneratingCheck res;

  auto meets_b = [&](const SubloopSet& h) {
    for (int x : h.indices())
      if (x != q.identity() && b.contains(x)) return true;
    return false;
  };

  if (n <= 100) {
    res.exhaustive = true;
    for (SubloopSet& h : all_subloops(q)) {
      if (h.size() == 1) continue;
      if (!is_normal(q, h).normal) continue;
      ++res.tested;
      if (!meets_b(h)) {
        res.counterexample = h.indices();
        res.ok = false;
        return res;
      }
    }
    res.ok = true;
    return res;
  }

  Rng rng(seed);
  res.exhaustive = false;
  for (int t = 0; t < 200; ++t) {
    int x = 1 + static_cast<int>(rng.below(n - 1));
    if (x == q.identity()) x = (x + 1) % n;
    SubloopSet h = normal_closure(q, std::vector<int>{x});
    ++res.tested;
    if (!meets_b(h)) {
      res.counterexample = h.indices();
      res.ok = false;
      return res;
    }
  }
  res.ok = true;
  return res;
}

int chain_stabilizes(const CayleyLoop& q,
                     const std::vector<std::vector<int>>& chain_gens) {
  std::vector<SubloopSet> chain;
  chain.reserve(chain_gens.size());
  for (const auto& gens : chain_gens) chain.push_back(generate(q, gens));
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!chain[i].is_subset_of(chain[i - 1])) throw NotDescending(i);
  if (chain.empty()) return 0;
  std::size_t idx = chain.size() - 1;
  while (idx > 0 && chain[idx - 1] == chain[idx]) --idx;
  return static_cast<int>(idx);
}

QuotientResult quotient(const CayleyLoop& q, const SubloopSet& h) {
  NormalityWitness w = is_normal(q, h);
  if (!w.normal)
    throw NotNormal("subloop is not normal: inner_mapping(" +
                    std::to_string(w.x) + "," + std::to_string(w.y) +
                    ") moves " + std::to_string(w.h) + " outside");

  const int n = q.size();
  std::vector<int> proj(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    if (proj[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int m : h.indices()) {
      int y = q.mul(x, m);
      if (proj[y] >= 0 && proj[y] != id)
        throw NotNormal("cosets do not partition the loop");
      proj[y] = id;
    }
  }
  const int m = static_cast<int>(reps.size());
  if (static_cast<long long>(m) * h.size() != n)
    throw NotNormal("coset sizes do not divide the loop order");

  std::vector<std::uint16_t> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[static_cast<std::size_t>(i) * m + j] =
          static_cast<std::uint16_t>(proj[q.mul(reps[i], reps[j])]);

  // Well-definedness: products of arbitrary representatives must land in
  // the same coset.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (proj[q.mul(x, y)] !=
          table[static_cast<std::size_t>(proj[x]) * m + proj[y]])
        throw NotNormal("coset multiplication is ill-defined");

  std::string name;
  if (!q.name().empty()) name = q.name() + "/H" + std::to_string(h.size());
  CayleyLoop ql = CayleyLoop::validate_flat(std::move(table), m, name);
  return QuotientResult{std::move(ql), std::move(proj), std::move(reps)};
}

}  // namespace cml
