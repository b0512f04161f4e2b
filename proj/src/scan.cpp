#include "cml/scan.hpp"

#include <cstdint>
#include <limits>

#include "cml/rng.hpp"

#ifdef CML_HAVE_OPENMP
#include <omp.h>
#endif

namespace cml::scan {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t encode3(int n, int x, int y, int z) {
  return (static_cast<std::uint64_t>(x) * n + y) * n + z;
}

std::optional<Triple> decode3(int n, std::uint64_t code) {
  if (code == kNone) return std::nullopt;
  int z = static_cast<int>(code % n);
  code /= n;
  int y = static_cast<int>(code % n);
  int x = static_cast<int>(code / n);
  return Triple{x, y, z};
}

// Powers of every element for all residues mod its order; lets the scans
// evaluate a^k for arbitrary k with one lookup.
struct PowerCache {
  int n;
  std::vector<int> offset;
  std::vector<std::uint16_t> pow;  // pow[offset[a] + j] = a^j, 0 <= j < ord(a)

  explicit PowerCache(const CayleyLoop& q) : n(q.size()) {
    offset.resize(n + 1);
    for (int a = 0; a < n; ++a) offset[a + 1] = offset[a] + q.order_of(a);
    pow.resize(offset[n]);
    for (int a = 0; a < n; ++a) {
      int r = q.identity();
      for (int j = 0; j < q.order_of(a); ++j) {
        pow[offset[a] + j] = static_cast<std::uint16_t>(r);
        r = q.mul(r, a);
      }
    }
  }

  int get(const CayleyLoop& q, int a, long long k) const {
    int ord = q.order_of(a);
    long long j = k % ord;
    if (j < 0) j += ord;
    return pow[offset[a] + j];
  }
};

// First violating (y, z) within the row of fixed x, encoded; kNone if clean.
template <typename Pred>
std::uint64_t row_scan(const CayleyLoop& q, int x, Pred&& bad) {
  const int n = q.size();
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z)
      if (bad(x, y, z)) return encode3(n, x, y, z);
  return kNone;
}

template <typename Pred>
std::optional<Triple> serial_triple_scan(const CayleyLoop& q, Pred&& bad) {
  const int n = q.size();
  for (int x = 0; x < n; ++x) {
    std::uint64_t c = row_scan(q, x, bad);
    if (c != kNone) return decode3(n, c);
  }
  return std::nullopt;
}

#ifdef CML_HAVE_OPENMP
template <typename Pred>
std::optional<Triple> parallel_triple_scan(const CayleyLoop& q, int threads,
                                           Pred&& bad) {
  const int n = q.size();
  std::uint64_t best = kNone;
#pragma omp parallel for schedule(dynamic) num_threads(threads) \
    reduction(min : best)
  for (int x = 0; x < n; ++x) {
    std::uint64_t c = row_scan(q, x, bad);
    if (c < best) best = c;
  }
  return decode3(n, best);
}
#endif

int resolve_threads(int threads) {
#ifdef CML_HAVE_OPENMP
  if (threads <= 0) return omp_get_max_threads();
  return threads;
#else
  (void)threads;
  return 1;
#endif
}

template <typename Pred>
std::optional<Triple> triple_scan(const CayleyLoop& q, int threads, Pred&& bad) {
  int t = resolve_threads(threads);
#ifdef CML_HAVE_OPENMP
  if (t > 1) return parallel_triple_scan(q, t, bad);
#else
  (void)t;
#endif
  return serial_triple_scan(q, bad);
}

inline bool moufang_bad(const CayleyLoop& q, int x, int y, int z) {
  int sq = q.mul(x, x);
  return q.mul(sq, q.mul(y, z)) != q.mul(q.mul(x, y), q.mul(x, z));
}

inline bool inner_twist_bad(const CayleyLoop& q, int x, int y, int z) {
  return q.apply_inner(x, y, z) != q.mul(z, q.associator(z, y, x));
}

inline bool cube_bad(const CayleyLoop& q, int x, int y, int z) {
  return q.power(q.associator(x, y, z), 3) != q.identity();
}

bool power_grid_bad(const CayleyLoop& q, const PowerCache& pc,
                    const std::vector<int>& grid, int x, int y, int z) {
  const int a = q.associator(x, y, z);
  for (int p : grid) {
    int xp = pc.get(q, x, p);
    for (int r : grid) {
      int yr = pc.get(q, y, r);
      for (int s : grid) {
        int zs = pc.get(q, z, s);
        if (q.associator(xp, yr, zs) !=
            pc.get(q, a, static_cast<long long>(p) * r * s))
          return true;
      }
    }
  }
  return false;
}

inline bool expansion_bad(const CayleyLoop& q, int x, int y, int u, int v) {
  int axy = q.associator(q.mul(x, y), u, v);
  int a = q.associator(x, u, v);
  int b = q.associator(y, u, v);
  int rhs = q.mul(q.mul(q.mul(a, q.associator(a, x, y)), b),
                  q.associator(b, y, x));
  return axy != rhs;
}

std::vector<Quad> sampled_quads(const CayleyLoop& q, long long budget,
                                std::uint64_t seed) {
  Rng rng(seed);
  const int n = q.size();
  std::vector<Quad> quads;
  quads.reserve(static_cast<std::size_t>(budget));
  for (long long i = 0; i < budget; ++i) {
    int x = static_cast<int>(rng.below(n));
    int y = static_cast<int>(rng.below(n));
    int u = static_cast<int>(rng.below(n));
    int v = static_cast<int>(rng.below(n));
    quads.push_back(Quad{x, y, u, v});
  }
  return quads;
}

}  // namespace

// ---------------------------------------------------------------------------
// serial reference implementations
// ---------------------------------------------------------------------------

namespace serial {

std::optional<Triple> commutativity_violation(const CayleyLoop& q) {
  const int n = q.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (q.mul(x, y) != q.mul(y, x)) return Triple{x, y, 0};
  return std::nullopt;
}

std::optional<Triple> moufang_violation(const CayleyLoop& q) {
  return serial_triple_scan(
      q, [&q](int x, int y, int z) { return moufang_bad(q, x, y, z); });
}

std::optional<Triple> inner_twist_violation(const CayleyLoop& q) {
  return serial_triple_scan(
      q, [&q](int x, int y, int z) { return inner_twist_bad(q, x, y, z); });
}

std::optional<Triple> associator_power_violation(const CayleyLoop& q,
                                                 const std::vector<int>& grid) {
  PowerCache pc(q);
  return serial_triple_scan(q, [&](int x, int y, int z) {
    return power_grid_bad(q, pc, grid, x, y, z);
  });
}

std::optional<Triple> associator_cube_violation(const CayleyLoop& q) {
  return serial_triple_scan(
      q, [&q](int x, int y, int z) { return cube_bad(q, x, y, z); });
}

std::optional<Quad> associator_expansion_violation(const CayleyLoop& q) {
  const int n = q.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (expansion_bad(q, x, y, u, v)) return Quad{x, y, u, v};
  return std::nullopt;
}

std::optional<Quad> associator_expansion_violation_sampled(const CayleyLoop& q,
                                                           long long budget,
                                                           std::uint64_t seed) {
  for (const Quad& s : sampled_quads(q, budget, seed))
    if (expansion_bad(q, s.x, s.y, s.u, s.v)) return s;
  return std::nullopt;
}

std::vector<std::uint8_t> central_mask(const CayleyLoop& q) {
  const int n = q.size();
  const int e = q.identity();
  std::vector<std::uint8_t> mask(n, 1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n && mask[x]; ++y)
      for (int z = 0; z < n; ++z)
        if (q.associator(x, y, z) != e) {
          mask[x] = 0;
          break;
        }
  }
  return mask;
}

std::vector<std::uint8_t> associator_value_mask(const CayleyLoop& q) {
  const int n = q.size();
  std::vector<std::uint8_t> mask(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) mask[q.associator(x, y, z)] = 1;
  return mask;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP kernels (fall back to the serial reference with one thread)
// ---------------------------------------------------------------------------

std::optional<Triple> commutativity_violation(const CayleyLoop& q, int threads) {
  // n^2 pairs; stays on the serial path
  (void)threads;
  return serial::commutativity_violation(q);
}

std::optional<Triple> moufang_violation(const CayleyLoop& q, int threads) {
  return triple_scan(
      q, threads, [&q](int x, int y, int z) { return moufang_bad(q, x, y, z); });
}

std::optional<Triple> inner_twist_violation(const CayleyLoop& q, int threads) {
  return triple_scan(q, threads, [&q](int x, int y, int z) {
    return inner_twist_bad(q, x, y, z);
  });
}

std::optional<Triple> associator_power_violation(const CayleyLoop& q,
                                                 const std::vector<int>& grid,
                                                 int threads) {
  PowerCache pc(q);
  return triple_scan(q, threads, [&](int x, int y, int z) {
    return power_grid_bad(q, pc, grid, x, y, z);
  });
}

std::optional<Triple> associator_cube_violation(const CayleyLoop& q, int threads) {
  return triple_scan(
      q, threads, [&q](int x, int y, int z) { return cube_bad(q, x, y, z); });
}

std::optional<Quad> associator_expansion_violation(const CayleyLoop& q,
                                                   int threads) {
  int t = resolve_threads(threads);
#ifdef CML_HAVE_OPENMP
  if (t > 1) {
    const int n = q.size();
    std::uint64_t best = kNone;
#pragma omp parallel for schedule(dynamic) num_threads(t) reduction(min : best)
    for (int x = 0; x < n; ++x) {
      std::uint64_t local = kNone;
      for (int y = 0; y < n && local == kNone; ++y)
        for (int u = 0; u < n && local == kNone; ++u)
          for (int v = 0; v < n; ++v)
            if (expansion_bad(q, x, y, u, v)) {
              local = ((encode3(n, x, y, u)) * n) + v;
              break;
            }
      if (local < best) best = local;
    }
    if (best == kNone) return std::nullopt;
    int v = static_cast<int>(best % n);
    std::uint64_t rest = best / n;
    auto t3 = decode3(n, rest);
    return Quad{t3->x, t3->y, t3->z, v};
  }
#else
  (void)t;
#endif
  return serial::associator_expansion_violation(q);
}

std::optional<Quad> associator_expansion_violation_sampled(const CayleyLoop& q,
                                                           long long budget,
                                                           std::uint64_t seed,
                                                           int threads) {
  int t = resolve_threads(threads);
#ifdef CML_HAVE_OPENMP
  if (t > 1) {
    std::vector<Quad> quads = sampled_quads(q, budget, seed);
    const long long m = static_cast<long long>(quads.size());
    long long best = m;
#pragma omp parallel for schedule(static) num_threads(t) reduction(min : best)
    for (long long i = 0; i < m; ++i) {
      const Quad& s = quads[i];
      if (expansion_bad(q, s.x, s.y, s.u, s.v) && i < best) best = i;
    }
    if (best == m) return std::nullopt;
    return quads[best];
  }
#else
  (void)t;
#endif
  return serial::associator_expansion_violation_sampled(q, budget, seed);
}

std::vector<std::uint8_t> central_mask(const CayleyLoop& q, int threads) {
  int t = resolve_threads(threads);
#ifdef CML_HAVE_OPENMP
  if (t > 1) {
    const int n = q.size();
    const int e = q.identity();
    std::vector<std::uint8_t> mask(n, 1);
#pragma omp parallel for schedule(dynamic) num_threads(t)
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n && mask[x]; ++y)
        for (int z = 0; z < n; ++z)
          if (q.associator(x, y, z) != e) {
            mask[x] = 0;
            break;
          }
    }
    return mask;
  }
#else
  (void)t;
#endif
  return serial::central_mask(q);
}

std::vector<std::uint8_t> associator_value_mask(const CayleyLoop& q, int threads) {
  int t = resolve_threads(threads);
#ifdef CML_HAVE_OPENMP
  if (t > 1) {
    const int n = q.size();
    std::vector<std::uint8_t> mask(n, 0);
#pragma omp parallel num_threads(t)
    {
      std::vector<std::uint8_t> local(n, 0);
#pragma omp for schedule(dynamic)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z) local[q.associator(x, y, z)] = 1;
#pragma omp critical
      for (int i = 0; i < n; ++i)
        if (local[i]) mask[i] = 1;
    }
    return mask;
  }
#else
  (void)t;
#endif
  return serial::associator_value_mask(q);
}

}  // namespace cml::scan
