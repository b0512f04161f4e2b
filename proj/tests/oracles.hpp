// Brute-force reference computations for the test suite. Everything here
// works directly on a raw table (vector of rows) and stays independent of
// the library's precomputed tables and closure machinery.
#pragma once

#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<int>>;

inline bool is_latin(const Table& t) {
  const int n = static_cast<int>(t.size());
  for (int r = 0; r < n; ++r) {
    std::set<int> row(t[r].begin(), t[r].end());
    if (static_cast<int>(row.size()) != n) return false;
  }
  for (int c = 0; c < n; ++c) {
    std::set<int> col;
    for (int r = 0; r < n; ++r) col.insert(t[r][c]);
    if (static_cast<int>(col.size()) != n) return false;
  }
  return true;
}

inline int mul(const Table& t, int a, int b) { return t[a][b]; }

// unique x with a * x = b, by row search
inline int ldiv(const Table& t, int a, int b) {
  for (int x = 0; x < static_cast<int>(t.size()); ++x)
    if (t[a][x] == b) return x;
  return -1;
}

inline int associator(const Table& t, int a, int b, int c) {
  return ldiv(t, t[a][t[b][c]], t[t[a][b]][c]);
}

struct Triple {
  int x, y, z;
};

inline std::optional<Triple> moufang_violation(const Table& t) {
  const int n = static_cast<int>(t.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (t[t[x][x]][t[y][z]] != t[t[x][y]][t[x][z]]) return Triple{x, y, z};
  return std::nullopt;
}

inline std::vector<int> center(const Table& t, int e) {
  const int n = static_cast<int>(t.size());
  std::vector<int> out;
  for (int x = 0; x < n; ++x) {
    bool central = true;
    for (int y = 0; y < n && central; ++y)
      for (int z = 0; z < n; ++z)
        if (associator(t, x, y, z) != e) {
          central = false;
          break;
        }
    if (central) out.push_back(x);
  }
  return out;
}

// fixed-point closure under multiplication
inline std::set<int> closure(const Table& t, std::set<int> s, int e) {
  s.insert(e);
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<int> next = s;
    for (int a : s)
      for (int b : s) {
        if (next.insert(t[a][b]).second) grew = true;
        if (next.insert(t[b][a]).second) grew = true;
      }
    s = std::move(next);
  }
  return s;
}

// closure under multiplication and all inner mappings
inline std::set<int> inner_orbit_closure(const Table& t, std::set<int> s, int e) {
  const int n = static_cast<int>(t.size());
  s = closure(t, std::move(s), e);
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<int> next = s;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int h : s) {
          int img = ldiv(t, t[x][y], t[x][t[y][h]]);
          if (next.insert(img).second) grew = true;
        }
    if (grew) next = closure(t, std::move(next), e);
    s = std::move(next);
  }
  return s;
}

// all closed subsets containing e, by full subset enumeration (n <= 12)
inline std::vector<std::set<int>> all_subloops_by_enumeration(const Table& t,
                                                              int e) {
  const int n = static_cast<int>(t.size());
  std::vector<std::set<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & (1u << e))) continue;
    std::set<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.insert(i);
    bool closed = true;
    for (int a : s)
      for (int b : s)
        if (!s.count(t[a][b])) {
          closed = false;
          break;
        }
    if (closed) out.push_back(std::move(s));
  }
  return out;
}

// right-normed power a*(a*(...*a)) for cross-checking the left-normed one
inline int right_normed_power(const Table& t, int e, int a, long long k,
                              const std::vector<int>& inv) {
  int base = a;
  if (k < 0) {
    base = inv[a];
    k = -k;
  }
  if (k == 0) return e;
  int r = base;
  for (long long i = 1; i < k; ++i) r = t[base][r];
  return r;
}

}  // namespace oracle
