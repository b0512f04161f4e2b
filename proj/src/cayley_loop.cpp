#include "cml/cayley_loop.hpp"

#include <numeric>

#include "cml/errors.hpp"

namespace cml {

namespace {

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

}  // namespace

CayleyLoop CayleyLoop::validate(const std::vector<std::vector<int>>& table,
                                std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw ParseError("empty table");
  std::vector<std::uint16_t> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(table[r].size()) != n)
      throw ParseError("table is not square at row " + std::to_string(r));
    for (int c = 0; c < n; ++c) {
      int v = table[r][c];
      if (v < 0 || v >= n)
        throw ParseError("entry out of range at (" + std::to_string(r) + "," +
                         std::to_string(c) + ")");
      flat.push_back(static_cast<std::uint16_t>(v));
    }
  }
  return validate_flat(std::move(flat), n, std::move(name));
}

CayleyLoop CayleyLoop::validate_flat(std::vector<std::uint16_t> table, int n,
                                     std::string name) {
  if (n < 1) throw ParseError("loop order must be at least 1");
  if (n > 0xFFFF) throw ParseError("loop order too large");
  if (table.size() != static_cast<std::size_t>(n) * n)
    throw ParseError("flat table size does not match order");

  std::vector<char> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
      int v = table[static_cast<std::size_t>(r) * n + c];
      if (v >= n) throw ParseError("entry out of range");
      if (seen[v]) throw NotLatinSquare(true, r);
      seen[v] = 1;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r) {
      int v = table[static_cast<std::size_t>(r) * n + c];
      if (seen[v]) throw NotLatinSquare(false, c);
      seen[v] = 1;
    }
  }

  int e = -1;
  for (int r = 0; r < n; ++r) {
    bool left_id = true;
    for (int c = 0; c < n; ++c) {
      if (table[static_cast<std::size_t>(r) * n + c] != c) {
        left_id = false;
        break;
      }
    }
    if (!left_id) continue;
    bool right_id = true;
    for (int r2 = 0; r2 < n; ++r2) {
      if (table[static_cast<std::size_t>(r2) * n + r] != r2) {
        right_id = false;
        break;
      }
    }
    if (right_id) {
      e = r;
      break;
    }
  }
  if (e < 0) throw NoIdentity();

  CayleyLoop q;
  q.n_ = n;
  q.e_ = e;
  q.name_ = std::move(name);
  q.table_ = std::move(table);

  // ldiv[a][b] = x with a*x = b: invert each row.
  q.ldiv_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    const std::uint16_t* row = q.table_.data() + static_cast<std::size_t>(a) * n;
    std::uint16_t* drow = q.ldiv_.data() + static_cast<std::size_t>(a) * n;
    for (int x = 0; x < n; ++x) drow[row[x]] = static_cast<std::uint16_t>(x);
  }

  q.inv_.resize(n);
  for (int a = 0; a < n; ++a) q.inv_[a] = q.ldiv_[static_cast<std::size_t>(a) * n + e];

  // order_of(a) = orbit length of e under right multiplication by a,
  // which equals the least m > 0 with the left-normed power a^m = e.
  q.order_.resize(n);
  long long expo = 1;
  for (int a = 0; a < n; ++a) {
    int r = a, m = 1;
    while (r != e) {
      r = q.mul(r, a);
      ++m;
    }
    q.order_[a] = m;
    expo = lcm_ll(expo, m);
  }
  q.exponent_ = expo;

  q.commutative_ = true;
  for (int a = 0; a < n && q.commutative_; ++a)
    for (int b = a + 1; b < n; ++b)
      if (q.mul(a, b) != q.mul(b, a)) {
        q.commutative_ = false;
        break;
      }

  return q;
}

int CayleyLoop::power(int a, long long k) const {
  if (k == 0) return e_;
  int base = a;
  if (k < 0) {
    base = inverse(a);
    k = -k;
  }
  int r = base;
  for (long long i = 1; i < k; ++i) r = mul(r, base);
  return r;
}

std::vector<int> CayleyLoop::translation(int x) const {
  std::vector<int> img(n_);
  const std::uint16_t* row = table_.data() + static_cast<std::size_t>(x) * n_;
  for (int z = 0; z < n_; ++z) img[z] = row[z];
  return img;
}

std::vector<int> CayleyLoop::inner_mapping(int x, int y) const {
  std::vector<int> img(n_);
  for (int z = 0; z < n_; ++z) img[z] = apply_inner(x, y, z);
  return img;
}

CayleyLoop direct_product(const CayleyLoop& q1, const CayleyLoop& q2) {
  const int n1 = q1.size(), n2 = q2.size();
  const long long n = static_cast<long long>(n1) * n2;
  if (n > 0xFFFF) throw CapExceeded(0xFFFF, static_cast<std::size_t>(n));
  std::vector<std::uint16_t> flat(static_cast<std::size_t>(n) * n);
  for (int a1 = 0; a1 < n1; ++a1)
    for (int a2 = 0; a2 < n2; ++a2) {
      const std::size_t a = static_cast<std::size_t>(a1) * n2 + a2;
      for (int b1 = 0; b1 < n1; ++b1)
        for (int b2 = 0; b2 < n2; ++b2) {
          const std::size_t b = static_cast<std::size_t>(b1) * n2 + b2;
          flat[a * n + b] = static_cast<std::uint16_t>(
              q1.mul(a1, b1) * n2 + q2.mul(a2, b2));
        }
    }
  std::string name;
  if (!q1.name().empty() || !q2.name().empty())
    name = q1.name() + "*" + q2.name();
  return CayleyLoop::validate_flat(std::move(flat), static_cast<int>(n),
                                   std::move(name));
}

}  // namespace cml
