#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cml {

// A finite loop given by its Cayley table: every row and column is a
// permutation of [0, n) and there is a two-sided identity. Immutable after
// construction, freely shareable across threads. Left division is
// precomputed so that the associator is a handful of table lookups.
class CayleyLoop {
 public:
  // Validates an arbitrary square table. Throws NotLatinSquare / NoIdentity.
  static CayleyLoop validate(const std::vector<std::vector<int>>& table,
                             std::string name = {});
  // Same checks on a flattened row-major table.
  static CayleyLoop validate_flat(std::vector<std::uint16_t> table, int n,
                                  std::string name = {});

  int size() const { return n_; }
  int identity() const { return e_; }
  const std::string& name() const { return name_; }

  int mul(int a, int b) const {
    return table_[static_cast<std::size_t>(a) * n_ + b];
  }
  // unique x with a * x = b
  int ldiv(int a, int b) const {
    return ldiv_[static_cast<std::size_t>(a) * n_ + b];
  }
  int inverse(int a) const { return inv_[a]; }

  // Left-normed power (((a*a)*a)...); negative exponents via the inverse.
  int power(int a, long long k) const;
  int order_of(int a) const { return order_[a]; }
  long long exponent() const { return exponent_; }

  // (a, b, c) = (a * bc) \ (ab * c), so that  ab*c = (a*bc)(a,b,c).
  int associator(int a, int b, int c) const {
    int bc = mul(b, c);
    int a_bc = mul(a, bc);
    int ab_c = mul(mul(a, b), c);
    return ldiv(a_bc, ab_c);
  }

  // Inner mapping L(x,y) = L(xy)^{-1} L(x) L(y) applied to z.
  int apply_inner(int x, int y, int z) const {
    return ldiv(mul(x, y), mul(x, mul(y, z)));
  }

  // Row permutation z -> x*z.
  std::vector<int> translation(int x) const;
  std::vector<int> inner_mapping(int x, int y) const;

  bool is_commutative() const { return commutative_; }

  // Set once a full Moufang verification has run; informational.
  bool cml_flag() const { return cml_flag_; }
  void set_cml_flag(bool v) { cml_flag_ = v; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::uint16_t* raw_table() const { return table_.data(); }
  const std::uint16_t* raw_ldiv() const { return ldiv_.data(); }

  bool same_table(const CayleyLoop& other) const {
    return n_ == other.n_ && table_ == other.table_;
  }

 private:
  CayleyLoop() = default;

  int n_ = 0;
  int e_ = 0;
  std::string name_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> ldiv_;
  std::vector<std::uint16_t> inv_;
  std::vector<int> order_;
  long long exponent_ = 1;
  bool commutative_ = false;
  bool cml_flag_ = false;
};

// Componentwise product on pairs (a1, a2) indexed as a1 * |Q2| + a2.
CayleyLoop direct_product(const CayleyLoop& q1, const CayleyLoop& q2);

}  // namespace cml
