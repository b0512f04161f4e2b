#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cml/cayley_loop.hpp"
#include "cml/identities.hpp"

namespace cml {

class Perm {
 public:
  explicit Perm(int degree);  // identity
  explicit Perm(std::vector<std::uint16_t> images);
  static Perm from_ints(const std::vector<int>& images);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int x) const { return img_[x]; }
  const std::vector<std::uint16_t>& images() const { return img_; }

  // (f.after(g))(x) = f(g(x))
  Perm after(const Perm& g) const;
  Perm inverse() const;
  bool is_identity() const;
  long long order() const;  // lcm of cycle lengths

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }
  std::uint64_t hash() const;

 private:
  std::vector<std::uint16_t> img_;
};

// A permutation group materialized by BFS closure of its generators.
// Elements are kept sorted lexicographically; iteration over them is
// deterministic.
class PermGroup {
 public:
  // Throws CapExceeded when the closure grows past `cap`.
  static PermGroup closure(std::vector<Perm> generators, std::size_t cap);
  // Wrap an already-closed element set (subgroup extracted from a parent).
  static PermGroup from_closed_set(std::vector<Perm> elements);

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& elements() const { return elements_; }
  const std::vector<Perm>& generators() const { return generators_; }
  // A small certified generating subset, for centralizer/commutator work.
  const std::vector<Perm>& reduced_generators() const { return reduced_; }
  bool contains(const Perm& p) const;

 private:
  friend PermGroup mult_group(const CayleyLoop& q, std::size_t cap);
  int degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> reduced_;
  std::vector<Perm> elements_;  // sorted
  void build_index();
  std::vector<std::uint32_t> buckets_;  // open-addressed hash -> element idx
};

// Group generated by all translations L(x). Seeded from the translations of
// a generating set of the loop; membership of every translation in the
// result is then verified, with a fallback that feeds stragglers back in.
PermGroup mult_group(const CayleyLoop& q, std::size_t cap = 10000000);

// Group generated by all inner mappings L(x,y).
PermGroup inner_group(const CayleyLoop& q, std::size_t cap = 10000000);

PermGroup group_center(const PermGroup& g);
PermGroup derived_subgroup(const PermGroup& g);
bool is_p_group(const PermGroup& g, int p);
std::map<long long, long long> element_order_census(const PermGroup& g);

struct CenterFormulaCheck {
  bool ok = false;
  std::size_t center_order = 0;
  std::size_t central_translations = 0;
  std::string witness;  // description of the first discrepancy
};

// Z(M) = {L(a) : a in Z(Q)}, as a set comparison.
CenterFormulaCheck check_center_formula(const CayleyLoop& q,
                                        std::size_t cap = 10000000,
                                        const ScanConfig& cfg = {});

struct CentralFactorReport {
  bool central_factor = false;      // D-image lies in Z(Q)
  bool md_in_center = false;        // M(D) <= Z(M)
  bool intersection_trivial = false;
  bool product_covers = false;      // |M(D)| * |M(H)| = |M|
  bool md_isomorphic_d = false;     // a -> L(a) is injective + multiplicative
  std::size_t m_order = 0, md_order = 0, mh_order = 0;
  bool ok() const {
    return central_factor && md_in_center && intersection_trivial &&
           product_covers && md_isomorphic_d;
  }
};

// For Q = D x H with D central: M = M(D) x M(H), M(D) <= Z(M), M(D) ~ D.
// Throws NotCentralFactor when the D-image is not central in the product.
CentralFactorReport check_central_factor_split(const CayleyLoop& d,
                                               const CayleyLoop& h,
                                               std::size_t cap = 10000000);

// For a loop of 3-power exponent: is the whole multiplication group a
// 3-group?
bool check_mult_group_is_3_group(const CayleyLoop& q, std::size_t cap = 10000000);

struct GroupSummary {
  int degree = 0;
  std::size_t order = 0;
  bool is_3_group = false;
  std::size_t center_order = 0;
  std::size_t derived_order = 0;
  std::map<long long, long long> census;
};

GroupSummary mult_group_summary(const CayleyLoop& q, std::size_t cap = 10000000);

}  // namespace cml
