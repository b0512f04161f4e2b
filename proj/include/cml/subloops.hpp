#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cml/cayley_loop.hpp"
#include "cml/rng.hpp"

namespace cml {

// Closed subset of a loop, stored as a bit-set over [0, n). The owning loop
// must outlive the subloop set.
class SubloopSet {
 public:
  SubloopSet(const CayleyLoop& owner, const std::vector<std::uint64_t>& bits);
  static SubloopSet trivial(const CayleyLoop& owner);
  static SubloopSet whole(const CayleyLoop& owner);
  static SubloopSet from_indices(const CayleyLoop& owner,
                                 const std::vector<int>& indices);

  const CayleyLoop& owner() const { return *owner_; }
  bool contains(int x) const {
    return (bits_[static_cast<std::size_t>(x) >> 6] >> (x & 63)) & 1;
  }
  int size() const { return count_; }
  std::vector<int> indices() const;
  const std::vector<std::uint64_t>& bits() const { return bits_; }

  bool operator==(const SubloopSet& other) const { return bits_ == other.bits_; }
  bool is_subset_of(const SubloopSet& other) const;
  // Big-endian-style lexicographic order on the bit words; any total order
  // works as long as it is deterministic.
  bool operator<(const SubloopSet& other) const { return bits_ < other.bits_; }

  bool normal_verified() const { return normal_verified_; }
  void mark_normal() { normal_verified_ = true; }

 private:
  const CayleyLoop* owner_;
  std::vector<std::uint64_t> bits_;
  int count_ = 0;
  bool normal_verified_ = false;
};

// Least subloop containing S (and the identity): fixed-point closure under
// multiplication; finiteness gives divisions and inverses for free.
SubloopSet generate(const CayleyLoop& q, std::span<const int> gens);

struct NormalityWitness {
  bool normal = false;
  int x = -1, y = -1, h = -1;  // inner_mapping(x,y) h lands outside H
};

// Direct scan over the inner-mapping generators L(x,y).
NormalityWitness is_normal(const CayleyLoop& q, const SubloopSet& h);

// Least normal subloop containing S.
SubloopSet normal_closure(const CayleyLoop& q, std::span<const int> gens);

// Complete enumeration of subloops by BFS over generated extensions,
// deduplicated, sorted by bit-set encoding. Throws CapExceeded.
std::vector<SubloopSet> all_subloops(const CayleyLoop& q,
                                     std::size_t cap = 50000);

// Normal subloops != {e} containing no smaller nontrivial normal subloop.
std::vector<SubloopSet> minimal_normal_subloops(const CayleyLoop& q);

struct LayerResult {
  SubloopSet subloop;
  bool closure_added;  // true when {x : x^p = e} was not already closed
};

// Subloop closure of {x : x^p = e}.
LayerResult layer(const CayleyLoop& q, int p);

// Product over primes p of layer(Q_p, p); every nontrivial normal subloop
// of a finitely cogenerated loop must meet it.
SubloopSet cogenerator_subloop(const CayleyLoop& q);

struct CogeneratingCheck {
  bool ok = false;
  long long tested = 0;
  bool exhaustive = false;
  std::vector<int> counterexample;  // a nontrivial normal subloop missing B
};

// Exhaustive over all normal subloops when n <= 100, else 200 sampled
// normal closures of random elements.
CogeneratingCheck is_cogenerating(const CayleyLoop& q, const SubloopSet& b,
                                  std::uint64_t seed = kDefaultSeed);

// Least index at which the chain of generated subloops becomes constant.
// Throws NotDescending if some generated subloop is not contained in the
// previous one.
int chain_stabilizes(const CayleyLoop& q,
                     const std::vector<std::vector<int>>& chain_gens);

struct QuotientResult {
  CayleyLoop loop;
  std::vector<int> projection;       // element -> coset index
  std::vector<int> representatives;  // coset index -> least element
};

// Coset loop modulo a normal subloop; well-definedness of the coset
// product is asserted exhaustively. Throws NotNormal.
QuotientResult quotient(const CayleyLoop& q, const SubloopSet& h);

}  // namespace cml
