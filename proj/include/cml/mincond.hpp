#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cml/cayley_loop.hpp"
#include "cml/rng.hpp"
#include "cml/subloops.hpp"

namespace cml {

// Reduced fraction a / p^k taken mod 1; the canonical coordinate of a
// quasicyclic (Pruefer) group element.
struct Fraction {
  long long num = 0;
  long long den = 1;

  static Fraction reduced(long long num, long long den);
  bool is_zero() const { return num == 0; }

  bool operator==(const Fraction&) const = default;
  // order by (den, num): zero first, then by depth in the subgroup chain
  auto operator<=>(const Fraction& o) const {
    if (den != o.den) return den <=> o.den;
    return num <=> o.num;
  }
};

Fraction frac_add(const Fraction& a, const Fraction& b);
Fraction frac_neg(const Fraction& a);
Fraction frac_scale(const Fraction& a, long long k);

std::string fraction_to_string(const Fraction& f);
Fraction fraction_from_string(const std::string& s);

// Element of D x C: one fraction per quasicyclic summand plus an index into
// the finite part.
struct SElem {
  std::vector<Fraction> div;
  int fin = 0;

  bool operator==(const SElem&) const = default;
  bool operator<(const SElem& o) const {
    if (div != o.div) return div < o.div;
    return fin < o.fin;
  }
};

// Q = (+)_i Z(p_i^inf) x C with the divisible part central and C a finite
// CML. All elements are canonical (fractions reduced, mod 1).
class StructuredCml {
 public:
  // verify_cml runs the full Moufang check on the finite part.
  StructuredCml(std::vector<int> summand_primes, CayleyLoop finite_part,
                bool verify_cml = true);

  int num_summands() const { return static_cast<int>(primes_.size()); }
  int summand_prime(int i) const { return primes_[i]; }
  const std::vector<int>& summand_primes() const { return primes_; }
  const CayleyLoop& finite_part() const { return finite_; }

  SElem identity() const;
  bool is_identity(const SElem& a) const;
  SElem mul(const SElem& a, const SElem& b) const;
  SElem inv(const SElem& a) const;
  SElem pow(const SElem& a, long long k) const;
  long long order_of(const SElem& a) const;

  void check_element(const SElem& a) const;  // throws PreconditionViolated

 private:
  std::vector<int> primes_;
  CayleyLoop finite_;
};

// Subloop in canonical form: a set of fully contained summands plus a
// finite residual element set, closed under the operations modulo the full
// summands (fractions of full summands are projected to zero).
class StructuredSubloop {
 public:
  StructuredSubloop(const StructuredCml& owner, std::vector<int> full,
                    std::vector<SElem> residual_closed);
  static StructuredSubloop trivial(const StructuredCml& owner);

  const std::vector<int>& full() const { return full_; }
  const std::vector<SElem>& residual() const { return residual_; }
  bool is_finite() const { return full_.empty(); }
  long long residual_order() const { return static_cast<long long>(residual_.size()); }
  bool contains(const SElem& a) const;
  bool same_set(const StructuredSubloop& other) const;

 private:
  std::vector<int> full_;
  std::vector<SElem> residual_;
};

SElem s_mul(const StructuredCml& q, const SElem& a, const SElem& b);
SElem s_inv(const StructuredCml& q, const SElem& a);
SElem s_pow(const StructuredCml& q, const SElem& a, long long k);
long long s_order(const StructuredCml& q, const SElem& a);

// Finite closure of a generator set; finitely generated subloops of D x C
// are finite. Throws CapExceeded.
StructuredSubloop s_generate(const StructuredCml& q,
                             const std::vector<SElem>& gens,
                             std::size_t cap = 1000000);

// Closure under generation and all inner mappings (which act on the finite
// coordinate only, since D is central).
StructuredSubloop s_normal_closure(const StructuredCml& q,
                                   const std::vector<SElem>& gens,
                                   std::size_t cap = 1000000);

struct Height3 {
  bool infinite = false;
  int value = 0;
  bool saturating = false;  // finite part sits in the stable cube image
};

// 3-height of a: infinite exactly when the finite coordinate is a
// cube-chain limit and a quasicyclic 3-summand carries the solutions;
// otherwise the finite-loop convention (value + saturating flag).
Height3 height3(const StructuredCml& q, const SElem& a);

// Elements of order dividing p (closure of the raw power kernel).
StructuredSubloop socle(const StructuredCml& q, int p);

// Product of the socles over all primes present in Q.
StructuredSubloop s_cogenerator_subloop(const StructuredCml& q);

struct SCogeneratingCheck {
  bool ok = false;
  int trials = 0;
  std::uint64_t seed = 0;
  std::optional<SElem> counterexample_seed_element;
};

// B meets `trials` random nontrivial normal closures.
SCogeneratingCheck s_is_cogenerating(const StructuredCml& q,
                                     const StructuredSubloop& b, int trials,
                                     std::uint64_t seed = kDefaultSeed);

// Maximal divisible subloop: the full-summand part.
StructuredSubloop divisible_part(const StructuredCml& q,
                                 const StructuredSubloop& h);

struct ReducedSplit {
  StructuredSubloop divisible;  // all summands, trivial residual
  StructuredSubloop reduced;    // image of the finite part
};

ReducedSplit reduced_split(const StructuredCml& q);

// Complement K with Q = D x K and K containing B (which must intersect D
// trivially). K is the graph of a homomorphism from the finite part into
// the exponent-bounded truncation of D, chosen to agree with B; the
// enumeration order is deterministic and the first match wins. Throws
// PreconditionViolated / NoComplementFound.
StructuredSubloop divisible_complement(const StructuredCml& q,
                                       const StructuredSubloop& b);

struct ComplementVerification {
  bool k_meets_d_trivially = false;
  bool injective = false;       // products d*k are pairwise distinct
  bool k_embeds = false;        // K's denominators fit this truncation level
  bool covers_truncation = false;  // products fill the whole truncation
  long long products = 0;
  bool ok() const {
    return k_meets_d_trivially && injective && (!k_embeds || covers_truncation);
  }
};

// Checks that the product map D_level x K -> Q is injective and, when K
// embeds into the level, onto the truncation.
ComplementVerification verify_complement_at_level(const StructuredCml& q,
                                                  const StructuredSubloop& k,
                                                  int level,
                                                  std::size_t cap = 5000);

enum class FactorKind { Quasicyclic, Prime };

struct SeriesStep {
  StructuredSubloop term;  // subloop after this step
  FactorKind kind;
  int prime;
};

// Ascending normal series 1 = H_0 < ... < H_m = Q whose factors are
// quasicyclic groups (one per summand) followed by prime-order factors
// refining the upper central series of the finite part. Normality and
// factor orders are verified.
std::vector<SeriesStep> quasicyclic_factor_series(const StructuredCml& q);

struct Truncation {
  CayleyLoop loop;
  std::vector<SElem> elements;  // loop index -> structured element
};

// Finite shadow (+)_i Z(p_i^k) x C as a Cayley loop, with the embedding.
Truncation truncate(const StructuredCml& q, int k, std::size_t cap = 3000);

}  // namespace cml
