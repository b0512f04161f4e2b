#pragma once

#include <map>
#include <vector>

#include "cml/cayley_loop.hpp"
#include "cml/identities.hpp"
#include "cml/subloops.hpp"

namespace cml {

// Z(Q) = {x | (x,y,z) = e for all y,z}, by exhaustive scan.
SubloopSet center(const CayleyLoop& q, const ScanConfig& cfg = {});

// Single-element version, O(n^2).
bool is_central(const CayleyLoop& q, int x);

struct CentralSeries {
  std::vector<SubloopSet> terms;  // {e} = Z_0 < Z_1 < ... < Z_k = Q
  int cls = 0;                    // k
};

// Iterated center-of-quotient pullbacks; throws SeriesStalled when the
// center of a proper quotient is trivial (the input is not centrally
// nilpotent, hence not a CML).
CentralSeries upper_central_series(const CayleyLoop& q, const ScanConfig& cfg = {});
int nilpotency_class(const CayleyLoop& q, const ScanConfig& cfg = {});

struct PrimaryDecomposition {
  std::map<int, SubloopSet> components;  // prime -> maximal p-subloop
};

// Q_p = elements of p-power order. Asserts each Q_p is a subloop, the
// componentwise product map is a bijection onto Q, and Q_p is central for
// p != 3. Throws DecompositionFailure with a witness otherwise.
PrimaryDecomposition p_decomposition(const CayleyLoop& q);

struct HeightResult {
  int value = 0;
  // The p-power-image chain Q >= Q^p >= Q^{p^2} >= ... stabilizes in a
  // finite loop; `saturating` marks elements of the stable image, which
  // have preimages at every level. For them `value` is the stabilization
  // index of the chain.
  bool saturating = false;
};

// Greatest k with x^{p^k} = a solvable, via iterated power images.
HeightResult height(const CayleyLoop& q, int a, int p);

// Normal subloop generated by all associator values; the quotient by it is
// associative (asserted).
SubloopSet associator_subloop(const CayleyLoop& q, const ScanConfig& cfg = {});

struct StructureSummary {
  long long order = 0;
  long long exponent = 0;
  int center_order = 0;
  int cls = 0;
  std::vector<int> series_orders;
  std::map<int, int> primary;  // prime -> component order
};

StructureSummary structure_summary(const CayleyLoop& q, const ScanConfig& cfg = {});

}  // namespace cml
