#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cml/cayley_loop.hpp"

namespace cml::scan {

struct Triple {
  int x, y, z;
  bool operator==(const Triple&) const = default;
};

struct Quad {
  int x, y, u, v;
  bool operator==(const Quad&) const = default;
};

// Exhaustive scans over a loop. Each scan exists twice: a plain serial
// reference under scan::serial, and an OpenMP version that partitions the
// outer index range. Both return the lexicographically first violation, so
// results are identical regardless of thread count or schedule.
//
// `threads` <= 0 means "library default" (all available cores). With
// threads == 1 or without OpenMP the serial reference runs.

// a*b != b*a
std::optional<Triple> commutativity_violation(const CayleyLoop& q, int threads = 0);

// x^2 * yz != xy * xz
std::optional<Triple> moufang_violation(const CayleyLoop& q, int threads = 0);

// L(x,y)z != z*(z,y,x)
std::optional<Triple> inner_twist_violation(const CayleyLoop& q, int threads = 0);

// (x^p, y^r, z^s) != (x,y,z)^{p*r*s} for some exponents in `grid`
std::optional<Triple> associator_power_violation(const CayleyLoop& q,
                                                 const std::vector<int>& grid,
                                                 int threads = 0);

// (x,y,z)^3 != e
std::optional<Triple> associator_cube_violation(const CayleyLoop& q, int threads = 0);

// (xy,u,v) != (x,u,v)*((x,u,v),x,y)*(y,u,v)*((y,u,v),y,x)  (left-normed)
std::optional<Quad> associator_expansion_violation(const CayleyLoop& q,
                                                   int threads = 0);
std::optional<Quad> associator_expansion_violation_sampled(const CayleyLoop& q,
                                                           long long budget,
                                                           std::uint64_t seed,
                                                           int threads = 0);

// mask[x] = 1 iff (x,y,z) = e for all y,z
std::vector<std::uint8_t> central_mask(const CayleyLoop& q, int threads = 0);

// mask[v] = 1 iff v = (x,y,z) for some triple
std::vector<std::uint8_t> associator_value_mask(const CayleyLoop& q, int threads = 0);

namespace serial {
std::optional<Triple> commutativity_violation(const CayleyLoop& q);
std::optional<Triple> moufang_violation(const CayleyLoop& q);
std::optional<Triple> inner_twist_violation(const CayleyLoop& q);
std::optional<Triple> associator_power_violation(const CayleyLoop& q,
                                                 const std::vector<int>& grid);
std::optional<Triple> associator_cube_violation(const CayleyLoop& q);
std::optional<Quad> associator_expansion_violation(const CayleyLoop& q);
std::optional<Quad> associator_expansion_violation_sampled(const CayleyLoop& q,
                                                           long long budget,
                                                           std::uint64_t seed);
std::vector<std::uint8_t> central_mask(const CayleyLoop& q);
std::vector<std::uint8_t> associator_value_mask(const CayleyLoop& q);
}  // namespace serial

}  // namespace cml::scan
