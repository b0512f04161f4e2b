#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "cml/cayley_loop.hpp"
#include "cml/mincond.hpp"

namespace cml {

inline constexpr const char* kToolVersion = "0.1.0";

// Cayley-table text format: optional "# name: <label>" header, a line with
// n, then n lines of n whitespace-separated indices in [0, n). Writing then
// reading is the identity on both table and name, byte for byte.
CayleyLoop read_cayley_text(std::istream& in);
CayleyLoop read_cayley_file(const std::string& path);
std::string write_cayley_text(const CayleyLoop& q);

// Loads a loop either from a builtin expression or from a table file.
CayleyLoop load_loop(const std::string& builtin, const std::string& file);

// Structured-CML descriptor:
//   {"summands":[3,3,5], "finite_part":{"builtin":"cml81"}}
//   {"summands":[3],     "finite_part":{"file":"c.tbl"}}
StructuredCml structured_from_json(const nlohmann::json& j);
StructuredCml structured_from_file(const std::string& path);
nlohmann::json structured_descriptor(const StructuredCml& q);

// Subloop descriptor; residual generators are closed up on load:
//   {"full":[0], "residual_gens":[{"div":["1/9","0"],"fin":7}]}
StructuredSubloop subloop_from_json(const StructuredCml& q,
                                    const nlohmann::json& j);
nlohmann::json subloop_to_json(const StructuredCml& q,
                               const StructuredSubloop& h);

nlohmann::json selem_to_json(const SElem& e);
SElem selem_from_json(const StructuredCml& q, const nlohmann::json& j);

}  // namespace cml
