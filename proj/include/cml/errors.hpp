#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cml {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotLatinSquare : Error {
  bool in_row;
  int index;
  NotLatinSquare(bool row, int idx)
      : Error(std::string("not a Latin square: duplicate entry in ") +
              (row ? "row " : "column ") + std::to_string(idx)),
        in_row(row), index(idx) {}
};

struct NoIdentity : Error {
  NoIdentity() : Error("table has no two-sided identity element") {}
};

struct NotNormal : Error {
  using Error::Error;
};

struct CapExceeded : Error {
  std::size_t cap;
  std::size_t reached;
  CapExceeded(std::size_t cap_, std::size_t reached_)
      : Error("cap of " + std::to_string(cap_) + " exceeded (reached " +
              std::to_string(reached_) + ")"),
        cap(cap_), reached(reached_) {}
};

struct UnknownName : Error {
  explicit UnknownName(const std::string& name)
      : Error("unknown builtin name: " + name) {}
};

struct NotMaterialized : Error {
  NotMaterialized() : Error("permutation group is not materialized") {}
};

struct SeriesStalled : Error {
  SeriesStalled()
      : Error("upper central series stalled before reaching the whole loop "
              "(input is not a centrally nilpotent loop)") {}
};

struct DecompositionFailure : Error {
  using Error::Error;
};

struct NoComplementFound : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

struct NotDescending : Error {
  std::size_t position;
  explicit NotDescending(std::size_t pos)
      : Error("chain is not descending at position " + std::to_string(pos)),
        position(pos) {}
};

struct NotCentralFactor : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace cml
