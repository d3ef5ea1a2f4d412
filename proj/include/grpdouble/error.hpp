#pragma once

#include <stdexcept>
#include <string>

namespace grpdouble {

// Base class for every error raised by the library. Index errors use
// std::out_of_range directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed group, set, or rational spec string.
class SpecError : public Error {
 public:
  using Error::Error;
};

// A Cayley table that violates the group axioms, or a malformed table file.
class AxiomError : public Error {
 public:
  using Error::Error;
};

// Order limit exceeded (group builders, subgroup enumeration, surveys).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Operands belong to different groups.
class GroupMismatch : public Error {
 public:
  explicit GroupMismatch(const std::string& what = "operands belong to different groups")
      : Error(what) {}
};

// Operation requires a non-empty set.
class EmptySet : public Error {
 public:
  explicit EmptySet(const std::string& op) : Error(op + ": empty set") {}
};

// A documented precondition does not hold (non-abelian group for Kneser,
// doubling too large for the pipeline, asymmetric neighbourhood, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace grpdouble
