#pragma once

#include <stdexcept>
#include <string>

namespace skewrank {

// Base class for every library error. Exact-arithmetic code never returns
// approximate results; anything that cannot be computed exactly throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Construction-time validation failures.
class CompositeCharacteristic : public Error {
 public:
  using Error::Error;
};
class ReducibleModulus : public Error {
 public:
  using Error::Error;
};
class BadSpec : public Error {
 public:
  using Error::Error;
};

// Arithmetic failures.
class ZeroInverse : public Error {
 public:
  using Error::Error;
};
// A nonzero element whose left-multiplication operator is singular: the
// presented algebra is not a division ring.
class SingularElement : public Error {
 public:
  using Error::Error;
};

// Structural misuse.
class RingMismatch : public Error {
 public:
  using Error::Error;
};
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};
class NotLinear : public Error {
 public:
  using Error::Error;
};
class SingularWitness : public Error {
 public:
  using Error::Error;
};
class InfiniteRing : public Error {
 public:
  using Error::Error;
};
class DomainTooFlat : public Error {
 public:
  using Error::Error;
};
class NotBoundedRank : public Error {
 public:
  using Error::Error;
};
class CapExceeded : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed: the code derived two facts that cannot
// both hold. This is always an implementation bug (or a counterexample to a
// theorem), never a user error, and the message carries the evidence.
class ContradictionWitness : public Error {
 public:
  using Error::Error;
};

}  // namespace skewrank
