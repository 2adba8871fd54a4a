#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "skewrank/errors.hpp"

namespace skewrank {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// One element of a base field. The concrete alternative is dictated by the
// FieldSpec that created it:
//   prime field       -> int64 residue in [0, p)
//   extension field   -> coefficient vector (length k, residues mod p)
//   rationals         -> reduced fraction
// Elements are always stored in canonical form, so operator== is exact
// set-theoretic equality.
class FieldElement {
 public:
  FieldElement() : v_(std::int64_t{0}) {}
  explicit FieldElement(std::int64_t r) : v_(r) {}
  explicit FieldElement(std::vector<std::int64_t> coeffs) : v_(std::move(coeffs)) {}
  explicit FieldElement(Rat q) : v_(std::move(q)) {}

  bool operator==(const FieldElement& o) const { return v_ == o.v_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::int64_t residue() const { return std::get<std::int64_t>(v_); }
  const std::vector<std::int64_t>& coeffs() const {
    return std::get<std::vector<std::int64_t>>(v_);
  }
  const Rat& rat() const { return std::get<Rat>(v_); }

 private:
  std::variant<std::int64_t, std::vector<std::int64_t>, Rat> v_;
};

class FieldSpec;
using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

enum class FieldKind { Prime, Extension, Rationals };

// Runtime description of the base field F. All arithmetic on FieldElement
// values goes through the spec that owns them; mixing elements of different
// specs is a caller bug and trips the canonical-form accessors.
class FieldSpec {
 public:
  virtual ~FieldSpec() = default;

  // Factories validate their input: p must be prime, the modulus must be monic
  // and irreducible over F_p.
  static FieldSpecPtr prime(std::int64_t p);
  static FieldSpecPtr extension(std::int64_t p, int k, std::vector<std::int64_t> modulus);
  static FieldSpecPtr rationals();
  // Lexicographically first monic irreducible of degree k over F_p
  // (coefficient vectors compared as little-endian base-p integers).
  static std::vector<std::int64_t> first_irreducible(std::int64_t p, int k);

  virtual FieldKind kind() const = 0;
  virtual bool finite() const = 0;
  // Number of elements; only valid for finite fields.
  virtual std::uint64_t order() const = 0;
  virtual std::int64_t characteristic() const = 0;

  virtual FieldElement zero() const = 0;
  virtual FieldElement one() const = 0;
  virtual bool is_zero(const FieldElement& a) const = 0;
  virtual FieldElement add(const FieldElement& a, const FieldElement& b) const = 0;
  virtual FieldElement sub(const FieldElement& a, const FieldElement& b) const = 0;
  virtual FieldElement neg(const FieldElement& a) const = 0;
  virtual FieldElement mul(const FieldElement& a, const FieldElement& b) const = 0;
  virtual FieldElement inv(const FieldElement& a) const = 0;  // throws ZeroInverse
  // Reduction of an arbitrary integer into the field (mod p, or as a rational).
  virtual FieldElement from_int(std::int64_t n) const = 0;

  // Canonical enumeration of a finite field: index 0 is zero, index 1 is one.
  // Prime fields list residues ascending; extension fields list coefficient
  // vectors as little-endian base-p integers. This order is load-bearing: it
  // fixes hyperplane lexicographic order and point enumeration order.
  virtual FieldElement element(std::uint64_t index) const = 0;
  virtual std::uint64_t index_of(const FieldElement& a) const = 0;

  // Serialized element form: finite fields use the decimal enumeration index,
  // rationals use "n" or "n/d" with d > 0 and gcd(n, d) = 1.
  virtual std::string to_string(const FieldElement& a) const = 0;
  virtual FieldElement parse(const std::string& s) const = 0;  // throws ParseError

  // Presentation parameters used by serialization: the degree over the prime
  // subfield (1 unless an extension field) and, for extension fields, the
  // monic modulus as little-endian coefficients of length degree() + 1.
  virtual int degree() const { return 1; }
  virtual std::vector<std::int64_t> modulus_coeffs() const {
    throw BadSpec("only extension fields carry a modulus");
  }

  virtual bool equal_spec(const FieldSpec& other) const = 0;
};

}  // namespace skewrank
