#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "skewrank/field.hpp"

namespace skewrank {

class DivisionRingSpec;
using RingPtr = std::shared_ptr<const DivisionRingSpec>;

// Whether a property was established exhaustively or only on a sample.
enum class Verdict { Proven, SampledOnly };

// One element of the division ring D, as a coordinate vector of length d over
// the base field of its ring. Scalars are immutable values; operations are the
// free functions below and check that both operands belong to the same ring.
struct Scalar {
  RingPtr ring;
  std::vector<FieldElement> coords;

  bool operator==(const Scalar& o) const { return coords == o.coords; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
};

// A division ring D of finite dimension d over a central subfield F, presented
// by structure constants: e_i * e_j = sum_k c[i][j][k] e_k, with a designated
// basis index acting as 1. Construction verifies:
//   - the unit law on all basis elements (both sides),
//   - associativity on all d^3 basis triples,
//   - invertibility of every nonzero element (exhaustive when F is finite,
//     seeded random sample when infinite; the latter yields a SampledOnly
//     verdict, never Proven).
class DivisionRingSpec : public std::enable_shared_from_this<DivisionRingSpec> {
 public:
  struct SamplePolicy {
    int samples = 1000;
    std::int64_t height = 10;   // bound on |numerator| and denominator
    std::uint64_t seed = 0x5eed5eedULL;
  };

  static RingPtr make(FieldSpecPtr base, int d, std::vector<FieldElement> table, int unit_index);
  static RingPtr make(FieldSpecPtr base, int d, std::vector<FieldElement> table, int unit_index,
                      SamplePolicy policy);
  // GF(p^k) presented as a k-dimensional algebra over F_p with basis
  // 1, x, ..., x^{k-1} modulo the lexicographically first monic irreducible.
  static RingPtr gf(std::int64_t p, int k = 1);
  // Hamilton quaternions over Q with basis (1, i, j, k).
  static RingPtr quaternions();
  // A field viewed as a 1-dimensional division ring over itself.
  static RingPtr field_as_ring(FieldSpecPtr base);

  // The opposite ring: c'[i][j][k] = c[j][i][k]. Applying it twice gives back
  // a spec structurally equal to the original.
  RingPtr opposite() const;

  const FieldSpecPtr& base() const { return base_; }
  int dim() const { return d_; }
  int unit_index() const { return unit_; }
  Verdict division_verdict() const { return verdict_; }
  bool finite() const { return base_->finite(); }
  std::uint64_t order() const;  // q^d, finite only
  // Structure constant c_{ijk}.
  const FieldElement& c(int i, int j, int k) const {
    return table_[(static_cast<std::size_t>(i) * static_cast<std::size_t>(d_) +
                   static_cast<std::size_t>(j)) *
                      static_cast<std::size_t>(d_) +
                  static_cast<std::size_t>(k)];
  }

  Scalar zero() const;
  Scalar one() const;
  Scalar basis_element(int i) const;
  Scalar from_field(const FieldElement& f) const;  // f * 1
  Scalar from_int(std::int64_t n) const;

  // Canonical scalar enumeration (finite rings): little-endian mixed radix
  // over the F-coordinate indices, coordinate 0 least significant.
  std::uint64_t scalar_index(const Scalar& a) const;
  Scalar scalar_by_index(std::uint64_t idx) const;

  // Column-major action of left multiplication by a on coordinates: the d x d
  // F-matrix L with L[k][j] = coefficient of e_k in a * e_j, flattened
  // row-major. Rank d exactly when a is invertible.
  std::vector<FieldElement> left_mul_operator(const Scalar& a) const;

  bool spec_equal(const DivisionRingSpec& other) const;

  // Serialization hints: how this spec was created.
  enum class Provenance { Gf, QuaternionQ, Custom };
  Provenance provenance() const { return provenance_; }
  std::int64_t gf_p() const { return gf_p_; }
  int gf_k() const { return gf_k_; }

 private:
  DivisionRingSpec(FieldSpecPtr base, int d, std::vector<FieldElement> table, int unit_index);
  void verify_structure() const;
  void verify_division(const SamplePolicy& policy);

  FieldSpecPtr base_;
  int d_;
  std::vector<FieldElement> table_;  // d*d*d, index (i*d + j)*d + k
  int unit_;
  Verdict verdict_ = Verdict::Proven;
  Provenance provenance_ = Provenance::Custom;
  std::int64_t gf_p_ = 0;
  int gf_k_ = 0;
};

// Scalar arithmetic. Both operands must belong to structurally equal rings.
bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b);
bool is_zero(const Scalar& a);
Scalar add(const Scalar& a, const Scalar& b);
Scalar sub(const Scalar& a, const Scalar& b);
Scalar neg(const Scalar& a);
// Bilinear product through the structure constants; order matters.
Scalar mul(const Scalar& a, const Scalar& b);
// Two-sided inverse, found by solving the d x d system (left multiplication
// operator) over F and checked on both sides. Throws ZeroInverse on zero and
// SingularElement when the presented algebra fails to divide.
Scalar inv(const Scalar& a);
// Central scaling by an element of F.
Scalar scale(const FieldElement& f, const Scalar& a);

}  // namespace skewrank
