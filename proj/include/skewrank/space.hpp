#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "skewrank/echelon.hpp"
#include "skewrank/matrix.hpp"

namespace skewrank {

// Flattening of an n x p matrix over D to a vector of length n*p*d over F:
// entry (i, j), coordinate k  ->  position (i*p + j)*d + k  (all 0-based).
// Every echelon computation on matrix spaces uses this order; the canonical
// forms below (and hence golden outputs and file formats) depend on it.
FRow flatten(const Matrix& m);
Matrix unflatten(const RingPtr& ring, int n, int p, const FRow& v);

// An F-affine subspace of Mat_{n,p}(D): offset + span_F(basis).
//
// Canonical-form invariants (established by make/reduce, preserved by every
// operation returning a space):
//   - the flattened basis vectors are in reduced row-echelon form over F, so
//     they are independent and dim_F of the translation space = basis size;
//   - the offset is reduced modulo the span: its flattening is zero at every
//     pivot coordinate of the echelon basis.
// Two spaces are equal as point sets iff their canonical forms are equal,
// which is what operator== compares.
class AffineMatrixSpace {
 public:
  // Canonicalize a spanning description. Generators may be dependent or
  // duplicated; the offset may lie in the span (then it reduces to zero).
  static AffineMatrixSpace reduce(Matrix offset, const std::vector<Matrix>& generators);
  // The linear span of the generators (offset 0).
  static AffineMatrixSpace span(const RingPtr& ring, int n, int p,
                                const std::vector<Matrix>& generators);
  // The singleton {0}.
  static AffineMatrixSpace zero_space(const RingPtr& ring, int n, int p);
  // All of Mat_{n,p}(D), basis the coordinate units times the D-basis.
  static AffineMatrixSpace full_space(const RingPtr& ring, int n, int p);

  const RingPtr& ring() const { return ring_; }
  int n() const { return n_; }
  int p() const { return p_; }
  const Matrix& offset() const { return offset_; }
  const std::vector<Matrix>& basis() const { return basis_; }
  int dim_f() const { return static_cast<int>(basis_.size()); }
  bool linear() const;  // does the space contain 0 (offset reduced to 0)?

  bool contains(const Matrix& m) const;
  bool operator==(const AffineMatrixSpace& o) const;
  bool operator!=(const AffineMatrixSpace& o) const { return !(*this == o); }

  // Point enumeration over a finite base field: the space has |F|^dim members,
  //   point(t) = offset + sum_j c_j(t) * basis[j]
  // where the c_j(t) are the digits of t in base |F| (digit j = coefficient of
  // basis[j], digit 0 fastest) through the field's canonical element order.
  // This order is load-bearing: "first member with property X" everywhere
  // below means first in this order.
  std::uint64_t point_count() const;  // throws InfiniteRing over Q; CapExceeded past 2^62
  Matrix point(std::uint64_t t) const;

 private:
  AffineMatrixSpace(RingPtr ring, int n, int p, Matrix offset, std::vector<Matrix> basis);
  RingPtr ring_;
  int n_, p_;
  Matrix offset_;
  std::vector<Matrix> basis_;
};

// A hyperplane H = {x in D^p : row * x = 0} of the right D-vector space D^p,
// stored as the unique left-normalized covector: entries before `pivot` are
// zero and the entry at `pivot` is 1.
struct Hyperplane {
  Matrix row;  // 1 x p
  int pivot;
};

// Normalize a nonzero covector (divide on the left by its first nonzero
// entry). Throws BadSpec on the zero row.
Hyperplane make_hyperplane(const Matrix& row);

// All hyperplanes of D^p for finite D, each exactly once, in ascending
// lexicographic order of the normalized rows (entries compared left to right
// through the ring's canonical scalar order). Count: (Q^p - 1)/(Q - 1),
// Q = #D. Throws InfiniteRing over Q.
std::vector<Hyperplane> enumerate_hyperplanes(const RingPtr& ring, int p);

// A p x (p-1) matrix K whose columns are a right-D-basis of H, by pivot
// completion: the column for each position j != pivot is e_j - e_pivot * h_j
// (so for j < pivot it is just e_j). Then H = K * D^{p-1} and row * K = 0.
Matrix hyperplane_kernel_cols(const Hyperplane& h);

// The invertible p x p matrix [K | e_pivot]: its first p-1 columns span H, so
// it carries D^{p-1} x {0} onto H.
Matrix hyperplane_completion(const Hyperplane& h);

// S_H: the members of a linear space V that kill H, i.e. {M in V : M*K = 0}.
// Computed by solving the F-linear system on basis coordinates. Throws
// NotLinear when V has a nonzero offset.
AffineMatrixSpace sub_v_h(const AffineMatrixSpace& v, const Hyperplane& h);

// {P*M*Q : M in S}, re-canonicalized. act() trusts its inputs; act_equiv()
// first checks that P and Q are square of the right sizes and invertible,
// throwing SingularWitness otherwise. Composition law:
//   act(act(S, P1, Q1), P2, Q2) == act(S, P2*P1, Q1*Q2).
AffineMatrixSpace act(const AffineMatrixSpace& s, const Matrix& p_mat, const Matrix& q_mat);
AffineMatrixSpace act_equiv(const AffineMatrixSpace& s, const Matrix& p_mat, const Matrix& q_mat);

// The entrywise-transposed space over the opposite ring (shape p x n).
// Rank-preserving, so it swaps row and column structure.
AffineMatrixSpace transpose_space(const AffineMatrixSpace& s);

struct MaxRankResult {
  int rank;
  Matrix witness;  // first member attaining the maximum in point order
  Verdict verdict;
};

// Maximum rank over the space. Finite base field: exhaustive over all
// |F|^dim points (early exit once min(n, p) is reached), Proven. Infinite
// base: every {0,+1,-1} coefficient combination (skipped past 3^12 of them)
// plus `samples` seeded random points with rational coefficients of height
// <= `height`, SampledOnly.
MaxRankResult max_rank(const AffineMatrixSpace& s, int samples = 2000,
                       std::int64_t height = 10, std::uint64_t seed = 0x5eedULL);

// First member (in point order) of rank strictly above r, if any. Exhaustive,
// so finite base fields only (InfiniteRing otherwise).
std::optional<Matrix> first_rank_above(const AffineMatrixSpace& s, int r);

}  // namespace skewrank
