#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "skewrank/space.hpp"

namespace skewrank {

// The model spaces of the classification, and the machinery that reduces an
// arbitrary maximal bounded-rank affine space to one of them with explicit,
// checked change-of-basis witnesses.

// R(s, t): matrices whose lower-right (n-s) x (p-t) block is zero. Linear,
// dim_f = d * (n*p - (n-s)*(p-t)), and every member has rank at most s + t.
AffineMatrixSpace compression(int s, int t, int n, int p, const RingPtr& ring);

// U2 = { [x 0; y x+1] : x, y in F } over a ring with exactly two elements:
// affine (0 is not a member), dimension 2, every member of rank exactly 1.
AffineMatrixSpace u2_space();                     // over GF(2)
AffineMatrixSpace u2_space(const RingPtr& ring);  // ring must have order 2

// Single-matrix cut-down oracle: if both M and M + E_{n,p} have rank at most
// r, then the upper-left (n-1) x (p-1) block of M has rank at most r - 1.
// Returns the truth value of that implication for this M (expected: always
// true; property suites call it on random matrices).
bool extraction_predicate(const Matrix& m, int r);

// Outcome of the hyperplane scan on a linear-translation-space question:
// either some hyperplane H has dim_F S_H < d*r (the lexicographically first
// one is reported, with the dimension), or none does and S is carried exactly
// onto R(r, 0) by the returned witnesses.
struct SmallHyperplane {
  Hyperplane h;
  int dim;  // dim_F of S_H, < d*r
};
struct EquivRr0 {
  Matrix p, p_inv, q, q_inv;  // act(S, p, q) == R(r, 0), exactly
};
using ScanOutcome = std::variant<SmallHyperplane, EquivRr0>;

// Scan all hyperplanes of D^p in lexicographic order. Preconditions: finite
// ring (InfiniteRing), p > r > 0 (BadSpec), and S bounded by rank r —
// verified exhaustively first, NotBoundedRank otherwise. On the equivalence
// branch the construction normalizes the first maximal-rank member (in point
// order) to J_r and checks the resulting space equals R(r, 0) canonically;
// any mismatch with the supporting theory raises ContradictionWitness.
ScanOutcome key_lemma_scan(const AffineMatrixSpace& s, int r);

// An F-affine map Mat_{n,r}(D) -> D^n, stored by its value at 0 and its
// values on the coordinate basis matrices E_{i,j} e_k. Values are n x 1
// column matrices.
class LinearMapOnMatrices {
 public:
  // basis_values indexed by (i*r + j)*d + k.
  LinearMapOnMatrices(RingPtr ring, int n, int r, Matrix value_at_zero,
                      std::vector<Matrix> basis_values);
  // The right-multiplication map M -> M * x for a column x (r x 1).
  static LinearMapOnMatrices right_mult(int n, const Matrix& x);

  const RingPtr& ring() const { return ring_; }
  int n() const { return n_; }
  int r() const { return r_; }
  const Matrix& value_at_zero() const { return zero_value_; }
  const Matrix& basis_value(int i, int j, int k) const;

  // Affine evaluation on an arbitrary n x r matrix through its F-coordinates.
  Matrix eval(const Matrix& m) const;

 private:
  RingPtr ring_;
  int n_, r_;
  Matrix zero_value_;
  std::vector<Matrix> values_;
};

// Outcome of range-compatible recovery: either the column x with
// F(M) = M * x for every M, or a concrete witness M whose value escapes the
// column span of M (certified by rank([M | F(M)]) > rank(M)).
struct RecoveredX {
  Matrix x;  // r x 1
};
struct IncompatibleWitness {
  Matrix m;  // n x r
};
using RecoverOutcome = std::variant<RecoveredX, IncompatibleWitness>;

// Recover x column-by-column from the values on single-nonzero-column
// matrices, then verify the whole basis; on a mismatch, walk the collinearity
// argument to produce a certified incompatibility witness. Requires n >= 2
// (DomainTooFlat). A map with F(0) != 0 is incompatible with witness 0.
RecoverOutcome recover_x(const LinearMapOnMatrices& f);

// Classification outcome for an affine space against rank bound r.
enum class Tag {
  CompressionColumns,  // "a": equivalent to R(0, r)
  CompressionRows,     // "b": n == p and equivalent to R(r, 0)
  ExceptionalU2,       // "c": (n, p, r, #D) = (2, 2, 1, 2), equivalent to U2
  NotMaximal,          // rank-bounded but dim_f below d*n*r
  NotBoundedRank,      // some member exceeds rank r
};
const char* tag_string(Tag t);

struct ClassificationResult {
  Tag tag;
  std::optional<Matrix> p, q;     // equivalence witnesses for a/b/c
  std::optional<Matrix> witness;  // a member of rank > r for NotBoundedRank
};

// The model space a tagged result claims equivalence with.
AffineMatrixSpace model_space(Tag t, const RingPtr& ring, int n, int p, int r);

// Full classification of an affine space S <= Mat_{n,p}(D) against rank
// bound r, for finite D and n >= p (transpose first otherwise; BadSpec).
// Every returned witness pair is verified internally by recomputing
// act_equiv(S, P, Q) and comparing with the model space canonically;
// internal inconsistencies raise ContradictionWitness.
ClassificationResult classify(const AffineMatrixSpace& s, int r);

// Independent re-check of a classification result (used by tests and the
// command-line tool): recomputes membership/rank facts for refutations and
// the act_equiv round trip for equivalence tags.
bool verify_classification(const AffineMatrixSpace& s, int r, const ClassificationResult& res);

}  // namespace skewrank
