#pragma once

#include <vector>

#include "skewrank/ring.hpp"

namespace skewrank {

// A dense n x p matrix over a division ring D, row-major. Empty shapes
// (n == 0 or p == 0) are legal and have rank 0.
//
// Side conventions, fixed once and used everywhere:
//   - rank means right column rank: the dimension of the right D-span of the
//     columns (equal to the left row rank);
//   - row operations multiply rows by scalars on the LEFT (row_i += c * row_r),
//     which realizes left multiplication by an elementary matrix and preserves
//     column rank;
//   - column operations multiply columns by scalars on the RIGHT
//     (col_j += col_t * c), realizing right multiplication.
// Over a noncommutative ring these are not interchangeable; every elimination
// routine below sticks to this orientation.
class Matrix {
 public:
  Matrix(RingPtr ring, int rows, int cols);
  static Matrix identity(const RingPtr& ring, int n);
  static Matrix unit(const RingPtr& ring, int rows, int cols, int i, int j, const Scalar& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }

  const Scalar& at(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
              static_cast<std::size_t>(j)];
  }
  Scalar& at(int i, int j) {
    return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
              static_cast<std::size_t>(j)];
  }

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  RingPtr ring_;
  int rows_, cols_;
  std::vector<Scalar> e_;
};

Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_neg(const Matrix& a);
// Central scaling by an element of the base field.
Matrix scale_f(const FieldElement& f, const Matrix& m);
bool is_zero_matrix(const Matrix& m);

// Right column rank via noncommutative Gaussian elimination.
int rank(const Matrix& m);

// Equivalence certificate: P * M * Q = J_r exactly, with J_r the matrix that
// has r ones down the diagonal and zeros elsewhere. The inverses are
// accumulated during elimination, not recomputed afterwards.
struct RankCertificate {
  int r;
  Matrix P, P_inv;  // n x n
  Matrix Q, Q_inv;  // p x p
};

// Computes the certificate and verifies the reconstruction identity before
// returning (a failure is a ContradictionWitness, i.e. an internal bug).
RankCertificate normal_form(const Matrix& m);

// J_r of the given shape.
Matrix rank_normal_matrix(const RingPtr& ring, int rows, int cols, int r);

// Exact inverse of a square invertible matrix, read off the elimination
// certificate (P M Q = I gives M^{-1} = Q P). Throws SingularWitness.
Matrix inverse(const Matrix& m);

// The F-linear action of M on column vectors, as a (d n) x (d p) matrix over
// the base field viewed as a ring: block (i, j) is the left-multiplication
// operator of M[i][j] on coordinates. Its rank over F is exactly d * rank(M),
// which is the cross-validation oracle for the elimination above.
Matrix regular_rep(const Matrix& m);

// Entrywise transpose into the opposite ring: an F-linear, rank-preserving,
// product-reversing involution Mat_{n,p}(D) -> Mat_{p,n}(D^op). The overload
// taking a ring reuses an already-built opposite spec (it must be structurally
// equal to m.ring()->opposite()).
Matrix transpose_op(const Matrix& m);
Matrix transpose_op(const Matrix& m, const RingPtr& opposite_ring);

}  // namespace skewrank
