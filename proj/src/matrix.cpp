#include "skewrank/matrix.hpp"

#include "skewrank/errors.hpp"

namespace skewrank {

Matrix::Matrix(RingPtr ring, int rows, int cols) : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw ShapeMismatch("negative matrix shape");
  e_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), ring_->zero());
}

Matrix Matrix::identity(const RingPtr& ring, int n) {
  Matrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = ring->one();
  return m;
}

Matrix Matrix::unit(const RingPtr& ring, int rows, int cols, int i, int j, const Scalar& v) {
  Matrix m(ring, rows, cols);
  m.at(i, j) = v;
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  if (!same_ring(ring_, o.ring_)) return false;
  return e_ == o.e_;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("matrix shapes differ: " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
  require_same_ring(a.ring(), b.ring());
}

}  // namespace

Matrix mat_add(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix r = a;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.at(i, j) = add(r.at(i, j), b.at(i, j));
  return r;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix r = a;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.at(i, j) = sub(r.at(i, j), b.at(i, j));
  return r;
}

Matrix mat_neg(const Matrix& a) {
  Matrix r = a;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.at(i, j) = neg(r.at(i, j));
  return r;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.cols() != b.rows())
    throw ShapeMismatch("matrix product shape mismatch: " + std::to_string(a.cols()) +
                        " inner vs " + std::to_string(b.rows()));
  Matrix r(a.ring(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a.at(i, k);
      if (is_zero(aik)) continue;
      for (int j = 0; j < b.cols(); ++j) {
        const Scalar& bkj = b.at(k, j);
        if (is_zero(bkj)) continue;
        r.at(i, j) = add(r.at(i, j), mul(aik, bkj));
      }
    }
  return r;
}

Matrix scale_f(const FieldElement& f, const Matrix& m) {
  Matrix r = m;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.at(i, j) = scale(f, r.at(i, j));
  return r;
}

bool is_zero_matrix(const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!is_zero(m.at(i, j))) return false;
  return true;
}

int rank(const Matrix& m) {
  Matrix a = m;
  int n = a.rows(), p = a.cols();
  int r = 0;
  for (int col = 0; col < p && r < n; ++col) {
    // Pivot: first row at or below r with a nonzero entry in this column.
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (!is_zero(a.at(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = col; j < p; ++j) std::swap(a.at(r, j), a.at(piv, j));
    // Normalize the pivot row on the left, then clear below on the left.
    Scalar s = inv(a.at(r, col));
    for (int j = col; j < p; ++j) a.at(r, j) = mul(s, a.at(r, j));
    for (int i = r + 1; i < n; ++i) {
      Scalar c = a.at(i, col);
      if (is_zero(c)) continue;
      for (int j = col; j < p; ++j) a.at(i, j) = sub(a.at(i, j), mul(c, a.at(r, j)));
    }
    ++r;
  }
  return r;
}

Matrix rank_normal_matrix(const RingPtr& ring, int rows, int cols, int r) {
  Matrix j(ring, rows, cols);
  for (int i = 0; i < r; ++i) j.at(i, i) = ring->one();
  return j;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("only square matrices can be inverted");
  RankCertificate cert = normal_form(m);
  if (cert.r != m.rows()) throw SingularWitness("matrix is singular");
  return mat_mul(cert.Q, cert.P);
}

namespace {

// Witness-carrying elimination state. Every mutation of A is mirrored into the
// accumulators so that A == P * M * Q holds throughout:
//   row op A <- E A:    P <- E P,   P_inv <- P_inv E^{-1}
//   col op A <- A E:    Q <- Q E,   Q_inv <- E^{-1} Q_inv
struct Eliminator {
  Matrix A, P, P_inv, Q, Q_inv;

  explicit Eliminator(const Matrix& m)
      : A(m),
        P(Matrix::identity(m.ring(), m.rows())),
        P_inv(Matrix::identity(m.ring(), m.rows())),
        Q(Matrix::identity(m.ring(), m.cols())),
        Q_inv(Matrix::identity(m.ring(), m.cols())) {}

  void row_swap(int r1, int r2) {
    if (r1 == r2) return;
    for (int j = 0; j < A.cols(); ++j) std::swap(A.at(r1, j), A.at(r2, j));
    for (int j = 0; j < P.cols(); ++j) std::swap(P.at(r1, j), P.at(r2, j));
    for (int i = 0; i < P_inv.rows(); ++i) std::swap(P_inv.at(i, r1), P_inv.at(i, r2));
  }
  void col_swap(int c1, int c2) {
    if (c1 == c2) return;
    for (int i = 0; i < A.rows(); ++i) std::swap(A.at(i, c1), A.at(i, c2));
    for (int i = 0; i < Q.rows(); ++i) std::swap(Q.at(i, c1), Q.at(i, c2));
    for (int j = 0; j < Q_inv.cols(); ++j) std::swap(Q_inv.at(c1, j), Q_inv.at(c2, j));
  }
  // row_r <- s * row_r
  void row_scale(int r, const Scalar& s) {
    Scalar si = inv(s);
    for (int j = 0; j < A.cols(); ++j) A.at(r, j) = mul(s, A.at(r, j));
    for (int j = 0; j < P.cols(); ++j) P.at(r, j) = mul(s, P.at(r, j));
    for (int i = 0; i < P_inv.rows(); ++i) P_inv.at(i, r) = mul(P_inv.at(i, r), si);
  }
  // row_i <- row_i + c * row_r
  void row_axpy(int i, int r, const Scalar& c) {
    for (int j = 0; j < A.cols(); ++j) A.at(i, j) = add(A.at(i, j), mul(c, A.at(r, j)));
    for (int j = 0; j < P.cols(); ++j) P.at(i, j) = add(P.at(i, j), mul(c, P.at(r, j)));
    for (int k = 0; k < P_inv.rows(); ++k)
      P_inv.at(k, r) = sub(P_inv.at(k, r), mul(P_inv.at(k, i), c));
  }
  // col_j <- col_j + col_t * c
  void col_axpy(int j, int t, const Scalar& c) {
    for (int i = 0; i < A.rows(); ++i) A.at(i, j) = add(A.at(i, j), mul(A.at(i, t), c));
    for (int i = 0; i < Q.rows(); ++i) Q.at(i, j) = add(Q.at(i, j), mul(Q.at(i, t), c));
    for (int k = 0; k < Q_inv.cols(); ++k)
      Q_inv.at(t, k) = sub(Q_inv.at(t, k), mul(c, Q_inv.at(j, k)));
  }
};

}  // namespace

RankCertificate normal_form(const Matrix& m) {
  Eliminator e(m);
  int n = m.rows(), p = m.cols();
  int r = 0;
  while (r < n && r < p) {
    // First nonzero entry of the trailing block, row-major scan.
    int pi = -1, pj = -1;
    for (int i = r; i < n && pi < 0; ++i)
      for (int j = r; j < p; ++j)
        if (!is_zero(e.A.at(i, j))) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    e.row_swap(r, pi);
    e.col_swap(r, pj);
    e.row_scale(r, inv(e.A.at(r, r)));
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      Scalar c = e.A.at(i, r);
      if (!is_zero(c)) e.row_axpy(i, r, neg(c));
    }
    for (int j = 0; j < p; ++j) {
      if (j == r) continue;
      Scalar c = e.A.at(r, j);
      if (!is_zero(c)) e.col_axpy(j, r, neg(c));
    }
    ++r;
  }
  // Reconstruction and inverse identities, checked unconditionally: a failure
  // here can only be an implementation bug.
  Matrix expect = rank_normal_matrix(m.ring(), n, p, r);
  if (e.A != expect) throw ContradictionWitness("elimination did not reach the rank normal form");
  if (mat_mul(mat_mul(e.P, m), e.Q) != expect)
    throw ContradictionWitness("witness reconstruction identity P*M*Q = J_r failed");
  if (mat_mul(e.P, e.P_inv) != Matrix::identity(m.ring(), n) ||
      mat_mul(e.Q_inv, e.Q) != Matrix::identity(m.ring(), p))
    throw ContradictionWitness("accumulated witness inverses are wrong");
  return RankCertificate{r, std::move(e.P), std::move(e.P_inv), std::move(e.Q), std::move(e.Q_inv)};
}

Matrix regular_rep(const Matrix& m) {
  auto fring = DivisionRingSpec::field_as_ring(m.ring()->base());
  int d = m.ring()->dim();
  Matrix r(fring, d * m.rows(), d * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      auto L = m.ring()->left_mul_operator(m.at(i, j));
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          Scalar s{fring, {L[static_cast<std::size_t>(a) * static_cast<std::size_t>(d) +
                             static_cast<std::size_t>(b)]}};
          r.at(i * d + a, j * d + b) = std::move(s);
        }
    }
  return r;
}

Matrix transpose_op(const Matrix& m) { return transpose_op(m, m.ring()->opposite()); }

Matrix transpose_op(const Matrix& m, const RingPtr& op) {
  Matrix r(op, m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Scalar s{op, m.at(i, j).coords};
      r.at(j, i) = std::move(s);
    }
  return r;
}

}  // namespace skewrank
