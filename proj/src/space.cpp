#include "skewrank/space.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "skewrank/errors.hpp"

namespace skewrank {

FRow flatten(const Matrix& m) {
  const int d = m.ring()->dim();
  FRow v;
  v.reserve(static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols()) *
            static_cast<std::size_t>(d));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      for (int k = 0; k < d; ++k) v.push_back(m.at(i, j).coords[static_cast<std::size_t>(k)]);
  return v;
}

Matrix unflatten(const RingPtr& ring, int n, int p, const FRow& v) {
  const int d = ring->dim();
  if (v.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(p) *
                      static_cast<std::size_t>(d))
    throw ShapeMismatch("unflatten: vector length does not match n*p*d");
  Matrix m(ring, n, p);
  std::size_t pos = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) {
      Scalar s{ring, std::vector<FieldElement>(v.begin() + static_cast<std::ptrdiff_t>(pos),
                                               v.begin() + static_cast<std::ptrdiff_t>(pos + d))};
      pos += static_cast<std::size_t>(d);
      m.at(i, j) = std::move(s);
    }
  return m;
}

AffineMatrixSpace::AffineMatrixSpace(RingPtr ring, int n, int p, Matrix offset,
                                     std::vector<Matrix> basis)
    : ring_(std::move(ring)), n_(n), p_(p), offset_(std::move(offset)), basis_(std::move(basis)) {}

AffineMatrixSpace AffineMatrixSpace::reduce(Matrix offset, const std::vector<Matrix>& generators) {
  const RingPtr ring = offset.ring();
  const int n = offset.rows(), p = offset.cols();
  const int width = n * p * ring->dim();
  Echelon ech(ring->base(), width);
  for (const Matrix& g : generators) {
    require_same_ring(ring, g.ring());
    if (g.rows() != n || g.cols() != p)
      throw ShapeMismatch("reduce: generator shape differs from offset shape");
    ech.insert(flatten(g));
  }
  FRow off = ech.residual(flatten(offset));
  std::vector<Matrix> basis;
  basis.reserve(ech.rows().size());
  for (const FRow& r : ech.rows()) basis.push_back(unflatten(ring, n, p, r));
  return AffineMatrixSpace(ring, n, p, unflatten(ring, n, p, off), std::move(basis));
}

AffineMatrixSpace AffineMatrixSpace::span(const RingPtr& ring, int n, int p,
                                          const std::vector<Matrix>& generators) {
  return reduce(Matrix(ring, n, p), generators);
}

AffineMatrixSpace AffineMatrixSpace::zero_space(const RingPtr& ring, int n, int p) {
  return reduce(Matrix(ring, n, p), {});
}

AffineMatrixSpace AffineMatrixSpace::full_space(const RingPtr& ring, int n, int p) {
  std::vector<Matrix> gens;
  gens.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(p) *
               static_cast<std::size_t>(ring->dim()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < ring->dim(); ++k)
        gens.push_back(Matrix::unit(ring, n, p, i, j, ring->basis_element(k)));
  return reduce(Matrix(ring, n, p), gens);
}

bool AffineMatrixSpace::linear() const { return is_zero_matrix(offset_); }

bool AffineMatrixSpace::contains(const Matrix& m) const {
  require_same_ring(ring_, m.ring());
  if (m.rows() != n_ || m.cols() != p_) throw ShapeMismatch("contains: shape differs");
  Echelon ech(ring_->base(), n_ * p_ * ring_->dim());
  for (const Matrix& b : basis_) ech.insert(flatten(b));
  return ech.in_span(flatten(mat_sub(m, offset_)));
}

bool AffineMatrixSpace::operator==(const AffineMatrixSpace& o) const {
  return same_ring(ring_, o.ring_) && n_ == o.n_ && p_ == o.p_ && offset_ == o.offset_ &&
         basis_ == o.basis_;
}

std::uint64_t AffineMatrixSpace::point_count() const {
  if (!ring_->base()->finite())
    throw InfiniteRing("point enumeration needs a finite base field");
  const std::uint64_t q = ring_->base()->order();
  std::uint64_t total = 1;
  for (int j = 0; j < dim_f(); ++j) {
    if (total > (std::uint64_t{1} << 62) / q)
      throw CapExceeded("point count exceeds 2^62");
    total *= q;
  }
  return total;
}

Matrix AffineMatrixSpace::point(std::uint64_t t) const {
  const FieldSpecPtr& field = ring_->base();
  if (!field->finite()) throw InfiniteRing("point enumeration needs a finite base field");
  const std::uint64_t q = field->order();
  Matrix acc = offset_;
  for (const Matrix& b : basis_) {
    const std::uint64_t digit = t % q;
    t /= q;
    if (digit != 0) acc = mat_add(acc, scale_f(field->element(digit), b));
  }
  return acc;
}

Hyperplane make_hyperplane(const Matrix& row) {
  if (row.rows() != 1) throw ShapeMismatch("hyperplane covector must be a single row");
  int pivot = -1;
  for (int j = 0; j < row.cols(); ++j)
    if (!is_zero(row.at(0, j))) {
      pivot = j;
      break;
    }
  if (pivot < 0) throw BadSpec("the zero row is not a hyperplane covector");
  const Scalar lead = row.at(0, pivot);
  Matrix norm = row;
  if (lead != row.ring()->one()) {
    const Scalar li = inv(lead);
    for (int j = pivot; j < row.cols(); ++j) norm.at(0, j) = mul(li, row.at(0, j));
  }
  return Hyperplane{std::move(norm), pivot};
}

std::vector<Hyperplane> enumerate_hyperplanes(const RingPtr& ring, int p) {
  if (p < 1) throw BadSpec("hyperplanes need p >= 1");
  if (!ring->finite()) throw InfiniteRing("hyperplane enumeration needs a finite ring");
  const std::uint64_t q = ring->order();
  std::vector<Hyperplane> out;
  for (int j0 = p - 1; j0 >= 0; --j0) {
    const int tail = p - 1 - j0;
    std::vector<std::uint64_t> dig(static_cast<std::size_t>(tail), 0);
    for (;;) {
      Matrix row(ring, 1, p);
      row.at(0, j0) = ring->one();
      for (int t = 0; t < tail; ++t)
        row.at(0, j0 + 1 + t) = ring->scalar_by_index(dig[static_cast<std::size_t>(t)]);
      out.push_back(Hyperplane{std::move(row), j0});
      int t = tail - 1;  // rightmost tail digit varies fastest
      while (t >= 0) {
        if (++dig[static_cast<std::size_t>(t)] == q) {
          dig[static_cast<std::size_t>(t)] = 0;
          --t;
        } else
          break;
      }
      if (t < 0) break;
    }
  }
  return out;
}

Matrix hyperplane_kernel_cols(const Hyperplane& h) {
  const RingPtr& ring = h.row.ring();
  const int p = h.row.cols();
  Matrix k(ring, p, p - 1);
  int col = 0;
  for (int j = 0; j < p; ++j) {
    if (j == h.pivot) continue;
    k.at(j, col) = ring->one();
    k.at(h.pivot, col) = neg(h.row.at(0, j));
    ++col;
  }
  return k;
}

Matrix hyperplane_completion(const Hyperplane& h) {
  const RingPtr& ring = h.row.ring();
  const int p = h.row.cols();
  const Matrix k = hyperplane_kernel_cols(h);
  Matrix q1(ring, p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p - 1; ++j) q1.at(i, j) = k.at(i, j);
  q1.at(h.pivot, p - 1) = ring->one();
  return q1;
}

AffineMatrixSpace sub_v_h(const AffineMatrixSpace& v, const Hyperplane& h) {
  if (!v.linear()) throw NotLinear("S_H is only defined for linear spaces");
  require_same_ring(v.ring(), h.row.ring());
  if (h.row.cols() != v.p()) throw ShapeMismatch("hyperplane lives in the wrong column space");
  const FieldSpecPtr& field = v.ring()->base();
  const Matrix k = hyperplane_kernel_cols(h);
  const int m = v.dim_f();
  const int len = v.n() * (v.p() - 1) * v.ring()->dim();
  // F-linear system on basis coordinates: column t is flatten(B_t * K).
  std::vector<FRow> rows(static_cast<std::size_t>(len), FRow(static_cast<std::size_t>(m)));
  for (int t = 0; t < m; ++t) {
    const FRow ft = flatten(mat_mul(v.basis()[static_cast<std::size_t>(t)], k));
    for (int idx = 0; idx < len; ++idx)
      rows[static_cast<std::size_t>(idx)][static_cast<std::size_t>(t)] =
          ft[static_cast<std::size_t>(idx)];
  }
  std::vector<Matrix> gens;
  for (const FRow& c : kernel_basis(field, rows, m)) {
    Matrix acc(v.ring(), v.n(), v.p());
    for (int t = 0; t < m; ++t)
      if (!field->is_zero(c[static_cast<std::size_t>(t)]))
        acc = mat_add(acc, scale_f(c[static_cast<std::size_t>(t)],
                                   v.basis()[static_cast<std::size_t>(t)]));
    gens.push_back(std::move(acc));
  }
  return AffineMatrixSpace::span(v.ring(), v.n(), v.p(), gens);
}

AffineMatrixSpace act(const AffineMatrixSpace& s, const Matrix& p_mat, const Matrix& q_mat) {
  require_same_ring(s.ring(), p_mat.ring());
  require_same_ring(s.ring(), q_mat.ring());
  if (p_mat.rows() != s.n() || p_mat.cols() != s.n() || q_mat.rows() != s.p() ||
      q_mat.cols() != s.p())
    throw ShapeMismatch("equivalence witnesses must be square of matching sizes");
  auto push = [&](const Matrix& m) { return mat_mul(mat_mul(p_mat, m), q_mat); };
  std::vector<Matrix> gens;
  gens.reserve(s.basis().size());
  for (const Matrix& b : s.basis()) gens.push_back(push(b));
  return AffineMatrixSpace::reduce(push(s.offset()), gens);
}

AffineMatrixSpace act_equiv(const AffineMatrixSpace& s, const Matrix& p_mat,
                            const Matrix& q_mat) {
  if (p_mat.rows() != s.n() || p_mat.cols() != s.n())
    throw ShapeMismatch("left witness must be n x n");
  if (q_mat.rows() != s.p() || q_mat.cols() != s.p())
    throw ShapeMismatch("right witness must be p x p");
  if (rank(p_mat) != s.n()) throw SingularWitness("left equivalence witness is singular");
  if (rank(q_mat) != s.p()) throw SingularWitness("right equivalence witness is singular");
  return act(s, p_mat, q_mat);
}

AffineMatrixSpace transpose_space(const AffineMatrixSpace& s) {
  const RingPtr op = s.ring()->opposite();
  std::vector<Matrix> gens;
  gens.reserve(s.basis().size());
  for (const Matrix& b : s.basis()) gens.push_back(transpose_op(b, op));
  return AffineMatrixSpace::reduce(transpose_op(s.offset(), op), gens);
}

namespace {

// Shared "track the best rank seen" accumulator; keeps the first witness (in
// visit order) attaining the final maximum, because replacement is only on
// strict improvement.
struct Best {
  int rank = -1;
  std::optional<Matrix> witness;
  bool consider(const Matrix& m, int cap) {
    const int r = skewrank::rank(m);
    if (r > rank) {
      rank = r;
      witness = m;
    }
    return rank >= cap;
  }
};

}  // namespace

MaxRankResult max_rank(const AffineMatrixSpace& s, int samples, std::int64_t height,
                       std::uint64_t seed) {
  const int cap = std::min(s.n(), s.p());
  Best best;
  if (s.ring()->base()->finite()) {
    const std::uint64_t total = s.point_count();
    for (std::uint64_t t = 0; t < total; ++t)
      if (best.consider(s.point(t), cap)) break;
    return MaxRankResult{best.rank, *best.witness, Verdict::Proven};
  }
  const FieldSpecPtr& field = s.ring()->base();
  const int dim = s.dim_f();
  auto combo = [&](const std::vector<FieldElement>& c) {
    Matrix acc = s.offset();
    for (int t = 0; t < dim; ++t)
      if (!field->is_zero(c[static_cast<std::size_t>(t)]))
        acc = mat_add(acc, scale_f(c[static_cast<std::size_t>(t)],
                                   s.basis()[static_cast<std::size_t>(t)]));
    return acc;
  };
  bool done = false;
  if (dim <= 12) {  // 3^12 coefficient patterns at most
    std::vector<int> dig(static_cast<std::size_t>(dim), 0);
    static const std::int64_t vals[3] = {0, 1, -1};
    for (;;) {
      std::vector<FieldElement> c;
      c.reserve(static_cast<std::size_t>(dim));
      for (int t = 0; t < dim; ++t)
        c.push_back(field->from_int(vals[dig[static_cast<std::size_t>(t)]]));
      if (best.consider(combo(c), cap)) {
        done = true;
        break;
      }
      int t = 0;
      while (t < dim) {
        if (++dig[static_cast<std::size_t>(t)] == 3) {
          dig[static_cast<std::size_t>(t)] = 0;
          ++t;
        } else
          break;
      }
      if (t == dim) break;
    }
  } else {
    best.consider(s.offset(), cap);
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t span = static_cast<std::uint64_t>(2 * height + 1);
  for (int i = 0; i < samples && !done; ++i) {
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(dim));
    for (int t = 0; t < dim; ++t) {
      const std::int64_t num = static_cast<std::int64_t>(rng() % span) - height;
      const std::int64_t den = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(height)) + 1;
      c.push_back(FieldElement(Rat(num, den)));
    }
    done = best.consider(combo(c), cap);
  }
  return MaxRankResult{best.rank, *best.witness, Verdict::SampledOnly};
}

std::optional<Matrix> first_rank_above(const AffineMatrixSpace& s, int r) {
  if (!s.ring()->base()->finite())
    throw InfiniteRing("exhaustive rank search needs a finite base field");
  const std::uint64_t total = s.point_count();
  for (std::uint64_t t = 0; t < total; ++t) {
    Matrix m = s.point(t);
    if (rank(m) > r) return m;
  }
  return std::nullopt;
}

}  // namespace skewrank
