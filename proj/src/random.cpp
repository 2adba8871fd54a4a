#include "skewrank/random.hpp"

#include "skewrank/errors.hpp"

namespace skewrank {

FieldElement random_field_element(Rng& rng, const FieldSpecPtr& field, std::int64_t height) {
  if (field->finite()) return field->element(rng.below(field->order()));
  const std::int64_t num = rng.in_range(-height, height);
  const std::int64_t den = rng.in_range(1, height);
  return FieldElement(Rat(num, den));
}

Scalar random_scalar(Rng& rng, const RingPtr& ring, std::int64_t height) {
  std::vector<FieldElement> coords;
  coords.reserve(static_cast<std::size_t>(ring->dim()));
  for (int k = 0; k < ring->dim(); ++k)
    coords.push_back(random_field_element(rng, ring->base(), height));
  return Scalar{ring, std::move(coords)};
}

Scalar random_nonzero_scalar(Rng& rng, const RingPtr& ring, std::int64_t height) {
  if (ring->finite()) return ring->scalar_by_index(1 + rng.below(ring->order() - 1));
  for (;;) {
    Scalar s = random_scalar(rng, ring, height);
    if (!is_zero(s)) return s;
  }
}

Matrix random_matrix(Rng& rng, const RingPtr& ring, int rows, int cols, std::int64_t height) {
  Matrix m(ring, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = random_scalar(rng, ring, height);
  return m;
}

std::pair<Matrix, Matrix> random_invertible(Rng& rng, const RingPtr& ring, int nsize, int ops,
                                            std::int64_t height) {
  if (nsize < 1) throw BadSpec("random invertible needs size >= 1");
  if (ops == 0) ops = 3 * nsize + 4;
  Matrix m = Matrix::identity(ring, nsize);
  Matrix m_inv = Matrix::identity(ring, nsize);
  // Invariant: m * m_inv == I. Row ops hit m on the left; m_inv absorbs the
  // inverse elementary on the right (column ops).
  for (int step = 0; step < ops; ++step) {
    const int what = static_cast<int>(rng.below(3));
    if (what == 0 && nsize >= 2) {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(nsize)));
      int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(nsize - 1)));
      if (j >= i) ++j;
      for (int t = 0; t < nsize; ++t) {
        std::swap(m.at(i, t), m.at(j, t));
        std::swap(m_inv.at(t, i), m_inv.at(t, j));
      }
    } else if (what == 1) {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(nsize)));
      const Scalar s = random_nonzero_scalar(rng, ring, height);
      const Scalar si = inv(s);
      for (int t = 0; t < nsize; ++t) {
        m.at(i, t) = mul(s, m.at(i, t));
        m_inv.at(t, i) = mul(m_inv.at(t, i), si);
      }
    } else if (nsize >= 2) {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(nsize)));
      int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(nsize - 1)));
      if (j >= i) ++j;
      const Scalar c = random_scalar(rng, ring, height);
      // row_i += c * row_j  |  col_j -= col_i * c
      for (int t = 0; t < nsize; ++t) m.at(i, t) = add(m.at(i, t), mul(c, m.at(j, t)));
      for (int t = 0; t < nsize; ++t)
        m_inv.at(t, j) = sub(m_inv.at(t, j), mul(m_inv.at(t, i), c));
    }
  }
  return {std::move(m), std::move(m_inv)};
}

}  // namespace skewrank
