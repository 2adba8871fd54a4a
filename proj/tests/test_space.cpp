// Affine matrix spaces: flattening, canonical reduction, point enumeration,
// hyperplanes of D^p, the (P, Q) action, transposition, and rank search.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "skewrank/errors.hpp"
#include "skewrank/flanders.hpp"
#include "skewrank/random.hpp"
#include "skewrank/space.hpp"

using namespace skewrank;

TEST_CASE("flatten places entry (i,j) coordinate k at (i*p + j)*d + k") {
  auto ring = DivisionRingSpec::gf(2, 2);  // d = 2
  int n = 2, p = 3, d = 2;
  Matrix m(ring, n, p);
  m.at(1, 2) = ring->basis_element(1);  // coordinate k=1 set
  m.at(0, 1) = ring->one();             // coordinate k=0 set
  FRow v = flatten(m);
  auto f = ring->base();
  CHECK(static_cast<int>(v.size()) == n * p * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < d; ++k) {
        bool expect_one = (i == 1 && j == 2 && k == 1) || (i == 0 && j == 1 && k == 0);
        CHECK(f->is_zero(v[static_cast<std::size_t>((i * p + j) * d + k)]) == !expect_one);
      }
  CHECK(unflatten(ring, n, p, v) == m);
}

TEST_CASE("reduce canonicalizes redundant generators and in-span offsets") {
  auto ring = DivisionRingSpec::gf(3);
  Matrix e00 = Matrix::unit(ring, 2, 2, 0, 0, ring->one());
  Matrix e01 = Matrix::unit(ring, 2, 2, 0, 1, ring->one());
  Matrix sum = mat_add(e00, e01);
  auto s1 = AffineMatrixSpace::reduce(e00, {e00, e01, sum, e01});
  // Offset e00 lies in the span, so the space is linear of dimension 2.
  CHECK(s1.dim_f() == 2);
  CHECK(s1.linear());
  CHECK(is_zero_matrix(s1.offset()));
  auto s2 = AffineMatrixSpace::span(ring, 2, 2, {e01, sum});
  CHECK(s1 == s2);  // same point set, same canonical form
  auto s3 = AffineMatrixSpace::span(ring, 2, 2, {e00});
  CHECK(s1 != s3);
}

TEST_CASE("offsets reduce to zero at every pivot of the echelon basis") {
  auto ring = DivisionRingSpec::gf(2);
  Matrix e00 = Matrix::unit(ring, 2, 2, 0, 0, ring->one());
  Matrix e11 = Matrix::unit(ring, 2, 2, 1, 1, ring->one());
  Matrix off = mat_add(e00, e11);  // pivot part e00 must cancel out
  auto s = AffineMatrixSpace::reduce(off, {e00});
  CHECK(s.dim_f() == 1);
  CHECK_FALSE(s.linear());
  CHECK(s.offset() == e11);
  CHECK(s.contains(off));
  CHECK(s.contains(e11));
  CHECK_FALSE(s.contains(Matrix(ring, 2, 2)));
}

TEST_CASE("point enumeration covers each member once, digit 0 fastest") {
  auto ring = DivisionRingSpec::gf(3);
  Matrix e00 = Matrix::unit(ring, 2, 2, 0, 0, ring->one());
  Matrix e10 = Matrix::unit(ring, 2, 2, 1, 0, ring->one());
  Matrix off = Matrix::unit(ring, 2, 2, 1, 1, ring->one());
  auto s = AffineMatrixSpace::reduce(off, {e00, e10});
  CHECK(s.point_count() == 9);
  CHECK(s.point(0) == off);
  // Digit 0 multiplies basis[0]: point(1) = off + 1 * basis[0].
  CHECK(s.point(1) == mat_add(off, s.basis()[0]));
  CHECK(s.point(3) == mat_add(off, s.basis()[1]));
  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint64_t t = 0; t < 9; ++t) {
    Matrix m = s.point(t);
    CHECK(s.contains(m));
    std::vector<std::uint64_t> key;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) key.push_back(ring->scalar_index(m.at(i, j)));
    seen.insert(key);
  }
  CHECK(seen.size() == 9);
  CHECK_THROWS_AS(AffineMatrixSpace::zero_space(DivisionRingSpec::quaternions(), 1, 1).point_count(),
                  InfiniteRing);
}

TEST_CASE("full and zero spaces have the extreme dimensions") {
  auto ring = DivisionRingSpec::gf(2, 2);
  auto full = AffineMatrixSpace::full_space(ring, 2, 3);
  CHECK(full.dim_f() == 2 * 2 * 3);
  CHECK(full.linear());
  auto zero = AffineMatrixSpace::zero_space(ring, 2, 3);
  CHECK(zero.dim_f() == 0);
  CHECK(zero.point_count() == 1);
  CHECK(full.contains(zero.offset()));
}

TEST_CASE("hyperplane enumeration is complete, normalized, and ascending") {
  for (auto [ring, p, expect] :
       {std::tuple{DivisionRingSpec::gf(2), 3, 7}, {DivisionRingSpec::gf(3), 2, 4},
        {DivisionRingSpec::gf(2, 2), 2, 5}}) {
    auto hs = enumerate_hyperplanes(ring, p);
    CHECK(static_cast<int>(hs.size()) == expect);
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<std::uint64_t> prev;
    for (const auto& h : hs) {
      // Left-normalized: zeros before the pivot, exactly one at it.
      for (int j = 0; j < h.pivot; ++j) CHECK(is_zero(h.row.at(0, j)));
      CHECK(h.row.at(0, h.pivot) == ring->one());
      std::vector<std::uint64_t> key;
      for (int j = 0; j < p; ++j) key.push_back(ring->scalar_index(h.row.at(0, j)));
      CHECK(seen.insert(key).second);
      if (!prev.empty()) CHECK(prev < key);
      prev = key;
    }
  }
  CHECK_THROWS_AS(enumerate_hyperplanes(DivisionRingSpec::quaternions(), 2), InfiniteRing);
}

TEST_CASE("hyperplane kernel columns annihilate the covector and complete to a basis") {
  auto ring = DivisionRingSpec::gf(2, 2);
  for (const auto& h : enumerate_hyperplanes(ring, 3)) {
    Matrix k = hyperplane_kernel_cols(h);
    CHECK(k.rows() == 3);
    CHECK(k.cols() == 2);
    CHECK(is_zero_matrix(mat_mul(h.row, k)));
    CHECK(rank(k) == 2);
    Matrix c = hyperplane_completion(h);
    CHECK(rank(c) == 3);
  }
  CHECK_THROWS_AS(make_hyperplane(Matrix(ring, 1, 3)), BadSpec);
}

TEST_CASE("members killing a hyperplane form the expected subspace") {
  // {M : M K = 0} = Hom(D^p / H, D^n), so dim_F = d * n over any finite D.
  for (auto ring : {DivisionRingSpec::gf(2), DivisionRingSpec::gf(2, 2)}) {
    int d = ring->dim();
    auto v = AffineMatrixSpace::full_space(ring, 2, 3);
    for (const auto& h : enumerate_hyperplanes(ring, 3)) {
      auto sh = sub_v_h(v, h);
      CHECK(sh.dim_f() == d * 2);
      for (std::uint64_t t = 0; t < sh.point_count(); ++t)
        CHECK(is_zero_matrix(mat_mul(sh.point(t), hyperplane_kernel_cols(h))));
    }
  }
  auto ring = DivisionRingSpec::gf(2);
  Matrix off = Matrix::unit(ring, 2, 2, 0, 0, ring->one());
  auto affine = AffineMatrixSpace::reduce(off, {});
  CHECK_THROWS_AS(sub_v_h(affine, enumerate_hyperplanes(ring, 2)[0]), NotLinear);
}

TEST_CASE("the (P, Q) action is a group action preserving dimension") {
  auto ring = DivisionRingSpec::gf(3);
  Rng rng(31);
  auto s = compression(0, 1, 2, 2, ring);
  for (int it = 0; it < 20; ++it) {
    auto [p1, p1i] = random_invertible(rng, ring, 2);
    auto [q1, q1i] = random_invertible(rng, ring, 2);
    auto [p2, p2i] = random_invertible(rng, ring, 2);
    auto [q2, q2i] = random_invertible(rng, ring, 2);
    auto once = act_equiv(s, p1, q1);
    CHECK(once.dim_f() == s.dim_f());
    CHECK(act(once, p2, q2) == act(s, mat_mul(p2, p1), mat_mul(q1, q2)));
    // Acting back with the inverses restores the original space.
    CHECK(act(once, p1i, q1i) == s);
  }
  Matrix sing(ring, 2, 2);
  sing.at(0, 0) = ring->one();
  CHECK_THROWS_AS(act_equiv(s, sing, Matrix::identity(ring, 2)), SingularWitness);
}

TEST_CASE("transposition swaps the shape and preserves structure") {
  auto ring = DivisionRingSpec::gf(2);
  auto s = compression(0, 1, 3, 2, ring);
  auto t = transpose_space(s);
  CHECK(t.n() == 2);
  CHECK(t.p() == 3);
  CHECK(t.dim_f() == s.dim_f());
  // Over a commutative ring the opposite presentation is identical, so the
  // double transpose is literally the original space.
  CHECK(transpose_space(t) == s);
  // Membership corresponds entrywise.
  for (std::uint64_t i = 0; i < s.point_count(); ++i) CHECK(t.contains(transpose_op(s.point(i))));
}

TEST_CASE("max_rank is exhaustive and exact over finite fields") {
  auto ring = DivisionRingSpec::gf(2);
  auto full = AffineMatrixSpace::full_space(ring, 2, 2);
  auto res = max_rank(full);
  CHECK(res.rank == 2);
  CHECK(res.verdict == Verdict::Proven);
  CHECK(rank(res.witness) == 2);
  auto r01 = compression(0, 1, 2, 2, ring);
  auto res1 = max_rank(r01);
  CHECK(res1.rank == 1);
  CHECK(res1.verdict == Verdict::Proven);
  auto u2 = u2_space();
  auto resu = max_rank(u2);
  CHECK(resu.rank == 1);
  // First witness in point order: the offset itself already has rank 1.
  CHECK(resu.witness == u2.point(0));
}

TEST_CASE("max_rank over the rationals samples and reports it") {
  auto h = DivisionRingSpec::quaternions();
  auto s = compression(0, 1, 2, 2, h);
  auto res = max_rank(s, 200, 5, 99);
  CHECK(res.rank == 1);
  CHECK(res.verdict == Verdict::SampledOnly);
}

TEST_CASE("first_rank_above finds the earliest violation or proves the bound") {
  auto u2 = u2_space();
  CHECK_FALSE(first_rank_above(u2, 1).has_value());
  auto w = first_rank_above(u2, 0);
  REQUIRE(w.has_value());
  CHECK(*w == u2.point(0));  // earliest point already exceeds rank 0
  auto full = AffineMatrixSpace::full_space(DivisionRingSpec::gf(2), 2, 2);
  auto v = first_rank_above(full, 1);
  REQUIRE(v.has_value());
  CHECK(rank(*v) == 2);
}
