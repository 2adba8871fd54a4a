#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "skewrank/matrix.hpp"

namespace skewrank {

// Deterministic random source. Every randomized path draws through this
// wrapper using raw modulo rather than std distributions (whose outputs are
// implementation-defined), so a recorded seed reproduces byte-identical runs
// on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t next() { return g_(); }
  std::uint64_t below(std::uint64_t n) { return g_() % n; }
  // Uniform-ish integer in [lo, hi], inclusive.
  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 g_;
};

// Finite fields draw uniformly from the element enumeration; the rationals
// draw numerator in [-height, height] and denominator in [1, height].
FieldElement random_field_element(Rng& rng, const FieldSpecPtr& field, std::int64_t height = 10);
Scalar random_scalar(Rng& rng, const RingPtr& ring, std::int64_t height = 10);
Scalar random_nonzero_scalar(Rng& rng, const RingPtr& ring, std::int64_t height = 10);
Matrix random_matrix(Rng& rng, const RingPtr& ring, int rows, int cols, std::int64_t height = 10);

// A random invertible nsize x nsize matrix together with its exact inverse,
// built by applying `ops` random elementary row operations (swap, left
// scaling by an invertible scalar, left axpy) to the identity. Invertibility
// holds by construction. ops == 0 means "auto": 3*nsize + 4.
std::pair<Matrix, Matrix> random_invertible(Rng& rng, const RingPtr& ring, int nsize,
                                            int ops = 0, std::int64_t height = 10);

}  // namespace skewrank
