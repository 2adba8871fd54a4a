#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skewrank/flanders.hpp"

namespace skewrank {

// Number of k-dimensional subspaces of F_q^m (zero when k is out of range).
BigInt gaussian_binomial(int m, int k, const BigInt& q);

// Canonical enumeration of the k-dimensional linear subspaces of F^ambient by
// reduced-echelon bases, optionally paired with reduced coset offsets so each
// candidate is one affine subspace. Candidates are indexed
//   index = subspace_index * q^(ambient-k) + coset_index     (affine mode)
// where subspaces run through pivot sets in ascending lexicographic order and
// then through their free entries (first free position most significant), and
// coset digits run over the non-pivot positions the same way. Random access
// by index keeps worker partitioning deterministic. The per-pivot-set counts
// are cross-checked against the Gaussian binomial at construction.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(FieldSpecPtr field, int ambient, int k, bool affine);

  const BigInt& count() const { return total_; }
  // Total as a machine integer; throws CapExceeded (reporting the count) when
  // it exceeds the cap.
  std::uint64_t count_u64(std::uint64_t cap) const;

  struct Candidate {
    std::vector<FRow> rows;  // reduced echelon basis, pivots ascending
    FRow offset;             // reduced coset offset (all zero in linear mode)
  };
  Candidate candidate(std::uint64_t index) const;

  // Bit-packed variant (bit i of a mask = coordinate i); only when the field
  // has two elements and ambient <= 64.
  struct PackedCandidate {
    std::vector<std::uint64_t> rows;
    std::uint64_t offset;
  };
  bool packable() const { return q_ == 2 && ambient_ <= 64; }
  PackedCandidate packed_candidate(std::uint64_t index) const;

  int ambient() const { return ambient_; }
  int k() const { return k_; }

 private:
  struct Combo {
    std::vector<int> pivots;
    std::vector<std::pair<int, int>> free_pos;  // (row, col), row-major
    BigInt weight;                              // candidates with this pivot set
  };
  void decode(std::uint64_t index, const Combo** combo, std::uint64_t* sub_idx,
              std::uint64_t* coset_idx) const;

  FieldSpecPtr field_;
  int ambient_, k_;
  bool affine_;
  std::uint64_t q_;
  std::vector<Combo> combos_;
  std::vector<BigInt> cum_;  // cumulative weights
  BigInt coset_count_;
  BigInt total_;
};

// Aggregated outcome of one census run. Everything here is independent of the
// worker count; wall time deliberately lives outside this struct so repeated
// runs serialize byte-identically.
struct CensusReport {
  std::string kind;  // "bound" | "extremal" | "corollary"
  RingPtr ring;
  int n = 0, p = 0, r = 0;
  int layer_dim = 0;  // F-dimension of the main enumerated layer
  std::string mode = "exhaustive";
  std::optional<std::uint64_t> seed;  // randomized mode only
  std::uint64_t trials = 0;           // randomized mode only
  BigInt predicted = 0;               // closed-form candidate count (exhaustive)
  std::uint64_t examined = 0;
  // Over-dimension layers: spaces found rank-bounded anyway (each one would
  // contradict the dimension bound) — must stay 0.
  std::uint64_t violations = 0;
  // Extremal layers: spaces passing the rank filter, then classified.
  std::uint64_t rank_bounded = 0;
  std::uint64_t tag_a = 0, tag_b = 0, tag_c = 0;
  // Second phase of the subgroup census (linear layer one dimension up).
  BigInt bound_predicted = 0;
  std::uint64_t bound_examined = 0;
};

struct CensusOptions {
  std::uint64_t cap = 100000000ULL;  // refuse exhaustive runs beyond this many candidates
  int workers = 1;
  std::uint64_t trials = 0;           // > 0 switches verify_bound to randomized mode
  std::optional<std::uint64_t> seed;  // randomized mode; generated and recorded if absent
};

// Every affine subspace of F-dimension d*n*r + 1 must contain a member of
// rank > r. Exhaustive by default; trials > 0 samples random spaces of that
// dimension instead (for parameters past the cap).
CensusReport verify_bound(const RingPtr& ring, int n, int p, int r, const CensusOptions& opt);

// Enumerate every affine subspace of F-dimension exactly d*n*r, keep the
// rank-bounded ones, classify each, and tally the tags. Any NotMaximal or
// refutation among them is an internal contradiction.
CensusReport classify_extremal(const RingPtr& ring, int n, int p, int r,
                               const CensusOptions& opt);

// The additive-subgroup instantiation over GF(q), q = p^k, via the ring
// gf(p, k): linear subspaces only. Phase one classifies the extremal layer
// (tags a/b only — the exceptional space contains no zero); phase two refutes
// every linear space one dimension above the bound, which caps every
// rank-bounded additive subgroup at q^{n*r} elements.
CensusReport corollary_census(const RingPtr& ring, int n, int p, int r,
                              const CensusOptions& opt);

}  // namespace skewrank
