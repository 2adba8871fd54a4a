#include "skewrank/census.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <thread>
#include <utility>

#include "skewrank/random.hpp"

namespace skewrank {

BigInt gaussian_binomial(int m, int k, const BigInt& q) {
  if (k < 0 || k > m) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(q, static_cast<unsigned>(m - i)) - 1;
    den *= boost::multiprecision::pow(q, static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

namespace {

BigInt big_pow(std::uint64_t q, int e) {
  return boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(e));
}

std::uint64_t to_u64_checked(const BigInt& v, const char* what) {
  static const BigInt kLimit = BigInt(1) << 62;
  if (v > kLimit) throw CapExceeded(std::string(what) + " does not fit a machine counter");
  return v.convert_to<std::uint64_t>();
}

}  // namespace

SubspaceEnumerator::SubspaceEnumerator(FieldSpecPtr field, int ambient, int k, bool affine)
    : field_(std::move(field)), ambient_(ambient), k_(k), affine_(affine) {
  if (!field_->finite()) throw InfiniteRing("subspace enumeration needs a finite base field");
  if (ambient_ < 0 || k_ < 0) throw BadSpec("subspace enumeration needs nonnegative dimensions");
  q_ = field_->order();
  coset_count_ = affine_ && k_ <= ambient_ ? big_pow(q_, ambient_ - k_) : BigInt(1);

  BigInt subspaces = 0;
  if (k_ <= ambient_) {
    std::vector<int> pivots(k_);
    for (int i = 0; i < k_; ++i) pivots[i] = i;
    while (true) {
      Combo combo;
      combo.pivots = pivots;
      for (int t = 0; t < k_; ++t) {
        for (int j = pivots[t] + 1; j < ambient_; ++j) {
          if (!std::binary_search(pivots.begin(), pivots.end(), j)) combo.free_pos.push_back({t, j});
        }
      }
      BigInt sub_weight = big_pow(q_, static_cast<int>(combo.free_pos.size()));
      subspaces += sub_weight;
      combo.weight = sub_weight * coset_count_;
      total_ += combo.weight;
      cum_.push_back(total_);
      combos_.push_back(std::move(combo));

      // next pivot set in ascending lexicographic order
      if (k_ == 0) break;
      int t = k_ - 1;
      while (t >= 0 && pivots[t] == ambient_ - k_ + t) --t;
      if (t < 0) break;
      ++pivots[t];
      for (int i = t + 1; i < k_; ++i) pivots[i] = pivots[i - 1] + 1;
    }
  }

  BigInt expected = gaussian_binomial(ambient_, k_, BigInt(q_));
  if (subspaces != expected) {
    throw ContradictionWitness("subspace enumeration disagrees with the Gaussian binomial: " +
                               subspaces.str() + " vs " + expected.str());
  }
}

std::uint64_t SubspaceEnumerator::count_u64(std::uint64_t cap) const {
  if (total_ > BigInt(cap)) {
    throw CapExceeded("candidate count " + total_.str() + " exceeds the cap " +
                      std::to_string(cap));
  }
  return to_u64_checked(total_, "candidate count");
}

void SubspaceEnumerator::decode(std::uint64_t index, const Combo** combo, std::uint64_t* sub_idx,
                                std::uint64_t* coset_idx) const {
  BigInt idx(index);
  if (idx >= total_) throw BadSpec("candidate index out of range");
  auto it = std::upper_bound(cum_.begin(), cum_.end(), idx);
  std::size_t ci = static_cast<std::size_t>(it - cum_.begin());
  BigInt local = idx - (ci == 0 ? BigInt(0) : cum_[ci - 1]);
  *combo = &combos_[ci];
  *coset_idx = to_u64_checked(local % coset_count_, "coset index");
  *sub_idx = to_u64_checked(local / coset_count_, "subspace index");
}

SubspaceEnumerator::Candidate SubspaceEnumerator::candidate(std::uint64_t index) const {
  const Combo* combo;
  std::uint64_t sub_idx, coset_idx;
  decode(index, &combo, &sub_idx, &coset_idx);

  Candidate c;
  c.rows.assign(k_, FRow(ambient_, field_->zero()));
  for (int t = 0; t < k_; ++t) c.rows[t][combo->pivots[t]] = field_->one();
  // free entries: first listed position most significant
  int nf = static_cast<int>(combo->free_pos.size());
  for (int i = nf - 1; i >= 0; --i) {
    auto [t, j] = combo->free_pos[i];
    c.rows[t][j] = field_->element(sub_idx % q_);
    sub_idx /= q_;
  }
  c.offset.assign(ambient_, field_->zero());
  if (affine_) {
    std::vector<int> non_pivots;
    for (int j = 0; j < ambient_; ++j) {
      if (!std::binary_search(combo->pivots.begin(), combo->pivots.end(), j))
        non_pivots.push_back(j);
    }
    for (int i = static_cast<int>(non_pivots.size()) - 1; i >= 0; --i) {
      c.offset[non_pivots[i]] = field_->element(coset_idx % q_);
      coset_idx /= q_;
    }
  }
  return c;
}

SubspaceEnumerator::PackedCandidate SubspaceEnumerator::packed_candidate(
    std::uint64_t index) const {
  if (!packable()) throw BadSpec("bit-packed candidates need a 2-element field and width <= 64");
  const Combo* combo;
  std::uint64_t sub_idx, coset_idx;
  decode(index, &combo, &sub_idx, &coset_idx);

  PackedCandidate c;
  c.rows.assign(k_, 0);
  for (int t = 0; t < k_; ++t) c.rows[t] |= std::uint64_t(1) << combo->pivots[t];
  int nf = static_cast<int>(combo->free_pos.size());
  for (int i = nf - 1; i >= 0; --i) {
    auto [t, j] = combo->free_pos[i];
    if (sub_idx & 1) c.rows[t] |= std::uint64_t(1) << j;
    sub_idx >>= 1;
  }
  c.offset = 0;
  if (affine_) {
    std::vector<int> non_pivots;
    for (int j = 0; j < ambient_; ++j) {
      if (!std::binary_search(combo->pivots.begin(), combo->pivots.end(), j))
        non_pivots.push_back(j);
    }
    for (int i = static_cast<int>(non_pivots.size()) - 1; i >= 0; --i) {
      if (coset_idx & 1) c.offset |= std::uint64_t(1) << non_pivots[i];
      coset_idx >>= 1;
    }
  }
  return c;
}

namespace {

// ---- rank filters ----------------------------------------------------------

// Generic: walk all |F|^k points of the candidate space and test rank <= r.
bool all_points_bounded(const RingPtr& ring, int n, int p,
                        const SubspaceEnumerator::Candidate& cand, int r) {
  const FieldSpecPtr& field = ring->base();
  std::uint64_t q = field->order();
  int k = static_cast<int>(cand.rows.size());
  std::uint64_t points = to_u64_checked(big_pow(q, k), "point count");
  int len = static_cast<int>(cand.offset.size());
  std::vector<std::uint64_t> digits(k, 0);
  FRow v(len);
  for (std::uint64_t t = 0; t < points; ++t) {
    std::uint64_t rem = t;
    v = cand.offset;
    for (int j = 0; j < k; ++j) {
      std::uint64_t dg = rem % q;
      rem /= q;
      if (dg == 0) continue;
      FieldElement c = field->element(dg);
      for (int idx = 0; idx < len; ++idx) {
        if (!field->is_zero(cand.rows[j][idx]))
          v[idx] = field->add(v[idx], field->mul(c, cand.rows[j][idx]));
      }
    }
    if (rank(unflatten(ring, n, p, v)) > r) return false;
  }
  return true;
}

// Bit-packed over the 2-element field with d == 1: bit i*p + j of a mask is
// entry (i, j), so F-rank equals matrix rank directly.
int packed_rank(std::uint64_t v, int n, int p) {
  std::uint64_t rows[64];
  std::uint64_t mask = p == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << p) - 1);
  for (int i = 0; i < n; ++i) rows[i] = (v >> (i * p)) & mask;
  int rk = 0;
  for (int j = 0; j < p && rk < n; ++j) {
    int piv = -1;
    for (int i = rk; i < n; ++i) {
      if ((rows[i] >> j) & 1) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rk]);
    for (int i = rk + 1; i < n; ++i) {
      if ((rows[i] >> j) & 1) rows[i] ^= rows[rk];
    }
    ++rk;
  }
  return rk;
}

bool packed_all_bounded(const SubspaceEnumerator::PackedCandidate& cand, int n, int p, int r) {
  int k = static_cast<int>(cand.rows.size());
  std::uint64_t v = cand.offset;
  if (packed_rank(v, n, p) > r) return false;
  // Gray-code walk: one basis-row toggle per step covers every combination.
  std::uint64_t points = std::uint64_t(1) << k;
  for (std::uint64_t t = 1; t < points; ++t) {
    v ^= cand.rows[std::countr_zero(t)];
    if (packed_rank(v, n, p) > r) return false;
  }
  return true;
}

// ---- deterministic worker partitioning -------------------------------------

struct Shard {
  std::uint64_t examined = 0;
  std::uint64_t passed = 0;
  std::vector<std::uint64_t> survivors;
};

// check(index) -> true when the candidate is rank-bounded. Shards cover
// [0, total) in contiguous ascending ranges, so concatenating survivor lists
// in shard order is ascending and independent of the worker count.
template <class Check>
Shard run_range(std::uint64_t lo, std::uint64_t hi, bool keep, const Check& check) {
  Shard s;
  for (std::uint64_t i = lo; i < hi; ++i) {
    ++s.examined;
    if (check(i)) {
      ++s.passed;
      if (keep) s.survivors.push_back(i);
    }
  }
  return s;
}

template <class Check>
Shard run_partitioned(std::uint64_t total, int workers, bool keep, const Check& check) {
  if (workers < 1) workers = 1;
  if (workers == 1 || total < 2) return run_range(0, total, keep, check);
  std::vector<Shard> shards(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    std::uint64_t lo = total / workers * w + std::min<std::uint64_t>(total % workers, w);
    std::uint64_t hi = total / workers * (w + 1) + std::min<std::uint64_t>(total % workers, w + 1);
    threads.emplace_back([&, lo, hi, w] { shards[w] = run_range(lo, hi, keep, check); });
  }
  for (auto& t : threads) t.join();
  Shard merged;
  for (auto& s : shards) {
    merged.examined += s.examined;
    merged.passed += s.passed;
    merged.survivors.insert(merged.survivors.end(), s.survivors.begin(), s.survivors.end());
  }
  return merged;
}

// Build the right filter for one candidate index.
struct Filter {
  const SubspaceEnumerator& en;
  const RingPtr& ring;
  int n, p, r;
  bool packed;
  bool operator()(std::uint64_t index) const {
    if (packed) return packed_all_bounded(en.packed_candidate(index), n, p, r);
    return all_points_bounded(ring, n, p, en.candidate(index), r);
  }
};

bool use_packed(const SubspaceEnumerator& en, const RingPtr& ring) {
  return en.packable() && ring->dim() == 1;
}

void validate_census_args(const RingPtr& ring, int n, int p, int r) {
  if (!ring->finite()) throw InfiniteRing("censuses need a finite ring");
  if (p < 1 || n < p) throw BadSpec("censuses need n >= p >= 1");
  if (r < 0 || r > p) throw BadSpec("censuses need 0 <= r <= p");
}

AffineMatrixSpace candidate_space(const RingPtr& ring, int n, int p,
                                  const SubspaceEnumerator::Candidate& cand) {
  std::vector<Matrix> gens;
  gens.reserve(cand.rows.size());
  for (const FRow& row : cand.rows) gens.push_back(unflatten(ring, n, p, row));
  return AffineMatrixSpace::reduce(unflatten(ring, n, p, cand.offset), gens);
}

// Classify every surviving index (ascending) and tally tags. The filter
// already certified each survivor rank-bounded at the extremal dimension, so
// a NotMaximal or refutation outcome is a contradiction, not a result.
void classify_survivors(const SubspaceEnumerator& en, const std::vector<std::uint64_t>& survivors,
                        const RingPtr& ring, int n, int p, int r, bool allow_c,
                        CensusReport* rep) {
  for (std::uint64_t idx : survivors) {
    AffineMatrixSpace s = candidate_space(ring, n, p, en.candidate(idx));
    ClassificationResult res = classify(s, r);
    switch (res.tag) {
      case Tag::CompressionColumns:
        ++rep->tag_a;
        break;
      case Tag::CompressionRows:
        ++rep->tag_b;
        break;
      case Tag::ExceptionalU2:
        if (!allow_c) {
          throw ContradictionWitness(
              "a linear rank-bounded space matched the zero-free exceptional model");
        }
        ++rep->tag_c;
        break;
      case Tag::NotMaximal:
      case Tag::NotBoundedRank:
        throw ContradictionWitness(
            "classification disagrees with the rank filter on candidate " + std::to_string(idx));
    }
    if (!verify_classification(s, r, res)) {
      throw ContradictionWitness("classification witness failed re-verification on candidate " +
                                 std::to_string(idx));
    }
  }
}

FRow random_row(Rng& rng, const FieldSpecPtr& field, int len) {
  FRow v(len);
  for (int i = 0; i < len; ++i) v[i] = random_field_element(rng, field);
  return v;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

CensusReport verify_bound(const RingPtr& ring, int n, int p, int r, const CensusOptions& opt) {
  validate_census_args(ring, n, p, r);
  int d = ring->dim();
  int ambient = n * p * d;
  CensusReport rep;
  rep.kind = "bound";
  rep.ring = ring;
  rep.n = n;
  rep.p = p;
  rep.r = r;
  rep.layer_dim = d * n * r + 1;
  if (rep.layer_dim > ambient) return rep;  // no spaces of that dimension at all

  if (opt.trials > 0) {
    rep.mode = "randomized";
    rep.trials = opt.trials;
    std::uint64_t seed = opt.seed ? *opt.seed : fresh_seed();
    rep.seed = seed;
    Rng rng(seed);
    const FieldSpecPtr& field = ring->base();
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
      Echelon e(field, ambient);
      while (e.dim() < rep.layer_dim) e.insert(random_row(rng, field, ambient));
      SubspaceEnumerator::Candidate cand{e.rows(), e.residual(random_row(rng, field, ambient))};
      ++rep.examined;
      if (all_points_bounded(ring, n, p, cand, r)) ++rep.violations;
    }
    return rep;
  }

  SubspaceEnumerator en(ring->base(), ambient, rep.layer_dim, /*affine=*/true);
  rep.predicted = en.count();
  std::uint64_t total = en.count_u64(opt.cap);
  Filter filter{en, ring, n, p, r, use_packed(en, ring)};
  Shard shard = run_partitioned(total, opt.workers, /*keep=*/false, filter);
  rep.examined = shard.examined;
  rep.violations = shard.passed;
  return rep;
}

CensusReport classify_extremal(const RingPtr& ring, int n, int p, int r,
                               const CensusOptions& opt) {
  validate_census_args(ring, n, p, r);
  int d = ring->dim();
  int ambient = n * p * d;
  CensusReport rep;
  rep.kind = "extremal";
  rep.ring = ring;
  rep.n = n;
  rep.p = p;
  rep.r = r;
  rep.layer_dim = d * n * r;

  SubspaceEnumerator en(ring->base(), ambient, rep.layer_dim, /*affine=*/true);
  rep.predicted = en.count();
  std::uint64_t total = en.count_u64(opt.cap);
  Filter filter{en, ring, n, p, r, use_packed(en, ring)};
  Shard shard = run_partitioned(total, opt.workers, /*keep=*/true, filter);
  rep.examined = shard.examined;
  rep.rank_bounded = shard.passed;
  classify_survivors(en, shard.survivors, ring, n, p, r, /*allow_c=*/true, &rep);
  return rep;
}

CensusReport corollary_census(const RingPtr& ring, int n, int p, int r,
                              const CensusOptions& opt) {
  validate_census_args(ring, n, p, r);
  int d = ring->dim();
  int ambient = n * p * d;
  CensusReport rep;
  rep.kind = "corollary";
  rep.ring = ring;
  rep.n = n;
  rep.p = p;
  rep.r = r;
  rep.layer_dim = d * n * r;

  // Phase one: linear spaces at the extremal dimension. No member set avoiding
  // zero can be linear, so the exceptional tag cannot occur here.
  SubspaceEnumerator en1(ring->base(), ambient, rep.layer_dim, /*affine=*/false);
  rep.predicted = en1.count();
  std::uint64_t total1 = en1.count_u64(opt.cap);
  Filter filter1{en1, ring, n, p, r, use_packed(en1, ring)};
  Shard shard1 = run_partitioned(total1, opt.workers, /*keep=*/true, filter1);
  rep.examined = shard1.examined;
  rep.rank_bounded = shard1.passed;
  classify_survivors(en1, shard1.survivors, ring, n, p, r, /*allow_c=*/false, &rep);

  // Phase two: one dimension above the bound every linear space must contain a
  // member of larger rank, which caps rank-bounded additive subgroups at
  // |F|^(n*r) elements.
  SubspaceEnumerator en2(ring->base(), ambient, rep.layer_dim + 1, /*affine=*/false);
  rep.bound_predicted = en2.count();
  std::uint64_t total2 = en2.count_u64(opt.cap);
  Filter filter2{en2, ring, n, p, r, use_packed(en2, ring)};
  Shard shard2 = run_partitioned(total2, opt.workers, /*keep=*/false, filter2);
  rep.bound_examined = shard2.examined;
  rep.violations = shard2.passed;
  return rep;
}

}  // namespace skewrank
