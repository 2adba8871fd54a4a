#include "skewrank/field.hpp"

#include <algorithm>
#include <cstdlib>

namespace skewrank {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

// Extended Euclid inverse mod p, p prime, a in [1, p).
std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  return mod_pos(t, p);
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// --- polynomial helpers over F_p (coefficient vectors, lowest degree first) ---

using Poly = std::vector<std::int64_t>;

int pdeg(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

Poly ptrim(Poly a) {
  a.resize(static_cast<std::size_t>(pdeg(a) + 1));
  return a;
}

Poly pmul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = mod_pos(c[i + j] + a[i] * b[j], p);
  return ptrim(std::move(c));
}

// Remainder of a modulo monic m.
Poly pmod(Poly a, const Poly& m, std::int64_t p) {
  int dm = pdeg(m);
  for (int da = pdeg(a); da >= dm; da = pdeg(a)) {
    std::int64_t c = a[static_cast<std::size_t>(da)];
    for (int i = 0; i <= dm; ++i)
      a[static_cast<std::size_t>(da - dm + i)] =
          mod_pos(a[static_cast<std::size_t>(da - dm + i)] - c * m[static_cast<std::size_t>(i)], p);
  }
  return ptrim(std::move(a));
}

// A reducible monic polynomial of degree k has a monic divisor of degree
// <= k/2, so trial division over those suffices.
bool poly_irreducible(const Poly& m, std::int64_t p) {
  int k = pdeg(m);
  if (k <= 0) return false;
  if (k == 1) return true;
  for (int dd = 1; 2 * dd <= k; ++dd) {
    std::uint64_t count = ipow(static_cast<std::uint64_t>(p), dd);  // monic candidates of degree dd
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly dpoly(static_cast<std::size_t>(dd + 1), 0);
      std::uint64_t t = idx;
      for (int i = 0; i < dd; ++i) {
        dpoly[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p));
        t /= static_cast<std::uint64_t>(p);
      }
      dpoly[static_cast<std::size_t>(dd)] = 1;
      if (pdeg(pmod(m, dpoly, p)) < 0) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

class PrimeField final : public FieldSpec {
 public:
  explicit PrimeField(std::int64_t p) : p_(p) {}

  FieldKind kind() const override { return FieldKind::Prime; }
  bool finite() const override { return true; }
  std::uint64_t order() const override { return static_cast<std::uint64_t>(p_); }
  std::int64_t characteristic() const override { return p_; }

  FieldElement zero() const override { return FieldElement(std::int64_t{0}); }
  FieldElement one() const override { return FieldElement(std::int64_t{1}); }
  bool is_zero(const FieldElement& a) const override { return a.residue() == 0; }
  FieldElement add(const FieldElement& a, const FieldElement& b) const override {
    return FieldElement(mod_pos(a.residue() + b.residue(), p_));
  }
  FieldElement sub(const FieldElement& a, const FieldElement& b) const override {
    return FieldElement(mod_pos(a.residue() - b.residue(), p_));
  }
  FieldElement neg(const FieldElement& a) const override {
    return FieldElement(mod_pos(-a.residue(), p_));
  }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const override {
    return FieldElement(mod_pos(a.residue() * b.residue(), p_));
  }
  FieldElement inv(const FieldElement& a) const override {
    if (a.residue() == 0) throw ZeroInverse("inverse of zero in F_" + std::to_string(p_));
    return FieldElement(inv_mod(a.residue(), p_));
  }
  FieldElement from_int(std::int64_t n) const override { return FieldElement(mod_pos(n, p_)); }

  FieldElement element(std::uint64_t index) const override {
    if (index >= order()) throw BadSpec("field element index out of range");
    return FieldElement(static_cast<std::int64_t>(index));
  }
  std::uint64_t index_of(const FieldElement& a) const override {
    return static_cast<std::uint64_t>(a.residue());
  }

  std::string to_string(const FieldElement& a) const override {
    return std::to_string(a.residue());
  }
  FieldElement parse(const std::string& s) const override {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("'" + s + "' is not a canonical residue mod " + std::to_string(p_));
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || *end != '\0' || v < 0 || v >= p_)
      throw ParseError("'" + s + "' is not a canonical residue mod " + std::to_string(p_));
    return FieldElement(static_cast<std::int64_t>(v));
  }

  bool equal_spec(const FieldSpec& other) const override {
    return other.kind() == FieldKind::Prime && other.characteristic() == p_;
  }

 private:
  std::int64_t p_;
};

class ExtensionField final : public FieldSpec {
 public:
  ExtensionField(std::int64_t p, int k, Poly modulus)
      : p_(p), k_(k), modulus_(std::move(modulus)) {}

  FieldKind kind() const override { return FieldKind::Extension; }
  bool finite() const override { return true; }
  std::uint64_t order() const override { return ipow(static_cast<std::uint64_t>(p_), k_); }
  std::int64_t characteristic() const override { return p_; }
  int degree() const override { return k_; }
  std::vector<std::int64_t> modulus_coeffs() const override { return modulus_; }
  const Poly& modulus() const { return modulus_; }

  FieldElement zero() const override { return FieldElement(Poly(static_cast<std::size_t>(k_), 0)); }
  FieldElement one() const override {
    Poly c(static_cast<std::size_t>(k_), 0);
    c[0] = 1;
    return FieldElement(std::move(c));
  }
  bool is_zero(const FieldElement& a) const override {
    for (std::int64_t c : a.coeffs())
      if (c != 0) return false;
    return true;
  }
  FieldElement add(const FieldElement& a, const FieldElement& b) const override {
    Poly c(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i)
      c[static_cast<std::size_t>(i)] =
          mod_pos(a.coeffs()[static_cast<std::size_t>(i)] + b.coeffs()[static_cast<std::size_t>(i)], p_);
    return FieldElement(std::move(c));
  }
  FieldElement sub(const FieldElement& a, const FieldElement& b) const override {
    Poly c(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i)
      c[static_cast<std::size_t>(i)] =
          mod_pos(a.coeffs()[static_cast<std::size_t>(i)] - b.coeffs()[static_cast<std::size_t>(i)], p_);
    return FieldElement(std::move(c));
  }
  FieldElement neg(const FieldElement& a) const override {
    Poly c(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i)
      c[static_cast<std::size_t>(i)] = mod_pos(-a.coeffs()[static_cast<std::size_t>(i)], p_);
    return FieldElement(std::move(c));
  }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const override {
    Poly c = pmod(pmul(a.coeffs(), b.coeffs(), p_), modulus_, p_);
    c.resize(static_cast<std::size_t>(k_), 0);
    return FieldElement(std::move(c));
  }
  FieldElement inv(const FieldElement& a) const override {
    if (is_zero(a)) throw ZeroInverse("inverse of zero in GF(" + std::to_string(order()) + ")");
    // Extended Euclid in F_p[x]: r = old polynomial chain, t = Bezout chain.
    Poly r0 = modulus_, r1 = ptrim(a.coeffs());
    Poly t0 = {}, t1 = {1};
    while (pdeg(r1) > 0 || (pdeg(r1) == 0 && pdeg(r0) >= 0)) {
      if (pdeg(r1) < 0) throw SingularElement("gcd degenerate in extension field inverse");
      if (pdeg(r1) == 0) break;
      // One division step: r0 = q*r1 + r2.
      Poly q(static_cast<std::size_t>(pdeg(r0) - pdeg(r1) + 1), 0);
      Poly rem = r0;
      std::int64_t lead_inv = inv_mod(r1[static_cast<std::size_t>(pdeg(r1))], p_);
      for (int dd = pdeg(rem); dd >= pdeg(r1); dd = pdeg(rem)) {
        std::int64_t c = mod_pos(rem[static_cast<std::size_t>(dd)] * lead_inv, p_);
        int shift = dd - pdeg(r1);
        q[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= pdeg(r1); ++i)
          rem[static_cast<std::size_t>(shift + i)] =
              mod_pos(rem[static_cast<std::size_t>(shift + i)] - c * r1[static_cast<std::size_t>(i)], p_);
        rem = ptrim(std::move(rem));
        if (pdeg(rem) < 0) break;
      }
      Poly t2sub = pmul(q, t1, p_);
      Poly t2 = t0;
      t2.resize(std::max(t2.size(), t2sub.size()), 0);
      for (std::size_t i = 0; i < t2sub.size(); ++i) t2[i] = mod_pos(t2[i] - t2sub[i], p_);
      t0 = t1;
      t1 = ptrim(std::move(t2));
      r0 = r1;
      r1 = std::move(rem);
    }
    // r1 is a nonzero constant c; inverse is t1 / c.
    std::int64_t c_inv = inv_mod(r1[0], p_);
    Poly out(static_cast<std::size_t>(k_), 0);
    for (std::size_t i = 0; i < t1.size(); ++i) out[i] = mod_pos(t1[i] * c_inv, p_);
    return FieldElement(std::move(out));
  }
  FieldElement from_int(std::int64_t n) const override {
    Poly c(static_cast<std::size_t>(k_), 0);
    c[0] = mod_pos(n, p_);
    return FieldElement(std::move(c));
  }

  FieldElement element(std::uint64_t index) const override {
    if (index >= order()) throw BadSpec("field element index out of range");
    Poly c(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(p_));
      index /= static_cast<std::uint64_t>(p_);
    }
    return FieldElement(std::move(c));
  }
  std::uint64_t index_of(const FieldElement& a) const override {
    std::uint64_t idx = 0;
    for (int i = k_ - 1; i >= 0; --i)
      idx = idx * static_cast<std::uint64_t>(p_) +
            static_cast<std::uint64_t>(a.coeffs()[static_cast<std::size_t>(i)]);
    return idx;
  }

  std::string to_string(const FieldElement& a) const override {
    return std::to_string(index_of(a));
  }
  FieldElement parse(const std::string& s) const override {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("'" + s + "' is not a canonical GF(" + std::to_string(order()) + ") index");
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || *end != '\0' || v >= order())
      throw ParseError("'" + s + "' is not a canonical GF(" + std::to_string(order()) + ") index");
    return element(static_cast<std::uint64_t>(v));
  }

  bool equal_spec(const FieldSpec& other) const override {
    if (other.kind() != FieldKind::Extension) return false;
    const auto& e = static_cast<const ExtensionField&>(other);
    return e.p_ == p_ && e.k_ == k_ && e.modulus_ == modulus_;
  }

 private:
  std::int64_t p_;
  int k_;
  Poly modulus_;  // length k+1, monic
};

class RationalField final : public FieldSpec {
 public:
  FieldKind kind() const override { return FieldKind::Rationals; }
  bool finite() const override { return false; }
  std::uint64_t order() const override { throw InfiniteRing("the rationals have no finite order"); }
  std::int64_t characteristic() const override { return 0; }

  FieldElement zero() const override { return FieldElement(Rat(0)); }
  FieldElement one() const override { return FieldElement(Rat(1)); }
  bool is_zero(const FieldElement& a) const override { return a.rat() == 0; }
  FieldElement add(const FieldElement& a, const FieldElement& b) const override {
    return FieldElement(Rat(a.rat() + b.rat()));
  }
  FieldElement sub(const FieldElement& a, const FieldElement& b) const override {
    return FieldElement(Rat(a.rat() - b.rat()));
  }
  FieldElement neg(const FieldElement& a) const override { return FieldElement(Rat(-a.rat())); }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const override {
    return FieldElement(Rat(a.rat() * b.rat()));
  }
  FieldElement inv(const FieldElement& a) const override {
    if (a.rat() == 0) throw ZeroInverse("inverse of zero in Q");
    return FieldElement(Rat(1 / a.rat()));
  }
  FieldElement from_int(std::int64_t n) const override { return FieldElement(Rat(n)); }

  FieldElement element(std::uint64_t) const override {
    throw InfiniteRing("cannot enumerate the rationals");
  }
  std::uint64_t index_of(const FieldElement&) const override {
    throw InfiniteRing("cannot enumerate the rationals");
  }

  std::string to_string(const FieldElement& a) const override { return a.rat().str(); }
  FieldElement parse(const std::string& s) const override {
    if (s.empty() || s.find_first_not_of("-/0123456789") != std::string::npos)
      throw ParseError("'" + s + "' is not a rational");
    try {
      auto slash = s.find('/');
      if (slash == std::string::npos) return FieldElement(Rat(BigInt(s)));
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      if (den < 0) throw ParseError("denominator must be positive in '" + s + "'");
      return FieldElement(Rat(num, den));
    } catch (const std::exception& e) {
      throw ParseError("'" + s + "' is not a rational: " + e.what());
    }
  }

  bool equal_spec(const FieldSpec& other) const override {
    return other.kind() == FieldKind::Rationals;
  }
};

// ---------------------------------------------------------------------------

FieldSpecPtr FieldSpec::prime(std::int64_t p) {
  if (!is_prime(p)) throw CompositeCharacteristic(std::to_string(p) + " is not prime");
  return std::make_shared<PrimeField>(p);
}

FieldSpecPtr FieldSpec::extension(std::int64_t p, int k, std::vector<std::int64_t> modulus) {
  if (!is_prime(p)) throw CompositeCharacteristic(std::to_string(p) + " is not prime");
  if (k < 1) throw BadSpec("extension degree must be >= 1");
  if (modulus.size() != static_cast<std::size_t>(k + 1))
    throw BadSpec("modulus must have degree-many + 1 coefficients");
  for (auto& c : modulus) c = mod_pos(c, p);
  if (modulus.back() != 1) throw BadSpec("modulus must be monic");
  if (!poly_irreducible(modulus, p))
    throw ReducibleModulus("modulus is reducible over F_" + std::to_string(p));
  if (k == 1) {
    // Degree-1 extension is the prime field itself; keep the canonical form.
    return prime(p);
  }
  return std::make_shared<ExtensionField>(p, k, std::move(modulus));
}

FieldSpecPtr FieldSpec::rationals() {
  static FieldSpecPtr q = std::make_shared<RationalField>();
  return q;
}

std::vector<std::int64_t> FieldSpec::first_irreducible(std::int64_t p, int k) {
  if (!is_prime(p)) throw CompositeCharacteristic(std::to_string(p) + " is not prime");
  if (k < 1) throw BadSpec("degree must be >= 1");
  std::uint64_t count = ipow(static_cast<std::uint64_t>(p), k);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly m(static_cast<std::size_t>(k + 1), 0);
    std::uint64_t t = idx;
    for (int i = 0; i < k; ++i) {
      m[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p));
      t /= static_cast<std::uint64_t>(p);
    }
    m[static_cast<std::size_t>(k)] = 1;
    if (poly_irreducible(m, p)) return m;
  }
  throw BadSpec("no irreducible polynomial found (unreachable)");
}

}  // namespace skewrank
