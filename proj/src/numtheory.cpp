#include "sictower/numtheory.hpp"

namespace sictower {

std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

Residue::Residue(std::int64_t v, std::int64_t m)
    : value(mod_reduce(v, m)), modulus(m) {}

namespace {
void require_same_modulus(const Residue& a, const Residue& b) {
  if (a.modulus != b.modulus)
    throw std::invalid_argument("modulus mismatch in residue arithmetic");
}
}  // namespace

Residue Residue::operator+(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(value + o.value, modulus);
}

Residue Residue::operator-(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(value - o.value, modulus);
}

Residue Residue::operator*(const Residue& o) const {
  require_same_modulus(*this, o);
  return Residue(value * o.value, modulus);
}

Residue Residue::operator-() const { return Residue(-value, modulus); }

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

std::int64_t squarefree_part(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("squarefree_part needs n >= 1");
  std::int64_t result = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int mult = 0;
    while (n % p == 0) {
      n /= p;
      ++mult;
    }
    if (mult % 2 == 1) result *= p;
  }
  return result * n;  // leftover n is 1 or a single prime
}

TowerStep next_rung(std::int64_t d) {
  if (d < 4) throw std::invalid_argument("tower starts at d >= 4");
  return TowerStep{d, d * (d - 2), squarefree_part((d + 1) * (d - 3))};
}

Residue mod_inverse(const Residue& a) {
  // Extended Euclid.
  std::int64_t r0 = a.modulus, r1 = a.value;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1)
    throw std::domain_error("residue not invertible: gcd(value, modulus) != 1");
  return Residue(t0, a.modulus);
}

CrtSplit::CrtSplit(std::int64_t n1_, std::int64_t n2_)
    : n1(n1_),
      n2(n2_),
      inv_n2_mod_n1(0, 1),
      inv_n1_mod_n2(0, 1) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("factors must be positive");
  if (gcd64(n1, n2) != 1)
    throw std::invalid_argument("CRT factors must be coprime");
  inv_n2_mod_n1 = mod_inverse(Residue(n2, n1));
  inv_n1_mod_n2 = mod_inverse(Residue(n1, n2));
}

std::int64_t CrtSplit::kappa() const {
  if (n1 != n2 + 2 || n1 % 2 == 0)
    throw std::logic_error("kappa is defined for (n1, n2) = (d, d-2), d odd");
  return (n1 - 1) / 2;
}

std::pair<Residue, Residue> crt_split(const Residue& r, const CrtSplit& split) {
  if (r.modulus != split.modulus())
    throw std::invalid_argument("residue modulus does not match the split");
  return {Residue(r.value, split.n1), Residue(r.value, split.n2)};
}

Residue crt_combine(const Residue& r1, const Residue& r2,
                    const CrtSplit& split) {
  if (r1.modulus != split.n1 || r2.modulus != split.n2)
    throw std::invalid_argument("component moduli do not match the split");
  std::int64_t n = split.modulus();
  // r = r1 n2 (n2^{-1} mod n1) + r2 n1 (n1^{-1} mod n2)  mod n1 n2
  std::int64_t r = mod_reduce(r1.value * split.n2 % n *
                                  split.inv_n2_mod_n1.value,
                              n) +
                   mod_reduce(r2.value * split.n1 % n *
                                  split.inv_n1_mod_n2.value,
                              n);
  return Residue(r, n);
}

}  // namespace sictower
