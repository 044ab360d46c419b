#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace sictower {

// A non-negative integer together with the modulus it lives under.  All
// arithmetic in this project carries the modulus explicitly so that mod-d
// and mod-(d-2) quantities cannot be mixed by accident.
struct Residue {
  std::int64_t value = 0;
  std::int64_t modulus = 1;

  Residue() = default;
  Residue(std::int64_t v, std::int64_t m);

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  bool operator==(const Residue& o) const = default;
};

// Reduce an arbitrary (possibly negative) integer into [0, m).
std::int64_t mod_reduce(std::int64_t v, std::int64_t m);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Product of the primes dividing n to odd multiplicity.
std::int64_t squarefree_part(std::int64_t n);

// One rung of the dimension ladder d -> d(d-2).  Both ends share the same
// square-free discriminant.
struct TowerStep {
  std::int64_t d;
  std::int64_t next;          // d(d-2)
  std::int64_t discriminant;  // squarefree part of (d+1)(d-3)
};

TowerStep next_rung(std::int64_t d);

// Data for the ring isomorphism Z_{n1 n2} = Z_{n1} x Z_{n2}.
struct CrtSplit {
  std::int64_t n1;
  std::int64_t n2;
  Residue inv_n2_mod_n1;  // n2^{-1} mod n1
  Residue inv_n1_mod_n2;  // n1^{-1} mod n2

  CrtSplit(std::int64_t n1_, std::int64_t n2_);

  std::int64_t modulus() const { return n1 * n2; }

  // For (n1, n2) = (d, d-2) with d odd the two inverses coincide and equal
  // kappa = (d-1)/2.
  std::int64_t kappa() const;
};

// a^{-1} mod a.modulus; throws if gcd(a, modulus) != 1.
Residue mod_inverse(const Residue& a);

std::pair<Residue, Residue> crt_split(const Residue& r, const CrtSplit& split);
Residue crt_combine(const Residue& r1, const Residue& r2,
                    const CrtSplit& split);

}  // namespace sictower
