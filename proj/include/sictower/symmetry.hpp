#pragma once

#include "sictower/sic.hpp"

namespace sictower {

// A symplectic matrix fixing the fiducial projector; anti-unitary witnesses
// (det -1) act with complex conjugation first.
struct SymmetryWitness {
  SymplecticMatrix matrix;
  bool antiunitary = false;
};

struct SymmetryReport {
  int unitary_order = 0;
  int extended_order = 0;  // includes anti-unitary elements
  std::vector<SymmetryWitness> witnesses;
  bool has_order3_trace_minus1 = true;  // the expected Zauner-type symmetry
  char zauner_flavor = 'z';  // 'a' when an order-3 witness is 1 mod 3
  int subspace_index = -1;   // Zauner eigenspace containing the fiducial
  bool largest_subspace = false;
};

// Counts, by full enumeration of 2x2 matrices mod d with det +-1, the
// stabilizer of |psi><psi| inside the (extended) Clifford group modulo
// displacements and phases.  Odd d <= 15.
SymmetryReport stabilizer_order(const Fiducial& f, double tol = 1e-8);

// U_b from F_b = diag(1-d, 1-d) mod N fixes the aligned fiducial projectively
// and permutes the N^2 SIC projectors with order 2.
struct Theorem5Result {
  SymplecticMatrix f_b;
  double fix_residual = 1.0;        // 1 - |<psi|U_b psi>|
  double permutation_residual = 1.0;  // worst projective mismatch over the orbit
  std::vector<std::int64_t> permutation;  // index map p -> F_b p (row-major)
  int permutation_order = 0;
};

Theorem5Result check_theorem5(const Fiducial& big, std::int64_t d);

}  // namespace sictower
