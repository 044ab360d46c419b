#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "sictower/numtheory.hpp"

namespace sictower {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Index of a displacement operator: a pair of residues mod d.
struct DisplacementIndex {
  Residue i;
  Residue j;

  DisplacementIndex(std::int64_t i_, std::int64_t j_, std::int64_t d)
      : i(i_, d), j(j_, d) {}

  std::int64_t dim() const { return i.modulus; }
  bool operator==(const DisplacementIndex& o) const = default;
};

struct Roots {
  Complex tau;    // -exp(i pi / d)
  Complex omega;  // tau^2 = exp(2 pi i / d)
};

// Central phases of the Weyl-Heisenberg group.  Restricted to odd d, where
// both tau and omega are d-th roots of unity.
Roots roots(std::int64_t d);

// (D_{i,j})_{r,s} = tau^{ij + 2js} delta_{r, s+i}.  Defined for all d >= 2;
// for even d the phase exponent is taken mod 2d.
Mat displacement(std::int64_t d, const DisplacementIndex& p);

// <p, q> = kj - li for p = (i, j), q = (k, l), reduced mod d.
Residue symplectic_form(const DisplacementIndex& p, const DisplacementIndex& q);

// 2x2 matrix over Z_d.  det = 1 for the symplectic group proper; det = -1
// matrices label anti-unitary elements of the extended group, and the
// alignment matrix M allows det = +-1.
struct SymplecticMatrix {
  Residue alpha, beta, gamma, delta;

  SymplecticMatrix(std::int64_t a, std::int64_t b, std::int64_t c,
                   std::int64_t e, std::int64_t d)
      : alpha(a, d), beta(b, d), gamma(c, d), delta(e, d) {}

  std::int64_t dim() const { return alpha.modulus; }
  Residue det() const { return alpha * delta - beta * gamma; }

  SymplecticMatrix operator*(const SymplecticMatrix& o) const;
  DisplacementIndex apply(const DisplacementIndex& p) const;
  SymplecticMatrix inverse() const;  // needs invertible det
  bool operator==(const SymplecticMatrix& o) const = default;

  static SymplecticMatrix identity(std::int64_t d) {
    return SymplecticMatrix(1, 0, 0, 1, d);
  }
};

// Metaplectic representation: unitary U_F with U_F D_p U_F^dag = D_{Fp}.
// Odd d only; global phase fixed so the first nonzero entry of column 0 is
// real positive.  The covariance relation is asserted on construction.
Mat clifford_unitary(std::int64_t d, const SymplecticMatrix& F);

// F_z always; F_a additionally when d = 3 mod 9.  Each has order 3 and
// trace = -1 mod d.
std::vector<SymplecticMatrix> zauner_matrices(std::int64_t d);

// Basis permutation |r> -> |-r mod d>; unitary Hermitian, trace 1.
Mat parity(std::int64_t d);

// P_theta = (1/d) sum_p D_{-p} e^{2 i theta_{M'p}}, built from the d x d
// table of unit-modulus overlap phases e^{i theta_{i,j}}.  Requires
// det(M'^{-1}) = +-2 mod d and a phase table from a verified SIC
// (phase_residual is the sic_verify residual of the source fiducial).
Mat generalized_parity(const Mat& phases, double phase_residual,
                       const SymplecticMatrix& Mprime);

// CRT factorization D_p^{(N)} = D_{H1 p}^{(n1)} (x) D_{H2 p}^{(n2)} with
// H_k = [[1, 0], [0, n_{3-k}^{-1}]].  Returns the two factor indices.
std::pair<DisplacementIndex, DisplacementIndex> crt_factor_displacement(
    std::int64_t N, const DisplacementIndex& p, const CrtSplit& split);

// Factor matrices H F H^{-1} reduced mod n1 and n2.
std::pair<SymplecticMatrix, SymplecticMatrix> crt_factor_clifford(
    std::int64_t N, const SymplecticMatrix& F, const CrtSplit& split);

// Unitary relating C^N (CRT index order) to C^{n1} (x) C^{n2} (row-major
// Kronecker order): V |r> = |r mod n1> |r mod n2>.
Mat crt_permutation(const CrtSplit& split);

Mat kron(const Mat& a, const Mat& b);

}  // namespace sictower
