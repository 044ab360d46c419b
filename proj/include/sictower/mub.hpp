#pragma once

#include "sictower/sic.hpp"

namespace sictower {

// Line j = z i + a in the affine plane over Z_p; slope == p encodes the
// formal value "infinity" (vertical lines i = a).
struct AffineLine {
  std::int64_t z = 0;
  std::int64_t a = 0;
  std::vector<DisplacementIndex> points;
};

std::vector<AffineLine> affine_lines(std::int64_t p);

// Displaced parity operators P_{i,j} = D_{i,j} P D_{-i,-j}: Hermitian,
// unitary, trace 1.  Odd prime p.
std::vector<Mat> phase_point_operators(std::int64_t p);

// Line operators W^{(z,a)} = (1/p) sum_line P_{i,j}: rank-1 projectors whose
// eigenvectors form p+1 mutually unbiased bases.
struct LineProjector {
  AffineLine line;
  Mat w;
};

std::vector<LineProjector> wootters_projectors(std::int64_t p);

struct MubSet {
  std::int64_t p = 0;
  std::vector<std::vector<Vec>> bases;  // p+1 bases of p vectors
  double projector_defect = 0.0;  // max |largest W eigenvalue - 1|
};

struct MubReport {
  double orthonormality_residual = 0.0;
  double unbiasedness_residual = 0.0;  // max | |<a|b>|^2 - 1/p |
  bool pass = false;
};

MubReport mub_verify(const MubSet& m, double ortho_tol = 1e-9,
                     double unbiased_tol = 1e-7);

// Theorem-3 pipeline: from an aligned fiducial in dimension N = d(d-2) with
// p = d-2 an odd prime, build the line projectors as partial traces
// W = Tr_d[ ((d-1)/(d-2)) sum_line |Psi_{di,dj}><Psi_{di,dj}| - (1/d) 1_N ]
// and extract their top eigenvectors.
MubSet mub_from_aligned_sic(const Fiducial& big, std::int64_t d);

bool is_prime(std::int64_t n);

}  // namespace sictower
