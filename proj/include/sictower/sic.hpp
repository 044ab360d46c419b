#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sictower/heisenberg.hpp"

namespace sictower {

enum class Centring { unknown, centred, displaced };

struct Fiducial {
  std::int64_t dim = 0;
  Vec components;
  std::string label;
  Centring centring = Centring::unknown;
};

struct VerificationReport {
  double equiangularity_residual = 0;  // max_p |  |<psi|D_p psi>|^2 - 1/(d+1) |
  double resolution_residual = 0;      // || sum_p D_p psi psi^dag D_p^dag - d ||
  bool pass = false;
};

// Equiangularity at 1e-10 plus resolution of the identity at 1e-9.
VerificationReport sic_verify(const Fiducial& f, double equi_tol = 1e-10,
                              double resolution_tol = 1e-9);

struct OverlapTable {
  std::int64_t dim = 0;
  Mat phases;           // (i, j) entry: sqrt(d+1) <psi|D_{i,j}|psi>; (0,0) = 1
  double residual = 0;  // sic_verify equiangularity residual of the source
};

// Requires sic_verify to pass; throws with the residual attached otherwise.
OverlapTable overlap_table(const Fiducial& f);

struct FindOptions {
  int restarts = 64;
  int max_iters = 300;
  double tolerance = 1e-12;
  unsigned rng_seed = 1;
  bool restrict_zauner = false;  // search inside the largest Zauner subspace
  Mat basis;  // optional orthonormal search basis (columns); overrides flag
  // Optional pinned overlaps <psi|D_p psi> = value, folded into the residual
  // system.  Used to steer the search onto a specific fiducial choice.
  std::vector<std::pair<DisplacementIndex, Complex>> target_overlaps;
};

struct FindResult {
  Fiducial fiducial;
  double residual = 1.0;
  bool converged = false;
  int restarts_used = 0;
};

// Levenberg-Marquardt on the equiangularity residuals with random restarts.
// Non-convergence is a normal outcome reported through the result.
FindResult find_fiducial(std::int64_t d, const FindOptions& opts = {});

struct ZaunerSubspace {
  Complex phase;  // eigenvalue of the (phase-fixed) Zauner unitary
  Mat basis;      // orthonormal columns
};

// The three eigenspaces of the Zauner unitary, largest first.
// which = 0 selects F_z, which = 1 selects F_a (d = 3 mod 9 only).
std::vector<ZaunerSubspace> zauner_project(std::int64_t d, int which = 0);

struct CentredFiducial {
  Fiducial fiducial;
  DisplacementIndex q;  // input was D_q times the returned vector
  Complex eigenvalue;
  double residual;
};

// Finds q such that f is an eigenvector of D_q U_{F_z} D_q^dag and undoes the
// displacement.  Throws if no q works at the tolerance.
CentredFiducial centre_fiducial(const Fiducial& f, double tol = 1e-8);

// The centred candidates sharing the Zauner eigenspace: the vector itself,
// plus its two partners under the order-3 displacement commuting with
// U_{F_z} when 3 | d.
std::vector<Fiducial> centred_candidates(const Fiducial& centred);

struct StrongCentreResult {
  Fiducial fiducial;
  double obs1_residual;
  int candidate_index;
  std::vector<double> candidate_residuals;
};

// Among the centred candidates, pick the one whose stride-d overlap phases
// match the aligned-SIC pattern against a partner in dimension partner_dim
// (partner_dim | dim).  Throws if none agrees within tol.
StrongCentreResult strongly_centre(const Fiducial& centred,
                                   std::int64_t partner_dim,
                                   double tol = 1e-8);

}  // namespace sictower
