#pragma once

#include <optional>

#include "sictower/sic.hpp"

namespace sictower {

enum class AlignmentVerdict { aligned, not_aligned, inconclusive };

// Stride-d phase subset Theta_{di,dj} against the predicted sign pattern:
// +1 for odd d, -(-1)^{(i+1)(j+1)} for even d.
struct Observation1Result {
  double residual = 1.0;
  Mat observed;   // (d-2) x (d-2), entry (i,j) = Theta_{di,dj}
  Mat predicted;  // same shape
};

Observation1Result check_observation1(const OverlapTable& big, std::int64_t d);

// Stride-(d-2) phase subset against -e^{2i theta_{Mp}} (odd d) or
// (-1)^{(i+1)(j+1)} e^{2i theta_{Mp}} (even d), minimized over all 2x2
// matrices M mod d with det = +-1.
struct Observation2Result {
  double residual = 1.0;
  std::optional<SymplecticMatrix> best;
  std::vector<SymplecticMatrix> minimizers;  // all M within 1e-9 of best
};

Observation2Result check_observation2(const OverlapTable& big,
                                      const OverlapTable& small);

struct AlignmentReport {
  std::int64_t d = 0;
  std::int64_t N = 0;  // d(d-2)
  double obs1_residual = 1.0;
  double obs2_residual = 1.0;
  std::optional<SymplecticMatrix> M;
  std::vector<SymplecticMatrix> minimizers;
  bool d_is_odd = true;
  AlignmentVerdict verdict = AlignmentVerdict::not_aligned;
  double tolerance = 1e-8;
  Fiducial small_choice;  // the candidate pair realizing the residuals
  Fiducial big_choice;
  int small_candidate = -1;
  int big_candidate = -1;
};

// The finitely many fiducial choices tried by the orchestrator: for odd
// dimensions the centred triplet (falling back to all displacements when the
// input is not on a Zauner-symmetric displacement orbit), for even dimensions
// all d^2 displaced versions.
std::vector<Fiducial> alignment_candidates(const Fiducial& f);

// Tries all candidate pairs; aligned iff some pair passes both observations
// at tol, inconclusive when the best pair lands in (tol, 100 tol].
AlignmentReport align(const Fiducial& small, const Fiducial& big,
                      double tol = 1e-8);

}  // namespace sictower
