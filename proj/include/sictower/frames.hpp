#pragma once

#include <optional>

#include "sictower/sic.hpp"

namespace sictower {

// (m, n) frame parameters with the equiangularity bound (n-m)/(m(n-1)).
struct EtfParams {
  std::int64_t m = 0;          // subspace dimension
  std::int64_t n = 0;          // vector count
  double coherence_sq = 0.0;  // (n - m) / (m (n - 1))
};

// The four parameter pairs sharing coherence 1/(d-1)^2:
// (d(d-2), d^2(d-2)^2), (d(d-1)/2, d^2), ((d-1)(d-2)/2, (d-2)^2), (d-1, d).
std::vector<EtfParams> etf_families(std::int64_t d);

// The subset { D_{stride i, stride j} |psi> } of the SIC orbit in dimension
// N = d(d-2); stride must be d (giving (d-2)^2 vectors) or d-2 (d^2 vectors).
std::vector<Vec> extract_subset(const Fiducial& big, std::int64_t stride);

struct EtfCertificate {
  EtfParams params;
  Mat gram;
  int rank = 0;  // singular values above 1e-8 x largest
  Eigen::VectorXd singular_values;
  double equiangularity_residual = 1.0;
  double tightness_residual = 1.0;  // || sum |v><v| - (n/m) Pi_span ||
  bool pass = false;
};

EtfCertificate certify_etf(const std::vector<Vec>& vectors,
                           const EtfParams& expected);

// Pi_1 = scaled sum over the stride-(d-2) subset, Pi_2 over the stride-d
// subset; for an aligned fiducial these are projectors of rank d(d-1)/2 and
// (d-1)(d-2)/2 equal to 1 (x) (1+P)/2 and (1-P_theta)/2 (x) 1 in the CRT
// tensor frame.
struct ProjectorPair {
  Mat pi1, pi2;
  double idempotency1 = 1.0, idempotency2 = 1.0;  // ||Pi^2 - Pi||
  double tensor_residual1 = 1.0, tensor_residual2 = 1.0;
  int rank1 = 0, rank2 = 0;
  double fiducial_expectation1 = 0.0, fiducial_expectation2 = 0.0;
};

ProjectorPair build_projectors(const Fiducial& big, std::int64_t d,
                               const OverlapTable& theta_small,
                               const SymplecticMatrix& m_prime);

// Numbers of distinct subspaces in the two multiplets obtained by conjugating
// Pi_1 / Pi_2 with all N^2 displacements (distinct at separation > 1e-4).
struct MultipletCounts {
  int pi1_count = 0;  // expected (d-2)^2
  int pi2_count = 0;  // expected d^2
};

MultipletCounts orbit_multiplets(const Fiducial& big, std::int64_t d);

// Counts real overlap phases of the small SIC and looks for an embedded
// (d-1, d) regular simplex among the stride subsets of the big one.
struct SimplexProbe {
  int real_phase_count = 0;
  std::optional<EtfCertificate> simplex;
  std::vector<std::size_t> simplex_members;  // indices into the stride subset
  std::int64_t simplex_stride = 0;
};

SimplexProbe simplex_probe(const OverlapTable& theta_small,
                           const Fiducial& big);

}  // namespace sictower
