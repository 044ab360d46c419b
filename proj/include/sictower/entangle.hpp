#pragma once

#include "sictower/sic.hpp"

namespace sictower {

// CRT tensor factorization of a length-N vector: matrixform(r1, r2) is the
// component at index crt_combine(r1, r2).  Local operators A (x) 1 act by
// left multiplication on matrixform, 1 (x) B by right multiplication with
// B transposed.
struct TensorView {
  Vec vector;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  Mat matrixform;
};

TensorView tensor_view(const Fiducial& f, const CrtSplit& split);

// Partial trace of |psi><psi| over the discarded factor; keep = 1 retains the
// n1-dimensional factor, keep = 2 the n2-dimensional one.
Mat reduced_density(const Fiducial& f, const CrtSplit& split, int keep);

// Same operator computed through the displacement-operator expansion
// rho^{(n)} = (1/n) sum_p D_{-p} <psi| D^{(N)}_{lift(p)} |psi>.  Independent
// route kept as a cross-check on the CRT index maps.
Mat reduced_density_displacement_sum(const Fiducial& f, const CrtSplit& split,
                                     int keep);

struct SchmidtSpectrum {
  Eigen::VectorXd coefficients;  // non-increasing, sums to 1 for unit input
};

SchmidtSpectrum schmidt_spectrum(const Fiducial& f, const CrtSplit& split);

// Distance of the dim-(d-2) reduced density from (1/(d-1))(1 + P^{(d-2)}).
struct Theorem1Result {
  double residual = 1.0;
  int rank = 0;  // singular values above 1e-8 x largest
  Eigen::VectorXd spectrum;
};

Theorem1Result check_theorem1(const Fiducial& f, std::int64_t d);

// Distance of the dim-d reduced density from (1/(d-1))(1 - P_theta) with
// P_theta built from the small-SIC phases and M' = M diag(s 2^{-1}, 1).  Both
// signs s are tried; the realized convention is reported.
struct Theorem2Result {
  double residual = 1.0;
  SymplecticMatrix m_prime = SymplecticMatrix::identity(2);
  int scale_sign = 0;  // s in M' = M diag(s 2^{-1}, 1)
  Eigen::VectorXd parity_spectrum;  // eigenvalues of P_theta
  Eigen::VectorXd density_spectrum;
};

Theorem2Result check_theorem2(const Fiducial& f, const OverlapTable& theta,
                              const SymplecticMatrix& M);

}  // namespace sictower
