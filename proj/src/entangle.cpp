#include "sictower/entangle.hpp"

#include <algorithm>
#include <stdexcept>

namespace sictower {

namespace {

void require_split(const Fiducial& f, const CrtSplit& split) {
  if (f.dim != split.modulus())
    throw std::invalid_argument("fiducial dimension does not match the split");
  if (f.dim % 2 == 0)
    throw std::invalid_argument("CRT factorization needs odd dimension");
}

double operator_norm(const Mat& a) {
  return Eigen::JacobiSVD<Mat>(a).singularValues()(0);
}

Eigen::VectorXd sorted_desc(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<double>());
  return v;
}

}  // namespace

TensorView tensor_view(const Fiducial& f, const CrtSplit& split) {
  require_split(f, split);
  TensorView t;
  t.vector = f.components;
  t.n1 = split.n1;
  t.n2 = split.n2;
  t.matrixform = Mat(split.n1, split.n2);
  for (std::int64_t r1 = 0; r1 < split.n1; ++r1)
    for (std::int64_t r2 = 0; r2 < split.n2; ++r2)
      t.matrixform(r1, r2) = f.components(
          crt_combine(Residue(r1, split.n1), Residue(r2, split.n2), split)
              .value);
  return t;
}

Mat reduced_density(const Fiducial& f, const CrtSplit& split, int keep) {
  if (keep != 1 && keep != 2)
    throw std::invalid_argument("keep must be 1 or 2");
  Mat m = tensor_view(f, split).matrixform;
  if (keep == 1) return m * m.adjoint();
  return (m.adjoint() * m).transpose();
}

Mat reduced_density_displacement_sum(const Fiducial& f, const CrtSplit& split,
                                     int keep) {
  if (keep != 1 && keep != 2)
    throw std::invalid_argument("keep must be 1 or 2");
  require_split(f, split);
  const std::int64_t N = f.dim;
  const std::int64_t n = (keep == 1) ? split.n1 : split.n2;
  const std::int64_t other = (keep == 1) ? split.n2 : split.n1;
  const Vec& psi = f.components;
  Mat rho = Mat::Zero(n, n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      // N-index whose kept-factor part is (i, j) and discarded part is zero.
      std::int64_t iN = (keep == 1)
                            ? crt_combine(Residue(i, split.n1),
                                          Residue(0, split.n2), split)
                                  .value
                            : crt_combine(Residue(0, split.n1),
                                          Residue(i, split.n2), split)
                                  .value;
      std::int64_t jN = mod_reduce(j * other, N);
      Complex coeff = psi.dot(displacement(N, DisplacementIndex(iN, jN, N)) *
                              psi);
      rho += coeff * displacement(n, DisplacementIndex(-i, -j, n));
    }
  return rho / double(n);
}

SchmidtSpectrum schmidt_spectrum(const Fiducial& f, const CrtSplit& split) {
  Mat m = tensor_view(f, split).matrixform;
  Eigen::VectorXd sv = Eigen::JacobiSVD<Mat>(m).singularValues();
  SchmidtSpectrum s;
  s.coefficients = sv.array().square();
  return s;
}

Theorem1Result check_theorem1(const Fiducial& f, std::int64_t d) {
  if (d % 2 == 0) throw std::invalid_argument("check_theorem1 needs odd d");
  if (f.dim != d * (d - 2))
    throw std::invalid_argument("check_theorem1: fiducial must have dim d(d-2)");
  CrtSplit split(d, d - 2);
  Mat rho = reduced_density(f, split, 2);
  Mat target =
      (Mat::Identity(d - 2, d - 2) + parity(d - 2)) / double(d - 1);
  Theorem1Result out;
  out.residual = operator_norm(rho - target);
  Eigen::SelfAdjointEigenSolver<Mat> es((rho + rho.adjoint()) / 2.0);
  out.spectrum = sorted_desc(es.eigenvalues());
  double top = out.spectrum(0);
  for (int i = 0; i < out.spectrum.size(); ++i)
    if (out.spectrum(i) > 1e-8 * top) ++out.rank;
  return out;
}

Theorem2Result check_theorem2(const Fiducial& f, const OverlapTable& theta,
                              const SymplecticMatrix& M) {
  const std::int64_t d = theta.dim;
  if (d % 2 == 0) throw std::invalid_argument("check_theorem2 needs odd d");
  if (f.dim != d * (d - 2) || M.dim() != d)
    throw std::invalid_argument("check_theorem2: dimension mismatch");
  CrtSplit split(d, d - 2);
  Mat rho = reduced_density(f, split, 1);

  Theorem2Result out;
  out.m_prime = SymplecticMatrix::identity(d);
  std::int64_t inv2 = mod_inverse(Residue(2, d)).value;
  for (int sign : {-1, +1}) {
    std::int64_t a = mod_reduce(sign * inv2, d);
    SymplecticMatrix Mp(mod_reduce(M.alpha.value * a, d), M.beta.value,
                        mod_reduce(M.gamma.value * a, d), M.delta.value, d);
    Mat P = generalized_parity(theta.phases, theta.residual, Mp);
    double res =
        operator_norm(rho - (Mat::Identity(d, d) - P) / double(d - 1));
    if (res < out.residual) {
      out.residual = res;
      out.m_prime = Mp;
      out.scale_sign = sign;
      Eigen::SelfAdjointEigenSolver<Mat> ep((P + P.adjoint()) / 2.0);
      out.parity_spectrum = sorted_desc(ep.eigenvalues());
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> er((rho + rho.adjoint()) / 2.0);
  out.density_spectrum = sorted_desc(er.eigenvalues());
  return out;
}

}  // namespace sictower
