#include "sictower/frames.hpp"

#include <algorithm>
#include <stdexcept>

namespace sictower {

namespace {

double operator_norm(const Mat& a) {
  return Eigen::JacobiSVD<Mat>(a).singularValues()(0);
}

Mat subset_sum(const Fiducial& big, std::int64_t stride, double scale) {
  const std::int64_t N = big.dim;
  Mat out = Mat::Zero(N, N);
  for (const Vec& v : extract_subset(big, stride)) out += v * v.adjoint();
  return scale * out;
}

int spectral_rank(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es((hermitian + hermitian.adjoint()) /
                                        2.0);
  int rank = 0;
  double top = es.eigenvalues().cwiseAbs().maxCoeff();
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-8 * top) ++rank;
  return rank;
}

}  // namespace

std::vector<EtfParams> etf_families(std::int64_t d) {
  if (d < 4) throw std::invalid_argument("etf_families needs d >= 4");
  auto mk = [](std::int64_t m, std::int64_t n) {
    return EtfParams{m, n, double(n - m) / double(m * (n - 1))};
  };
  return {mk(d * (d - 2), d * d * (d - 2) * (d - 2)),
          mk(d * (d - 1) / 2, d * d),
          mk((d - 1) * (d - 2) / 2, (d - 2) * (d - 2)), mk(d - 1, d)};
}

std::vector<Vec> extract_subset(const Fiducial& big, std::int64_t stride) {
  const std::int64_t N = big.dim;
  std::int64_t d = 0;
  for (std::int64_t c = 4; c * (c - 2) <= N; ++c)
    if (c * (c - 2) == N) d = c;
  if (d == 0) throw std::invalid_argument("dimension is not of the form d(d-2)");
  if (stride != d && stride != d - 2)
    throw std::invalid_argument("stride must be d or d-2");
  const std::int64_t count = N / stride;  // d-2 for stride d, d for stride d-2
  std::vector<Vec> out;
  out.reserve(count * count);
  for (std::int64_t i = 0; i < count; ++i)
    for (std::int64_t j = 0; j < count; ++j)
      out.push_back(
          displacement(N, DisplacementIndex(stride * i, stride * j, N)) *
          big.components);
  return out;
}

EtfCertificate certify_etf(const std::vector<Vec>& vectors,
                           const EtfParams& expected) {
  const int n = int(vectors.size());
  if (n == 0) throw std::invalid_argument("certify_etf needs vectors");
  const Eigen::Index dim = vectors[0].size();
  Mat A(dim, n);
  for (int k = 0; k < n; ++k) A.col(k) = vectors[k];

  EtfCertificate cert;
  cert.params = expected;
  cert.gram = A.adjoint() * A;

  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU);
  cert.singular_values = svd.singularValues();
  double top = cert.singular_values(0);
  for (int i = 0; i < cert.singular_values.size(); ++i)
    if (cert.singular_values(i) > 1e-8 * top) ++cert.rank;

  cert.equiangularity_residual = 0.0;
  for (int a = 0; a < n; ++a) {
    cert.equiangularity_residual = std::max(
        cert.equiangularity_residual, std::abs(std::abs(cert.gram(a, a)) - 1));
    for (int b = a + 1; b < n; ++b)
      cert.equiangularity_residual =
          std::max(cert.equiangularity_residual,
                   std::abs(std::norm(cert.gram(a, b)) - expected.coherence_sq));
  }

  Mat span = Mat::Zero(dim, dim);
  for (int i = 0; i < cert.rank; ++i)
    span += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
  cert.tightness_residual = operator_norm(
      A * A.adjoint() - (double(n) / double(expected.m)) * span);

  cert.pass = cert.rank == expected.m && n == expected.n &&
              cert.equiangularity_residual <= 1e-8 &&
              cert.tightness_residual <= 1e-8;
  return cert;
}

ProjectorPair build_projectors(const Fiducial& big, std::int64_t d,
                               const OverlapTable& theta_small,
                               const SymplecticMatrix& m_prime) {
  const std::int64_t N = big.dim;
  if (d % 2 == 0) throw std::invalid_argument("build_projectors needs odd d");
  if (N != d * (d - 2) || theta_small.dim != d)
    throw std::invalid_argument("build_projectors: dimension mismatch");

  ProjectorPair out;
  out.pi1 = subset_sum(big, d - 2, double(d - 1) / double(2 * d));
  out.pi2 = subset_sum(big, d, double(d - 1) / double(2 * (d - 2)));
  out.idempotency1 = operator_norm(out.pi1 * out.pi1 - out.pi1);
  out.idempotency2 = operator_norm(out.pi2 * out.pi2 - out.pi2);

  CrtSplit split(d, d - 2);
  Mat V = crt_permutation(split);
  Mat ref1 = V.adjoint() *
             kron(Mat::Identity(d, d),
                  (Mat::Identity(d - 2, d - 2) + parity(d - 2)) / 2.0) *
             V;
  Mat ptheta =
      generalized_parity(theta_small.phases, theta_small.residual, m_prime);
  Mat ref2 = V.adjoint() *
             kron((Mat::Identity(d, d) - ptheta) / 2.0,
                  Mat::Identity(d - 2, d - 2)) *
             V;
  out.tensor_residual1 = operator_norm(out.pi1 - ref1);
  out.tensor_residual2 = operator_norm(out.pi2 - ref2);
  out.rank1 = spectral_rank(out.pi1);
  out.rank2 = spectral_rank(out.pi2);
  out.fiducial_expectation1 =
      std::real(Complex(big.components.dot(out.pi1 * big.components)));
  out.fiducial_expectation2 =
      std::real(Complex(big.components.dot(out.pi2 * big.components)));
  return out;
}

MultipletCounts orbit_multiplets(const Fiducial& big, std::int64_t d) {
  const std::int64_t N = big.dim;
  if (N != d * (d - 2))
    throw std::invalid_argument("orbit_multiplets: dimension mismatch");
  Mat pi1 = subset_sum(big, d - 2, double(d - 1) / double(2 * d));
  Mat pi2 = subset_sum(big, d, double(d - 1) / double(2 * (d - 2)));

  auto count_distinct = [&](const Mat& pi) {
    std::vector<Mat> reps;
    for (std::int64_t i = 0; i < N; ++i)
      for (std::int64_t j = 0; j < N; ++j) {
        Mat D = displacement(N, DisplacementIndex(i, j, N));
        Mat conj = D * pi * D.adjoint();
        bool found = false;
        for (const Mat& r : reps)
          if (operator_norm(conj - r) <= 1e-4) {
            found = true;
            break;
          }
        if (!found) reps.push_back(std::move(conj));
      }
    return int(reps.size());
  };
  return MultipletCounts{count_distinct(pi1), count_distinct(pi2)};
}

SimplexProbe simplex_probe(const OverlapTable& theta_small,
                           const Fiducial& big) {
  const std::int64_t d = theta_small.dim;
  const std::int64_t N = big.dim;
  if (N != d * (d - 2))
    throw std::invalid_argument("simplex_probe: dimension mismatch");

  SimplexProbe probe;
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) {
      if (i == 0 && j == 0) continue;
      if (std::abs(std::imag(theta_small.phases(i, j))) <= 1e-8)
        ++probe.real_phase_count;
    }

  // A (d-1)-dimensional regular simplex needs d SIC vectors whose Gram has a
  // null direction; every SIC subset is already equiangular, so scan d-subsets
  // of the stride families for rank d-1, smallest family first.
  EtfParams simplex = etf_families(d)[3];
  for (std::int64_t stride : {d, d - 2}) {
    std::vector<Vec> subset = extract_subset(big, stride);
    const int n = int(subset.size());
    const int k = int(d);
    // Bounded search: skip families whose d-subset count is impractical.
    double combos = 1.0;
    for (int t = 0; t < k; ++t) combos *= double(n - t) / double(t + 1);
    if (combos > 2e5) continue;

    Mat G(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) G(a, b) = subset[a].dot(subset[b]);

    std::vector<int> idx(k);
    for (int t = 0; t < k; ++t) idx[t] = t;
    while (true) {
      Mat sub(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub(a, b) = G(idx[a], idx[b]);
      Eigen::SelfAdjointEigenSolver<Mat> es(sub);
      if (es.eigenvalues()(0) < 1e-6) {
        std::vector<Vec> verts;
        for (int a = 0; a < k; ++a) verts.push_back(subset[idx[a]]);
        EtfCertificate cert = certify_etf(verts, simplex);
        if (cert.pass) {
          probe.simplex = cert;
          probe.simplex_members.assign(idx.begin(), idx.end());
          probe.simplex_stride = stride;
          return probe;
        }
      }
      int t = k - 1;
      while (t >= 0 && idx[t] == n - k + t) --t;
      if (t < 0) break;
      ++idx[t];
      for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
    }
  }
  return probe;
}

}  // namespace sictower
