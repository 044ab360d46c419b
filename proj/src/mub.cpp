#include "sictower/mub.hpp"

#include <stdexcept>

namespace sictower {

namespace {

void require_odd_prime(std::int64_t p, const char* what) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw std::invalid_argument(std::string(what) + " needs an odd prime");
}

// Trace over the first (n1-dimensional) Kronecker factor.
Mat partial_trace_first(const Mat& op, std::int64_t n1, std::int64_t n2) {
  Mat out = Mat::Zero(n2, n2);
  for (std::int64_t r1 = 0; r1 < n1; ++r1)
    out += op.block(r1 * n2, r1 * n2, n2, n2);
  return out;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::vector<AffineLine> affine_lines(std::int64_t p) {
  require_odd_prime(p, "affine_lines");
  std::vector<AffineLine> lines;
  lines.reserve(p * (p + 1));
  for (std::int64_t z = 0; z <= p; ++z)  // z == p encodes slope infinity
    for (std::int64_t a = 0; a < p; ++a) {
      AffineLine line{z, a, {}};
      for (std::int64_t t = 0; t < p; ++t) {
        if (z == p)
          line.points.emplace_back(a, t, p);  // vertical: i = a
        else
          line.points.emplace_back(t, mod_reduce(z * t + a, p), p);
      }
      lines.push_back(std::move(line));
    }
  return lines;
}

std::vector<Mat> phase_point_operators(std::int64_t p) {
  require_odd_prime(p, "phase_point_operators");
  Mat P = parity(p);
  std::vector<Mat> out;
  out.reserve(p * p);
  for (std::int64_t i = 0; i < p; ++i)
    for (std::int64_t j = 0; j < p; ++j) {
      Mat D = displacement(p, DisplacementIndex(i, j, p));
      out.push_back(D * P * D.adjoint());
    }
  return out;
}

std::vector<LineProjector> wootters_projectors(std::int64_t p) {
  std::vector<Mat> points = phase_point_operators(p);
  std::vector<LineProjector> out;
  for (AffineLine& line : affine_lines(p)) {
    Mat w = Mat::Zero(p, p);
    for (const DisplacementIndex& pt : line.points)
      w += points[pt.i.value * p + pt.j.value];
    out.push_back(LineProjector{std::move(line), w / double(p)});
  }
  return out;
}

namespace {

MubSet bases_from_line_operators(std::int64_t p,
                                 const std::vector<LineProjector>& ws) {
  MubSet m;
  m.p = p;
  m.bases.assign(p + 1, {});
  for (const LineProjector& lp : ws) {
    Eigen::SelfAdjointEigenSolver<Mat> es((lp.w + lp.w.adjoint()) / 2.0);
    double top = es.eigenvalues()(p - 1);
    m.projector_defect = std::max(m.projector_defect, std::abs(top - 1.0));
    m.bases[lp.line.z].push_back(es.eigenvectors().col(p - 1));
  }
  return m;
}

}  // namespace

MubReport mub_verify(const MubSet& m, double ortho_tol, double unbiased_tol) {
  MubReport rep;
  const double target = 1.0 / double(m.p);
  for (std::size_t b1 = 0; b1 < m.bases.size(); ++b1)
    for (std::size_t b2 = b1; b2 < m.bases.size(); ++b2)
      for (std::size_t v1 = 0; v1 < m.bases[b1].size(); ++v1)
        for (std::size_t v2 = 0; v2 < m.bases[b2].size(); ++v2) {
          Complex ip = m.bases[b1][v1].dot(m.bases[b2][v2]);
          if (b1 == b2) {
            double want = v1 == v2 ? 1.0 : 0.0;
            rep.orthonormality_residual = std::max(
                rep.orthonormality_residual, std::abs(std::abs(ip) - want));
          } else {
            rep.unbiasedness_residual = std::max(
                rep.unbiasedness_residual, std::abs(std::norm(ip) - target));
          }
        }
  rep.pass = rep.orthonormality_residual <= ortho_tol &&
             rep.unbiasedness_residual <= unbiased_tol;
  return rep;
}

MubSet mub_from_aligned_sic(const Fiducial& big, std::int64_t d) {
  const std::int64_t p = d - 2;
  require_odd_prime(p, "mub_from_aligned_sic");
  const std::int64_t N = big.dim;
  if (N != d * (d - 2))
    throw std::invalid_argument("mub_from_aligned_sic: dim must be d(d-2)");

  CrtSplit split(d, p);
  Mat V = crt_permutation(split);
  std::int64_t inv2 = mod_inverse(Residue(2, p)).value;

  // SIC vector |Psi_{di,dj}> carries phase point (2i, j) mod p in the second
  // CRT factor; invert that labeling so each line picks up its own points.
  auto sic_projector = [&](std::int64_t u, std::int64_t v) {
    std::int64_t i = mod_reduce(inv2 * u, p);
    Mat D = displacement(
        N, DisplacementIndex(mod_reduce(d * i, N), mod_reduce(d * v, N), N));
    Vec psi = D * big.components;
    return Mat(psi * psi.adjoint());
  };

  std::vector<LineProjector> ws;
  for (AffineLine& line : affine_lines(p)) {
    Mat sum = Mat::Zero(N, N);
    for (const DisplacementIndex& pt : line.points)
      sum += sic_projector(pt.i.value, pt.j.value);
    Mat inside = (double(d - 1) / double(d - 2)) * sum -
                 Mat::Identity(N, N) / double(d);
    Mat w = partial_trace_first(V * inside * V.adjoint(), d, p);
    ws.push_back(LineProjector{std::move(line), std::move(w)});
  }
  return bases_from_line_operators(p, ws);
}

}  // namespace sictower
