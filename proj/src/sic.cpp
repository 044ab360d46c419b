#include "sictower/sic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sictower {

namespace {

std::vector<Mat> all_displacements(std::int64_t d) {
  std::vector<Mat> out;
  out.reserve(d * d);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j)
      out.push_back(displacement(d, DisplacementIndex(i, j, d)));
  return out;
}

void require_normalized(const Fiducial& f) {
  if (f.dim < 2 || f.components.size() != f.dim)
    throw std::invalid_argument("fiducial dimension mismatch");
  if (std::abs(f.components.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("fiducial is not normalized");
}

}  // namespace

VerificationReport sic_verify(const Fiducial& f, double equi_tol,
                              double resolution_tol) {
  require_normalized(f);
  const std::int64_t d = f.dim;
  const double target = 1.0 / double(d + 1);
  auto Ds = all_displacements(d);

  VerificationReport rep;
  Mat resolution = Mat::Zero(d, d);
  for (std::int64_t idx = 0; idx < d * d; ++idx) {
    Vec shifted = Ds[idx] * f.components;
    Complex c = f.components.dot(shifted);
    if (idx != 0)
      rep.equiangularity_residual = std::max(
          rep.equiangularity_residual, std::abs(std::norm(c) - target));
    resolution += shifted * shifted.adjoint();
  }
  resolution -= double(d) * Mat::Identity(d, d);
  Eigen::JacobiSVD<Mat> svd(resolution);
  rep.resolution_residual = svd.singularValues()(0);
  rep.pass = rep.equiangularity_residual <= equi_tol &&
             rep.resolution_residual <= resolution_tol;
  return rep;
}

OverlapTable overlap_table(const Fiducial& f) {
  auto rep = sic_verify(f);
  if (!rep.pass)
    throw std::runtime_error(
        "overlap_table: input is not a SIC fiducial (residual " +
        std::to_string(rep.equiangularity_residual) + ")");
  const std::int64_t d = f.dim;
  OverlapTable t;
  t.dim = d;
  t.residual = rep.equiangularity_residual;
  t.phases = Mat(d, d);
  const double scale = std::sqrt(double(d + 1));
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) {
      Vec shifted = displacement(d, DisplacementIndex(i, j, d)) * f.components;
      t.phases(i, j) = scale * f.components.dot(shifted);
    }
  t.phases(0, 0) = 1.0;  // convention
  return t;
}

namespace {

// Residual system for the Levenberg-Marquardt search.  The state is the
// coefficient vector y in the (possibly restricted) basis B, packed as
// 2k reals.  Residuals: |y^dag A_p y|^2 - 1/(d+1) for p != 0, the norm
// constraint |y|^2 - 1, and optionally Re/Im of pinned overlaps.
struct SicProblem {
  std::int64_t d;
  double target;
  std::vector<Mat> ops;        // A_p = B^dag D_p B, p != 0
  std::vector<Mat> target_ops; // pinned-overlap operators
  std::vector<Complex> target_values;

  std::int64_t k() const { return ops.empty() ? 0 : ops[0].rows(); }
  std::int64_t n_res() const {
    return std::int64_t(ops.size()) + 1 + 2 * std::int64_t(target_ops.size());
  }

  void evaluate(const Vec& y, Eigen::VectorXd& r, Eigen::MatrixXd* J) const {
    const std::int64_t kk = k();
    r.resize(n_res());
    if (J) J->resize(n_res(), 2 * kk);
    auto fill_row = [&](std::int64_t row, const Vec& g) {
      for (std::int64_t m = 0; m < kk; ++m) {
        (*J)(row, m) = 2.0 * g(m).real();
        (*J)(row, kk + m) = 2.0 * g(m).imag();
      }
    };
    std::int64_t row = 0;
    for (const Mat& A : ops) {
      Vec Ay = A * y;
      Complex c = y.dot(Ay);
      r(row) = std::norm(c) - target;
      if (J) fill_row(row, std::conj(c) * Ay + c * (A.adjoint() * y));
      ++row;
    }
    r(row) = y.squaredNorm() - 1.0;
    if (J) fill_row(row, y);
    ++row;
    for (std::size_t t = 0; t < target_ops.size(); ++t) {
      Vec Ay = target_ops[t] * y;
      Vec Ady = target_ops[t].adjoint() * y;
      Complex c = y.dot(Ay) - target_values[t];
      r(row) = c.real();
      if (J) fill_row(row, 0.5 * (Ay + Ady));
      r(row + 1) = c.imag();
      if (J) fill_row(row + 1, (Ay - Ady) / Complex(0.0, 2.0));
      row += 2;
    }
  }

  // max equiangularity deviation plus pinned-overlap deviation
  double quality(const Eigen::VectorXd& r) const {
    double q = 0;
    for (std::int64_t i = 0; i < std::int64_t(ops.size()); ++i)
      q = std::max(q, std::abs(r(i)));
    q = std::max(q, std::abs(r(ops.size())));
    for (std::int64_t i = ops.size() + 1; i < n_res(); ++i)
      q = std::max(q, std::abs(r(i)));
    return q;
  }
};

Vec unpack(const Eigen::VectorXd& x) {
  std::int64_t kk = x.size() / 2;
  Vec y(kk);
  for (std::int64_t m = 0; m < kk; ++m) y(m) = Complex(x(m), x(kk + m));
  return y;
}

Eigen::VectorXd pack(const Vec& y) {
  std::int64_t kk = y.size();
  Eigen::VectorXd x(2 * kk);
  for (std::int64_t m = 0; m < kk; ++m) {
    x(m) = y(m).real();
    x(kk + m) = y(m).imag();
  }
  return x;
}

// One LM run from the given start; returns best quality reached.
double lm_run(const SicProblem& prob, Vec y, int max_iters, double tol,
              Vec& best_y) {
  Eigen::VectorXd x = pack(y);
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  prob.evaluate(unpack(x), r, &J);
  double ssq = r.squaredNorm();
  double best_quality = prob.quality(r);
  best_y = unpack(x);
  double lambda = 1e-3;

  for (int iter = 0; iter < max_iters; ++iter) {
    Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::VectorXd Jtr = J.transpose() * r;
    bool stepped = false;
    for (int attempt = 0; attempt < 10; ++attempt) {
      Eigen::MatrixXd H = JtJ;
      H.diagonal().array() += lambda;
      Eigen::VectorXd delta = H.ldlt().solve(-Jtr);
      Eigen::VectorXd x_new = x + delta;
      Eigen::VectorXd r_new;
      prob.evaluate(unpack(x_new), r_new, nullptr);
      double ssq_new = r_new.squaredNorm();
      if (ssq_new < ssq) {
        x = x_new;
        ssq = ssq_new;
        lambda = std::max(lambda * 0.3, 1e-14);
        stepped = true;
        break;
      }
      lambda *= 5.0;
    }
    if (!stepped) break;
    prob.evaluate(unpack(x), r, &J);
    double q = prob.quality(r);
    if (q < best_quality) {
      best_quality = q;
      best_y = unpack(x);
    }
    if (q <= tol) break;
  }
  return best_quality;
}

}  // namespace

FindResult find_fiducial(std::int64_t d, const FindOptions& opts) {
  if (d < 2) throw std::invalid_argument("find_fiducial needs d >= 2");

  Mat basis;
  if (opts.basis.size() > 0) {
    basis = opts.basis;
    if (basis.rows() != d)
      throw std::invalid_argument("search basis has wrong row count");
  } else if (opts.restrict_zauner) {
    basis = zauner_project(d)[0].basis;
  } else {
    basis = Mat::Identity(d, d);
  }

  SicProblem prob;
  prob.d = d;
  prob.target = 1.0 / double(d + 1);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) {
      if (i == 0 && j == 0) continue;
      prob.ops.push_back(basis.adjoint() *
                         displacement(d, DisplacementIndex(i, j, d)) * basis);
    }
  for (const auto& [p, value] : opts.target_overlaps) {
    prob.target_ops.push_back(basis.adjoint() * displacement(d, p) * basis);
    prob.target_values.push_back(value);
  }

  std::mt19937_64 rng(opts.rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::int64_t kk = basis.cols();

  FindResult result;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Vec y(kk);
    for (std::int64_t m = 0; m < kk; ++m) y(m) = Complex(gauss(rng), gauss(rng));
    y.normalize();
    Vec best_y;
    double q = lm_run(prob, y, opts.max_iters, opts.tolerance, best_y);
    if (q < result.residual) {
      result.residual = q;
      Vec psi = basis * best_y;
      psi.normalize();
      result.fiducial = Fiducial{d, psi, "", Centring::unknown};
      result.restarts_used = restart + 1;
    }
    if (result.residual <= opts.tolerance) {
      result.converged = true;
      break;
    }
  }
  if (result.fiducial.dim == d) {
    auto rep = sic_verify(result.fiducial, 1.0, 1e9);
    result.residual = rep.equiangularity_residual;
    result.converged = result.residual <= opts.tolerance;
    result.fiducial.label = "optimizer d=" + std::to_string(d) +
                            " seed " + std::to_string(opts.rng_seed);
  }
  return result;
}

std::vector<ZaunerSubspace> zauner_project(std::int64_t d, int which) {
  auto mats = zauner_matrices(d);
  if (which < 0 || which >= int(mats.size()))
    throw std::invalid_argument("requested Zauner flavor not available here");
  Mat U = clifford_unitary(d, mats[which]);
  Mat U3 = U * U * U;
  Complex lam = U3(0, 0);  // U^3 is a global phase times identity
  Complex mu = std::polar(1.0, std::arg(lam) / 3.0);
  Mat Un = U / mu;

  std::vector<ZaunerSubspace> out;
  for (int kroot = 0; kroot < 3; ++kroot) {
    Complex eta = std::polar(1.0, 2.0 * std::numbers::pi * kroot / 3.0);
    Mat proj = Mat::Zero(d, d);
    Mat power = Mat::Identity(d, d);
    for (int m = 0; m < 3; ++m) {
      proj += power / std::pow(eta, m);
      power = power * Un;
    }
    proj /= 3.0;
    Eigen::JacobiSVD<Mat> svd(proj, Eigen::ComputeThinU);
    std::int64_t rank =
        (svd.singularValues().array() > 0.5).count();
    out.push_back(ZaunerSubspace{eta * mu, svd.matrixU().leftCols(rank)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.basis.cols() > b.basis.cols();
  });
  return out;
}

CentredFiducial centre_fiducial(const Fiducial& f, double tol) {
  require_normalized(f);
  const std::int64_t d = f.dim;
  if (d % 2 == 0 || d < 5)
    throw std::invalid_argument("centre_fiducial needs odd d >= 5");
  Mat U = clifford_unitary(d, zauner_matrices(d)[0]);
  for (std::int64_t qi = 0; qi < d; ++qi)
    for (std::int64_t qj = 0; qj < d; ++qj) {
      DisplacementIndex q(qi, qj, d);
      Mat Dq = displacement(d, q);
      Vec candidate = Dq.adjoint() * f.components;  // undisplaced vector
      Vec image = U * candidate;
      Complex lam = candidate.dot(image);
      double res = (image - lam * candidate).norm();
      if (res <= tol) {
        candidate.normalize();
        Fiducial out{d, candidate, f.label, Centring::centred};
        return CentredFiducial{out, q, lam, res};
      }
    }
  throw std::runtime_error(
      "centre_fiducial: no displaced Zauner operator stabilizes the input "
      "(not on a Zauner-symmetric orbit, or tolerance too tight)");
}

std::vector<Fiducial> centred_candidates(const Fiducial& centred) {
  const std::int64_t d = centred.dim;
  std::vector<Fiducial> out{centred};
  if (d % 3 != 0) return out;
  // Displacements commuting with U_{F_z}: F_z q = q has the solutions
  // q = (-j, j), j in {0, d/3, 2d/3}.
  for (std::int64_t j : {d / 3, 2 * d / 3}) {
    DisplacementIndex q(-j, j, d);
    Vec v = displacement(d, q) * centred.components;
    out.push_back(Fiducial{d, v, centred.label, Centring::centred});
  }
  return out;
}

StrongCentreResult strongly_centre(const Fiducial& centred,
                                   std::int64_t partner_dim, double tol) {
  const std::int64_t N = centred.dim;
  const std::int64_t d = partner_dim;
  if (N != d * (d - 2))
    throw std::invalid_argument("partner dimension does not match N = d(d-2)");

  auto candidates = centred_candidates(centred);
  const std::int64_t span = d - 2;  // stride-d indices repeat with period d-2
  const double scale = std::sqrt(double(N + 1));

  StrongCentreResult result;
  result.obs1_residual = 1e300;
  result.candidate_index = -1;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Vec& psi = candidates[c].components;
    double res = 0;
    for (std::int64_t i = 0; i < span; ++i)
      for (std::int64_t j = 0; j < span; ++j) {
        if (i == 0 && j == 0) continue;
        DisplacementIndex p(d * i, d * j, N);
        Complex phase = scale * psi.dot(displacement(N, p) * psi);
        Complex predicted =
            (d % 2 == 1)
                ? Complex(1.0, 0.0)
                : Complex(-std::pow(-1.0, double((i + 1) * (j + 1))), 0.0);
        res = std::max(res, std::abs(phase - predicted));
      }
    result.candidate_residuals.push_back(res);
    if (res < result.obs1_residual) {
      result.obs1_residual = res;
      result.candidate_index = int(c);
      result.fiducial = candidates[c];
    }
  }
  if (result.obs1_residual > tol)
    throw std::runtime_error(
        "strongly_centre: no candidate matches the aligned phase pattern "
        "(not aligned or wrong orbit)");
  return result;
}

}  // namespace sictower
