#include "sictower/heisenberg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sictower {

namespace {

// tau^e for e reduced mod 2d; tau = -exp(i pi / d).
Complex tau_power(std::int64_t d, std::int64_t e) {
  std::int64_t m = mod_reduce(e, 2 * d);
  double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::polar(1.0, std::numbers::pi * double(m) / double(d));
}

void require_odd(std::int64_t d, const char* what) {
  if (d % 2 == 0)
    throw std::invalid_argument(std::string(what) + " requires odd dimension");
}

}  // namespace

Roots roots(std::int64_t d) {
  if (d < 3) throw std::invalid_argument("roots needs d >= 3");
  require_odd(d, "roots");
  return Roots{tau_power(d, 1), tau_power(d, 2)};
}

Mat displacement(std::int64_t d, const DisplacementIndex& p) {
  if (d < 2) throw std::invalid_argument("displacement needs d >= 2");
  if (p.dim() != d)
    throw std::invalid_argument("displacement index has wrong modulus");
  Mat D = Mat::Zero(d, d);
  const std::int64_t i = p.i.value, j = p.j.value;
  for (std::int64_t s = 0; s < d; ++s) {
    std::int64_t r = mod_reduce(s + i, d);
    D(r, s) = tau_power(d, i * j + 2 * j * s);
  }
  return D;
}

Residue symplectic_form(const DisplacementIndex& p,
                        const DisplacementIndex& q) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("symplectic form: modulus mismatch");
  // p = (i, j), q = (k, l): <p, q> = kj - li
  return q.i * p.j - q.j * p.i;
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
  if (dim() != o.dim())
    throw std::invalid_argument("symplectic product: modulus mismatch");
  return SymplecticMatrix(
      (alpha * o.alpha + beta * o.gamma).value,
      (alpha * o.beta + beta * o.delta).value,
      (gamma * o.alpha + delta * o.gamma).value,
      (gamma * o.beta + delta * o.delta).value, dim());
}

DisplacementIndex SymplecticMatrix::apply(const DisplacementIndex& p) const {
  if (dim() != p.dim())
    throw std::invalid_argument("symplectic apply: modulus mismatch");
  return DisplacementIndex((alpha * p.i + beta * p.j).value,
                           (gamma * p.i + delta * p.j).value, dim());
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  Residue dinv = mod_inverse(det());
  return SymplecticMatrix((dinv * delta).value, (-(dinv * beta)).value,
                          (-(dinv * gamma)).value, (dinv * alpha).value, dim());
}

namespace {

// U_F for invertible beta: (U_F)_{r,s} = (1/sqrt d) tau^{b^{-1}(a s^2 - 2rs + e r^2)}
// with F = [[a, b], [g, e]].  Exact unitarity follows from the geometric sum.
Mat clifford_invertible_beta(std::int64_t d, const SymplecticMatrix& F) {
  std::int64_t binv = mod_inverse(F.beta).value;
  std::int64_t a = F.alpha.value, e = F.delta.value;
  Mat U(d, d);
  double scale = 1.0 / std::sqrt(double(d));
  for (std::int64_t r = 0; r < d; ++r)
    for (std::int64_t s = 0; s < d; ++s) {
      std::int64_t expo =
          binv * mod_reduce(a * s * s - 2 * r * s + e * r * r, d);
      U(r, s) = scale * tau_power(d, mod_reduce(expo, d));
    }
  return U;
}

void fix_global_phase(Mat& U) {
  for (Eigen::Index r = 0; r < U.rows(); ++r) {
    if (std::abs(U(r, 0)) > 1e-12) {
      U *= std::conj(U(r, 0)) / std::abs(U(r, 0));
      return;
    }
  }
  throw std::logic_error("clifford unitary has a zero column");
}

void assert_covariance(std::int64_t d, const SymplecticMatrix& F,
                       const Mat& U) {
  for (auto [pi, pj] : {std::pair<std::int64_t, std::int64_t>{1, 0}, {0, 1}}) {
    DisplacementIndex p(pi, pj, d);
    Mat lhs = U * displacement(d, p) * U.adjoint();
    Mat rhs = displacement(d, F.apply(p));
    if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-9)
      throw std::logic_error("clifford unitary failed covariance check");
  }
}

}  // namespace

Mat clifford_unitary(std::int64_t d, const SymplecticMatrix& F) {
  require_odd(d, "clifford_unitary");
  if (F.dim() != d)
    throw std::invalid_argument("symplectic matrix has wrong modulus");
  if (F.det().value != 1)
    throw std::invalid_argument("clifford_unitary needs det F = 1 mod d");
  Mat U;
  if (gcd64(F.beta.value, d) == 1) {
    U = clifford_invertible_beta(d, F);
  } else {
    // Split F = (F R^{-1}) R with R = [[1, z], [0, 1]]; choose z so that both
    // z and the top-right entry of F R^{-1}, beta - alpha z, are invertible.
    // Such z exists for every odd d since each prime factor exceeds 2.
    std::int64_t z = -1;
    for (std::int64_t cand = 1; cand < d; ++cand) {
      if (gcd64(cand, d) != 1) continue;
      std::int64_t topright =
          mod_reduce(F.beta.value - F.alpha.value * cand, d);
      if (gcd64(topright, d) == 1) {
        z = cand;
        break;
      }
    }
    if (z < 0) throw std::logic_error("no invertible-beta factorization found");
    SymplecticMatrix R(1, z, 0, 1, d);
    U = clifford_invertible_beta(d, F * R.inverse()) *
        clifford_invertible_beta(d, R);
  }
  fix_global_phase(U);
  assert_covariance(d, F, U);
  return U;
}

std::vector<SymplecticMatrix> zauner_matrices(std::int64_t d) {
  if (d < 4) throw std::invalid_argument("zauner_matrices needs d >= 4");
  std::vector<SymplecticMatrix> out;
  out.emplace_back(0, d - 1, 1, d - 1, d);  // F_z
  if (d % 9 == 3) {
    std::int64_t k = (d - 3) / 9;
    out.emplace_back(1, 3, 3 * k, d - 2, d);  // F_a
  }
  return out;
}

Mat parity(std::int64_t d) {
  if (d < 2) throw std::invalid_argument("parity needs d >= 2");
  Mat P = Mat::Zero(d, d);
  for (std::int64_t s = 0; s < d; ++s) P(mod_reduce(-s, d), s) = 1.0;
  return P;
}

Mat generalized_parity(const Mat& phases, double phase_residual,
                       const SymplecticMatrix& Mprime) {
  const std::int64_t d = phases.rows();
  require_odd(d, "generalized_parity");
  if (phases.cols() != d)
    throw std::invalid_argument("phase table must be square");
  if (Mprime.dim() != d)
    throw std::invalid_argument("M' modulus does not match phase table");
  if (phase_residual > 1e-6)
    throw std::invalid_argument("phase table does not come from a SIC");
  std::int64_t two_det = mod_reduce(2 * Mprime.det().value, d);
  if (two_det != 1 && two_det != d - 1)
    throw std::invalid_argument("generalized parity needs det M'^{-1} = +-2");

  Mat P = Mat::Zero(d, d);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) {
      DisplacementIndex q = Mprime.apply(DisplacementIndex(i, j, d));
      Complex ph = phases(q.i.value, q.j.value);
      P += displacement(d, DisplacementIndex(-i, -j, d)) * (ph * ph);
    }
  return P / double(d);
}

std::pair<DisplacementIndex, DisplacementIndex> crt_factor_displacement(
    std::int64_t N, const DisplacementIndex& p, const CrtSplit& split) {
  require_odd(N, "crt_factor_displacement");
  if (N != split.modulus() || p.dim() != N)
    throw std::invalid_argument("split does not match dimension N");
  DisplacementIndex p1(p.i.value, split.inv_n2_mod_n1.value * p.j.value,
                       split.n1);
  DisplacementIndex p2(p.i.value, split.inv_n1_mod_n2.value * p.j.value,
                       split.n2);
  return {p1, p2};
}

std::pair<SymplecticMatrix, SymplecticMatrix> crt_factor_clifford(
    std::int64_t N, const SymplecticMatrix& F, const CrtSplit& split) {
  require_odd(N, "crt_factor_clifford");
  if (N != split.modulus() || F.dim() != N)
    throw std::invalid_argument("split does not match dimension N");
  auto reduce = [&](std::int64_t n, std::int64_t h) {
    std::int64_t hinv = mod_inverse(Residue(h, n)).value;
    return SymplecticMatrix(F.alpha.value, hinv * F.beta.value,
                            h * F.gamma.value, F.delta.value, n);
  };
  return {reduce(split.n1, split.inv_n2_mod_n1.value),
          reduce(split.n2, split.inv_n1_mod_n2.value)};
}

Mat crt_permutation(const CrtSplit& split) {
  std::int64_t N = split.modulus();
  Mat V = Mat::Zero(N, N);
  for (std::int64_t r = 0; r < N; ++r) {
    std::int64_t r1 = r % split.n1, r2 = r % split.n2;
    V(r1 * split.n2 + r2, r) = 1.0;
  }
  return V;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

}  // namespace sictower
