#include "sictower/symmetry.hpp"

#include <stdexcept>

namespace sictower {

namespace {

bool fixes_projectively(const Vec& psi, const Vec& image, double tol) {
  return std::abs(std::abs(Complex(psi.dot(image))) - 1.0) <= tol;
}

bool is_order3(const SymplecticMatrix& F) {
  SymplecticMatrix sq = F * F;
  return !(F == SymplecticMatrix::identity(F.dim())) &&
         sq * F == SymplecticMatrix::identity(F.dim());
}

}  // namespace

SymmetryReport stabilizer_order(const Fiducial& f, double tol) {
  const std::int64_t d = f.dim;
  if (d % 2 == 0)
    throw std::invalid_argument("stabilizer_order needs odd dimension");
  if (d > 15)
    throw std::invalid_argument(
        "stabilizer_order enumerates the full symplectic group; d <= 15 only");

  const Vec& psi = f.components;
  const Vec conj_psi = psi.conjugate();
  SymmetryReport rep;
  rep.has_order3_trace_minus1 = false;

  for (std::int64_t a = 0; a < d; ++a)
    for (std::int64_t b = 0; b < d; ++b)
      for (std::int64_t c = 0; c < d; ++c)
        for (std::int64_t e = 0; e < d; ++e) {
          SymplecticMatrix F(a, b, c, e, d);
          std::int64_t det = F.det().value;
          if (det == 1) {
            Mat U = clifford_unitary(d, F);
            if (fixes_projectively(psi, U * psi, tol)) {
              ++rep.unitary_order;
              rep.witnesses.push_back({F, false});
              if (is_order3(F) &&
                  mod_reduce(a + e, d) == d - 1) {
                rep.has_order3_trace_minus1 = true;
                if (d % 9 == 3 && a % 3 == 1 && b % 3 == 0 && c % 3 == 0 &&
                    e % 3 == 1)
                  rep.zauner_flavor = 'a';
              }
            }
          } else if (det == d - 1) {
            // Anti-unitary candidate: factor out conjugation, which acts on
            // indices as J = diag(1, -1).
            SymplecticMatrix FJ(a, mod_reduce(-b, d), c, mod_reduce(-e, d), d);
            Mat U = clifford_unitary(d, FJ);
            if (fixes_projectively(psi, U * conj_psi, tol))
              rep.witnesses.push_back({F, true});
          }
        }
  rep.extended_order = int(rep.witnesses.size());

  auto subspaces = zauner_project(d);
  double best = -1.0;
  for (int k = 0; k < int(subspaces.size()); ++k) {
    double w = (subspaces[k].basis.adjoint() * psi).norm();
    if (w > best) {
      best = w;
      rep.subspace_index = k;
    }
  }
  rep.largest_subspace = rep.subspace_index == 0;
  return rep;
}

Theorem5Result check_theorem5(const Fiducial& big, std::int64_t d) {
  const std::int64_t N = big.dim;
  if (d % 2 == 0) throw std::invalid_argument("check_theorem5 needs odd d");
  if (N != d * (d - 2))
    throw std::invalid_argument("check_theorem5: dim must be d(d-2)");

  Theorem5Result out{SymplecticMatrix(mod_reduce(1 - d, N), 0, 0,
                                      mod_reduce(1 - d, N), N),
                     1.0, 1.0, {}, 0};
  Mat Ub = clifford_unitary(N, out.f_b);
  const Vec& psi = big.components;
  out.fix_residual = std::abs(std::abs(Complex(psi.dot(Ub * psi))) - 1.0);

  out.permutation.assign(N * N, 0);
  out.permutation_residual = 0.0;
  for (std::int64_t i = 0; i < N; ++i)
    for (std::int64_t j = 0; j < N; ++j) {
      DisplacementIndex p(i, j, N);
      DisplacementIndex q = out.f_b.apply(p);
      out.permutation[i * N + j] = q.i.value * N + q.j.value;
      Vec image = Ub * (displacement(N, p) * psi);
      Vec target = displacement(N, q) * psi;
      out.permutation_residual =
          std::max(out.permutation_residual,
                   std::abs(std::abs(Complex(target.dot(image))) - 1.0));
    }

  // Order of the index permutation.
  std::vector<std::int64_t> power(out.permutation);
  out.permutation_order = 1;
  auto is_identity = [](const std::vector<std::int64_t>& perm) {
    for (std::int64_t k = 0; k < std::int64_t(perm.size()); ++k)
      if (perm[k] != k) return false;
    return true;
  };
  while (!is_identity(power) && out.permutation_order < 16) {
    for (std::int64_t k = 0; k < std::int64_t(power.size()); ++k)
      power[k] = out.permutation[power[k]];
    ++out.permutation_order;
  }
  return out;
}

}  // namespace sictower
