#include "sictower/alignment.hpp"

#include <cmath>
#include <stdexcept>

namespace sictower {

namespace {

double even_sign(std::int64_t i, std::int64_t j) {
  return ((i + 1) * (j + 1)) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

Observation1Result check_observation1(const OverlapTable& big,
                                      std::int64_t d) {
  const std::int64_t N = big.dim;
  if (d < 4 || N != d * (d - 2))
    throw std::invalid_argument("check_observation1: N must equal d(d-2)");
  const std::int64_t m = d - 2;
  Observation1Result out;
  out.observed = Mat(m, m);
  out.predicted = Mat(m, m);
  out.residual = 0.0;
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = 0; j < m; ++j) {
      Complex obs = big.phases(mod_reduce(d * i, N), mod_reduce(d * j, N));
      Complex pred = (d % 2 == 1) ? Complex(1.0) : Complex(-even_sign(i, j));
      if (i == 0 && j == 0) pred = 1.0;  // convention: Theta_{0,0} = 1
      out.observed(i, j) = obs;
      out.predicted(i, j) = pred;
      if (i != 0 || j != 0)
        out.residual = std::max(out.residual, std::abs(obs - pred));
    }
  return out;
}

Observation2Result check_observation2(const OverlapTable& big,
                                      const OverlapTable& small) {
  const std::int64_t d = small.dim, N = big.dim;
  if (d < 4 || N != d * (d - 2))
    throw std::invalid_argument("check_observation2: dims must be d, d(d-2)");
  const std::int64_t stride = d - 2;
  const bool odd = d % 2 == 1;

  // Stride-(d-2) phase subset, indexed over Z_d x Z_d.
  Mat theta_big(d, d);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j)
      theta_big(i, j) =
          big.phases(mod_reduce(stride * i, N), mod_reduce(stride * j, N));

  Observation2Result out;
  for (std::int64_t a = 0; a < d; ++a)
    for (std::int64_t b = 0; b < d; ++b)
      for (std::int64_t c = 0; c < d; ++c)
        for (std::int64_t e = 0; e < d; ++e) {
          SymplecticMatrix M(a, b, c, e, d);
          std::int64_t det = M.det().value;
          if (det != 1 && det != d - 1) continue;
          double res = 0.0;
          for (std::int64_t i = 0; i < d && res < out.residual + 1e-9; ++i)
            for (std::int64_t j = 0; j < d; ++j) {
              if (i == 0 && j == 0) continue;
              DisplacementIndex q = M.apply(DisplacementIndex(i, j, d));
              Complex ph = small.phases(q.i.value, q.j.value);
              Complex pred = odd ? -ph * ph : even_sign(i, j) * ph * ph;
              res = std::max(res, std::abs(theta_big(i, j) - pred));
            }
          if (res < out.residual - 1e-9) {
            out.residual = res;
            out.best = M;
            out.minimizers.clear();
            out.minimizers.push_back(M);
          } else if (res < out.residual + 1e-9) {
            out.minimizers.push_back(M);
            if (res < out.residual) {
              out.residual = res;
              out.best = M;
            }
          }
        }
  if (out.residual > 1e-6) out.best.reset();
  return out;
}

std::vector<Fiducial> alignment_candidates(const Fiducial& f) {
  const std::int64_t d = f.dim;
  if (d % 2 == 1) {
    try {
      CentredFiducial c = centre_fiducial(f);
      return centred_candidates(c.fiducial);
    } catch (const std::runtime_error&) {
      // fall through to the displacement orbit
    }
  }
  std::vector<Fiducial> out;
  out.reserve(d * d);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) {
      Fiducial g = f;
      g.components = displacement(d, DisplacementIndex(i, j, d)) * f.components;
      g.centring = Centring::unknown;
      out.push_back(std::move(g));
    }
  return out;
}

AlignmentReport align(const Fiducial& small, const Fiducial& big, double tol) {
  const std::int64_t d = small.dim, N = big.dim;
  if (d < 4 || N != d * (d - 2))
    throw std::invalid_argument("align: dimensions must satisfy N = d(d-2)");

  AlignmentReport rep;
  rep.d = d;
  rep.N = N;
  rep.d_is_odd = d % 2 == 1;
  rep.tolerance = tol;

  std::vector<Fiducial> small_cands = alignment_candidates(small);
  std::vector<Fiducial> big_cands = alignment_candidates(big);

  std::vector<OverlapTable> small_tables;
  small_tables.reserve(small_cands.size());
  for (const Fiducial& s : small_cands) small_tables.push_back(overlap_table(s));

  double best_score = std::numeric_limits<double>::infinity();
  for (int bi = 0; bi < int(big_cands.size()); ++bi) {
    OverlapTable Theta = overlap_table(big_cands[bi]);
    Observation1Result o1 = check_observation1(Theta, d);
    // Observation 2 is only worth the M-search where Observation 1 is not
    // already hopeless, except that the overall best pair is always reported.
    if (o1.residual > 100 * tol && o1.residual > best_score) continue;
    for (int si = 0; si < int(small_cands.size()); ++si) {
      Observation2Result o2 = check_observation2(Theta, small_tables[si]);
      double score = std::max(o1.residual, o2.residual);
      if (score < best_score) {
        best_score = score;
        rep.obs1_residual = o1.residual;
        rep.obs2_residual = o2.residual;
        rep.M = o2.best;
        rep.minimizers = o2.minimizers;
        rep.small_choice = small_cands[si];
        rep.big_choice = big_cands[bi];
        rep.small_candidate = si;
        rep.big_candidate = bi;
      }
      if (best_score <= tol) break;
    }
    if (best_score <= tol) break;
  }

  if (best_score <= tol && rep.M.has_value())
    rep.verdict = AlignmentVerdict::aligned;
  else if (best_score <= 100 * tol)
    rep.verdict = AlignmentVerdict::inconclusive;
  else
    rep.verdict = AlignmentVerdict::not_aligned;
  return rep;
}

}  // namespace sictower
