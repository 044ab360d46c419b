#include <doctest.h>

#include "fixtures.hpp"
#include "sictower/sic.hpp"

using namespace sictower;

TEST_CASE("optimizer fiducials verify at tight tolerance") {
  for (const Fiducial* f :
       {&fixtures::small4(), &fixtures::small5(), &fixtures::small7()}) {
    VerificationReport v = sic_verify(*f);
    CHECK(v.pass);
    CHECK(v.equiangularity_residual <= 1e-12);
    CHECK(v.resolution_residual <= 1e-9);
  }
  VerificationReport v15 = sic_verify(fixtures::big15());
  CHECK(v15.pass);
  CHECK(v15.equiangularity_residual <= 1e-10);
}

TEST_CASE("verification rejects a non-SIC vector") {
  Fiducial f;
  f.dim = 5;
  f.components = Vec::Zero(5);
  f.components(0) = 1.0;  // basis vector: overlaps are 0 or 1, never 1/6
  VerificationReport v = sic_verify(f);
  CHECK(!v.pass);
  CHECK(v.equiangularity_residual > 0.1);
  CHECK_THROWS_AS(overlap_table(f), std::runtime_error);
}

TEST_CASE("overlap table conventions") {
  OverlapTable t = overlap_table(fixtures::small5());
  CHECK(t.dim == 5);
  CHECK(t.phases(0, 0) == Complex(1.0));
  double worst_mod = 0, worst_conj = 0;
  for (std::int64_t i = 0; i < 5; ++i)
    for (std::int64_t j = 0; j < 5; ++j) {
      worst_mod = std::max(worst_mod,
                           std::abs(std::abs(t.phases(i, j)) - 1.0));
      // D_{-p} = D_p^dag up to the group phase, so theta_{-p} = -theta_p.
      worst_conj = std::max(
          worst_conj,
          std::abs(t.phases(mod_reduce(-i, 5), mod_reduce(-j, 5)) -
                   std::conj(t.phases(i, j))));
    }
  CHECK(worst_mod < 1e-10);
  CHECK(worst_conj < 1e-10);
}

TEST_CASE("search failure is reported, not thrown") {
  FindOptions o;
  o.restarts = 1;
  o.max_iters = 1;
  o.tolerance = 1e-15;
  FindResult r = find_fiducial(6, o);
  CHECK(!r.converged);
  CHECK(r.residual > 1e-15);
}

TEST_CASE("zauner subspace dimensions") {
  auto z5 = zauner_project(5);
  REQUIRE(z5.size() == 3);
  CHECK(z5[0].basis.cols() == 2);
  CHECK(z5[1].basis.cols() == 2);
  CHECK(z5[2].basis.cols() == 1);

  auto z15 = zauner_project(15);
  CHECK(z15[0].basis.cols() == 6);
  CHECK(z15[1].basis.cols() == 5);
  CHECK(z15[2].basis.cols() == 4);

  // Columns really span eigenspaces of the Zauner unitary.
  Mat U = clifford_unitary(5, zauner_matrices(5)[0]);
  Complex mu = z5[0].phase;
  CHECK((U * z5[0].basis - mu * z5[0].basis).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("zauner-restricted search stays in the subspace") {
  const Fiducial& f = fixtures::small5();
  Mat B = zauner_project(5)[0].basis;
  Vec residual = f.components - B * (B.adjoint() * f.components);
  CHECK(residual.norm() < 1e-10);
}

TEST_CASE("centring undoes a displacement") {
  const Fiducial& f = fixtures::small5();
  Fiducial moved = f;
  moved.components =
      displacement(5, DisplacementIndex(1, 2, 5)) * f.components;
  CentredFiducial c = centre_fiducial(moved);
  CHECK(c.q.i.value == 1);
  CHECK(c.q.j.value == 2);
  CHECK(c.residual < 1e-8);
  Complex ip = c.fiducial.components.dot(f.components);
  CHECK(std::abs(std::abs(ip) - 1.0) < 1e-10);
}

TEST_CASE("centring rejects vectors off every displaced Zauner orbit") {
  Fiducial junk;
  junk.dim = 5;
  junk.components = Vec::Zero(5);
  junk.components(0) = std::sqrt(0.5);
  junk.components(3) = std::sqrt(0.5);
  CHECK_THROWS_AS(centre_fiducial(junk), std::runtime_error);
}

TEST_CASE("centred candidate triplet exists only when 3 divides d") {
  CHECK(centred_candidates(fixtures::small5()).size() == 1);
  Fiducial b = fixtures::big15();
  b.centring = Centring::centred;
  auto cands = centred_candidates(b);
  CHECK(cands.size() == 3);
  // All candidates share the fiducial's Zauner eigenspace.
  Mat U = clifford_unitary(15, zauner_matrices(15)[0]);
  for (const Fiducial& c : cands) {
    Vec img = U * c.components;
    Complex ip = c.components.dot(img);
    CHECK(std::abs(std::abs(ip) - 1.0) < 1e-8);
  }
}

TEST_CASE("strong centring picks the candidate matching the phase pattern") {
  Fiducial b = fixtures::big15();
  b.centring = Centring::centred;
  StrongCentreResult sc = strongly_centre(b, 5);
  CHECK(sc.obs1_residual < 1e-8);
  REQUIRE(sc.candidate_residuals.size() == 3);
  int good = 0;
  for (double r : sc.candidate_residuals)
    if (r < 1e-8) ++good;
  CHECK(good == 1);  // the distinguished triplet member is unique
}

TEST_CASE("pinned target overlaps steer the even-dimension search") {
  const Fiducial& f = fixtures::big8();
  const Vec& psi = f.components;
  for (auto [i, j] : {std::pair<std::int64_t, std::int64_t>{0, 4},
                      {4, 0},
                      {4, 4}}) {
    Complex theta =
        3.0 * psi.dot(displacement(8, DisplacementIndex(i, j, 8)) * psi);
    CHECK(std::abs(theta - Complex(-1.0)) < 1e-8);
  }
}
