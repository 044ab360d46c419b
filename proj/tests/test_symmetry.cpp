#include <doctest.h>

#include "fixtures.hpp"
#include "sictower/symmetry.hpp"

using namespace sictower;

TEST_CASE("stabilizer orders across the rung") {
  const AlignmentReport& rep = fixtures::aligned15();
  SymmetryReport s5 = stabilizer_order(rep.small_choice);
  CHECK(s5.unitary_order == 3);
  CHECK(s5.extended_order % s5.unitary_order == 0);
  CHECK(s5.has_order3_trace_minus1);
  CHECK(s5.largest_subspace);

  SymmetryReport s15 = stabilizer_order(rep.big_choice);
  CHECK(s15.unitary_order == 6);
  CHECK(s15.has_order3_trace_minus1);

  // The order doubles on the higher rung.
  CHECK(s15.unitary_order == 2 * s5.unitary_order);
}

TEST_CASE("stabilizer witnesses form a group") {
  SymmetryReport s = stabilizer_order(fixtures::aligned15().small_choice);
  auto contains = [&](const SymplecticMatrix& m) {
    for (const SymmetryWitness& w : s.witnesses)
      if (!w.antiunitary && w.matrix == m) return true;
    return false;
  };
  for (const SymmetryWitness& a : s.witnesses)
    for (const SymmetryWitness& b : s.witnesses) {
      if (a.antiunitary || b.antiunitary) continue;
      CHECK(contains(a.matrix * b.matrix));
    }
  CHECK(contains(SymplecticMatrix::identity(5)));
}

TEST_CASE("stabilizer preconditions") {
  CHECK_THROWS_AS(stabilizer_order(fixtures::small4()),
                  std::invalid_argument);  // even dimension
  Fiducial too_big;
  too_big.dim = 17;
  too_big.components = Vec::Ones(17).normalized();
  CHECK_THROWS_AS(stabilizer_order(too_big), std::invalid_argument);
}

TEST_CASE("extra order-2 symmetry of the aligned fiducial") {
  const AlignmentReport& rep = fixtures::aligned15();
  Theorem5Result t5 = check_theorem5(rep.big_choice, 5);
  CHECK(t5.f_b.alpha.value == 11);  // 1 - 5 mod 15
  CHECK(t5.f_b.delta.value == 11);
  CHECK(t5.f_b.beta.value == 0);
  CHECK(t5.f_b.gamma.value == 0);
  CHECK(t5.fix_residual <= 1e-8);
  CHECK(t5.permutation_residual <= 1e-8);
  CHECK(t5.permutation_order == 2);
  // F_b^2 = 1 mod N, so the index permutation is an involution.
  for (std::int64_t k = 0; k < std::int64_t(t5.permutation.size()); ++k)
    CHECK(t5.permutation[t5.permutation[k]] == k);
  CHECK_THROWS_AS(check_theorem5(rep.big_choice, 4), std::invalid_argument);
}

TEST_CASE("conjugation by the extra symmetry is exactly a displacement map") {
  // U_b is Clifford: its action permutes displacement indices with no
  // numerical slack beyond the unitary arithmetic itself.
  const std::int64_t N = 15;
  SymplecticMatrix fb(11, 0, 0, 11, N);
  Mat Ub = clifford_unitary(N, fb);
  for (auto [i, j] : {std::pair<std::int64_t, std::int64_t>{1, 0},
                      {0, 1},
                      {7, 4}}) {
    DisplacementIndex p(i, j, N);
    Mat lhs = Ub * displacement(N, p) * Ub.adjoint();
    Mat rhs = displacement(N, fb.apply(p));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}
