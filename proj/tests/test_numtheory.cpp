#include <doctest.h>

#include "sictower/numtheory.hpp"

using namespace sictower;

TEST_CASE("residue arithmetic stays reduced") {
  Residue a(7, 5), b(4, 5);
  CHECK((a + b).value == 1);
  CHECK((a - b).value == 3);
  CHECK((a * b).value == 3);
  CHECK((-a).value == 3);
  CHECK(a.value == 2);  // constructor reduces
  CHECK(Residue(-13, 5).value == 2);
}

TEST_CASE("residue modulus mismatch is rejected") {
  Residue a(1, 5), b(1, 7);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("mod_reduce maps into [0, m)") {
  CHECK(mod_reduce(-1, 10) == 9);
  CHECK(mod_reduce(10, 10) == 0);
  CHECK(mod_reduce(-30, 7) == 5);
}

TEST_CASE("squarefree part strips square divisors") {
  CHECK(squarefree_part(1) == 1);
  CHECK(squarefree_part(12) == 3);
  CHECK(squarefree_part(18) == 2);
  CHECK(squarefree_part(49) == 1);
  CHECK(squarefree_part(360) == 10);
}

TEST_CASE("tower steps and discriminants") {
  TowerStep s5 = next_rung(5);
  CHECK(s5.next == 15);
  CHECK(s5.discriminant == 3);  // squarefree part of 6*2 = 12

  TowerStep s7 = next_rung(7);
  CHECK(s7.next == 35);
  CHECK(s7.discriminant == 2);  // 8*4 = 32

  TowerStep s4 = next_rung(4);
  CHECK(s4.next == 8);
  CHECK(s4.discriminant == 5);  // 5*1

  CHECK_THROWS_AS(next_rung(3), std::invalid_argument);
}

TEST_CASE("discriminant is constant along a tower") {
  for (std::int64_t start : {4, 5, 7}) {
    std::int64_t d = start;
    std::int64_t disc = next_rung(start).discriminant;
    for (int rung = 0; rung < 3; ++rung) {
      TowerStep step = next_rung(d);
      CHECK(step.discriminant == disc);
      d = step.next;
    }
  }
}

TEST_CASE("modular inverse") {
  CHECK(mod_inverse(Residue(3, 5)).value == 2);
  CHECK(mod_inverse(Residue(7, 15)).value == 13);
  CHECK_THROWS_AS(mod_inverse(Residue(5, 15)), std::domain_error);
}

TEST_CASE("crt split data for (d, d-2)") {
  CrtSplit split(5, 3);
  CHECK(split.modulus() == 15);
  CHECK(split.kappa() == 2);  // (5-1)/2
  CHECK(split.inv_n2_mod_n1.value == 2);
  CHECK(split.inv_n1_mod_n2.value == 2);

  CrtSplit split7(7, 5);
  CHECK(split7.kappa() == 3);
  CHECK_THROWS_AS(CrtSplit(9, 3), std::invalid_argument);  // not coprime
}

TEST_CASE("crt round trip is a bijection") {
  for (auto [n1, n2] : {std::pair<std::int64_t, std::int64_t>{5, 3}, {7, 5}}) {
    CrtSplit split(n1, n2);
    for (std::int64_t r = 0; r < split.modulus(); ++r) {
      auto [r1, r2] = crt_split(Residue(r, split.modulus()), split);
      CHECK(r1.value == r % n1);
      CHECK(r2.value == r % n2);
      CHECK(crt_combine(r1, r2, split).value == r);
    }
  }
}

TEST_CASE("crt combine example") {
  CrtSplit split(5, 3);
  CHECK(crt_combine(Residue(2, 5), Residue(1, 3), split).value == 7);
}
