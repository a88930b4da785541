#include <doctest.h>

#include "cubesaw/errors.hpp"
#include "cubesaw/expansion.hpp"
#include "cubesaw/lace.hpp"

using namespace cubesaw;

using Ints = std::vector<BigInt>;

TEST_CASE("series reciprocal") {
  const SeriesS one_plus_s(3, {1, 1});
  CHECK(series_reciprocal(one_plus_s) == SeriesS(3, {1, -1, 1, -1}));
  const SeriesS f(5, {2, Rational(1, 3), -4, 0, 7, 1});
  CHECK(f.reciprocal().reciprocal() == f);
  CHECK(f * f.reciprocal() == SeriesS::constant(5, 1));
  CHECK_THROWS_AS(SeriesS(3, {0, 1}).reciprocal(), DomainError);
}

TEST_CASE("series shifts") {
  const SeriesS z(4, {0, 1, 1, 2, 7});
  CHECK(z.shift_down(1) == SeriesS(3, {1, 1, 2, 7}));
  CHECK(z.shift_down(1).shift_up(1) == z);
  CHECK_THROWS_AS(z.shift_down(2), InvariantViolation);
  CHECK(z.valuation() == 1);
  CHECK(z.pow(2) == SeriesS(4, {0, 0, 1, 2, 5}));
  CHECK_THROWS_AS(SeriesS(2, {Rational(1, 2)}).integer_coefficients(), InvariantViolation);
}

TEST_CASE("b_{N,k}") {
  CHECK(build_bnk(2, 1) == NPoly({0, -1}));
  CHECK(build_bnk(3, 2) == NPoly({0, 1}));
  CHECK(build_bnk(4, 3) == NPoly({0, 0, -1}));
  CHECK(build_bnk(4, 3).str() == "-N^2");
  CHECK_THROWS_AS(build_bnk(5, 2), DomainError);
}

TEST_CASE("count table agrees with enumeration") {
  for (int k = 2; k <= 8; ++k) {
    for (int delta = 1; delta < k; ++delta) {
      for (int big_m = 1; big_m <= 4; ++big_m) {
        if (k - delta > 4) continue;
        CHECK(lace_count(k, delta, big_m) == pi_k_delta(k, delta, big_m));
      }
    }
  }
  CHECK(lace_count(9, 5, 1) == pi_k_delta(9, 5, 1));
}

TEST_CASE("z expansion") {
  CHECK(expand_z(1) == Ints{1});
  CHECK(expand_z(2) == Ints{1, 1});
  CHECK(expand_z(3) == Ints{1, 1, 2});
  CHECK(expand_z(5) == Ints{1, 1, 2, 7, 39});
  const Ints five = expand_z(5);
  for (int m = 1; m < 5; ++m) CHECK(expand_z(m) == Ints(five.begin(), five.begin() + m));
  CHECK_THROWS_AS(expand_z(0), DomainError);
}

TEST_CASE("connective constant expansion") {
  CHECK(mu_from_z({1}).coefficients == Ints{1});
  CHECK(mu_from_z({1, 1}).coefficients == Ints{1, -1});
  const MuExpansion mu = expand_mu(5);
  CHECK(mu.coefficients == Ints{1, -1, -1, -4, -26});
  CHECK(mu.str() == "N - 1 - 1/N - 4/N^2 - 26/N^3");
}

TEST_CASE("amplitude expansion") {
  CHECK(expand_amplitude(0) == Ints{1});
  CHECK(expand_amplitude(2) == Ints{1, 1, 4});
  const Ints four = expand_amplitude(4);
  CHECK(four == Ints{1, 1, 4, 26, 231});
  CHECK(expand_amplitude(3) == Ints(four.begin(), four.begin() + 4));
}
