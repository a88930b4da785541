#include <doctest.h>

#include <random>

#include "cubesaw/cube.hpp"
#include "cubesaw/errors.hpp"
#include "oracles.hpp"

using namespace cubesaw;

namespace {

IntCubeFn random_field(Dim dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> value(-500, 500);
  IntCubeFn f(dim);
  for (auto& v : f.values()) v = value(rng);
  return f;
}

}  // namespace

TEST_CASE("hamming weight") {
  CHECK(hamming_weight(Vertex{0b00100}) == 1);
  CHECK(hamming_weight(Vertex{0}) == 0);
  CHECK(hamming_weight(Vertex{0b111}) == 3);
}

TEST_CASE("vertex addition is its own inverse") {
  const Vertex x{0b1011};
  CHECK(x + x == Vertex{0});
  CHECK(x - Vertex{0b0001} == x + Vertex{0b0001});
}

TEST_CASE("dimension bounds") {
  CHECK(Dim(4).volume() == 16);
  CHECK_THROWS_AS(Dim(0), DomainError);
  CHECK_THROWS_AS(Dim(64), DomainError);
  CHECK_THROWS_AS(Dim(31).require_dense(), DomainError);
}

TEST_CASE("walsh transform agrees with the term-by-term sum") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 6; ++n) {
    const IntCubeFn f = random_field(Dim(n), rng);
    const auto expected = oracle::naive_walsh(std::vector<BigInt>(f.values().begin(), f.values().end()));
    const IntCubeFn f_hat = walsh_transform(f);
    CHECK(std::vector<BigInt>(f_hat.values().begin(), f_hat.values().end()) == expected);
  }
}

TEST_CASE("delta and constant transform into each other") {
  const Dim dim(4);
  CHECK(walsh_transform(IntCubeFn::delta(dim)) == IntCubeFn::constant(dim, 1));
  CHECK(inverse_walsh(IntCubeFn::constant(dim, 1)) == IntCubeFn::delta(dim));
  CHECK(inverse_walsh(IntCubeFn::delta(dim) * BigInt(16)) == IntCubeFn::constant(dim, 1));
}

TEST_CASE("round trip and Parseval on random integer fields") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 8; ++n) {
    const Dim dim(n);
    for (int i = 0; i < 100; ++i) {
      const IntCubeFn f = random_field(dim, rng);
      const IntCubeFn f_hat = walsh_transform(f);
      REQUIRE(inverse_walsh(f_hat) == f);
      CHECK(f_hat.pointwise(f_hat).sum() == BigInt(BigInt(static_cast<unsigned long>(dim.volume())) * f.pointwise(f).sum()));
    }
  }
}

TEST_CASE("inverse transform refuses to round") {
  IntCubeFn bad(Dim(3));
  bad[Vertex{0}] = 1;
  CHECK_THROWS_AS(inverse_walsh(bad), DomainError);
}

TEST_CASE("convolution identities") {
  std::mt19937_64 rng(3);
  const Dim dim(4);
  const IntCubeFn g = random_field(dim, rng);
  CHECK(convolve(IntCubeFn::delta(dim), g) == g);
  for (int n = 2; n <= 9; ++n) {
    const Dim d(n);
    const IntCubeFn a = random_field(d, rng);
    const IntCubeFn b = random_field(d, rng);
    CHECK(convolve_direct(a, b) == convolve_transform(a, b));
    CHECK(walsh_transform(convolve(a, b)) == walsh_transform(a).pointwise(walsh_transform(b)));
  }
  CHECK_THROWS(convolve(IntCubeFn(Dim(3)), IntCubeFn(Dim(4))));
}

TEST_CASE("two-step return probabilities") {
  for (int n = 2; n <= 6; ++n) {
    const Dim dim(n);
    const ExactCubeFn d = step_distribution(dim);
    const ExactCubeFn dd = convolve(d, d);
    CHECK(dd[Vertex{0}] == Rational(1, n));
    CHECK(dd[Vertex{0b11}] == Rational(Rational(2) / (n * n)));
  }
}

TEST_CASE("step distribution and its transform") {
  const Dim dim(3);
  const ExactCubeFn d = step_distribution(dim);
  CHECK(d.sum() == 1);
  CHECK(d[Vertex{0b010}] == Rational(1, 3));
  const ExactCubeFn d_transform = walsh_transform(d);
  CHECK(d_transform[Vertex{0}] == 1);
  CHECK(d_transform[Vertex{0b001}] == Rational(1, 3));
  CHECK(d_transform[Vertex{0b011}] == Rational(-1, 3));
  CHECK(d_transform[Vertex{0b111}] == -1);
  for (std::uint64_t k = 0; k < 8; ++k) CHECK(d_transform.at(k) == d_hat(dim, Vertex{k}));
  CHECK(d_hat(Dim(4), Vertex{0b1111}) == -1);
  CHECK(d_hat_weight(Dim(50), 25) == 0);
}

TEST_CASE("random walk powers") {
  const Dim dim(4);
  CHECK(rw_power(dim, 0) == ExactCubeFn::delta(dim));
  CHECK(rw_power(dim, 1) == step_distribution(dim));
  CHECK(rw_power(dim, 2)[Vertex{0}] == Rational(1, 4));
  CHECK(rw_power(dim, 4, RwRoute::transform) == rw_power(dim, 4, RwRoute::convolution));
  for (int i = 0; i <= 6; ++i) {
    const ExactCubeFn p = rw_power(Dim(5), i);
    CHECK(p.sum() == 1);
    for (std::uint64_t x = 0; x < p.size(); ++x) {
      CHECK(p.at(x) >= 0);
      if ((std::popcount(x) - i) % 2 != 0) CHECK(p.at(x) == 0);
    }
  }
}

TEST_CASE("random walk Green function") {
  CHECK(rw_green(Dim(3), Rational(0)) == ExactCubeFn::delta(Dim(3)));
  CHECK(rw_green_hat(Dim(2), Rational(1, 4), 0) == 2);
  CHECK_THROWS_AS(rw_green(Dim(3), Rational(1, 3)), DomainError);
  const ExactCubeFn hi = rw_green(Dim(3), Rational(1, 6));
  const ExactCubeFn lo = rw_green(Dim(3), Rational(1, 10));
  for (std::uint64_t x = 0; x < 8; ++x) {
    CHECK(hi.at(x) >= lo.at(x));
    CHECK(lo.at(x) >= 0);
  }
}

TEST_CASE("twisted functions") {
  std::mt19937_64 rng(5);
  const Dim dim(4);
  const IntCubeFn f = random_field(dim, rng);
  CHECK(twist(f, Vertex{0}) == IntCubeFn(dim));
  CHECK(twist(IntCubeFn::delta(dim), Vertex{0b101}) == IntCubeFn(dim));
  const IntCubeFn f_hat = walsh_transform(f);
  for (std::uint64_t k = 0; k < 16; ++k) {
    const IntCubeFn fk_hat = walsh_transform(twist(f, Vertex{k}));
    for (std::uint64_t l = 0; l < 16; ++l) CHECK(fk_hat.at(l) == BigInt(f_hat.at(l) - f_hat.at(k ^ l)));
  }
}
