#include <cmath>
#include <random>

#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace octoslice;
using testing::dist;

TEST_SUITE("octonion") {
  TEST_CASE("basis products match the frozen table") {
    for (int l = 0; l < 8; ++l)
      for (int m = 0; m < 8; ++m) {
        const SignedBasis p = basis_product(l, m);
        CHECK(p.sign == oracle::kTableSign[l][m]);
        CHECK(p.index == oracle::kTableIndex[l][m]);
        const Octonion e = Octonion::basis(l) * Octonion::basis(m);
        CHECK(e == oracle::kTableSign[l][m] * Octonion::basis(oracle::kTableIndex[l][m]));
      }
    CHECK_THROWS_AS(basis_product(8, 0), PreconditionError);
  }

  TEST_CASE("products of dyadic octonions are exact") {
    for (const auto& c : oracle::kProducts) {
      Octonion::Coeffs x{}, y{}, xy{};
      for (int l = 0; l < 8; ++l) {
        x[l] = c.x[l];
        y[l] = c.y[l];
        xy[l] = c.xy[l];
      }
      CHECK(Octonion(x) * Octonion(y) == Octonion(xy));
    }
  }

  TEST_CASE("norm is multiplicative and the algebra is alternative, not associative") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
      const Octonion a = testing::random_octonion(rng), b = testing::random_octonion(rng);
      CHECK((a * b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
      CHECK(dist(a * (a * b), (a * a) * b) < 1e-12);
      CHECK(dist((b * a) * a, b * (a * a)) < 1e-12);
      // Moufang
      const Octonion c = testing::random_octonion(rng);
      CHECK(dist(((a * b) * a) * c, a * (b * (a * c))) < 1e-12);
      CHECK(dist((a * b).conj(), b.conj() * a.conj()) < 1e-12);
    }
    const Octonion e1 = Octonion::basis(1), e2 = Octonion::basis(2), e4 = Octonion::basis(4);
    CHECK(dist((e1 * e2) * e4, -(e1 * (e2 * e4))) == 0.0);
    CHECK(dist((e1 * e2) * e4, e1 * (e2 * e4)) == doctest::Approx(2.0));
  }

  TEST_CASE("inverse, conjugate and errors") {
    const Octonion x{1, 2, 3, 4, 5, 6, 7, 8};
    CHECK(dist(x * x.inv(), Octonion::real(1.0)) < 1e-14);
    CHECK(x.norm2() == 204.0);
    CHECK(dist(x.conj(), Octonion{1, -2, -3, -4, -5, -6, -7, -8}) == 0.0);
    CHECK_THROWS_AS(Octonion{}.inv(), DomainError);
    CHECK_THROWS_AS((Octonion{0, 0, 0, 0, 0, 0, 0, 0, 0}), PreconditionError);
    CHECK_THROWS_AS(Octonion({std::nan("")}), DomainError);
  }

  TEST_CASE("unit imaginaries and the slice coordinate") {
    const Octonion x{3, 0, 4, 0, 0, 0, 0, 0};
    const UnitImaginary i = UnitImaginary::of(x);
    CHECK(i == UnitImaginary::basis(2));
    const ComplexPoint z = slice_coordinate(x);
    CHECK(z.alpha == 3.0);
    CHECK(z.beta == 4.0);
    CHECK(tau(i, z) == x);
    CHECK(dist(i.as_octonion() * i.as_octonion(), Octonion::real(-1.0)) == 0.0);
    CHECK_THROWS_AS(UnitImaginary::of(Octonion::real(2.0)), DomainError);
    CHECK_THROWS_AS(UnitImaginary(Octonion{0, 2}), PreconditionError);
    CHECK_THROWS_AS(UnitImaginary(Octonion{1, 1}), PreconditionError);
    CHECK_THROWS_AS(UnitImaginary::basis(0), PreconditionError);
    CHECK(angle_between(UnitImaginary::basis(1), -UnitImaginary::basis(1)) ==
          doctest::Approx(M_PI));
  }

  TEST_CASE("quaternion slices embed a quaternion algebra and split the rest") {
    std::mt19937_64 rng(11);
    const OrthoPair pair(UnitImaginary::basis(1), UnitImaginary::basis(2));
    CHECK(pair.ij() == UnitImaginary::basis(3));
    CHECK_THROWS_AS(OrthoPair(UnitImaginary::basis(1), UnitImaginary::basis(1)), PreconditionError);
    for (int k = 0; k < 50; ++k) {
      const QuatCoords a{rng() % 5 - 2.0, rng() % 5 - 2.0, rng() % 5 - 2.0, rng() % 5 - 2.0};
      const QuatCoords b{rng() % 5 - 2.0, rng() % 5 - 2.0, rng() % 5 - 2.0, rng() % 5 - 2.0};
      const Octonion pa = pair.embed(a), pb = pair.embed(b);
      const QuatCoords back = pair.project(pa);
      for (int l = 0; l < 4; ++l) CHECK(back[l] == a[l]);
      // closed under products, associative inside the slice
      const Octonion pc = pair.embed(QuatCoords{1, -1, 2, 0.5});
      CHECK(dist((pa * pb) * pc, pa * (pb * pc)) < 1e-12);
      CHECK(dist(pair.embed(pair.project(pa * pb)), pa * pb) < 1e-12);
    }
    const UnitImaginary l = UnitImaginary::basis(4);
    const Octonion x = testing::random_octonion(rng);
    const CdSplit s = cd_split(x, pair, l);
    CHECK(dist(s.p + l.as_octonion() * s.q, x) < 1e-14);
    CHECK(dist(pair.embed(pair.project(s.q)), s.q) < 1e-14);
    CHECK_THROWS_AS(cd_split(x, pair, UnitImaginary::basis(3)), PreconditionError);
  }
}
