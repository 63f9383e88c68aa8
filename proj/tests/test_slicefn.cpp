#include <cmath>

#include "octoslice/golden.hpp"
#include "octoslice/slicefn.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace octoslice;
using testing::dist;

TEST_SUITE("slicefn") {
  TEST_CASE("square-root stem matches the high-precision oracle") {
    for (const auto& c : oracle::kSqrtStem) {
      const SqrtStem s = sqrt_stem(c.alpha, c.beta);
      CHECK(s.u == doctest::Approx(c.u).epsilon(1e-12));
      CHECK(s.v == doctest::Approx(c.v).epsilon(1e-12));
      CHECK(s.u_alpha == doctest::Approx(c.u_alpha).epsilon(1e-10));
      CHECK(s.u_beta == doctest::Approx(c.u_beta).epsilon(1e-10));
      CHECK(s.v_alpha == doctest::Approx(c.v_alpha).epsilon(1e-10));
      CHECK(s.v_beta == doctest::Approx(c.v_beta).epsilon(1e-10));
      // Bers-Vekua pair holds for the stem
      CHECK(std::abs(s.u_alpha - s.v_beta - 2.0 * s.v / c.beta) < 1e-12);
      CHECK(std::abs(s.v_alpha + s.u_beta) < 1e-12);
    }
    CHECK_THROWS_AS(sqrt_stem(0.0, 2.0), DomainError);
    CHECK_THROWS_AS(sqrt_stem(0.5, -1.0), DomainError);
  }

  TEST_CASE("continued stem flips sign below the cut and is continuous across it") {
    const SqrtStem above = sqrt_stem_continued(-1.0, 2.0 + 1e-9);
    const SqrtStem on = sqrt_stem_continued(-1.0, 2.0);
    const SqrtStem below = sqrt_stem_continued(-1.0, 2.0 - 1e-9);
    CHECK(on.u == doctest::Approx(0.5));
    CHECK(on.v == doctest::Approx(-0.5));
    CHECK(std::abs(above.u - on.u) < 1e-6);
    CHECK(std::abs(below.v - on.v) < 1e-6);
    CHECK_THROWS_AS(sqrt_stem_continued(1.0, 2.0), DomainError);
  }

  TEST_CASE("golden points of the square-root field") {
    const GoldenField g = sqrt_sfr_field();
    REQUIRE(g.points.size() == 3);
    for (const auto& p : g.points) CHECK(dist(g.field(p.input), p.expected) <= p.tolerance);
    CHECK(dist(g.points[1].expected, Octonion{0.5, 0, -0.5}) == 0.0);
    CHECK(dist(g.points[2].expected, Octonion{-0.5, 0, -0.5}) == 0.0);
  }

  TEST_CASE("slab-cone stems: ball stem and slice stem") {
    const GoldenField g = slab_cone_field();
    const Octonion x{1.0, 2.0};  // 1 + 2 e1
    const StemVector two = stem_from_two_units(g.field, {1.0, 2.0}, UnitImaginary::basis(1),
                                               UnitImaginary(Octonion{0, std::sqrt(0.75), 0.5}));
    CHECK(dist(two.u, Octonion::real(1.0)) < 1e-12);
    CHECK(dist(two.v, Octonion::real(2.0)) < 1e-12);
    const StemVector gam = stem_from_gamma(g.field, x);
    CHECK(dist(gam.u, Octonion::real(1.0)) < 1e-9);
    CHECK(dist(gam.v, Octonion::real(2.0)) < 1e-9);
    // slice stem on the lower sheet: g = beta + 1
    const StemVector low = slab_cone_slice_stem().eval({0.5, -3.0});
    CHECK(dist(low.u, Octonion::real(0.5 * -2.0)) == 0.0);
    CHECK(dist(low.v, Octonion::real(-3.0 * -2.0)) == 0.0);
    CHECK(slab_cone_slice_stem().eval({0.5, 0.3}).u.norm() == 0.0);
  }

  TEST_CASE("two-unit stem rejects close units and the real axis") {
    const OctField id = identity_field().field;
    CHECK_THROWS_AS(stem_from_two_units(id, {0.0, 1.0}, UnitImaginary::basis(1),
                                        UnitImaginary::basis(1)),
                    ConditioningError);
    CHECK_THROWS_AS(stem_from_two_units(id, {0.0, 0.0}, UnitImaginary::basis(1),
                                        UnitImaginary::basis(2)),
                    ConventionError);
    CHECK_THROWS_AS(stem_from_gamma(id, Octonion::real(1.0)), DomainError);
  }

  TEST_CASE("reconstruction of a third value from two") {
    const OctField id = identity_field().field;
    const ComplexPoint z{0.4, 1.1};
    const UnitImaginary i1 = UnitImaginary::basis(1), i2 = UnitImaginary::basis(5);
    const UnitImaginary i3(Octonion{0, 0, 0.6, 0, 0.8});
    const Octonion got = reconstruct_third(id(tau(i1, z)), id(tau(i2, z)), i1, i2, i3);
    CHECK(dist(got, tau(i3, z)) < 1e-12);
  }

  TEST_CASE("local stems on a ball off the axis agree with the field") {
    const GoldenField g = sqrt_sfr_field();
    const Ball ball{g.domain.as<BallChain>()->center(0.0), 0.25};
    const StemField sf = local_stem_field(g.field, ball);
    const ComplexPoint z = slice_coordinate(ball.center);
    const StemVector s = sf.eval(z);
    const SqrtStem ref = sqrt_stem(z.alpha, z.beta);
    CHECK(dist(s.u, Octonion::real(ref.u)) < 1e-9);
    CHECK(dist(s.v, Octonion::real(ref.v)) < 1e-9);
    const BVResidual r = bers_vekua_residual(sf, z);
    CHECK(r.r1.norm() < 1e-5);
    CHECK(r.r2.norm() < 1e-5);
  }

  TEST_CASE("sfr check: square-root passes, identity fails with residual 2") {
    SamplePlan plan;
    plan.point_samples = 30;
    const Subsphere sub = Subsphere::standard();
    const GoldenField s = sqrt_sfr_field();
    CHECK(sfr_check(s.field, s.domain, sub, plan).pass);
    const GoldenField id = identity_field();
    const Report r = sfr_check(id.field, id.domain, sub, plan);
    CHECK_FALSE(r.pass);
    CHECK(r.max_residual == doctest::Approx(2.0).epsilon(1e-6));
  }

  TEST_CASE("modulus scan: Gaussian peaks at the origin, identity has no interior maximum") {
    const OrthoPair pair(UnitImaginary::basis(1), UnitImaginary::basis(2));
    SliceGrid grid{{0, 0, 0, 0}, {1, 1, 1, 1}, {5, 5, 5, 5}};
    CHECK(grid.size() == 625);
    const ScanReport gauss = modulus_local_max_scan(gaussian_field().field, pair, grid);
    REQUIRE(gauss.strict_maxima.size() == 1);
    for (double c : gauss.strict_maxima[0]) CHECK(c == 0.0);
    CHECK_FALSE(gauss.pass);
    const ScanReport id = modulus_local_max_scan(identity_field().field, pair, grid);
    CHECK(id.strict_maxima.empty());
    CHECK(id.pass);
    SliceGrid bad = grid;
    bad.counts[2] = 0;
    CHECK_THROWS_AS(modulus_local_max_scan(identity_field().field, pair, bad), PreconditionError);
  }
}
