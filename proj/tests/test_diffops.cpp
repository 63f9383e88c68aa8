#include <random>

#include "octoslice/diffops.hpp"
#include "octoslice/golden.hpp"
#include "test_support.hpp"

using namespace octoslice;
using testing::dist;

namespace {

OctField square() {
  return OctField("square", [](const Octonion& x) { return x * x; });
}

}  // namespace

TEST_SUITE("diffops") {
  TEST_CASE("identity: Euler gives Im x, spherical Dirac gives 6 Im x, residual is -2") {
    const OctField id = identity_field().field;
    std::mt19937_64 rng(5);
    for (int k = 0; k < 20; ++k) {
      const Octonion x = testing::random_octonion(rng);
      CHECK(dist(euler_operator(id, x), x.im()) < 1e-12);
      CHECK(dist(spherical_dirac(id, x), 6.0 * x.im()) < 1e-12);
      CHECK(dist(slice_fueter(id, x), Octonion::real(-2.0)) < 1e-11);
      FDScheme fd;
      fd.prefer_closed_form = false;
      CHECK(dist(spherical_dirac(id, x, fd), 6.0 * x.im()) < 1e-8);
    }
  }

  TEST_CASE("square: spherical Dirac is 12 Re(x) Im x and the residual is -4 Re(x)") {
    const OctField f = square();
    std::mt19937_64 rng(9);
    for (int k = 0; k < 20; ++k) {
      const Octonion x = testing::random_octonion(rng);
      CHECK(dist(spherical_dirac(f, x), 12.0 * x.re() * x.im()) < 1e-7);
      CHECK(dist(slice_fueter(f, x), Octonion::real(-4.0 * x.re())) < 1e-7);
    }
  }

  TEST_CASE("tangential operators annihilate radial fields") {
    const OctField g = gaussian_field().field;
    const OctField f = square();
    const Octonion x{0.3, 0.2, -0.4, 0.1, 0.5, -0.2, 0.3, 0.6};
    for (auto [m, n] : kDerivationPairs) {
      CHECK(tangential_operator(g, x, m, n).norm() < 1e-12);
      // on x^2 only the unit direction rotates: x_m e_n - x_n e_m scaled by v/|Im| = 2 Re x
      const Octonion expect = 2.0 * x.re() * (x[m] * Octonion::basis(n) - x[n] * Octonion::basis(m));
      CHECK(dist(tangential_operator(f, x, m, n), expect) < 1e-8);
    }
    CHECK_THROWS_AS(tangential_operator(f, x, 3, 3), PreconditionError);
    CHECK_THROWS_AS(tangential_operator(f, x, 0, 2), PreconditionError);
    CHECK(kDerivationPairs.size() == 21);
    CHECK(kDerivationPairs.front() == std::pair{1, 2});
    CHECK(kDerivationPairs.back() == std::pair{6, 7});
  }

  TEST_CASE("closed-form and finite-difference partials agree") {
    const OctField id = identity_field().field;
    const Octonion x{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    for (int a = 0; a < 8; ++a) {
      CHECK(dist(id.closed_partial(x, a), Octonion::basis(a)) == 0.0);
      CHECK(dist(partial_fd(id, x, a), Octonion::basis(a)) < 1e-9);
    }
    CHECK_THROWS_AS(square().closed_partial(x, 0), PreconditionError);
    CHECK_THROWS_AS(partial_fd(id, x, 8), PreconditionError);
  }

  TEST_CASE("slice Fueter operator is undefined on the real axis") {
    CHECK_THROWS_AS(slice_fueter(identity_field().field, Octonion::real(0.5)), DomainError);
  }

  TEST_CASE("evaluation failures are wrapped with the stencil point") {
    const OctField bad("bad", [](const Octonion& x) -> Octonion {
      if (x.re() > 0.0) throw DomainError("outside");
      return x;
    });
    CHECK_THROWS_AS(partial_fd(bad, Octonion{}, 0), EvaluationError);
  }

  TEST_CASE("quaternion-slice operators on the identity and a harmonic field") {
    const OrthoPair pair(UnitImaginary::basis(1), UnitImaginary::basis(2));
    const QuatCoords q{0.2, -0.1, 0.3, 0.4};
    // identity restricted to a quaternion slice: ∂0 + i∂1 + j∂2 + k∂3 applied to q gives 1-3 = -2
    CHECK(dist(cauchy_fueter(identity_field().field, pair, q), Octonion::real(-2.0)) < 1e-8);
    CHECK(slice_laplacian(identity_field().field, pair, q).norm() < 1e-5);
    CHECK(slice_laplacian(square(), pair, q).norm() > 1.0);
  }

  TEST_CASE("sliceness verdicts") {
    SamplePlan plan;
    plan.point_samples = 20;
    plan.sphere_samples = 400;
    const Subsphere sub = Subsphere::standard();
    const GoldenField id = identity_field();
    CHECK(sliceness_check(id.field, id.domain, sub, plan).pass);
    const GoldenField coord = coordinate_probe_field();
    CHECK_FALSE(sliceness_check(coord.field, coord.domain, sub, plan).pass);
  }
}
