#include <cmath>
#include <random>

#include "octoslice/golden.hpp"
#include "octoslice/liftings.hpp"
#include "test_support.hpp"

using namespace octoslice;
using testing::dist;

namespace {

Polyline random_off_axis_polyline(std::mt19937_64& rng, int vertices) {
  std::vector<Octonion> v;
  for (int k = 0; k < vertices; ++k) {
    Octonion x = testing::random_octonion(rng);
    // keep every segment well away from the real axis: shared e7 offset
    v.push_back(x + Octonion::basis(7) * 3.0);
  }
  return Polyline::uniform(v);
}

}  // namespace

TEST_SUITE("liftings") {
  TEST_CASE("locate finds the segment and local parameter") {
    const std::vector<double> bp{0.0, 0.25, 1.0};
    const SegmentPosition a = locate(bp, 0.125);
    CHECK(a.k == 0);
    CHECK(a.s == doctest::Approx(0.5));
    const SegmentPosition b = locate(bp, 1.0);
    CHECK(b.k == 1);
    CHECK(b.s == doctest::Approx(1.0));
    CHECK_THROWS_AS(locate(bp, 1.5), PreconditionError);
  }

  TEST_CASE("path validation") {
    PolyPathC c{{0.0, 0.5}, {{0, 1}, {1, 1}}, {}};
    CHECK_THROWS_AS(c.validate(), PreconditionError);
    PolyPathS s{{0.0, 1.0}, {UnitImaginary::basis(1), -UnitImaginary::basis(1)}, {}};
    CHECK_THROWS_AS(s.validate(), PreconditionError);
    CHECK_THROWS_AS(Polyline::uniform({Octonion{}}), PreconditionError);
  }

  TEST_CASE("decomposition of off-axis polylines is exact") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
      const Polyline p = random_off_axis_polyline(rng, 2 + trial % 5);
      const CircularLifting cl = lift_decompose(p);
      for (int k = 0; k <= 200; ++k) {
        const double t = k / 200.0;
        CHECK(dist(lift_eval(cl, t), p.eval(t)) < 1e-12);
      }
    }
  }

  TEST_CASE("decomposition refuses paths that touch the real axis") {
    const Polyline p = Polyline::uniform({Octonion{-1.0, 1.0}, Octonion{1.0, -1.0}});
    CHECK_THROWS_AS(lift_decompose(p), DomainError);
    const Polyline q = Polyline::uniform({Octonion{0.0, 1.0}, Octonion::real(1.0), Octonion{2.0, 1.0}});
    CHECK_THROWS_AS(lift_decompose(q), DomainError);
  }

  TEST_CASE("approximate lifting stays within delta and keeps the endpoints") {
    const Polyline p = Polyline::uniform(
        {Octonion{-1.0, 1.0}, Octonion{1.0, -1.0}, Octonion::real(2.0), Octonion{2.0, 0.0, 1.0}});
    for (double delta : {0.5, 0.1, 1e-3}) {
      const ApproximateLifting a = lift_approximate(p, delta);
      CHECK(a.certified);
      CHECK(a.endpoints_exact);
      CHECK(a.sup_distance <= delta);
      CHECK(a.resolution >= 10000);
      CHECK(dist(lift_eval(a.lifting, 0.0), p.eval(0.0)) < 1e-12);
      CHECK(dist(lift_eval(a.lifting, 1.0), p.eval(1.0)) < 1e-12);
    }
    CHECK_THROWS_AS(lift_approximate(p, 0.0), PreconditionError);
  }

  TEST_CASE("ball-graph polylines stay in the domain") {
    const Domain d(BallUnion{{Ball{Octonion{0.0, 1.0}, 1.0}, Ball{Octonion{1.5, 1.0}, 1.0}}});
    const auto bp = ball_graph_polyline(d, Octonion{-0.5, 1.0}, Octonion{2.0, 1.2});
    REQUIRE(bp.has_value());
    CHECK(bp->clearance > 0.0);
    for (int k = 0; k <= 100; ++k) CHECK(d.contains(bp->path.eval(k / 100.0)));
    const Domain apart(BallUnion{{Ball{Octonion{}, 1.0}, Ball{Octonion{5.0}, 1.0}}});
    CHECK_FALSE(ball_graph_polyline(apart, Octonion{}, Octonion{5.0}).has_value());
  }

  TEST_CASE("circular search on a real-centred ball finds and verifies a witness") {
    const Domain d(Ball{Octonion{}, 2.0});
    SamplePlan plan;
    const Octonion x{0.3, 1.0}, xp{0.3, 0.0, 0.0, 0.0, 1.0};
    const SearchResult r = ccl_search(d, x, xp, Subsphere(std::vector{UnitImaginary::basis(1), UnitImaginary::basis(2), UnitImaginary::basis(3), UnitImaginary::basis(4)}), plan);
    REQUIRE(r.status == "found");
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->certified);
    CHECK(ccl_verify(*r.witness, d, x, xp, 2000));
    CHECK_FALSE(ccl_verify(*r.witness, d, x, Octonion{0.3, 0.0, 1.0}, 2000));
    const TransportResult t = stem_transport(identity_field().field, *r.witness, x, xp, d);
    CHECK(t.deviation < 1e-8);
  }

  TEST_CASE("points over different bases are never circularly linked") {
    const Domain d(Ball{Octonion{}, 2.0});
    const SearchResult r =
        ccl_search(d, Octonion{0.3, 1.0}, Octonion{0.2, 0.0, 1.0}, Subsphere::standard(), {});
    CHECK(r.status == "unequal-base");
    CHECK_FALSE(r.witness.has_value());
  }

  TEST_CASE("effective link angle never drops below the requested one") {
    const Subsphere s = Subsphere::standard();
    CHECK(effective_link_angle(s, 100000, 0.15) == doctest::Approx(0.15));
    CHECK(effective_link_angle(s, 50, 0.15) > 0.15);
  }
}
