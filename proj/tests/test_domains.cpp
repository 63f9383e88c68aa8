#include <cmath>

#include "octoslice/domains.hpp"
#include "test_support.hpp"

using namespace octoslice;

TEST_SUITE("domains") {
  TEST_CASE("membership of the built-in domain shapes") {
    const Domain ball(Ball{Octonion{1.0}, 1.0});
    CHECK(ball.contains(Octonion{1.5, 0.5}));
    CHECK_FALSE(ball.contains(Octonion{}));  // open ball
    CHECK(ball.type_name() == "ball");

    const Domain cone(SlabCone{UnitImaginary::basis(1), M_PI / 4});
    CHECK(cone.contains(Octonion{5.0, 0.0, 0.9}));     // |Im| < 1
    CHECK(cone.contains(Octonion{0.0, 3.0, 1.0}));     // near e1
    CHECK(cone.contains(Octonion{0.0, -3.0, 1.0}));    // near -e1
    CHECK_FALSE(cone.contains(Octonion{0.0, 1.0, 3.0}));

    const BallChain chain;
    const Domain cd(chain);
    CHECK(cd.contains(chain.center(0.3)));
    CHECK_FALSE(cd.contains(Octonion{}));
    CHECK(chain.deepest(chain.center(chain.theta_at(100))).value() == 100);

    Box box;
    box.lo.fill(-1.0);
    box.hi.fill(1.0);
    const Domain pred(PredicateDomain{[](const Octonion& x) { return x.norm() < 0.5; }, box});
    CHECK(pred.contains(Octonion{0.1}));
    CHECK(pred.bounding_box().bounded());
  }

  TEST_CASE("invalid domains are rejected") {
    CHECK_THROWS_AS((Domain(Ball{Octonion{}, 0.0})), PreconditionError);
    CHECK_THROWS_AS((Domain(BallUnion{})), PreconditionError);
    CHECK_THROWS_AS((Domain(SlabCone{UnitImaginary::basis(1), 0.0})), PreconditionError);
    BallChain c;
    c.j = UnitImaginary::basis(1);
    CHECK_THROWS_AS((Domain(c)), PreconditionError);
  }

  TEST_CASE("bounding boxes and diameters") {
    const Domain u(BallUnion{{Ball{Octonion{}, 1.0}, Ball{Octonion{3.0}, 1.0}}});
    const Box b = u.bounding_box();
    CHECK(b.lo[0] == -1.0);
    CHECK(b.hi[0] == 4.0);
    CHECK(b.diameter() > 5.0);
    CHECK_FALSE(Domain(SlabCone{UnitImaginary::basis(1)}).bounding_box().bounded());
  }

  TEST_CASE("sample plan validation") {
    SamplePlan p;
    CHECK_NOTHROW(p.validate());
    p.link_angle = -1.0;
    CHECK_THROWS_AS(p.validate(), PreconditionError);
  }

  TEST_CASE("subspheres") {
    const Subsphere s = Subsphere::standard();
    CHECK(s.dimension() == 3);
    CHECK(s.contains(UnitImaginary::basis(2)));
    CHECK_FALSE(s.contains(UnitImaginary::basis(4)));
    const auto pts = s.sample(50, 1);
    CHECK(pts.size() == 50);
    for (const auto& u : pts) CHECK(s.contains(u));
    CHECK(pts[7] == s.sample(50, 1)[7]);
    CHECK_THROWS_AS(Subsphere({UnitImaginary::basis(1), UnitImaginary::basis(1)}),
                    PreconditionError);
  }

  TEST_CASE("union-find keeps the smallest index as root") {
    UnionFind uf(5);
    CHECK(uf.unite(3, 4));
    CHECK(uf.unite(4, 1));
    CHECK_FALSE(uf.unite(1, 3));
    CHECK(uf.find(4) == 1);
    CHECK(uf.find(0) == 0);
    CHECK(uf.add() == 5);
  }

  TEST_CASE("sphere slices of the slab cone split into two caps for |Im| > 1") {
    const Domain cone(SlabCone{UnitImaginary::basis(1), M_PI / 4});
    const Subsphere sub = Subsphere::standard();
    SamplePlan plan;
    plan.sphere_samples = 1500;
    const UnitImaginary e1 = UnitImaginary::basis(1);
    CHECK(same_component(cone, 0.0, 2.0, e1, -e1, sub, plan) == Verdict::different);
    CHECK(same_component(cone, 0.0, 0.5, e1, -e1, sub, plan) == Verdict::same);
    CHECK(sphere_slice_member(cone, 0.0, 2.0, e1));
    CHECK_FALSE(sphere_slice_member(cone, 0.0, 2.0, UnitImaginary::basis(2)));
    CHECK_THROWS_AS(same_component(cone, 0.0, 2.0, UnitImaginary::basis(2), e1, sub, plan),
                    PreconditionError);
    CHECK(to_string(Verdict::unknown) == "unknown");
  }

  TEST_CASE("interior samples keep their clearance") {
    const Domain ball(Ball{Octonion{}, 1.0});
    SamplePlan plan;
    const auto pts = interior_samples(ball, plan, 40, 0.1, 3);
    CHECK(pts.size() == 40);
    for (const auto& x : pts) CHECK(stencil_inside(ball, x, 0.1));
    const Domain tiny(Ball{Octonion{100.0}, 1e-3});
    CHECK_THROWS_AS(interior_samples(tiny, plan, 40, 0.1, 3), EmptySampleError);
  }
}
