#include "octoslice/cclspace.hpp"
#include "octoslice/golden.hpp"
#include "test_support.hpp"

using namespace octoslice;

namespace {

QuotientSample three_point_fixture() {
  QuotientSample q;
  q.points = {{{0.0, 1.0}, UnitImaginary::basis(1)},
              {{0.1, 1.0}, UnitImaginary::basis(1)},
              {{0.0, 1.0}, UnitImaginary::basis(2)}};
  q.labels = {0, 1, 2};
  q.adjacency = {{0, 1}, {1, 2}};
  return q;
}

}  // namespace

TEST_SUITE("cclspace") {
  TEST_CASE("a single sample is one class and one component") {
    QuotientSample q;
    q.points = {{{0.5, 1.0}, UnitImaginary::basis(3)}};
    q.labels = {0};
    CHECK(count_components(q) == 1);
    CHECK(q.classes() == std::vector<std::size_t>{0});
    CHECK(project_P(q, 0) == ComplexPoint{0.5, 1.0});
    CHECK(class_projection_spread(q) == 0.0);
    CHECK(local_injectivity_check(q, 3).pass);
  }

  TEST_CASE("unknown classes raise a lookup error") {
    const QuotientSample q = three_point_fixture();
    CHECK_THROWS_AS(project_P(q, 7), LookupError);
    QuotientSample merged = q;
    merged.labels = {0, 0, 2};
    CHECK_THROWS_AS(project_P(merged, 1), LookupError);
    CHECK(merged.members(0) == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("two classes over one base point within the hop radius violate injectivity") {
    const QuotientSample q = three_point_fixture();
    const Report near = local_injectivity_check(q, 1);
    CHECK(near.pass);
    const Report far = local_injectivity_check(q, 2);
    CHECK_FALSE(far.pass);
    CHECK(far.op == "local-injectivity");
    CHECK(far.details["violations"].size() == 1);
    CHECK(far.details["violations"][0] == nlohmann::json::array({0, 2}));
    CHECK_THROWS_AS(local_injectivity_check(q, -1), PreconditionError);
  }

  TEST_CASE("quotient of a real-centred ball is connected and locally injective") {
    const Domain d(Ball{Octonion{}, 1.0});
    SamplePlan plan;
    const QuotientSample q = build_quotient(d, Subsphere::standard(), plan);
    CHECK(count_components(q) == 1);
    CHECK(class_projection_spread(q) < 1e-12);
    CHECK(local_injectivity_check(q, 2).pass);
    CHECK(replay_merges(q, d, 50).empty());
    const StemVector s = quotient_stem(identity_field().field, q, q.classes().front());
    const ComplexPoint z = project_P(q, q.classes().front());
    CHECK((s.u - Octonion::real(z.alpha)).norm() < 1e-6);
    CHECK((s.v - Octonion::real(z.beta)).norm() < 1e-6);
  }

  TEST_CASE("a ball away from the real axis gives two sheets") {
    const Domain d(Ball{Octonion{0.0, 3.0}, 1.0});
    const QuotientSample q = build_quotient(d, Subsphere::standard(), {});
    CHECK(count_components(q) == 2);
    CHECK(local_injectivity_check(q, 2).pass);
  }
}
