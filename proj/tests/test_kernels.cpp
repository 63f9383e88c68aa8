#include <random>
#include <vector>

#include "octoslice/domains.hpp"
#include "octoslice/kernels.hpp"
#include "test_support.hpp"

using namespace octoslice;

TEST_SUITE("kernels") {
  TEST_CASE("parallel kernels agree with the serial path bit for bit") {
    std::mt19937_64 rng(3);
    std::vector<Octonion> pts;
    for (int k = 0; k < 5000; ++k) pts.push_back(testing::random_octonion(rng, 2.0));
    const Domain d(BallUnion{{Ball{Octonion{}, 1.0}, Ball{Octonion{0.5, 1.0}, 0.7}}});
    CHECK(kernels::membership(d, pts, kernels::Exec::serial) ==
          kernels::membership(d, pts, kernels::Exec::parallel));

    auto f = [](const Octonion& x) { return (x * x) * x - x.inv(); };
    const auto a = kernels::evaluate(f, pts, kernels::Exec::serial);
    const auto b = kernels::evaluate(f, pts, kernels::Exec::parallel);
    CHECK(a == b);
    CHECK(kernels::residual_norms(f, pts, kernels::Exec::serial) ==
          kernels::residual_norms(f, pts, kernels::Exec::parallel));

    const auto idx = kernels::map_indices(100, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < idx.size(); ++i) CHECK(idx[i] == i * i);
    CHECK(kernels::max_threads() >= 1);
  }

  TEST_CASE("exceptions inside a parallel body reach the caller") {
    CHECK_THROWS_AS(kernels::for_each_index(64,
                                            [](std::size_t i) {
                                              if (i == 17) throw DomainError("boom");
                                            }),
                    DomainError);
  }
}
