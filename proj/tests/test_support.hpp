#pragma once

#include <random>

#include <doctest.h>

#include "octoslice/octonion.hpp"

namespace testing {

inline double dist(const octoslice::Octonion& a, const octoslice::Octonion& b) {
  return (a - b).norm();
}

inline octoslice::Octonion random_octonion(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  octoslice::Octonion::Coeffs c{};
  for (double& v : c) v = u(rng);
  return octoslice::Octonion(c);
}

inline octoslice::UnitImaginary random_unit(std::mt19937_64& rng) {
  octoslice::Octonion x = random_octonion(rng).im();
  return octoslice::UnitImaginary::normalized(x);
}

}  // namespace testing
