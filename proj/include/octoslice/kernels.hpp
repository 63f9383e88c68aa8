#pragma once

#include <cstddef>
#include <functional>
#include <type_traits>
#include <vector>

#include "octoslice/octonion.hpp"

namespace octoslice {
class Domain;
}

namespace octoslice::kernels {

// Parallel sweeps run on OpenMP; the serial path is the reference the tests
// compare against. Both produce identical, index-ordered results.
enum class Exec { serial, parallel };

// Calls body(i) for i in [0, n). If any call throws, the exception of the
// lowest failing index is rethrown after the sweep.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Exec exec = Exec::parallel);

template <class Fn>
auto map_indices(std::size_t n, Fn&& fn, Exec exec = Exec::parallel) {
  using T = std::decay_t<decltype(fn(std::size_t{}))>;
  static_assert(!std::is_same_v<T, bool>, "use char: vector<bool> is not thread-safe");
  std::vector<T> out(n);
  for_each_index(n, [&](std::size_t i) { out[i] = fn(i); }, exec);
  return out;
}

std::vector<char> membership(const Domain& d, const std::vector<Octonion>& points,
                             Exec exec = Exec::parallel);

std::vector<Octonion> evaluate(const std::function<Octonion(const Octonion&)>& f,
                               const std::vector<Octonion>& points, Exec exec = Exec::parallel);

// |g(x)| per point.
std::vector<double> residual_norms(const std::function<Octonion(const Octonion&)>& g,
                                   const std::vector<Octonion>& points,
                                   Exec exec = Exec::parallel);

int max_threads();

}  // namespace octoslice::kernels
