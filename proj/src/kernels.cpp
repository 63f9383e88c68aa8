#include "octoslice/kernels.hpp"

#include <exception>
#include <limits>

#include <omp.h>

#include "octoslice/domains.hpp"

namespace octoslice::kernels {

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::size_t first_failure = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      body(i);
    } catch (...) {
#pragma omp critical(octoslice_failure)
      {
        if (i < first_failure) {
          first_failure = i;
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<char> membership(const Domain& d, const std::vector<Octonion>& points, Exec exec) {
  return map_indices(
      points.size(), [&](std::size_t i) { return static_cast<char>(d.contains(points[i])); },
      exec);
}

std::vector<Octonion> evaluate(const std::function<Octonion(const Octonion&)>& f,
                               const std::vector<Octonion>& points, Exec exec) {
  return map_indices(points.size(), [&](std::size_t i) { return f(points[i]); }, exec);
}

std::vector<double> residual_norms(const std::function<Octonion(const Octonion&)>& g,
                                   const std::vector<Octonion>& points, Exec exec) {
  return map_indices(points.size(), [&](std::size_t i) { return g(points[i]).norm(); }, exec);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace octoslice::kernels
