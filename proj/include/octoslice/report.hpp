#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "octoslice/octonion.hpp"

namespace octoslice {

struct Report {
  std::string op;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Octonion worst_point;
  // Operation-specific extras; omitted from output when null.
  nlohmann::json details;
};

// Fills samples / max / mean / worst from residuals indexed like `points`.
void aggregate(Report& r, const std::vector<double>& residuals,
               const std::vector<Octonion>& points);

void to_json(nlohmann::json& j, const Report& r);

}  // namespace octoslice
