#include "octoslice/report.hpp"

namespace octoslice {

void aggregate(Report& r, const std::vector<double>& residuals,
               const std::vector<Octonion>& points) {
  r.samples = residuals.size();
  r.max_residual = 0.0;
  r.mean_residual = 0.0;
  std::size_t worst = 0;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    r.mean_residual += residuals[k];
    if (residuals[k] > r.max_residual) {
      r.max_residual = residuals[k];
      worst = k;
    }
  }
  if (!residuals.empty()) r.mean_residual /= static_cast<double>(residuals.size());
  if (worst < points.size()) r.worst_point = points[worst];
}

void to_json(nlohmann::json& j, const Report& r) {
  j = nlohmann::json{{"op", r.op},
                     {"samples", r.samples},
                     {"max_residual", r.max_residual},
                     {"mean_residual", r.mean_residual},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass},
                     {"worst_point", r.worst_point.coeffs()}};
  if (!r.details.is_null()) j["details"] = r.details;
}

}  // namespace octoslice
