#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>

#include "octoslice/domains.hpp"
#include "octoslice/octonion.hpp"
#include "octoslice/report.hpp"

namespace octoslice {

enum class Smoothness { c1, c2, analytic };

// Octonion-valued field with optional closed-form first partials.
class OctField {
 public:
  using Evaluator = std::function<Octonion(const Octonion&)>;
  using Partials = std::function<Octonion(const Octonion&, int)>;

  OctField(std::string name, Evaluator f, Smoothness s = Smoothness::analytic,
           Partials partials = {});

  Octonion operator()(const Octonion& x) const { return f_(x); }
  bool has_partials() const { return static_cast<bool>(partials_); }
  Octonion closed_partial(const Octonion& x, int axis) const;
  const std::string& name() const { return name_; }
  Smoothness smoothness() const { return smoothness_; }
  const Evaluator& evaluator() const { return f_; }

 private:
  std::string name_;
  Evaluator f_;
  Smoothness smoothness_;
  Partials partials_;
};

// c1·f + c2·g; closed-form partials carry over when both have them.
OctField combine(double c1, const OctField& f, double c2, const OctField& g);

struct FDScheme {
  double step_scale = 1e-5;
  double second_step_scale = 1e-4;
  // Use attached closed-form partials instead of differences.
  bool prefer_closed_form = true;
};

inline double fd_step(const Octonion& x, double scale) { return scale * (1.0 + x.norm()); }

// The 21 index pairs (m, n), 1 <= m < n <= 7, of the tangential operators.
inline constexpr std::array<std::pair<int, int>, 21> kDerivationPairs = [] {
  std::array<std::pair<int, int>, 21> p{};
  std::size_t k = 0;
  for (int m = 1; m <= 7; ++m)
    for (int n = m + 1; n <= 7; ++n) p[k++] = {m, n};
  return p;
}();

using Gradient = std::array<Octonion, 8>;

// Central difference along e_axis with h = step_scale·(1+|x|).
Octonion partial_fd(const OctField& f, const Octonion& x, int axis, const FDScheme& s = {});
Gradient gradient(const OctField& f, const Octonion& x, const FDScheme& s = {});

// Σ_{l>=1} x_l ∂_l f.
Octonion euler_operator(const Gradient& g, const Octonion& x);
Octonion euler_operator(const OctField& f, const Octonion& x, const FDScheme& s = {});

// x_m ∂_n f − x_n ∂_m f.
Octonion tangential_operator(const Gradient& g, const Octonion& x, int m, int n);
Octonion tangential_operator(const OctField& f, const Octonion& x, int m, int n,
                             const FDScheme& s = {});

// −Σ_{m<n} e_m (e_n (L_mn f)).
Octonion spherical_dirac(const Gradient& g, const Octonion& x);
Octonion spherical_dirac(const OctField& f, const Octonion& x, const FDScheme& s = {});

// ∂_0 f − Im⁻¹(E f) − (1/3) Im⁻¹(Γ f); undefined on the real axis.
Octonion slice_fueter(const Gradient& g, const Octonion& x);
Octonion slice_fueter(const OctField& f, const Octonion& x, const FDScheme& s = {});

// Σ_k u_k (∂f/∂q_k) over the slice basis u = (1, I, J, IJ).
Octonion cauchy_fueter(const OctField& f, const OrthoPair& pair, const QuatCoords& q,
                       const FDScheme& s = {});
// Σ_k ∂²f/∂q_k² with the 3-point stencil.
Octonion slice_laplacian(const OctField& f, const OrthoPair& pair, const QuatCoords& q,
                         const FDScheme& s = {});

// Spread of f − Γf/6 and Im⁻¹Γf over sampled sphere components.
Report sliceness_check(const OctField& f, const Domain& d, const Subsphere& sub,
                       const SamplePlan& plan, const FDScheme& s = {});

}  // namespace octoslice
