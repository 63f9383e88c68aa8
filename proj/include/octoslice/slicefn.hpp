#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "octoslice/diffops.hpp"
#include "octoslice/domains.hpp"
#include "octoslice/octonion.hpp"
#include "octoslice/report.hpp"

namespace octoslice {

// Minimum |I1 − I2| for the two-unit formulas.
inline constexpr double kSepMin = 0.1;

struct StemVector {
  Octonion u;
  Octonion v;
};

double distance(const StemVector& a, const StemVector& b);

struct StemPartials {
  Octonion u_alpha, u_beta, v_alpha, v_beta;
};

struct StemField {
  std::function<StemVector(const ComplexPoint&)> eval;
  // Optional closed-form first partials in α and β.
  std::function<StemPartials(const ComplexPoint&)> partials;
  std::string name = "stem";
};

struct BVResidual {
  // u_α − v_β − 2v/β; meaningless on β = 0 where `r1_applicable` is false.
  Octonion r1;
  bool r1_applicable = true;
  // u_β + v_α.
  Octonion r2;
};

// v = (I1−I2)⁻¹(f(z_I1) − f(z_I2)), u = f(z_I1) − I1·v.
StemVector stem_from_two_units(const OctField& f, const ComplexPoint& z, const UnitImaginary& i1,
                               const UnitImaginary& i2, double sep_min = kSepMin);

// u = f − Γf/6, v = (|Im|/6)·Im⁻¹·Γf.
StemVector stem_from_gamma(const OctField& f, const Octonion& x, const FDScheme& s = {});

// (f(x), 0) on the real axis, stem_from_gamma elsewhere.
StemVector stem_at(const OctField& f, const Octonion& x, const FDScheme& s = {});

// f(z_I3) from f(z_I1), f(z_I2).
Octonion reconstruct_third(const Octonion& fz1, const Octonion& fz2, const UnitImaginary& i1,
                           const UnitImaginary& i2, const UnitImaginary& i3,
                           double sep_min = kSepMin);

// Stem of f restricted to a ball, computed at the β >= 0 representative and
// flipped to (u, −v) for β < 0.
StemVector local_stem(const OctField& f, const Ball& ball, const ComplexPoint& z,
                      double sep_min = kSepMin);
StemField local_stem_field(const OctField& f, const Ball& ball);

BVResidual bers_vekua_residual(const StemField& stem, const ComplexPoint& z,
                               const FDScheme& s = {});

Report sfr_check(const OctField& f, const Domain& d, const Subsphere& sub, const SamplePlan& plan,
                 const FDScheme& s = {});

struct SliceGrid {
  QuatCoords center{};
  QuatCoords half_extent{};
  std::array<int, 4> counts{};

  std::size_t size() const;
  QuatCoords node(const std::array<int, 4>& k) const;
};

struct ScanReport {
  std::array<int, 4> grid{};
  std::vector<QuatCoords> strict_maxima;
  std::size_t nodes_in_domain = 0;
  std::size_t interior_nodes = 0;
  bool pass = false;
};

// Nodes whose |f| strictly exceeds all per-axis ±1 neighbours. Nodes outside
// `domain` (when given) or where f fails to evaluate are excluded.
ScanReport modulus_local_max_scan(const OctField& f, const OrthoPair& pair, const SliceGrid& grid,
                                  const Domain* domain = nullptr);

}  // namespace octoslice
