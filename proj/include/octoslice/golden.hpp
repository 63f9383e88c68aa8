#pragma once

#include <optional>
#include <string>
#include <vector>

#include "octoslice/diffops.hpp"
#include "octoslice/domains.hpp"
#include "octoslice/slicefn.hpp"

namespace octoslice {

struct GoldenPoint {
  Octonion input;
  Octonion expected;
  double tolerance = 1e-10;
  // Where the expected value comes from: "worked-example", "computed" or "baseline".
  std::string source;
};

struct GoldenField {
  std::string name;
  OctField field;
  Domain domain;
  std::optional<StemField> stem;
  std::vector<GoldenPoint> points;
};

// f = 0 where |Im x| < 1 and ±x(|Im x| − 1) on the two cones around ±i0.
// The attached stem is the local one of the ball centred at 2·i0.
GoldenField slab_cone_field(const UnitImaginary& i0 = UnitImaginary::basis(1),
                            double half_angle = 0.7853981633974483);
// Stem along the slice of a unit in the +i0 cone, for either sign of β.
StemField slab_cone_slice_stem();

// Values and first partials of the square-root stem pair at one point.
struct SqrtStem {
  double u = 0, v = 0;
  double u_alpha = 0, u_beta = 0, v_alpha = 0, v_beta = 0;
};
// Principal branch, defined for β > 0 off the cut {α <= 0, β = 2}.
SqrtStem sqrt_stem(double alpha, double beta);
// The continuation across the cut: sgn(β−2)·(u, v), with the β = 2 values
// ½|α|^{-1/2} and −½|α|^{1/2}.
SqrtStem sqrt_stem_continued(double alpha, double beta);

// Slice Fueter-regular field on the ball chain over (i, j), glued from the
// square-root stems.
GoldenField sqrt_sfr_field(const UnitImaginary& i = UnitImaginary::basis(1),
                           const UnitImaginary& j = UnitImaginary::basis(2));
// The local formula attached to chain parameter `theta`.
Octonion sqrt_piece(const Octonion& x, double theta);

GoldenField constant_field(const Octonion& c = Octonion{0.5, -1.0, 0.25, 0.0, 2.0, 0.0, -0.75, 1.5});
GoldenField identity_field();
GoldenField gaussian_field();
std::vector<GoldenField> baseline_fields();

// x1·e0: not slice. Domain: unit ball around 1.
GoldenField coordinate_probe_field();
// x0 + Im(x)/3: slice Fueter-regular with stem (α, β/3).
GoldenField affine_sfr_field();

}  // namespace octoslice
