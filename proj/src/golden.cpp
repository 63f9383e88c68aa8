#include "octoslice/golden.hpp"

#include <cmath>
#include <numbers>

namespace octoslice {

namespace {

constexpr double kPi = std::numbers::pi;

Octonion first_orthogonal(const UnitImaginary& u) {
  for (int l = 1; l < 8; ++l) {
    Octonion w = Octonion::basis(l);
    w -= dot(w, u.as_octonion()) * u.as_octonion();
    if (w.norm() > 0.5) return w / w.norm();
  }
  throw PreconditionError("no orthogonal unit found");
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// u + U·v and its partials for real stem values, U = Im(x)/|Im(x)|.
Octonion assemble(const Octonion& x, double u, double v) {
  return Octonion::real(u) + v * UnitImaginary::of(x).as_octonion();
}

Octonion assemble_partial(const Octonion& x, const SqrtStem& s, int axis) {
  const Octonion im = x.im();
  const double b = im.norm();
  const Octonion unit = im / b;
  if (axis == 0) return Octonion::real(s.u_alpha) + s.v_alpha * unit;
  const double xk = x[axis];
  const Octonion d_unit = (Octonion::basis(axis) * (b * b) - xk * im) / (b * b * b);
  return (xk / b) * (Octonion::real(s.u_beta) + s.v_beta * unit) + s.v * d_unit;
}

SqrtStem scaled(SqrtStem s, double c) {
  s.u *= c;
  s.v *= c;
  s.u_alpha *= c;
  s.u_beta *= c;
  s.v_alpha *= c;
  s.v_beta *= c;
  return s;
}

// Stem pair and sign used by the local formula at chain parameter theta.
SqrtStem piece_stem(const Octonion& x, double theta) {
  const ComplexPoint z = slice_coordinate(x);
  if (theta < -5.0 * kPi / 6.0) return scaled(sqrt_stem_continued(z.alpha, z.beta), -1.0);
  if (theta > 5.0 * kPi / 6.0) return sqrt_stem_continued(z.alpha, z.beta);
  return sqrt_stem(z.alpha, z.beta);
}

OctField::Partials zero_partials() {
  return [](const Octonion&, int) { return Octonion{}; };
}

}  // namespace

GoldenField slab_cone_field(const UnitImaginary& i0, double half_angle) {
  Domain domain(SlabCone{i0, half_angle});
  auto side = [i0](const Octonion& x) {
    return dot(x.im(), i0.as_octonion()) > 0.0 ? 1.0 : -1.0;
  };
  OctField field(
      "slab-cone",
      [domain, side](const Octonion& x) {
        if (!domain.contains(x)) throw DomainError("point outside the slab-cone domain");
        const double b = x.im_norm();
        if (b < 1.0) return Octonion{};
        return side(x) * (x * (b - 1.0));
      },
      Smoothness::c1,
      [side](const Octonion& x, int axis) {
        const double b = x.im_norm();
        if (b < 1.0) return Octonion{};
        if (axis == 0) return Octonion::real(side(x) * (b - 1.0));
        return side(x) * ((b - 1.0) * Octonion::basis(axis) + x * (x[axis] / b));
      });

  StemField ball;
  ball.name = "slab-cone-ball";
  ball.eval = [](const ComplexPoint& z) {
    const double g = std::abs(z.beta) - 1.0;
    return StemVector{Octonion::real(z.alpha * g), Octonion::real(z.beta * g)};
  };
  ball.partials = [](const ComplexPoint& z) {
    const double b = std::abs(z.beta);
    return StemPartials{Octonion::real(b - 1.0), Octonion::real(z.alpha * sign_of(z.beta)),
                        Octonion{}, Octonion::real(2.0 * b - 1.0)};
  };

  const Octonion i = i0.as_octonion();
  const Octonion w = first_orthogonal(i0);
  std::vector<GoldenPoint> pts{
      {Octonion::real(1.0) + 2.0 * i, Octonion::real(1.0) + 2.0 * i, 1e-12, "worked-example"},
      {0.5 * w, Octonion{}, 0.0, "worked-example"},
      {Octonion::real(1.0) - 2.0 * i, Octonion::real(-1.0) + 2.0 * i, 1e-12, "computed"},
  };
  return {"slab-cone", field, domain, ball, pts};
}

StemField slab_cone_slice_stem() {
  StemField s;
  s.name = "slab-cone-slice";
  s.eval = [](const ComplexPoint& z) {
    if (std::abs(z.beta) < 1.0) return StemVector{};
    const double g = z.beta - sign_of(z.beta);
    return StemVector{Octonion::real(z.alpha * g), Octonion::real(z.beta * g)};
  };
  s.partials = [](const ComplexPoint& z) {
    if (std::abs(z.beta) < 1.0) return StemPartials{};
    const double g = z.beta - sign_of(z.beta);
    return StemPartials{Octonion::real(g), Octonion::real(z.alpha), Octonion{},
                        Octonion::real(g + z.beta)};
  };
  return s;
}

SqrtStem sqrt_stem(double alpha, double beta) {
  const double d = beta - 2.0;
  const double r2 = alpha * alpha + d * d;
  if (!(beta > 0.0) || r2 == 0.0) throw DomainError("square-root stem needs beta > 0 and z != 2i");
  const double arg = std::atan2(d, alpha);
  const double c = std::cos(arg / 2.0), s = std::sin(arg / 2.0);
  const double p34 = std::pow(r2, 0.75), p74 = std::pow(r2, 1.75), p14 = std::pow(r2, 0.25);
  const double q = 0.5 * (alpha * alpha - d * d);
  SqrtStem out;
  out.u = (d * c - alpha * s) / (beta * p34);
  out.v = (alpha * c + d * s) / (beta * p34) - 2.0 * p14 * s / (beta * beta);
  out.u_alpha = (-alpha * d * c + q * s) / (beta * p74);
  out.v_alpha = -(q * c + alpha * d * s) / (beta * p74) + (d * c - alpha * s) / (beta * beta * p34);
  out.u_beta = (q * c + alpha * d * s) / (beta * p74) - (d * c - alpha * s) / (beta * beta * p34);
  out.v_beta = (-alpha * d * c + q * s) / (beta * p74) -
               (2.0 * d * s + 2.0 * alpha * c) / (beta * beta * p34) +
               4.0 * p14 * s / (beta * beta * beta);
  return out;
}

SqrtStem sqrt_stem_continued(double alpha, double beta) {
  if (beta != 2.0) return scaled(sqrt_stem(alpha, beta), beta > 2.0 ? 1.0 : -1.0);
  if (!(alpha < 0.0)) throw DomainError("continued square-root stem is singular here");
  // On β = 2 the principal argument is π, which is the continuation itself.
  SqrtStem s = sqrt_stem(alpha, beta);
  s.u = 0.5 / std::sqrt(-alpha);
  s.v = -0.5 * std::sqrt(-alpha);
  return s;
}

Octonion sqrt_piece(const Octonion& x, double theta) {
  const SqrtStem s = piece_stem(x, theta);
  return assemble(x, s.u, s.v);
}

GoldenField sqrt_sfr_field(const UnitImaginary& i, const UnitImaginary& j) {
  const BallChain chain{i, j};
  Domain domain(chain);
  auto theta_for = [chain](const Octonion& x) {
    const auto k = chain.deepest(x);
    if (!k) throw DomainError("point outside the ball-chain domain");
    return chain.theta_at(*k);
  };
  OctField field(
      "sqrt-example", [theta_for](const Octonion& x) { return sqrt_piece(x, theta_for(x)); },
      Smoothness::analytic,
      [theta_for](const Octonion& x, int axis) {
        return assemble_partial(x, piece_stem(x, theta_for(x)), axis);
      });

  StemField stem;
  stem.name = "sqrt-stem";
  stem.eval = [](const ComplexPoint& z) {
    const SqrtStem s = sqrt_stem(z.alpha, z.beta);
    return StemVector{Octonion::real(s.u), Octonion::real(s.v)};
  };
  stem.partials = [](const ComplexPoint& z) {
    const SqrtStem s = sqrt_stem(z.alpha, z.beta);
    return StemPartials{Octonion::real(s.u_alpha), Octonion::real(s.u_beta),
                        Octonion::real(s.v_alpha), Octonion::real(s.v_beta)};
  };

  const Octonion I = i.as_octonion(), J = j.as_octonion();
  std::vector<GoldenPoint> pts{
      {Octonion::real(1.0) + 2.0 * I, 0.5 * I, 1e-12, "computed"},
      {Octonion::real(-1.0) + 2.0 * J, Octonion::real(0.5) - 0.5 * J, 1e-12, "worked-example"},
      {Octonion::real(-1.0) - 2.0 * J, Octonion::real(-0.5) - 0.5 * J, 1e-12, "worked-example"},
  };
  return {"sqrt-example", field, domain, stem, pts};
}

GoldenField constant_field(const Octonion& c) {
  OctField field("constant", [c](const Octonion&) { return c; }, Smoothness::analytic,
                 zero_partials());
  StemField stem;
  stem.name = "constant-stem";
  stem.eval = [c](const ComplexPoint&) { return StemVector{c, Octonion{}}; };
  stem.partials = [](const ComplexPoint&) { return StemPartials{}; };
  return {"constant", field, Domain(Ball{Octonion{}, 2.0}), stem,
          {{Octonion{0.3, 0.1}, c, 0.0, "baseline"}}};
}

GoldenField identity_field() {
  OctField field(
      "identity", [](const Octonion& x) { return x; }, Smoothness::analytic,
      [](const Octonion&, int axis) { return Octonion::basis(axis); });
  StemField stem;
  stem.name = "identity-stem";
  stem.eval = [](const ComplexPoint& z) {
    return StemVector{Octonion::real(z.alpha), Octonion::real(z.beta)};
  };
  stem.partials = [](const ComplexPoint&) {
    return StemPartials{Octonion::real(1.0), Octonion{}, Octonion{}, Octonion::real(1.0)};
  };
  const Octonion p{1.0, 2.0};
  return {"identity", field, Domain(Ball{Octonion{}, 2.0}), stem, {{p, p, 0.0, "baseline"}}};
}

GoldenField gaussian_field() {
  OctField field(
      "gaussian", [](const Octonion& x) { return Octonion::real(std::exp(-x.norm2())); },
      Smoothness::analytic,
      [](const Octonion& x, int axis) {
        return Octonion::real(-2.0 * x[axis] * std::exp(-x.norm2()));
      });
  StemField stem;
  stem.name = "gaussian-stem";
  stem.eval = [](const ComplexPoint& z) {
    return StemVector{Octonion::real(std::exp(-(z.alpha * z.alpha + z.beta * z.beta))),
                      Octonion{}};
  };
  return {"gaussian", field, Domain(Ball{Octonion{}, 2.0}), stem,
          {{Octonion{}, Octonion::real(1.0), 0.0, "baseline"}}};
}

std::vector<GoldenField> baseline_fields() {
  return {constant_field(), identity_field(), gaussian_field()};
}

GoldenField coordinate_probe_field() {
  OctField field(
      "coordinate", [](const Octonion& x) { return Octonion::real(x[1]); }, Smoothness::analytic,
      [](const Octonion&, int axis) { return Octonion::real(axis == 1 ? 1.0 : 0.0); });
  return {"coordinate", field, Domain(Ball{Octonion::real(1.0), 1.0}), std::nullopt,
          {{Octonion{1.0, 0.5}, Octonion::real(0.5), 0.0, "baseline"}}};
}

GoldenField affine_sfr_field() {
  OctField field(
      "affine-sfr", [](const Octonion& x) { return Octonion::real(x.re()) + x.im() / 3.0; },
      Smoothness::analytic,
      [](const Octonion&, int axis) {
        return axis == 0 ? Octonion::real(1.0) : Octonion::basis(axis) / 3.0;
      });
  StemField stem;
  stem.name = "affine-sfr-stem";
  stem.eval = [](const ComplexPoint& z) {
    return StemVector{Octonion::real(z.alpha), Octonion::real(z.beta / 3.0)};
  };
  stem.partials = [](const ComplexPoint&) {
    return StemPartials{Octonion::real(1.0), Octonion{}, Octonion{}, Octonion::real(1.0 / 3.0)};
  };
  return {"affine-sfr", field, Domain(Ball{Octonion{}, 2.0}), stem,
          {{Octonion{0.0, 3.0}, Octonion{0.0, 1.0}, 1e-15, "computed"}}};
}

}  // namespace octoslice
