#include "octoslice/slicefn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "octoslice/kernels.hpp"

namespace octoslice {

namespace {

Octonion pair_inverse(const UnitImaginary& i1, const UnitImaginary& i2, double sep_min) {
  const Octonion d = i1.as_octonion() - i2.as_octonion();
  if (d.norm() < sep_min) throw ConditioningError("units closer than the separation floor");
  return d.inv();
}

// Unit orthogonal to u, chosen deterministically from the standard basis.
Octonion orthogonal_to(const UnitImaginary& u) {
  int best = 1;
  for (int l = 2; l < 8; ++l)
    if (std::abs(u[l]) < std::abs(u[best])) best = l;
  Octonion w = Octonion::basis(best);
  w -= dot(w, u.as_octonion()) * u.as_octonion();
  return w / w.norm();
}

}  // namespace

double distance(const StemVector& a, const StemVector& b) {
  return std::max(distance(a.u, b.u), distance(a.v, b.v));
}

StemVector stem_from_two_units(const OctField& f, const ComplexPoint& z, const UnitImaginary& i1,
                               const UnitImaginary& i2, double sep_min) {
  if (z.beta == 0.0) throw ConventionError("on the real axis the stem is (f(x), 0)");
  const Octonion inv = pair_inverse(i1, i2, sep_min);
  const Octonion f1 = f(tau(i1, z));
  const Octonion f2 = f(tau(i2, z));
  // For β < 0 this yields the flipped representative (u, −v) of z̄.
  const Octonion v = inv * (f1 - f2);
  return {f1 - i1.as_octonion() * v, v};
}

StemVector stem_from_gamma(const OctField& f, const Octonion& x, const FDScheme& s) {
  const double b = x.im_norm();
  if (!(b > kEpsIm)) throw DomainError("stem from the Dirac operator needs an off-axis point");
  const Octonion gam = spherical_dirac(f, x, s);
  return {f(x) - gam / 6.0, (b / 6.0) * (x.im().inv() * gam)};
}

StemVector stem_at(const OctField& f, const Octonion& x, const FDScheme& s) {
  if (!(x.im_norm() > kEpsIm)) return {f(x), Octonion{}};
  return stem_from_gamma(f, x, s);
}

Octonion reconstruct_third(const Octonion& fz1, const Octonion& fz2, const UnitImaginary& i1,
                           const UnitImaginary& i2, const UnitImaginary& i3, double sep_min) {
  const Octonion inv = pair_inverse(i1, i2, sep_min);
  const Octonion a = i3.as_octonion() - i2.as_octonion();
  const Octonion b = i3.as_octonion() - i1.as_octonion();
  return a * (inv * fz1) - b * (inv * fz2);
}

StemVector local_stem(const OctField& f, const Ball& ball, const ComplexPoint& z, double sep_min) {
  if (z.beta < 0.0) {
    const StemVector s = local_stem(f, ball, z.conj(), sep_min);
    return {s.u, -s.v};
  }
  if (z.beta == 0.0) {
    const Octonion x = Octonion::real(z.alpha);
    if (!ball.contains(x)) throw DomainError("point lies outside every slice of the ball");
    return {f(x), Octonion{}};
  }
  // τ_I(z) lies in the ball iff <I, Im c> > κ.
  const Octonion c_im = ball.center.im();
  const double m = c_im.norm();
  const double da = z.alpha - ball.center.re();
  const double kappa =
      (z.beta * z.beta + m * m + da * da - ball.radius * ball.radius) / (2.0 * z.beta);
  UnitImaginary i1, i2;
  if (m <= kEpsIm) {
    if (!(kappa < 0.0)) throw DomainError("point lies outside every slice of the ball");
    i1 = UnitImaginary::basis(1);
    i2 = UnitImaginary::basis(2);
  } else {
    const double cos_max = kappa / m;
    if (cos_max >= 1.0) throw DomainError("point lies outside every slice of the ball");
    const double half = std::acos(std::max(-1.0, cos_max));
    const double psi = std::min(std::numbers::pi / 4.0, 0.5 * half);
    if (2.0 * std::sin(psi) < sep_min)
      throw ConditioningError("ball grazes a single slice; no separated unit pair");
    const UnitImaginary axis = UnitImaginary::normalized(c_im);
    const Octonion w = orthogonal_to(axis);
    i1 = UnitImaginary::normalized(std::cos(psi) * axis.as_octonion() + std::sin(psi) * w);
    i2 = UnitImaginary::normalized(std::cos(psi) * axis.as_octonion() - std::sin(psi) * w);
  }
  return stem_from_two_units(f, z, i1, i2, sep_min);
}

StemField local_stem_field(const OctField& f, const Ball& ball) {
  StemField s;
  s.name = f.name() + "@ball";
  s.eval = [f, ball](const ComplexPoint& z) { return local_stem(f, ball, z); };
  return s;
}

BVResidual bers_vekua_residual(const StemField& stem, const ComplexPoint& z, const FDScheme& s) {
  StemPartials p;
  if (s.prefer_closed_form && stem.partials) {
    p = stem.partials(z);
  } else {
    const double h = s.step_scale * (1.0 + std::hypot(z.alpha, z.beta));
    const StemVector ap = stem.eval({z.alpha + h, z.beta});
    const StemVector am = stem.eval({z.alpha - h, z.beta});
    const StemVector bp = stem.eval({z.alpha, z.beta + h});
    const StemVector bm = stem.eval({z.alpha, z.beta - h});
    p.u_alpha = (ap.u - am.u) / (2.0 * h);
    p.v_alpha = (ap.v - am.v) / (2.0 * h);
    p.u_beta = (bp.u - bm.u) / (2.0 * h);
    p.v_beta = (bp.v - bm.v) / (2.0 * h);
  }
  BVResidual r;
  r.r2 = p.u_beta + p.v_alpha;
  if (z.beta == 0.0) {
    r.r1_applicable = false;
  } else {
    r.r1 = p.u_alpha - p.v_beta - 2.0 * stem.eval(z).v / z.beta;
  }
  return r;
}

Report sfr_check(const OctField& f, const Domain& d, const Subsphere& sub, const SamplePlan& plan,
                 const FDScheme& s) {
  const Report slice = sliceness_check(f, d, sub, plan, s);
  const Box box = d.bounding_box().clipped(plan.sample_box_radius);
  double reach = 0.0;
  for (std::size_t l = 0; l < 8; ++l)
    reach += std::max(box.lo[l] * box.lo[l], box.hi[l] * box.hi[l]);
  const double margin = 2.0 * s.step_scale * (1.0 + std::sqrt(reach));
  const auto points = interior_samples(d, plan, plan.point_samples, margin, plan.seed + 1);
  const auto res = kernels::residual_norms(
      [&](const Octonion& x) { return slice_fueter(f, x, s); }, points);
  Report r;
  r.op = "sfr-check";
  aggregate(r, res, points);
  r.tolerance = plan.sfr_tolerance;
  r.pass = slice.pass && r.max_residual <= r.tolerance;
  r.details = {{"sliceness", slice}};
  return r;
}

std::size_t SliceGrid::size() const {
  std::size_t n = 1;
  for (int c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

QuatCoords SliceGrid::node(const std::array<int, 4>& k) const {
  QuatCoords q{};
  for (std::size_t a = 0; a < 4; ++a) {
    const int n = counts[a];
    const double t = n == 1 ? 0.0 : 2.0 * k[a] / (n - 1) - 1.0;
    q[a] = center[a] + half_extent[a] * t;
  }
  return q;
}

ScanReport modulus_local_max_scan(const OctField& f, const OrthoPair& pair, const SliceGrid& grid,
                                  const Domain* domain) {
  for (int c : grid.counts)
    if (c < 1) throw PreconditionError("slice grid counts must be positive");
  const auto& n = grid.counts;
  auto unflatten = [&](std::size_t idx) {
    std::array<int, 4> k{};
    for (int a = 3; a >= 0; --a) {
      k[static_cast<std::size_t>(a)] = static_cast<int>(idx % static_cast<std::size_t>(n[static_cast<std::size_t>(a)]));
      idx /= static_cast<std::size_t>(n[static_cast<std::size_t>(a)]);
    }
    return k;
  };
  auto flatten = [&](const std::array<int, 4>& k) {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < 4; ++a) idx = idx * static_cast<std::size_t>(n[a]) + static_cast<std::size_t>(k[a]);
    return idx;
  };
  struct Node {
    char ok;
    double modulus;
  };
  const auto nodes = kernels::map_indices(grid.size(), [&](std::size_t idx) {
    const Octonion x = pair.embed(grid.node(unflatten(idx)));
    if (domain && !domain->contains(x)) return Node{0, 0.0};
    try {
      return Node{1, f(x).norm()};
    } catch (const DomainError&) {
      return Node{0, 0.0};
    } catch (const EvaluationError&) {
      return Node{0, 0.0};
    }
  });

  ScanReport r;
  r.grid = grid.counts;
  for (const auto& node : nodes) r.nodes_in_domain += node.ok ? 1 : 0;
  if (r.nodes_in_domain == 0) throw EmptySampleError("slice grid lies fully outside the domain");
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    if (!nodes[idx].ok) continue;
    const auto k = unflatten(idx);
    bool interior = true, strict = true;
    for (std::size_t a = 0; a < 4 && interior; ++a) {
      for (int step : {-1, 1}) {
        auto nb = k;
        nb[a] += step;
        if (nb[a] < 0 || nb[a] >= n[a] || !nodes[flatten(nb)].ok) {
          interior = false;
          break;
        }
        if (!(nodes[idx].modulus > nodes[flatten(nb)].modulus)) strict = false;
      }
    }
    if (!interior) continue;
    ++r.interior_nodes;
    if (strict) r.strict_maxima.push_back(grid.node(k));
  }
  if (r.interior_nodes == 0) throw PreconditionError("slice grid has no interior node in the domain");
  r.pass = r.strict_maxima.empty();
  return r;
}

}  // namespace octoslice
