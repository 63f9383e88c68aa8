#include "octoslice/diffops.hpp"

#include <algorithm>
#include <map>

#include "octoslice/kernels.hpp"

namespace octoslice {

namespace {

Octonion eval_at_stencil(const OctField& f, const Octonion& p) {
  try {
    return f(p);
  } catch (const DomainError& e) {
    throw EvaluationError("evaluation failed at stencil point " + to_string(p) + ": " + e.what());
  }
}

Octonion directional_difference(const OctField& f, const Octonion& x, const Octonion& dir,
                                double h) {
  return (eval_at_stencil(f, x + h * dir) - eval_at_stencil(f, x - h * dir)) / (2.0 * h);
}

Octonion imaginary_inverse(const Octonion& x) {
  const Octonion im = x.im();
  if (!(im.norm() > kEpsIm)) throw DomainError("slice Fueter operator undefined on the real axis");
  return im.inv();
}

}  // namespace

OctField::OctField(std::string name, Evaluator f, Smoothness s, Partials partials)
    : name_(std::move(name)), f_(std::move(f)), smoothness_(s), partials_(std::move(partials)) {
  if (!f_) throw PreconditionError("field needs an evaluator");
}

Octonion OctField::closed_partial(const Octonion& x, int axis) const {
  if (!partials_) throw PreconditionError("field has no closed-form partials");
  if (axis < 0 || axis > 7) throw PreconditionError("axis must be 0..7");
  return partials_(x, axis);
}

OctField combine(double c1, const OctField& f, double c2, const OctField& g) {
  OctField::Partials p;
  if (f.has_partials() && g.has_partials())
    p = [=](const Octonion& x, int axis) {
      return c1 * f.closed_partial(x, axis) + c2 * g.closed_partial(x, axis);
    };
  const Smoothness s = std::min(f.smoothness(), g.smoothness());
  return OctField(
      f.name() + "+" + g.name(), [=](const Octonion& x) { return c1 * f(x) + c2 * g(x); }, s,
      std::move(p));
}

Octonion partial_fd(const OctField& f, const Octonion& x, int axis, const FDScheme& s) {
  if (axis < 0 || axis > 7) throw PreconditionError("axis must be 0..7");
  if (!(s.step_scale > 0.0)) throw PreconditionError("step_scale must be positive");
  if (s.prefer_closed_form && f.has_partials()) return f.closed_partial(x, axis);
  return directional_difference(f, x, Octonion::basis(axis), fd_step(x, s.step_scale));
}

Gradient gradient(const OctField& f, const Octonion& x, const FDScheme& s) {
  Gradient g;
  for (int l = 0; l < 8; ++l) g[static_cast<std::size_t>(l)] = partial_fd(f, x, l, s);
  return g;
}

Octonion euler_operator(const Gradient& g, const Octonion& x) {
  Octonion e;
  for (int l = 1; l < 8; ++l) e += x[l] * g[static_cast<std::size_t>(l)];
  return e;
}

Octonion euler_operator(const OctField& f, const Octonion& x, const FDScheme& s) {
  return euler_operator(gradient(f, x, s), x);
}

Octonion tangential_operator(const Gradient& g, const Octonion& x, int m, int n) {
  if (m < 1 || n > 7 || m >= n) throw PreconditionError("tangential operator needs 1 <= m < n <= 7");
  return x[m] * g[static_cast<std::size_t>(n)] - x[n] * g[static_cast<std::size_t>(m)];
}

Octonion tangential_operator(const OctField& f, const Octonion& x, int m, int n,
                             const FDScheme& s) {
  if (m < 1 || n > 7 || m >= n) throw PreconditionError("tangential operator needs 1 <= m < n <= 7");
  Gradient g;
  g[static_cast<std::size_t>(m)] = partial_fd(f, x, m, s);
  g[static_cast<std::size_t>(n)] = partial_fd(f, x, n, s);
  return tangential_operator(g, x, m, n);
}

Octonion spherical_dirac(const Gradient& g, const Octonion& x) {
  Octonion sum;
  for (const auto& [m, n] : kDerivationPairs) {
    const Octonion l = tangential_operator(g, x, m, n);
    sum += Octonion::basis(m) * (Octonion::basis(n) * l);
  }
  return -sum;
}

Octonion spherical_dirac(const OctField& f, const Octonion& x, const FDScheme& s) {
  return spherical_dirac(gradient(f, x, s), x);
}

Octonion slice_fueter(const Gradient& g, const Octonion& x) {
  const Octonion inv_im = imaginary_inverse(x);
  return g[0] - inv_im * euler_operator(g, x) - (inv_im * spherical_dirac(g, x)) / 3.0;
}

Octonion slice_fueter(const OctField& f, const Octonion& x, const FDScheme& s) {
  imaginary_inverse(x);
  return slice_fueter(gradient(f, x, s), x);
}

Octonion cauchy_fueter(const OctField& f, const OrthoPair& pair, const QuatCoords& q,
                       const FDScheme& s) {
  const Octonion x = pair.embed(q);
  const double h = fd_step(x, s.step_scale);
  Octonion sum;
  for (int k = 0; k < 4; ++k) {
    const Octonion u = pair.unit(k);
    Octonion d;
    if (s.prefer_closed_form && f.has_partials()) {
      for (int l = 0; l < 8; ++l)
        if (u[l] != 0.0) d += u[l] * f.closed_partial(x, l);
    } else {
      d = directional_difference(f, x, u, h);
    }
    sum += u * d;
  }
  return sum;
}

Octonion slice_laplacian(const OctField& f, const OrthoPair& pair, const QuatCoords& q,
                         const FDScheme& s) {
  const Octonion x = pair.embed(q);
  const double h = fd_step(x, s.second_step_scale);
  const Octonion fx = eval_at_stencil(f, x);
  Octonion sum;
  for (int k = 0; k < 4; ++k) {
    const Octonion u = pair.unit(k);
    sum += (eval_at_stencil(f, x + h * u) - 2.0 * fx + eval_at_stencil(f, x - h * u)) / (h * h);
  }
  return sum;
}

Report sliceness_check(const OctField& f, const Domain& d, const Subsphere& sub,
                       const SamplePlan& plan, const FDScheme& s) {
  plan.validate();
  const auto samples = sub.sample(plan.sphere_samples, plan.seed);
  const double link = effective_link_angle(sub, plan.sphere_samples, plan.link_angle);

  // Evaluation points grouped by sampled sphere component.
  std::vector<Octonion> points;
  std::vector<std::size_t> group_of;
  std::size_t groups = 0, compared = 0;
  auto grid = [](double lo, double hi, int n, int k) {
    return n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
  };
  for (int ka = 0; ka < plan.a_steps; ++ka) {
    const double a = grid(plan.a_min, plan.a_max, plan.a_steps, ka);
    for (int kb = 0; kb < plan.b_steps; ++kb) {
      const double b = grid(plan.b_min, plan.b_max, plan.b_steps, kb);
      const auto flags = kernels::map_indices(samples.size(), [&](std::size_t k) {
        return static_cast<char>(sphere_slice_member(d, a, b, samples[k]));
      });
      std::vector<UnitImaginary> members;
      for (std::size_t k = 0; k < samples.size(); ++k)
        if (flags[k]) members.push_back(samples[k]);
      if (members.empty()) continue;
      const auto labels = link_components(members, link, [&](const UnitImaginary& u) {
        return sphere_slice_member(d, a, b, u);
      });
      std::map<std::size_t, std::vector<std::size_t>> comps;
      for (std::size_t k = 0; k < members.size(); ++k) comps[labels[k]].push_back(k);
      for (const auto& [label, idx] : comps) {
        const std::size_t take = std::min<std::size_t>(idx.size(), plan.slice_eval_units);
        std::size_t kept = 0;
        for (std::size_t t = 0; t < take; ++t) {
          const Octonion x = tau(members[idx[t * idx.size() / take]], {a, b});
          if (!stencil_inside(d, x, 2.0 * fd_step(x, s.step_scale))) continue;
          points.push_back(x);
          group_of.push_back(groups);
          ++kept;
        }
        if (kept > 0) ++groups;
        if (kept > 1) ++compared;
      }
    }
  }
  if (points.empty()) throw EmptySampleError("no sliceness samples fall in the domain");
  // A verdict needs at least one pair of evaluations on a common component.
  if (compared == 0) throw EmptySampleError("no sphere component holds two sliceness samples");

  struct Pair {
    Octonion base, ratio;
  };
  const auto values = kernels::map_indices(points.size(), [&](std::size_t k) {
    const Octonion& x = points[k];
    const Octonion gam = spherical_dirac(f, x, s);
    return Pair{f(x) - gam / 6.0, x.im().inv() * gam};
  });

  std::vector<double> spread(groups, 0.0);
  std::vector<Octonion> where(groups);
  for (std::size_t p = 0; p < points.size(); ++p) {
    where[group_of[p]] = points[p];
    for (std::size_t q = p + 1; q < points.size() && group_of[q] == group_of[p]; ++q) {
      const double dev = std::max(distance(values[p].base, values[q].base),
                                  distance(values[p].ratio, values[q].ratio));
      if (dev > spread[group_of[p]]) {
        spread[group_of[p]] = dev;
        where[group_of[p]] = points[q];
      }
    }
  }
  Report r;
  r.op = "sliceness-check";
  aggregate(r, spread, where);
  r.samples = points.size();
  r.tolerance = plan.slice_tolerance;
  r.pass = r.max_residual <= r.tolerance;
  r.details = {{"components", groups},
               {"compared_components", compared},
               {"link_angle", link},
               {"sphere_samples", plan.sphere_samples}};
  return r;
}

}  // namespace octoslice
