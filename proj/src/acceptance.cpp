#include "octoslice/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "octoslice/cclspace.hpp"
#include "octoslice/golden.hpp"
#include "octoslice/json_io.hpp"
#include "octoslice/kernels.hpp"
#include "octoslice/liftings.hpp"
#include "octoslice/slicefn.hpp"

namespace octoslice {

namespace {

using Rng = std::mt19937_64;
constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

double gauss(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }
double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

UnitImaginary random_unit(Rng& rng) {
  Octonion v;
  while (v.norm() < 1e-3) {
    std::array<double, 8> c{};
    for (std::size_t l = 1; l < 8; ++l) c[l] = gauss(rng);
    v = Octonion(c);
  }
  return UnitImaginary::normalized(v);
}

UnitImaginary random_unit_in(const Subsphere& sub, Rng& rng) {
  Octonion v;
  while (v.norm() < 1e-3) {
    v = Octonion{};
    for (const auto& b : sub.basis()) v += gauss(rng) * b.as_octonion();
  }
  return UnitImaginary::normalized(v);
}

// Unit with <I, axis> > min_cos.
UnitImaginary random_unit_near(const UnitImaginary& axis, double min_cos, Rng& rng) {
  for (;;) {
    const UnitImaginary u = random_unit(rng);
    if (dot(u, axis) > min_cos) return u;
    // Pull toward the axis to keep rejection cheap.
    const UnitImaginary w = UnitImaginary::normalized(u.as_octonion() + 2.0 * axis.as_octonion());
    if (dot(w, axis) > min_cos) return w;
  }
}

Octonion random_octonion(Rng& rng, double scale) {
  std::array<double, 8> c{};
  for (double& v : c) v = scale * gauss(rng);
  return Octonion(c);
}

// Uniform point in the ball of radius r around c.
Octonion random_in_ball(const Octonion& c, double r, Rng& rng) {
  Octonion dir = random_octonion(rng, 1.0);
  while (dir.norm() < 1e-6) dir = random_octonion(rng, 1.0);
  const double rho = r * std::pow(uniform(rng, 0.0, 1.0), 1.0 / 8.0);
  return c + (rho / dir.norm()) * dir;
}

// Structure constants from the seven oriented triples by permutation parity,
// independent of the library's table.
int structure_constant(int l, int m, int n) {
  static const int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                                    {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
  for (const auto& t : triples) {
    int pos[3] = {-1, -1, -1};
    const int want[3] = {l, m, n};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (t[b] == want[a]) pos[a] = b;
    if (pos[0] < 0 || pos[1] < 0 || pos[2] < 0) continue;
    if (pos[0] == pos[1] || pos[1] == pos[2] || pos[0] == pos[2]) return 0;
    int inversions = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) inversions += pos[a] > pos[b] ? 1 : 0;
    return inversions % 2 == 0 ? 1 : -1;
  }
  return 0;
}

Octonion oracle_basis_product(int l, int m) {
  if (l == 0) return Octonion::basis(m);
  if (m == 0) return Octonion::basis(l);
  if (l == m) return Octonion::real(-1.0);
  for (int n = 1; n < 8; ++n)
    if (const int e = structure_constant(l, m, n); e != 0)
      return static_cast<double>(e) * Octonion::basis(n);
  return Octonion{};
}

CriterionResult algebra(const AcceptanceOptions& opts) {
  CriterionResult r;
  int table_mismatch = 0;
  for (int l = 0; l < 8; ++l)
    for (int m = 0; m < 8; ++m) {
      const Octonion expect = oracle_basis_product(l, m);
      const SignedBasis sb = basis_product(l, m);
      const Octonion from_table = static_cast<double>(sb.sign) * Octonion::basis(sb.index);
      if (!(from_table == expect) || !(Octonion::basis(l) * Octonion::basis(m) == expect))
        ++table_mismatch;
    }

  Rng rng(opts.seed + 1);
  double worst_rel = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double sx = std::exp(uniform(rng, -3.0, 3.0)), sy = std::exp(uniform(rng, -3.0, 3.0));
    const Octonion x = random_octonion(rng, sx), y = random_octonion(rng, sy);
    const double prod = x.norm() * y.norm();
    worst_rel = std::max(worst_rel, std::abs((x * y).norm() - prod) / prod);
  }

  int identity_failures = 0;
  for (int m = 1; m < 8; ++m)
    for (int n = 1; n < 8; ++n) {
      if (m == n) continue;
      const Octonion em = Octonion::basis(m), en = Octonion::basis(n);
      for (int a = 0; a < 8; ++a) {
        const Octonion ea = Octonion::basis(a);
        if (!(em * (en * (em * ea)) == en * ea)) ++identity_failures;
        if (!(em * (en * (en * ea)) == -(em * ea))) ++identity_failures;
      }
    }

  r.pass = table_mismatch == 0 && worst_rel <= 1e-12 && identity_failures == 0;
  r.summary = "table mismatches " + std::to_string(table_mismatch) + ", norm rel err " +
              fmt(worst_rel) + ", identity failures " + std::to_string(identity_failures);
  r.details = {{"table_mismatches", table_mismatch},
               {"norm_pairs", 10000},
               {"max_norm_relative_error", worst_rel},
               {"identity_failures", identity_failures}};
  return r;
}

CriterionResult slab_cone_stems(const AcceptanceOptions& opts) {
  CriterionResult r;
  const GoldenField g = slab_cone_field();
  const auto& cone = *g.domain.as<SlabCone>();
  const double min_cos = std::cos(cone.half_angle) + 0.05;
  Rng rng(opts.seed + 2);
  FDScheme fd;
  fd.prefer_closed_form = false;
  double worst_formula = 0.0, worst_gamma = 0.0, worst_gamma_fd = 0.0;
  int cases = 0;
  for (double a : {-2.0, -1.0, 0.0, 1.0, 2.0})
    for (double b : {1.5, 2.0, 3.0})
      for (int rep = 0; rep < 4; ++rep) {
        UnitImaginary i1 = random_unit_near(cone.i0, min_cos, rng), i2 = i1;
        while (distance(i1.as_octonion(), i2.as_octonion()) < 0.1)
          i2 = random_unit_near(cone.i0, min_cos, rng);
        const ComplexPoint z{a, b};
        const StemVector expect{Octonion::real(a * (b - 1.0)), Octonion::real(b * (b - 1.0))};
        worst_formula = std::max(worst_formula, distance(stem_from_two_units(g.field, z, i1, i2), expect));
        const Octonion x = tau(i1, z);
        worst_gamma = std::max(worst_gamma, distance(stem_from_gamma(g.field, x), expect));
        worst_gamma_fd = std::max(worst_gamma_fd, distance(stem_from_gamma(g.field, x, fd), expect));
        ++cases;
      }
  r.pass = worst_formula <= 1e-10 && worst_gamma <= 1e-6 && worst_gamma_fd <= 1e-6;
  r.summary = std::to_string(cases) + " cases, two-unit err " + fmt(worst_formula) +
              ", gamma err " + fmt(std::max(worst_gamma, worst_gamma_fd));
  r.details = {{"cases", cases},
               {"two_unit_max_error", worst_formula},
               {"gamma_max_error", worst_gamma},
               {"gamma_fd_max_error", worst_gamma_fd}};
  return r;
}

CriterionResult sqrt_golden(const AcceptanceOptions&) {
  CriterionResult r;
  const GoldenField g = sqrt_sfr_field();
  const auto& chain = *g.domain.as<BallChain>();
  const ComplexPoint z{-1.0, 2.0};
  const Ball upper{chain.center(chain.theta_at(chain.theta_steps - 1)), chain.radius};
  const Ball lower{chain.center(chain.theta_at(0)), chain.radius};
  const StemVector at_j = local_stem(g.field, upper, z);
  const StemVector at_minus_j = local_stem(g.field, lower, z);
  const double e1 = distance(at_j, {Octonion::real(0.5), Octonion::real(-0.5)});
  const double e2 = distance(at_minus_j, {Octonion::real(-0.5), Octonion::real(0.5)});
  const SqrtStem cont = sqrt_stem_continued(-1.0, 2.0);
  const double e3 = std::max(std::abs(cont.u - 0.5), std::abs(cont.v + 0.5));
  double e4 = 0.0;
  for (const auto& p : g.points) e4 = std::max(e4, distance(g.field(p.input), p.expected));
  r.pass = e1 <= 1e-10 && e2 <= 1e-10 && e3 <= 1e-10 && e4 <= 1e-10;
  r.summary = "stem err at -1+2J " + fmt(e1) + ", at -1-2J " + fmt(e2) + ", golden values " + fmt(e4);
  r.details = {{"stem_at_plus_j", at_j},
               {"stem_at_minus_j", at_minus_j},
               {"error_plus_j", e1},
               {"error_minus_j", e2},
               {"continued_formula_error", e3},
               {"golden_value_error", e4}};
  return r;
}

CriterionResult sqrt_regularity(const AcceptanceOptions& opts) {
  CriterionResult r;
  const GoldenField g = sqrt_sfr_field();
  const auto& chain = *g.domain.as<BallChain>();
  Rng rng(opts.seed + 4);
  std::vector<Octonion> points;
  std::vector<int> ball_index;
  const int balls = 16, per_ball = 13;
  for (int b = 0; b < balls; ++b) {
    const int k = static_cast<int>(std::lround(b * (chain.theta_steps - 1) / double(balls - 1)));
    for (int p = 0; p < per_ball; ++p) {
      points.push_back(random_in_ball(chain.center(chain.theta_at(k)), 0.8 * chain.radius, rng));
      ball_index.push_back(k);
    }
  }
  std::set<int> distinct;
  for (const auto& x : points) distinct.insert(*chain.deepest(x));
  FDScheme fd;
  fd.prefer_closed_form = false;
  const auto closed = kernels::residual_norms([&](const Octonion& x) { return slice_fueter(g.field, x); }, points);
  const auto diff = kernels::residual_norms([&](const Octonion& x) { return slice_fueter(g.field, x, fd); }, points);
  const double fueter = std::max(*std::max_element(closed.begin(), closed.end()),
                                 *std::max_element(diff.begin(), diff.end()));

  // Quaternion-slice grids around eight ball centres.
  const OrthoPair pair(chain.i, chain.j);
  std::vector<QuatCoords> nodes;
  for (int b = 0; b < 8; ++b) {
    const int k = static_cast<int>(std::lround((b + 0.5) * (chain.theta_steps - 1) / 8.0));
    const QuatCoords c = pair.project(chain.center(chain.theta_at(k)));
    for (int n = 0; n < 81; ++n) {
      QuatCoords q = c;
      int rest = n;
      for (std::size_t a = 0; a < 4; ++a) {
        q[a] += 0.1 * (rest % 3 - 1);
        rest /= 3;
      }
      nodes.push_back(q);
    }
  }
  const auto cf = kernels::map_indices(nodes.size(), [&](std::size_t n) {
    return std::max(cauchy_fueter(g.field, pair, nodes[n]).norm(),
                    cauchy_fueter(g.field, pair, nodes[n], fd).norm());
  });
  const auto lap = kernels::map_indices(
      nodes.size(), [&](std::size_t n) { return slice_laplacian(g.field, pair, nodes[n]).norm(); });
  const double dmax = *std::max_element(cf.begin(), cf.end());
  const double lmax = *std::max_element(lap.begin(), lap.end());
  r.pass = points.size() >= 200 && distinct.size() >= 8 && fueter <= 1e-5 && dmax <= 1e-5 &&
           lmax <= 1e-4;
  r.summary = std::to_string(points.size()) + " points in " + std::to_string(distinct.size()) +
              " balls, slice Fueter " + fmt(fueter) + ", Cauchy-Fueter " + fmt(dmax) +
              ", Laplacian " + fmt(lmax);
  r.details = {{"points", points.size()},
               {"distinct_balls", distinct.size()},
               {"slice_fueter_max", fueter},
               {"slice_grid_nodes", nodes.size()},
               {"cauchy_fueter_max", dmax},
               {"laplacian_max", lmax}};
  return r;
}

CriterionResult bers_vekua(const AcceptanceOptions& opts) {
  CriterionResult r;
  const GoldenField g = sqrt_sfr_field();
  const StemField& stem = *g.stem;
  Rng rng(opts.seed + 5);
  std::vector<ComplexPoint> zs;
  while (zs.size() < 500) {
    const ComplexPoint z{uniform(rng, -2.0, 2.0), uniform(rng, 0.5, 3.5)};
    if (z.alpha <= 1e-3 && std::abs(z.beta - 2.0) < 1e-3) continue;
    if (std::hypot(z.alpha, z.beta - 2.0) < 0.25) continue;
    zs.push_back(z);
  }
  FDScheme fd;
  fd.prefer_closed_form = false;
  double worst_res = 0.0, worst_rel = 0.0;
  for (const auto& z : zs) {
    const BVResidual res = bers_vekua_residual(stem, z);
    worst_res = std::max({worst_res, res.r1.norm(), res.r2.norm()});
    const StemPartials p = stem.partials(z);
    const double h = fd.step_scale * (1.0 + std::hypot(z.alpha, z.beta));
    const StemVector ap = stem.eval({z.alpha + h, z.beta}), am = stem.eval({z.alpha - h, z.beta});
    const StemVector bp = stem.eval({z.alpha, z.beta + h}), bm = stem.eval({z.alpha, z.beta - h});
    const std::pair<Octonion, Octonion> pairs[4] = {{p.u_alpha, (ap.u - am.u) / (2 * h)},
                                                    {p.v_alpha, (ap.v - am.v) / (2 * h)},
                                                    {p.u_beta, (bp.u - bm.u) / (2 * h)},
                                                    {p.v_beta, (bp.v - bm.v) / (2 * h)}};
    for (const auto& [closed, diff] : pairs)
      worst_rel = std::max(worst_rel, distance(closed, diff) / std::max(1.0, closed.norm()));
  }
  r.pass = worst_res <= 1e-6 && worst_rel <= 1e-6;
  r.summary = "500 z, residual " + fmt(worst_res) + ", partials vs FD rel " + fmt(worst_rel);
  r.details = {{"samples", zs.size()}, {"max_residual", worst_res}, {"max_partial_relative_error", worst_rel}};
  return r;
}

CriterionResult reconstruction(const AcceptanceOptions& opts) {
  CriterionResult r;
  Rng rng(opts.seed + 6);
  nlohmann::json per_field = nlohmann::json::object();
  bool pass = true;
  const GoldenField slab = slab_cone_field();
  const GoldenField ident = identity_field();
  for (const GoldenField* g : {&slab, &ident}) {
    const bool cone = g == &slab;
    const UnitImaginary axis = cone ? slab.domain.as<SlabCone>()->i0 : UnitImaginary::basis(1);
    const double min_cos = cone ? std::cos(kPi / 4.0) + 0.02 : -2.0;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const ComplexPoint z = cone ? ComplexPoint{uniform(rng, -2.0, 2.0), uniform(rng, 1.2, 3.0)}
                                  : ComplexPoint{uniform(rng, -1.2, 1.2), uniform(rng, 0.1, 1.4)};
      UnitImaginary i1 = random_unit_near(axis, min_cos, rng), i2 = i1;
      while (distance(i1.as_octonion(), i2.as_octonion()) < 0.1) i2 = random_unit_near(axis, min_cos, rng);
      const UnitImaginary i3 = random_unit_near(axis, min_cos, rng);
      const Octonion got =
          reconstruct_third(g->field(tau(i1, z)), g->field(tau(i2, z)), i1, i2, i3);
      worst = std::max(worst, distance(got, g->field(tau(i3, z))));
    }
    per_field[g->name] = worst;
    pass = pass && worst <= 1e-9;
  }
  r.pass = pass;
  r.summary = "max err slab-cone " + fmt(per_field["slab-cone"].get<double>()) + ", identity " +
              fmt(per_field["identity"].get<double>());
  r.details = {{"triples_per_field", 100}, {"max_error", per_field}};
  return r;
}

CriterionResult lifting_approximation(const AcceptanceOptions& opts) {
  CriterionResult r;
  Rng rng(opts.seed + 7);
  int runs = 0, failures = 0, pushed = 0;
  double worst_ratio = 0.0;
  for (int p = 0; p < 30; ++p) {
    const int n = 2 + static_cast<int>(rng() % 9);
    std::vector<Octonion> v;
    for (int k = 0; k < n; ++k) v.push_back(random_octonion(rng, 1.0));
    // Force the awkward cases: real vertices and segments through the axis.
    if (p % 3 == 0 && n > 2) v[1] = Octonion::real(v[1].re());
    if (p % 3 == 1) v[1] = Octonion::real(v[1].re()) - uniform(rng, 0.3, 2.0) * v[0].im();
    if (p % 10 == 5) {
      v.resize(2);
      v[0] = Octonion::real(v[0].re());
      v[1] = Octonion::real(v[1].re() + 1.0);
    }
    const Polyline path = Polyline::uniform(v);
    for (double delta : {0.5, 0.1, 0.01}) {
      const ApproximateLifting a = lift_approximate(path, delta);
      ++runs;
      if (a.adjusted.values.size() != path.values.size() || !(a.adjusted.values == path.values)) ++pushed;
      if (!a.certified || !a.endpoints_exact) ++failures;
      worst_ratio = std::max(worst_ratio, a.sup_distance / delta);
    }
  }
  r.pass = failures == 0;
  r.summary = std::to_string(runs) + " runs, " + std::to_string(failures) +
              " uncertified, max sup/delta " + fmt(worst_ratio);
  r.details = {{"runs", runs}, {"failures", failures}, {"adjusted_runs", pushed},
               {"max_sup_over_delta", worst_ratio}};
  return r;
}

CriterionResult ccl_transport(const AcceptanceOptions& opts) {
  CriterionResult r;
  Rng rng(opts.seed + 8);
  SamplePlan plan;
  plan.seed = opts.seed;
  const Subsphere sub = Subsphere::standard();
  const GoldenField constant = constant_field();
  const GoldenField affine = affine_sfr_field();
  const GoldenField sqrt = sqrt_sfr_field();
  const auto& chain = *sqrt.domain.as<BallChain>();

  struct Case {
    Domain d;
    Octonion x, xp;
    std::vector<const OctField*> fields;
  };
  std::vector<Case> cases;
  const double centres[5] = {0.0, 0.5, -0.7, 1.2, -0.3};
  const double radii[5] = {1.0, 0.8, 1.5, 0.6, 1.1};
  for (int b = 0; b < 5; ++b)
    for (int k = 0; k < 5; ++k) {
      const double rho = uniform(rng, 0.2, 0.7) * radii[b];
      const double phi = uniform(rng, 0.15, kPi - 0.15);
      const ComplexPoint z{centres[b] + rho * std::cos(phi), rho * std::sin(phi)};
      cases.push_back({Domain(Ball{Octonion::real(centres[b]), radii[b]}),
                       tau(random_unit_in(sub, rng), z), tau(random_unit_in(sub, rng), z),
                       {&constant.field, &affine.field}});
    }
  for (int b = 0; b < 25; ++b) {
    const int k = static_cast<int>(std::lround(b * (chain.theta_steps - 1) / 24.0));
    const Octonion c = chain.center(chain.theta_at(k));
    const UnitImaginary u0 = UnitImaginary::normalized(c.im());
    const double psi = uniform(rng, 0.02, 0.05);
    const Octonion e3 = Octonion::basis(3);
    const UnitImaginary i1 = UnitImaginary::normalized(std::cos(psi) * u0.as_octonion() + std::sin(psi) * e3);
    const UnitImaginary i2 = UnitImaginary::normalized(std::cos(psi) * u0.as_octonion() - std::sin(psi) * e3);
    const ComplexPoint z{c.re() + uniform(rng, -0.05, 0.05), c.im_norm() + uniform(rng, -0.05, 0.05)};
    cases.push_back({Domain(Ball{c, chain.radius}), tau(i1, z), tau(i2, z), {&sqrt.field, &affine.field}});
  }

  int found = 0, unverifiable = 0;
  double worst_dev = 0.0;
  nlohmann::json statuses = nlohmann::json::object();
  for (const auto& c : cases) {
    const SearchResult res = ccl_search(c.d, c.x, c.xp, sub, plan);
    statuses[res.status] = statuses.value(res.status, 0) + 1;
    if (!res.witness) continue;
    ++found;
    const CCLWitness& w = *res.witness;
    if (!ccl_verify(w, c.d, c.x, c.xp, 4 * w.resolution + 1)) ++unverifiable;
    for (const OctField* f : c.fields)
      worst_dev = std::max(worst_dev, stem_transport(*f, w, c.x, c.xp, c.d).deviation);
  }

  const Octonion a = Octonion::real(-1.0) + 2.0 * chain.j.as_octonion();
  const Octonion b = Octonion::real(-1.0) - 2.0 * chain.j.as_octonion();
  const SearchResult chain_res = ccl_search(sqrt.domain, a, b, sub, plan);
  const bool chain_none = !chain_res.witness && chain_res.status != "unverified";

  r.pass = found == static_cast<int>(cases.size()) && unverifiable == 0 && worst_dev <= 1e-6 && chain_none;
  r.summary = std::to_string(found) + "/" + std::to_string(cases.size()) +
              " witnesses, max stem deviation " + fmt(worst_dev) + ", ball-chain search " +
              chain_res.status + " after " + std::to_string(chain_res.nodes_expanded) + " nodes";
  r.details = {{"searches", cases.size()},
               {"found", found},
               {"statuses", statuses},
               {"unverifiable", unverifiable},
               {"max_stem_deviation", worst_dev},
               {"ball_chain", chain_res}};
  return r;
}

CriterionResult quotient_components(const AcceptanceOptions& opts) {
  CriterionResult r;
  SamplePlan plan;
  plan.seed = opts.seed;
  const Subsphere sub = Subsphere::standard();
  const GoldenField sqrt = sqrt_sfr_field();
  const auto& chain = *sqrt.domain.as<BallChain>();
  struct Case {
    std::string name;
    Domain d;
    int expected;  // 0: only the <= 2 bound applies
  };
  const std::vector<Case> cases{
      {"far-ball", Domain(Ball{Octonion{0, 2, 2, 0, 0, 0, 0, 0}, 0.3}), 2},
      {"real-centered-ball", Domain(Ball{Octonion{}, 1.0}), 1},
      {"chain-ball", Domain(Ball{chain.center(0.0), chain.radius}), 0},
      {"off-center-ball", Domain(Ball{Octonion{0.3, 0.4, 0, 0, 0, 0, 0, 0}, 1.0}), 0},
      {"far-union",
       Domain(BallUnion{{Ball{Octonion{0, 2, 0, 0, 0, 0, 0, 0}, 0.3},
                         Ball{Octonion{0, 2, 0.4, 0, 0, 0, 0, 0}, 0.3}}}),
       0}};
  bool pass = true;
  nlohmann::json out = nlohmann::json::array();
  std::string summary;
  for (const auto& c : cases) {
    const QuotientSample q = build_quotient(c.d, sub, plan);
    const int comps = count_components(q);
    const double spread = class_projection_spread(q);
    const bool injective = local_injectivity_check(q, 2).pass;
    const auto bad = replay_merges(q, c.d, 97);
    const bool ok = comps <= 2 && (c.expected == 0 || comps == c.expected) && spread <= 1e-9 &&
                    injective && bad.empty();
    pass = pass && ok;
    summary += (summary.empty() ? "" : ", ") + c.name + " " + std::to_string(comps);
    out.push_back({{"domain", c.name},
                   {"components", comps},
                   {"expected", c.expected == 0 ? nlohmann::json("<=2") : nlohmann::json(c.expected)},
                   {"points", q.points.size()},
                   {"classes", q.classes().size()},
                   {"class_spread", spread},
                   {"local_injectivity", injective},
                   {"replay_failures", bad.size()},
                   {"pass", ok}});
  }
  r.pass = pass;
  r.summary = "components: " + summary;
  r.details = {{"quotients", out}};
  return r;
}

CriterionResult maximum_modulus(const AcceptanceOptions&) {
  CriterionResult r;
  const GoldenField sqrt = sqrt_sfr_field();
  const GoldenField ident = identity_field();
  const GoldenField gauss_f = gaussian_field();
  const auto& chain = *sqrt.domain.as<BallChain>();
  const OrthoPair pair(chain.i, chain.j);

  SliceGrid sq;
  sq.center = pair.project(chain.center(0.0));
  sq.half_extent = {0.17, 0.17, 0.17, 0.17};
  sq.counts = {10, 10, 10, 10};
  const ScanReport s1 = modulus_local_max_scan(sqrt.field, pair, sq, &sqrt.domain);

  SliceGrid id;
  id.center = {0.3, 0.2, 0.1, 0.0};
  id.half_extent = {1.0, 1.0, 1.0, 1.0};
  id.counts = {10, 10, 10, 10};
  const ScanReport s2 = modulus_local_max_scan(ident.field, pair, id, &ident.domain);

  SliceGrid ga;
  ga.center = {0, 0, 0, 0};
  ga.half_extent = {1.0, 1.0, 1.0, 1.0};
  ga.counts = {11, 11, 11, 11};
  const ScanReport s3 = modulus_local_max_scan(gauss_f.field, pair, ga, &gauss_f.domain);
  bool origin = s3.strict_maxima.size() == 1;
  if (origin)
    for (double c : s3.strict_maxima.front()) origin = origin && std::abs(c) <= 1e-12;

  r.pass = s1.pass && s2.pass && origin && sq.size() >= 10000 && id.size() >= 10000;
  r.summary = "sqrt maxima " + std::to_string(s1.strict_maxima.size()) + " / " +
              std::to_string(s1.nodes_in_domain) + " nodes, identity maxima " +
              std::to_string(s2.strict_maxima.size()) + ", gaussian maximum at origin " +
              (origin ? "yes" : "no");
  r.details = {{"sqrt", s1}, {"identity", s2}, {"gaussian", s3},
               {"sqrt_nodes_in_domain", s1.nodes_in_domain}};
  return r;
}

CriterionResult sliceness(const AcceptanceOptions& opts) {
  CriterionResult r;
  SamplePlan plan;
  plan.seed = opts.seed;
  std::vector<std::pair<GoldenField, bool>> fields{{slab_cone_field(), true},
                                                   {sqrt_sfr_field(), true},
                                                   {constant_field(), true},
                                                   {identity_field(), true},
                                                   {coordinate_probe_field(), false}};
  bool pass = true;
  nlohmann::json out = nlohmann::json::array();
  std::string summary;
  for (const auto& [g, slice] : fields) {
    const Report rep = sliceness_check(g.field, g.domain, Subsphere::standard(), plan);
    const bool ok = rep.pass == slice && (!slice || rep.max_residual <= 1e-6);
    pass = pass && ok;
    summary += (summary.empty() ? "" : ", ") + g.name + (rep.pass ? " slice" : " not-slice");
    out.push_back({{"field", g.name}, {"expected_slice", slice}, {"verdict", rep.pass},
                   {"max_spread", rep.max_residual}, {"pass", ok}});
  }
  r.pass = pass;
  r.summary = summary;
  r.details = {{"fields", out}};
  return r;
}

CriterionResult lifting_theorem(const AcceptanceOptions& opts) {
  CriterionResult r;
  SamplePlan plan;
  plan.seed = opts.seed;
  const Subsphere sub = Subsphere::standard();
  const Domain d(Ball{Octonion{}, 1.0});
  const QuotientSample q = build_quotient(d, sub, plan);
  Rng rng(opts.seed + 12);
  double worst_p = 0.0, worst_grid = 0.0;
  int failures = 0;
  for (int p = 0; p < 20; ++p) {
    const int n = 2 + static_cast<int>(rng() % 5);
    CircularLifting cl;
    for (int k = 0; k < n; ++k) {
      const double rho = uniform(rng, 0.0, 0.8), phi = uniform(rng, -kPi, kPi);
      cl.base.values.push_back({rho * std::cos(phi), rho * std::sin(phi)});
      UnitImaginary u = random_unit_in(sub, rng);
      if (k > 0)
        while (dot(u, cl.coord.values.back()) < -0.9) u = random_unit_in(sub, rng);
      cl.coord.values.push_back(u);
    }
    cl.base.breakpoints = Polyline::uniform(std::vector<Octonion>(static_cast<std::size_t>(n))).breakpoints;
    cl.coord.breakpoints = cl.base.breakpoints;
    const ClassPath path = lift_path_to_quotient(q, d, cl, 101);
    worst_p = std::max(worst_p, path.max_projection_error);
    worst_grid = std::max(worst_grid, path.max_grid_offset);
    const bool ok = path.lifted_in_domain && path.single_component &&
                    path.max_projection_error <= 1e-9 &&
                    path.max_grid_offset <= q.resolution.z_step;
    failures += ok ? 0 : 1;
  }
  r.pass = failures == 0;
  r.summary = "20 liftings, max |P - base| " + fmt(worst_p) + ", nearest grid class within " +
              fmt(worst_grid) + " (step " + fmt(q.resolution.z_step) + ")";
  r.details = {{"liftings", 20}, {"failures", failures}, {"max_projection_error", worst_p},
               {"max_grid_offset", worst_grid}, {"z_step", q.resolution.z_step}};
  return r;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> list{
      {1, "algebra-exactness", algebra},
      {2, "slab-cone-stems", slab_cone_stems},
      {3, "sqrt-golden-stems", sqrt_golden},
      {4, "sqrt-slice-fueter-regularity", sqrt_regularity},
      {5, "bers-vekua", bers_vekua},
      {6, "representation-reconstruction", reconstruction},
      {7, "lifting-approximation", lifting_approximation},
      {8, "ccl-transport", ccl_transport},
      {9, "quotient-components", quotient_components},
      {10, "maximum-modulus", maximum_modulus},
      {11, "sliceness-verdicts", sliceness},
      {12, "lifting-spot-check", lifting_theorem},
  };
  return list;
}

CriterionResult run_criterion(const Criterion& c, const AcceptanceOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = c.run(opts);
  } catch (const std::exception& e) {
    r.pass = false;
    r.summary = std::string("error: ") + e.what();
  }
  r.id = c.id;
  r.name = c.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opts, bool fail_fast,
    const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& c : acceptance_criteria()) {
    out.push_back(run_criterion(c, opts));
    if (on_result) on_result(out.back());
    if (fail_fast && !out.back().pass) break;
  }
  return out;
}

void to_json(nlohmann::json& j, const CriterionResult& r) {
  j = {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary},
       {"details", r.details}};
}

}  // namespace octoslice
