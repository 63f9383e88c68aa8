#include "octoslice/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "octoslice/kernels.hpp"

namespace octoslice {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

Octonion gaussian_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Octonion::Coeffs c{};
  double s = 0.0;
  do {
    s = 0.0;
    for (double& v : c) {
      v = n01(rng);
      s += v * v;
    }
  } while (s < 1e-12);
  return Octonion(c) / std::sqrt(s);
}

Octonion uniform_in_ball(const Ball& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double r = b.radius * std::pow(u01(rng), 1.0 / 8.0);
  return b.center + r * gaussian_direction(rng);
}

Box ball_box(const Ball& b) {
  Box box;
  for (int l = 0; l < 8; ++l) {
    box.lo[static_cast<std::size_t>(l)] = b.center[l] - b.radius;
    box.hi[static_cast<std::size_t>(l)] = b.center[l] + b.radius;
  }
  return box;
}

Box merge(const Box& a, const Box& b) {
  Box m;
  for (std::size_t l = 0; l < 8; ++l) {
    m.lo[l] = std::min(a.lo[l], b.lo[l]);
    m.hi[l] = std::max(a.hi[l], b.hi[l]);
  }
  return m;
}

Box empty_box() {
  Box b;
  b.lo.fill(kInf);
  b.hi.fill(-kInf);
  return b;
}

// Index of the coordinate with the widest spread; used to window pair scans.
std::size_t widest_axis(const std::vector<UnitImaginary>& units) {
  std::size_t best = 1;
  double spread = -1.0;
  for (int l = 1; l < 8; ++l) {
    double lo = kInf, hi = -kInf;
    for (const auto& u : units) {
      lo = std::min(lo, u[l]);
      hi = std::max(hi, u[l]);
    }
    if (hi - lo > spread) {
      spread = hi - lo;
      best = static_cast<std::size_t>(l);
    }
  }
  return best;
}

// Calls visit(i, j) for every i < j with angle(u_i, u_j) < link.
template <class Visit>
void for_each_close_pair(const std::vector<UnitImaginary>& units, double link, Visit&& visit) {
  if (units.size() < 2) return;
  const int axis = static_cast<int>(widest_axis(units));
  std::vector<std::size_t> order(units.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return units[a][axis] < units[b][axis]; });
  const double chord = 2.0 * std::sin(link / 2.0);
  const double cos_link = std::cos(link);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const auto& up = units[order[p]];
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const auto& uq = units[order[q]];
      if (uq[axis] - up[axis] >= chord) break;
      if (dot(up, uq) > cos_link) visit(std::min(order[p], order[q]), std::max(order[p], order[q]));
    }
  }
}

std::vector<double> grid_values(double lo, double hi, int steps) {
  std::vector<double> v;
  for (int k = 0; k < steps; ++k)
    v.push_back(steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1));
  return v;
}

}  // namespace

bool Box::bounded() const {
  for (std::size_t l = 0; l < 8; ++l)
    if (!std::isfinite(lo[l]) || !std::isfinite(hi[l])) return false;
  return true;
}

double Box::diameter() const {
  double s = 0.0;
  for (std::size_t l = 0; l < 8; ++l) s += (hi[l] - lo[l]) * (hi[l] - lo[l]);
  return std::sqrt(s);
}

Box Box::clipped(double radius) const {
  Box b = *this;
  for (std::size_t l = 0; l < 8; ++l) {
    b.lo[l] = std::max(b.lo[l], -radius);
    b.hi[l] = std::min(b.hi[l], radius);
  }
  return b;
}

double BallChain::theta_at(int k) const {
  return -kPi + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(theta_steps - 1);
}

Octonion BallChain::direction(double theta) const {
  return std::cos(theta / 2.0) * i.as_octonion() + std::sin(theta / 2.0) * j.as_octonion();
}

Octonion BallChain::center(double theta) const {
  return Octonion::real(std::cos(theta)) + (2.0 + std::sin(theta)) * direction(theta);
}

std::vector<int> BallChain::covering(const Octonion& x) const {
  std::vector<int> out;
  const double x0 = x.re();
  const double pi_ = dot(x, i.as_octonion());
  const double pj = dot(x, j.as_octonion());
  const double rest = x.norm2() - x0 * x0 - pi_ * pi_ - pj * pj;
  const double r2 = radius * radius;
  if (rest >= r2) return out;
  // Centres sit at planar radius >= 1 in the (I, J) plane and angle t/2, so a
  // covering t lies within 2·asin(1/4) < 0.6 of twice the planar angle of x.
  if (std::hypot(pi_, pj) <= 1.0 - radius) return out;
  const double twice_psi = 2.0 * std::atan2(pj, pi_);
  const double lo = std::max(-kPi, twice_psi - 0.6);
  const double hi = std::min(kPi, twice_psi + 0.6);
  if (lo > hi) return out;
  const double scale = static_cast<double>(theta_steps - 1) / (2.0 * kPi);
  const int kmin = std::max(0, static_cast<int>(std::floor((lo + kPi) * scale)));
  const int kmax = std::min(theta_steps - 1, static_cast<int>(std::ceil((hi + kPi) * scale)));
  for (int k = kmin; k <= kmax; ++k) {
    const double t = theta_at(k);
    const double radial = 2.0 + std::sin(t);
    const double d0 = x0 - std::cos(t);
    const double di = pi_ - radial * std::cos(t / 2.0);
    const double dj = pj - radial * std::sin(t / 2.0);
    if (d0 * d0 + di * di + dj * dj + rest < r2) out.push_back(k);
  }
  return out;
}

std::optional<int> BallChain::deepest(const Octonion& x) const {
  std::optional<int> best;
  double best_d = kInf;
  for (int k : covering(x)) {
    const double d = (x - center(theta_at(k))).norm2();
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

Domain::Domain(Variant v) : v_(std::move(v)) {
  if (const auto* b = as<Ball>(); b && !(b->radius > 0.0))
    throw PreconditionError("ball radius must be positive");
  if (const auto* u = as<BallUnion>()) {
    if (u->balls.empty()) throw PreconditionError("ball union needs at least one ball");
    for (const auto& b : u->balls)
      if (!(b.radius > 0.0)) throw PreconditionError("ball radius must be positive");
  }
  if (const auto* s = as<SlabCone>(); s && !(s->half_angle > 0.0 && s->half_angle <= kPi))
    throw PreconditionError("cone half-angle must lie in (0, pi]");
  if (const auto* c = as<BallChain>()) {
    if (c->theta_steps < 2) throw PreconditionError("ball chain needs at least 2 theta steps");
    if (std::abs(dot(c->i, c->j)) > kUnitTol)
      throw PreconditionError("ball chain units are not orthogonal");
  }
  if (const auto* p = as<PredicateDomain>(); p && !p->fn)
    throw PreconditionError("predicate domain needs a callable");
}

bool Domain::contains(const Octonion& x) const {
  return std::visit(
      [&](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return d.contains(x);
        } else if constexpr (std::is_same_v<T, BallUnion>) {
          return std::any_of(d.balls.begin(), d.balls.end(),
                             [&](const Ball& b) { return b.contains(x); });
        } else if constexpr (std::is_same_v<T, SlabCone>) {
          const double b = x.im_norm();
          if (b < 1.0) return true;
          const double c = dot(d.i0.as_octonion(), x.im()) / b;
          return std::abs(c) > std::cos(d.half_angle);
        } else if constexpr (std::is_same_v<T, BallChain>) {
          return !d.covering(x).empty();
        } else {
          return d.fn(x);
        }
      },
      v_);
}

Box Domain::bounding_box() const {
  return std::visit(
      [&](const auto& d) -> Box {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return ball_box(d);
        } else if constexpr (std::is_same_v<T, BallUnion>) {
          Box box = empty_box();
          for (const auto& b : d.balls) box = merge(box, ball_box(b));
          return box;
        } else if constexpr (std::is_same_v<T, SlabCone>) {
          Box box;
          box.lo.fill(-kInf);
          box.hi.fill(kInf);
          return box;
        } else if constexpr (std::is_same_v<T, BallChain>) {
          Box box = empty_box();
          for (int k = 0; k < d.theta_steps; ++k)
            box = merge(box, ball_box(Ball{d.center(d.theta_at(k)), d.radius}));
          return box;
        } else {
          return d.box;
        }
      },
      v_);
}

double Domain::feature_size() const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return 2.0 * d.radius;
        } else if constexpr (std::is_same_v<T, BallUnion>) {
          double m = kInf;
          for (const auto& b : d.balls) m = std::min(m, 2.0 * b.radius);
          return m;
        } else if constexpr (std::is_same_v<T, SlabCone>) {
          return 2.0;
        } else if constexpr (std::is_same_v<T, BallChain>) {
          return 2.0 * d.radius;
        } else {
          return d.box.bounded() ? d.box.diameter() : 2.0;
        }
      },
      v_);
}

std::string Domain::type_name() const {
  return std::visit(
      [&](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Ball>) return "ball";
        else if constexpr (std::is_same_v<T, BallUnion>) return "ball_union";
        else if constexpr (std::is_same_v<T, SlabCone>) return "slab_cone";
        else if constexpr (std::is_same_v<T, BallChain>) return "ball_chain";
        else return d.name;
      },
      v_);
}

std::vector<Ball> balls_of(const Domain& d) {
  if (const auto* b = d.as<Ball>()) return {*b};
  if (const auto* u = d.as<BallUnion>()) return u->balls;
  return {};
}

void SamplePlan::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw PreconditionError(std::string("sample plan: ") + what);
  };
  require(sphere_samples > 0 && search_sphere_samples > 0, "sphere sample counts must be positive");
  require(link_angle > 0.0 && link_angle < kPi, "link_angle must lie in (0, pi)");
  require(a_steps > 0 && b_steps > 0, "grid steps must be positive");
  require(b_min > 0.0 && b_max >= b_min, "b grid must be positive and ordered");
  require(a_max >= a_min, "a grid must be ordered");
  require(point_samples > 0 && slice_eval_units > 1, "sample counts must be positive");
  require(slice_tolerance > 0.0 && sfr_tolerance > 0.0, "tolerances must be positive");
  require(node_budget > 0 && base_step > 0.0, "search budget and step must be positive");
  require(min_component_samples > 0, "min_component_samples must be positive");
  require(quotient_min_units > 0 && quotient_max_unit_samples > 0, "quotient unit counts must be positive");
}

Subsphere::Subsphere(std::vector<UnitImaginary> basis) : basis_(std::move(basis)) {
  if (basis_.empty() || basis_.size() > 7) throw PreconditionError("subsphere needs 1..7 units");
  for (std::size_t a = 0; a < basis_.size(); ++a)
    for (std::size_t b = a + 1; b < basis_.size(); ++b)
      if (std::abs(dot(basis_[a], basis_[b])) > 1e-9)
        throw PreconditionError("subsphere units are not orthonormal");
}

Subsphere Subsphere::standard() {
  return Subsphere({UnitImaginary::basis(1), UnitImaginary::basis(2), UnitImaginary::basis(3)});
}

Subsphere Subsphere::spanning(const UnitImaginary& a, const UnitImaginary& b) {
  std::vector<UnitImaginary> basis{a};
  std::vector<Octonion> candidates{b.as_octonion()};
  for (int l = 1; l < 8; ++l) candidates.push_back(Octonion::basis(l));
  for (const auto& c : candidates) {
    if (basis.size() == 3) break;
    Octonion r = c;
    for (const auto& u : basis) r -= dot(r, u.as_octonion()) * u.as_octonion();
    if (r.norm() > 1e-6) basis.push_back(UnitImaginary::normalized(r));
  }
  return Subsphere(std::move(basis));
}

bool Subsphere::contains(const UnitImaginary& u, double tol) const {
  Octonion r = u.as_octonion();
  for (const auto& b : basis_) r -= dot(u, b) * b.as_octonion();
  return r.norm() <= tol;
}

std::vector<UnitImaginary> Subsphere::sample(int count, std::uint64_t seed) const {
  if (count <= 0) throw PreconditionError("sample count must be positive");
  const int k = dimension();
  std::vector<std::vector<double>> coords;
  coords.reserve(static_cast<std::size_t>(count));
  std::mt19937_64 rng(seed);
  if (k == 1) {
    for (int n = 0; n < count; ++n) coords.push_back({n % 2 == 0 ? 1.0 : -1.0});
  } else if (k == 2) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double offset = seed == 0 ? 0.0 : u01(rng);
    for (int n = 0; n < count; ++n) {
      const double t = 2.0 * kPi * (n + offset) / count;
      coords.push_back({std::cos(t), std::sin(t)});
    }
  } else if (k == 3) {
    // Fibonacci lattice, rotated by a seed-derived orthogonal frame.
    std::array<std::array<double, 3>, 3> frame{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    if (seed != 0) {
      std::normal_distribution<double> n01(0.0, 1.0);
      for (auto& row : frame)
        for (double& v : row) v = n01(rng);
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t q = 0; q < r; ++q) {
          double d = 0.0;
          for (std::size_t c = 0; c < 3; ++c) d += frame[r][c] * frame[q][c];
          for (std::size_t c = 0; c < 3; ++c) frame[r][c] -= d * frame[q][c];
        }
        double n = 0.0;
        for (double v : frame[r]) n += v * v;
        for (double& v : frame[r]) v /= std::sqrt(n);
      }
    }
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int n = 0; n < count; ++n) {
      const double z = 1.0 - 2.0 * (n + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * n;
      const std::array<double, 3> p{r * std::cos(phi), r * std::sin(phi), z};
      std::vector<double> c(3, 0.0);
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) c[a] += frame[b][a] * p[b];
      coords.push_back(std::move(c));
    }
  } else {
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int n = 0; n < count; ++n) {
      std::vector<double> c(static_cast<std::size_t>(k));
      double s = 0.0;
      do {
        s = 0.0;
        for (double& v : c) {
          v = n01(rng);
          s += v * v;
        }
      } while (s < 1e-12);
      for (double& v : c) v /= std::sqrt(s);
      coords.push_back(std::move(c));
    }
  }
  std::vector<UnitImaginary> out;
  out.reserve(coords.size());
  for (const auto& c : coords) {
    Octonion v;
    for (std::size_t a = 0; a < c.size(); ++a) v += c[a] * basis_[a].as_octonion();
    out.push_back(UnitImaginary::normalized(v));
  }
  return out;
}

bool sphere_slice_member(const Domain& d, double a, double b, const UnitImaginary& i) {
  if (!(b > 0.0)) throw PreconditionError("sphere slice needs b > 0");
  return d.contains(tau(i, {a, b}));
}

UnionFind::UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

std::size_t UnionFind::add() {
  parent_.push_back(parent_.size());
  return parent_.size() - 1;
}

std::size_t UnionFind::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (b < a) std::swap(a, b);
  parent_[b] = a;
  return true;
}

std::vector<std::size_t> link_components(
    const std::vector<UnitImaginary>& units, double link_angle,
    const std::function<bool(const UnitImaginary&)>& member) {
  UnionFind uf(units.size());
  for_each_close_pair(units, link_angle, [&](std::size_t a, std::size_t b) {
    if (uf.find(a) == uf.find(b)) return;
    const UnitImaginary mid =
        UnitImaginary::normalized(units[a].as_octonion() + units[b].as_octonion());
    if (member(mid)) uf.unite(a, b);
  });
  std::vector<std::size_t> labels(units.size());
  for (std::size_t k = 0; k < units.size(); ++k) labels[k] = uf.find(k);
  return labels;
}

double effective_link_angle(const Subsphere& sub, int count, double link_angle) {
  const int k = sub.dimension();
  double spacing = std::numbers::pi;
  if (k == 2) {
    spacing = 2.0 * std::numbers::pi / count;
  } else if (k >= 3) {
    const double area = 2.0 * std::pow(std::numbers::pi, k / 2.0) / std::tgamma(k / 2.0);
    spacing = std::pow(area / count, 1.0 / (k - 1));
  }
  return std::max(link_angle, 2.0 * spacing);
}

std::vector<std::vector<int>> link_neighbours(const std::vector<UnitImaginary>& units,
                                              double link_angle) {
  std::vector<std::vector<int>> nb(units.size());
  for_each_close_pair(units, link_angle, [&](std::size_t a, std::size_t b) {
    nb[a].push_back(static_cast<int>(b));
    nb[b].push_back(static_cast<int>(a));
  });
  for (auto& list : nb) std::sort(list.begin(), list.end());
  return nb;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::same: return "same";
    case Verdict::different: return "different";
    default: return "unknown";
  }
}

namespace {

// Member samples of S(Ω, a, b) on the subsphere, in sample order.
std::vector<UnitImaginary> slice_members(const Domain& d, double a, double b,
                                         const std::vector<UnitImaginary>& samples) {
  const auto flags = kernels::map_indices(samples.size(), [&](std::size_t k) {
    return static_cast<char>(sphere_slice_member(d, a, b, samples[k]));
  });
  std::vector<UnitImaginary> members;
  for (std::size_t k = 0; k < samples.size(); ++k)
    if (flags[k]) members.push_back(samples[k]);
  return members;
}

}  // namespace

Verdict same_component(const Domain& d, double a, double b, const UnitImaginary& i1,
                       const UnitImaginary& i2, const Subsphere& sub, const SamplePlan& plan) {
  plan.validate();
  if (!sphere_slice_member(d, a, b, i1) || !sphere_slice_member(d, a, b, i2))
    throw PreconditionError("queried unit is not a member of the sphere slice");
  if (!sub.contains(i1) || !sub.contains(i2))
    throw PreconditionError("queried unit is outside the subsphere");
  auto units = slice_members(d, a, b, sub.sample(plan.sphere_samples, plan.seed));
  const std::size_t k1 = units.size();
  units.push_back(i1);
  units.push_back(i2);
  const auto labels = link_components(units, plan.link_angle, [&](const UnitImaginary& u) {
    return sphere_slice_member(d, a, b, u);
  });
  if (labels[k1] == labels[k1 + 1]) return Verdict::same;
  const auto size_of = [&](std::size_t label) {
    return std::count(labels.begin(), labels.end(), label);
  };
  const auto need = static_cast<long>(plan.min_component_samples);
  if (size_of(labels[k1]) >= need && size_of(labels[k1 + 1]) >= need) return Verdict::different;
  return Verdict::unknown;
}

Report circularly_connected_scan(const Domain& d, const Subsphere& sub, const SamplePlan& plan) {
  plan.validate();
  const auto samples = sub.sample(plan.sphere_samples, plan.seed);
  Report r;
  r.op = "circularly-connected-scan";
  r.tolerance = 0.0;
  nlohmann::json cells = nlohmann::json::array();
  std::vector<double> excess;
  std::vector<Octonion> where;
  for (double a : grid_values(plan.a_min, plan.a_max, plan.a_steps)) {
    for (double b : grid_values(plan.b_min, plan.b_max, plan.b_steps)) {
      const auto members = slice_members(d, a, b, samples);
      if (members.empty()) continue;
      auto labels = link_components(members, plan.link_angle, [&](const UnitImaginary& u) {
        return sphere_slice_member(d, a, b, u);
      });
      std::sort(labels.begin(), labels.end());
      const auto count = std::unique(labels.begin(), labels.end()) - labels.begin();
      cells.push_back({{"a", a}, {"b", b}, {"members", members.size()}, {"components", count}});
      excess.push_back(static_cast<double>(count - 1));
      where.push_back(tau(members.front(), {a, b}));
    }
  }
  if (excess.empty()) throw EmptySampleError("sample grid misses the domain");
  aggregate(r, excess, where);
  r.pass = r.max_residual == 0.0;
  r.details = {{"cells", cells}, {"sphere_samples", plan.sphere_samples},
               {"link_angle", plan.link_angle}};
  return r;
}

Octonion sample_point(const Domain& d, std::mt19937_64& rng, const SamplePlan& plan) {
  if (const auto* b = d.as<Ball>()) return uniform_in_ball(*b, rng);
  if (const auto* u = d.as<BallUnion>()) {
    std::vector<double> w;
    for (const auto& b : u->balls) w.push_back(std::pow(b.radius, 8));
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    return uniform_in_ball(u->balls[pick(rng)], rng);
  }
  if (const auto* c = d.as<BallChain>()) {
    std::uniform_int_distribution<int> pick(0, c->theta_steps - 1);
    return uniform_in_ball(Ball{c->center(c->theta_at(pick(rng))), c->radius}, rng);
  }
  const Box box = d.bounding_box().clipped(plan.sample_box_radius);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    Octonion::Coeffs c{};
    for (std::size_t l = 0; l < 8; ++l)
      c[l] = std::uniform_real_distribution<double>(box.lo[l], box.hi[l])(rng);
    const Octonion x(c);
    if (d.contains(x)) return x;
  }
  throw EmptySampleError("rejection sampling found no point of the domain");
}

bool stencil_inside(const Domain& d, const Octonion& x, double margin) {
  if (!d.contains(x)) return false;
  for (int l = 0; l < 8; ++l) {
    const Octonion step = margin * Octonion::basis(l);
    if (!d.contains(x + step) || !d.contains(x - step)) return false;
  }
  return true;
}

std::vector<Octonion> interior_samples(const Domain& d, const SamplePlan& plan, int count,
                                       double margin, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Octonion> out;
  const long limit = 2000L * std::max(count, 1);
  for (long attempt = 0; attempt < limit && static_cast<int>(out.size()) < count; ++attempt) {
    const Octonion x = sample_point(d, rng, plan);
    if (x.im_norm() < plan.min_axis_distance) continue;
    if (stencil_inside(d, x, margin)) out.push_back(x);
  }
  if (static_cast<int>(out.size()) < count)
    throw EmptySampleError("domain yields too few interior samples");
  return out;
}

}  // namespace octoslice
