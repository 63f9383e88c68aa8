#include "octoslice/liftings.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <queue>
#include <unordered_map>

#include "octoslice/kernels.hpp"

namespace octoslice {

namespace {

constexpr double kEndpointTol = 1e-9;

void check_breakpoints(const std::vector<double>& bp) {
  if (bp.size() < 2) throw PreconditionError("path needs at least two breakpoints");
  if (bp.front() != 0.0 || bp.back() != 1.0)
    throw PreconditionError("path breakpoints must start at 0 and end at 1");
  for (std::size_t k = 1; k < bp.size(); ++k)
    if (!(bp[k] > bp[k - 1])) throw PreconditionError("path breakpoints must increase strictly");
}

// Unit orthogonal to both a and b (imaginary vectors), first in basis order.
Octonion orthogonal_to_both(const Octonion& a, const Octonion& b) {
  std::vector<Octonion> frame;
  for (const Octonion& v : {a, b}) {
    Octonion r = v;
    for (const auto& f : frame) r -= dot(r, f) * f;
    if (r.norm() > 1e-12) frame.push_back(r / r.norm());
  }
  for (int l = 1; l < 8; ++l) {
    Octonion w = Octonion::basis(l);
    for (const auto& f : frame) w -= dot(w, f) * f;
    if (w.norm() > 0.5) return w / w.norm();
  }
  throw PreconditionError("no orthogonal unit found");
}

std::vector<double> uniform_parameters(std::size_t samples) {
  std::vector<double> t(samples);
  for (std::size_t j = 0; j < samples; ++j)
    t[j] = samples == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(samples - 1);
  t.back() = 1.0;
  return t;
}

}  // namespace

SegmentPosition locate(const std::vector<double>& bp, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("path parameter must lie in [0, 1]");
  const auto it = std::upper_bound(bp.begin(), bp.end(), t);
  std::size_t k = it == bp.begin() ? 0 : static_cast<std::size_t>(it - bp.begin()) - 1;
  k = std::min(k, bp.size() - 2);
  return {k, (t - bp[k]) / (bp[k + 1] - bp[k])};
}

void PolyPathC::validate() const {
  check_breakpoints(breakpoints);
  if (values.size() != breakpoints.size())
    throw PreconditionError("path needs one value per breakpoint");
  if (!bends.empty() && bends.size() + 1 != values.size())
    throw PreconditionError("path needs one bend per segment");
  for (double c : bends)
    if (!(c >= -1.0 && c <= 1.0)) throw PreconditionError("bend cosine must lie in [-1, 1]");
}

ComplexPoint PolyPathC::eval(double t) const {
  const auto [k, s] = locate(breakpoints, t);
  const ComplexPoint& a = values[k];
  const ComplexPoint& b = values[k + 1];
  const double alpha = (1.0 - s) * a.alpha + s * b.alpha;
  if (bends.empty() || bends[k] >= 1.0) return {alpha, (1.0 - s) * a.beta + s * b.beta};
  const double p = (1.0 - s) * a.beta, q = s * b.beta;
  return {alpha, std::sqrt(std::max(0.0, p * p + q * q + 2.0 * p * q * bends[k]))};
}

void PolyPathS::validate() const {
  check_breakpoints(breakpoints);
  if (values.size() != breakpoints.size())
    throw PreconditionError("path needs one value per breakpoint");
  if (!weights.empty() && weights.size() != values.size())
    throw PreconditionError("path needs one weight per breakpoint");
  for (double w : weights)
    if (!(w >= 0.0)) throw PreconditionError("sphere path weights must be non-negative");
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    if (dot(values[k], values[k + 1]) < -1.0 + 1e-12)
      throw PreconditionError("consecutive sphere path values are antipodal");
    if (!weights.empty() && weights[k] == 0.0 && weights[k + 1] == 0.0)
      throw PreconditionError("sphere path segment has zero weight at both ends");
  }
}

UnitImaginary PolyPathS::eval(double t) const {
  const auto [k, s] = locate(breakpoints, t);
  if (s == 0.0) return values[k];
  if (s == 1.0) return values[k + 1];
  const double wa = weights.empty() ? 1.0 : weights[k];
  const double wb = weights.empty() ? 1.0 : weights[k + 1];
  const Octonion v = ((1.0 - s) * wa) * values[k].as_octonion() + (s * wb) * values[k + 1].as_octonion();
  if (!(v.norm() > 0.0)) throw DomainError("sphere path passes through zero");
  return UnitImaginary::normalized(v);
}

Octonion lift_eval(const CircularLifting& cl, double t) {
  return tau(cl.coord.eval(t), cl.base.eval(t));
}

void Polyline::validate() const {
  check_breakpoints(breakpoints);
  if (values.size() != breakpoints.size())
    throw PreconditionError("polyline needs one vertex per breakpoint");
}

Octonion Polyline::eval(double t) const {
  const auto [k, s] = locate(breakpoints, t);
  return (1.0 - s) * values[k] + s * values[k + 1];
}

Polyline Polyline::uniform(std::vector<Octonion> vertices) {
  if (vertices.size() < 2) throw PreconditionError("polyline needs at least two vertices");
  Polyline p;
  p.breakpoints = uniform_parameters(vertices.size());
  p.values = std::move(vertices);
  return p;
}

CircularLifting lift_decompose(const Polyline& path) {
  path.validate();
  const std::size_t n = path.values.size();
  std::vector<double> b(n);
  for (std::size_t k = 0; k < n; ++k) b[k] = path.values[k].im_norm();
  for (std::size_t k = 1; k + 1 < n; ++k)
    if (b[k] <= kEpsIm) throw DomainError("path touches real axis");
  if (n == 2 && b[0] <= kEpsIm && b[1] <= kEpsIm) throw DomainError("path touches real axis");

  std::vector<UnitImaginary> units(n);
  for (std::size_t k = 0; k < n; ++k)
    if (b[k] > kEpsIm) units[k] = UnitImaginary::of(path.values[k]);
  if (b[0] <= kEpsIm) units[0] = units[1];
  if (b[n - 1] <= kEpsIm) units[n - 1] = units[n - 2];

  CircularLifting cl;
  cl.base.breakpoints = path.breakpoints;
  cl.coord.breakpoints = path.breakpoints;
  for (std::size_t k = 0; k < n; ++k) {
    cl.base.values.push_back({path.values[k].re(), b[k]});
    cl.coord.values.push_back(units[k]);
    cl.coord.weights.push_back(b[k]);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double c = std::clamp(dot(units[k], units[k + 1]), -1.0, 1.0);
    if (b[k] > kEpsIm && b[k + 1] > kEpsIm && c < -1.0 + 1e-12)
      throw DomainError("path touches real axis");
    cl.base.bends.push_back(c);
  }
  cl.base.validate();
  cl.coord.validate();
  return cl;
}

ApproximateLifting lift_approximate(const Polyline& path, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  path.validate();
  const std::size_t n = path.values.size();

  // Push real interior vertices off the axis.
  std::vector<Octonion> v = path.values;
  const Octonion push = (delta / 4.0) * Octonion::basis(1);
  for (std::size_t k = 1; k + 1 < n; ++k)
    if (v[k].im_norm() <= kEpsIm) v[k] += push;

  // Push segment crossings of the axis off along a unit orthogonal to both ends.
  Polyline adjusted;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    adjusted.breakpoints.push_back(path.breakpoints[k]);
    adjusted.values.push_back(v[k]);
    const Octonion ia = v[k].im(), ib = v[k + 1].im();
    const Octonion diff = ia - ib;
    double s_cross = -1.0;
    if (ia.norm() <= kEpsIm && ib.norm() <= kEpsIm) {
      s_cross = 0.5;
    } else if (diff.norm2() > 0.0) {
      const double s = dot(ia, diff) / diff.norm2();
      if (s > 0.0 && s < 1.0 && ((1.0 - s) * ia + s * ib).norm() <= 1e-9) s_cross = s;
    }
    if (s_cross > 0.0) {
      const double t0 = path.breakpoints[k], t1 = path.breakpoints[k + 1];
      const Octonion on_axis = (1.0 - s_cross) * v[k] + s_cross * v[k + 1];
      adjusted.breakpoints.push_back(t0 + s_cross * (t1 - t0));
      adjusted.values.push_back(on_axis + (delta / 4.0) * orthogonal_to_both(ia, ib));
    }
  }
  adjusted.breakpoints.push_back(1.0);
  adjusted.values.push_back(v[n - 1]);

  ApproximateLifting out;
  out.adjusted = adjusted;
  out.lifting = lift_decompose(adjusted);
  out.resolution = std::max<std::size_t>(10000, 100 * n);
  const auto ts = uniform_parameters(out.resolution);
  const auto dev = kernels::map_indices(ts.size(), [&](std::size_t j) {
    return distance(path.eval(ts[j]), lift_eval(out.lifting, ts[j]));
  });
  out.sup_distance = *std::max_element(dev.begin(), dev.end());
  out.endpoints_exact = distance(lift_eval(out.lifting, 0.0), path.values.front()) <= 1e-12 &&
                        distance(lift_eval(out.lifting, 1.0), path.values.back()) <= 1e-12;
  out.certified = out.endpoints_exact && out.sup_distance < delta;
  return out;
}

bool lift_in_domain(const CircularLifting& cl, const Domain& d, std::size_t samples) {
  if (samples < 2) throw PreconditionError("lifting check needs at least two samples");
  const auto ts = uniform_parameters(samples);
  const auto inside = kernels::map_indices(
      ts.size(), [&](std::size_t j) { return static_cast<char>(d.contains(lift_eval(cl, ts[j]))); });
  return std::all_of(inside.begin(), inside.end(), [](char c) { return c != 0; });
}

std::optional<BallPath> ball_graph_polyline(const Domain& d, const Octonion& x,
                                            const Octonion& y) {
  const auto balls = balls_of(d);
  if (balls.empty()) return std::nullopt;
  const std::size_t n = balls.size();
  std::vector<int> parent(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < n; ++k)
    if (balls[k].contains(x)) {
      seen[k] = 1;
      queue.push_back(k);
    }
  std::optional<std::size_t> goal;
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    if (balls[k].contains(y)) {
      goal = k;
      break;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j]) continue;
      if (distance(balls[k].center, balls[j].center) < balls[k].radius + balls[j].radius) {
        seen[j] = 1;
        parent[j] = static_cast<int>(k);
        queue.push_back(j);
      }
    }
  }
  if (!goal) return std::nullopt;
  std::vector<std::size_t> chain;
  for (int k = static_cast<int>(*goal); k >= 0; k = parent[static_cast<std::size_t>(k)])
    chain.push_back(static_cast<std::size_t>(k));
  std::reverse(chain.begin(), chain.end());

  BallPath out;
  std::vector<Octonion> vertices{x};
  out.clearance = balls[chain.front()].clearance(x);
  if (chain.size() == 1) {
    vertices.push_back(y);
  } else {
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      const Ball& a = balls[chain[k]];
      const Ball& b = balls[chain[k + 1]];
      const double gap = distance(a.center, b.center);
      const double along = 0.5 * (gap - b.radius + a.radius);
      const Octonion lens = a.center + (along / gap) * (b.center - a.center);
      vertices.push_back(a.center);
      vertices.push_back(lens);
      out.clearance = std::min({out.clearance, a.clearance(lens), b.clearance(lens)});
    }
    vertices.push_back(balls[chain.back()].center);
    vertices.push_back(y);
  }
  out.clearance = std::min(out.clearance, balls[chain.back()].clearance(y));
  out.path = Polyline::uniform(std::move(vertices));
  return out;
}


namespace {

// Node of the sampled fiber product: base grid cell (k, l) and unit indices.
struct Node {
  int k, l, a, b;
};

constexpr int kGridOffset = 32768;

std::uint64_t pack(const Node& n) {
  return (static_cast<std::uint64_t>(n.k + kGridOffset) << 48) |
         (static_cast<std::uint64_t>(n.l + kGridOffset) << 32) |
         (static_cast<std::uint64_t>(n.a) << 16) | static_cast<std::uint64_t>(n.b);
}

Node unpack(std::uint64_t key) {
  return {static_cast<int>((key >> 48) & 0xffff) - kGridOffset,
          static_cast<int>((key >> 32) & 0xffff) - kGridOffset,
          static_cast<int>((key >> 16) & 0xffff), static_cast<int>(key & 0xffff)};
}

class FiberGraph {
 public:
  FiberGraph(const Domain& d, std::vector<UnitImaginary> units, double link, ComplexPoint origin,
             double step_alpha, double beta_ref, int beta_div, int kmin, int kmax, int lmax)
      : d_(d),
        units_(std::move(units)),
        nb_(link_neighbours(units_, link)),
        origin_(origin),
        step_(step_alpha),
        beta_ref_(beta_ref),
        beta_div_(beta_div),
        kmin_(kmin),
        kmax_(kmax),
        lmax_(lmax) {}

  ComplexPoint z(int k, int l) const {
    return {origin_.alpha + k * step_, beta_ref_ * l / beta_div_};
  }
  const UnitImaginary& unit(int a) const { return units_[static_cast<std::size_t>(a)]; }
  const std::vector<int>& neighbours(int a) const { return nb_[static_cast<std::size_t>(a)]; }
  bool in_grid(int k, int l) const { return k >= kmin_ && k <= kmax_ && std::abs(l) <= lmax_; }

  bool valid(int k, int l, int a) {
    if (!in_grid(k, l)) return false;
    const std::uint64_t key = (static_cast<std::uint64_t>(k + kGridOffset) << 32) |
                              (static_cast<std::uint64_t>(l + kGridOffset) << 16) |
                              static_cast<std::uint64_t>(a);
    auto it = member_.find(key);
    if (it != member_.end()) return it->second;
    const bool in = d_.contains(tau(unit(a), z(k, l)));
    member_.emplace(key, in);
    return in;
  }

  // Interior quarter points of the base segment with fixed unit a.
  bool base_edge(int k, int l, int k2, int l2, int a) {
    const std::uint64_t key = pack({std::min(k, k2), std::min(l, l2), a, k2 != k ? 0 : 1});
    auto it = base_edges_.find(key);
    if (it != base_edges_.end()) return it->second;
    const ComplexPoint p = z(k, l), q = z(k2, l2);
    bool ok = true;
    for (double s : {0.25, 0.5, 0.75}) {
      const ComplexPoint m{(1 - s) * p.alpha + s * q.alpha, (1 - s) * p.beta + s * q.beta};
      if (!d_.contains(tau(unit(a), m))) {
        ok = false;
        break;
      }
    }
    base_edges_.emplace(key, ok);
    return ok;
  }

  // Interior quarter points of the chord from unit a to unit a2 at cell (k, l).
  bool unit_edge(int k, int l, int a, int a2) {
    const std::uint64_t key = pack({k, l, std::min(a, a2), std::max(a, a2)});
    auto it = unit_edges_.find(key);
    if (it != unit_edges_.end()) return it->second;
    const ComplexPoint p = z(k, l);
    const UnitImaginary& u = unit(std::min(a, a2));
    const UnitImaginary& w = unit(std::max(a, a2));
    bool ok = true;
    for (double s : {0.25, 0.5, 0.75}) {
      const UnitImaginary m =
          UnitImaginary::normalized((1 - s) * u.as_octonion() + s * w.as_octonion());
      if (!d_.contains(tau(m, p))) {
        ok = false;
        break;
      }
    }
    unit_edges_.emplace(key, ok);
    return ok;
  }

 private:
  const Domain& d_;
  std::vector<UnitImaginary> units_;
  std::vector<std::vector<int>> nb_;
  ComplexPoint origin_;
  double step_;
  double beta_ref_;
  int beta_div_;
  int kmin_, kmax_, lmax_;
  std::unordered_map<std::uint64_t, bool> member_;
  std::unordered_map<std::uint64_t, bool> base_edges_;
  std::unordered_map<std::uint64_t, bool> unit_edges_;
};

CCLWitness witness_from_nodes(const FiberGraph& g, const std::vector<Node>& nodes) {
  std::vector<Node> seq = nodes;
  if (seq.size() == 1) seq.push_back(seq.front());
  CCLWitness w;
  const auto ts = uniform_parameters(seq.size());
  w.base.breakpoints = ts;
  w.coord1.breakpoints = ts;
  w.coord2.breakpoints = ts;
  for (const Node& n : seq) {
    w.base.values.push_back(g.z(n.k, n.l));
    w.coord1.values.push_back(g.unit(n.a));
    w.coord2.values.push_back(g.unit(n.b));
  }
  w.resolution = 4 * (seq.size() - 1) + 1;
  return w;
}

}  // namespace

SearchResult ccl_search(const Domain& d, const Octonion& x, const Octonion& xp,
                        const Subsphere& sub, const SamplePlan& plan) {
  plan.validate();
  if (!d.contains(x) || !d.contains(xp))
    throw PreconditionError("search endpoints must lie in the domain");
  SearchResult res;
  const ComplexPoint zx = slice_coordinate(x), zp = slice_coordinate(xp);
  if (std::abs(zx.alpha - zp.alpha) > kEndpointTol || std::abs(zx.beta - zp.beta) > kEndpointTol) {
    res.status = "unequal-base";
    return res;
  }
  if (zx.beta <= kEpsIm || zp.beta <= kEpsIm) {
    // Both points sit on the real axis: a constant pair of liftings.
    CCLWitness w;
    w.base = {{0.0, 1.0}, {zx, zx}, {}};
    w.coord1 = {{0.0, 1.0}, {sub.basis()[0], sub.basis()[0]}, {}};
    w.coord2 = w.coord1;
    w.resolution = 2;
    w.certified = ccl_verify(w, d, x, xp, w.resolution);
    res.status = w.certified ? "found" : "unverified";
    if (w.certified) res.witness = w;
    return res;
  }
  const UnitImaginary i1 = UnitImaginary::of(x), i2 = UnitImaginary::of(xp);
  if (!sub.contains(i1) || !sub.contains(i2))
    throw PreconditionError("search endpoints' units lie outside the subsphere");

  const int count = std::min(plan.search_sphere_samples, 65000);
  auto units = sub.sample(count, plan.seed);
  const int t1 = count, t2 = count + 1, t1n = count + 2, t2n = count + 3;
  units.insert(units.end(), {i1, i2, -i1, -i2});
  res.unit_samples = count;
  res.link_angle = effective_link_angle(sub, count, plan.link_angle);

  const double step = plan.base_step * std::min(1.0, d.feature_size() / 2.0);
  const int beta_div = std::max(1, static_cast<int>(std::lround(zx.beta / step)));
  res.base_step = step;
  const Box box = d.bounding_box().clipped(plan.sample_box_radius);
  double reach = 0.0;
  for (std::size_t l = 1; l < 8; ++l)
    reach += std::max(box.lo[l] * box.lo[l], box.hi[l] * box.hi[l]);
  const double beta_step = zx.beta / beta_div;
  const int limit = kGridOffset - 2;
  const int kmin = std::max(-limit, static_cast<int>(std::floor((box.lo[0] - zx.alpha) / step)) - 1);
  const int kmax = std::min(limit, static_cast<int>(std::ceil((box.hi[0] - zx.alpha) / step)) + 1);
  const int lmax = std::min(limit, static_cast<int>(std::ceil(std::sqrt(reach) / beta_step)) + 1);
  FiberGraph g(d, std::move(units), res.link_angle, zx, step, zx.beta, beta_div, kmin, kmax, lmax);

  struct Entry {
    double f;
    std::uint64_t order;
    std::uint64_t key;
    bool operator>(const Entry& o) const { return f != o.f ? f > o.f : order > o.order; }
  };
  struct Visit {
    std::uint32_t g;
    std::uint64_t parent;
    bool closed;
  };
  const double link = res.link_angle;
  auto heuristic = [&](const Node& n) { return angle_between(g.unit(n.a), g.unit(n.b)) / link; };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::unordered_map<std::uint64_t, Visit> visits;
  std::uint64_t order = 0;
  for (const Node& src : {Node{0, beta_div, t1, t2}, Node{0, -beta_div, t1n, t2n}}) {
    const std::uint64_t key = pack(src);
    visits[key] = {0, key, false};
    open.push({heuristic(src), order++, key});
  }

  std::optional<std::uint64_t> goal;
  while (!open.empty()) {
    const Entry e = open.top();
    open.pop();
    Visit& vis = visits[e.key];
    if (vis.closed) continue;
    vis.closed = true;
    const Node n = unpack(e.key);
    if (distance(g.unit(n.a).as_octonion(), g.unit(n.b).as_octonion()) <= 1e-12) {
      goal = e.key;
      break;
    }
    if (++res.nodes_expanded > plan.node_budget) {
      res.budget_exhausted = true;
      break;
    }
    const std::uint32_t gn = vis.g + 1;
    auto relax = [&](const Node& m) {
      const std::uint64_t key = pack(m);
      auto it = visits.find(key);
      if (it != visits.end() && (it->second.closed || it->second.g <= gn)) return;
      visits[key] = {gn, e.key, false};
      open.push({gn + heuristic(m), order++, key});
    };
    const int dk[4] = {1, -1, 0, 0}, dl[4] = {0, 0, 1, -1};
    for (int dir = 0; dir < 4; ++dir) {
      const int k2 = n.k + dk[dir], l2 = n.l + dl[dir];
      if (!g.valid(k2, l2, n.a) || !g.valid(k2, l2, n.b)) continue;
      if (!g.base_edge(n.k, n.l, k2, l2, n.a) || !g.base_edge(n.k, n.l, k2, l2, n.b)) continue;
      relax({k2, l2, n.a, n.b});
    }
    for (int a2 : g.neighbours(n.a))
      if (g.valid(n.k, n.l, a2) && g.unit_edge(n.k, n.l, n.a, a2)) relax({n.k, n.l, a2, n.b});
    for (int b2 : g.neighbours(n.b))
      if (g.valid(n.k, n.l, b2) && g.unit_edge(n.k, n.l, n.b, b2)) relax({n.k, n.l, n.a, b2});
  }

  if (!goal) {
    res.status = res.budget_exhausted ? "budget" : "exhausted";
    return res;
  }
  std::vector<Node> path;
  for (std::uint64_t key = *goal;;) {
    path.push_back(unpack(key));
    const std::uint64_t parent = visits[key].parent;
    if (parent == key) break;
    key = parent;
  }
  CCLWitness w = witness_from_nodes(g, path);
  w.certified = ccl_verify(w, d, x, xp, w.resolution);
  res.status = w.certified ? "found" : "unverified";
  if (w.certified) res.witness = std::move(w);
  return res;
}

bool ccl_verify(const CCLWitness& w, const Domain& d, const Octonion& x, const Octonion& xp,
                std::size_t samples) {
  try {
    w.base.validate();
    w.coord1.validate();
    w.coord2.validate();
    if (distance(w.coord1.eval(0.0).as_octonion(), w.coord2.eval(0.0).as_octonion()) > 1e-9)
      return false;
    const CircularLifting l1{w.base, w.coord1}, l2{w.base, w.coord2};
    if (distance(lift_eval(l1, 1.0), x) > kEndpointTol) return false;
    if (distance(lift_eval(l2, 1.0), xp) > kEndpointTol) return false;
    return lift_in_domain(l1, d, std::max<std::size_t>(samples, 2)) &&
           lift_in_domain(l2, d, std::max<std::size_t>(samples, 2));
  } catch (const Error&) {
    return false;
  }
}

TransportResult stem_transport(const OctField& f, const CCLWitness& w, const Octonion& x,
                               const Octonion& xp, const Domain& d, const FDScheme& s) {
  if (!ccl_verify(w, d, x, xp, std::max<std::size_t>(w.resolution, 2)))
    throw PreconditionError("witness does not verify");
  TransportResult r;
  r.at_x = stem_at(f, x, s);
  r.at_xp = stem_at(f, xp, s);
  r.deviation = distance(r.at_x, r.at_xp);
  return r;
}

}  // namespace octoslice
