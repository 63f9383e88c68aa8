#include "octoslice/cclspace.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "octoslice/kernels.hpp"

namespace octoslice {

namespace {

constexpr double kSameZ = 1e-9;
constexpr std::size_t kGridNodeCap = 40000;
constexpr int kFirstUnitCount = 400;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::uint64_t cell_key(int k, int l) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k)) << 32) |
         static_cast<std::uint32_t>(l);
}

struct Grid {
  double h = 0.0;
  double alpha0 = 0.0;
  int kmax = 0;  // k in [-kmax, kmax]
  int lmax = 0;  // l in [-lmax, lmax]
  std::vector<std::pair<int, int>> cells;

  ComplexPoint z(int k, int l) const { return {alpha0 + k * h, l * h}; }
};

Grid make_grid(const Domain& d, const SamplePlan& plan) {
  const Box box = d.bounding_box().clipped(plan.sample_box_radius);
  double bmin2 = 0.0, bmax2 = 0.0;
  for (std::size_t l = 1; l < 8; ++l) {
    const double near = (box.lo[l] <= 0.0 && box.hi[l] >= 0.0)
                            ? 0.0
                            : std::min(std::abs(box.lo[l]), std::abs(box.hi[l]));
    const double far = std::max(std::abs(box.lo[l]), std::abs(box.hi[l]));
    bmin2 += near * near;
    bmax2 += far * far;
  }
  const double bmin = std::sqrt(bmin2), bmax = std::sqrt(bmax2);
  Grid g;
  g.alpha0 = 0.5 * (box.lo[0] + box.hi[0]);
  g.h = 0.05 * std::min(box.diameter(), d.feature_size());
  for (;;) {
    g.kmax = static_cast<int>(std::ceil(0.5 * (box.hi[0] - box.lo[0]) / g.h));
    g.lmax = static_cast<int>(std::ceil(bmax / g.h));
    g.cells.clear();
    for (int k = -g.kmax; k <= g.kmax; ++k)
      for (int l = -g.lmax; l <= g.lmax; ++l)
        if (std::abs(l) * g.h >= bmin - g.h) g.cells.emplace_back(k, l);
    if (g.cells.size() <= kGridNodeCap) return g;
    g.h *= 1.25;
  }
}

// Units at cell (k, l) whose point and four base-neighbours lie in the domain.
std::vector<std::vector<int>> supports(const Domain& d, const Grid& g,
                                       const std::vector<UnitImaginary>& units) {
  return kernels::map_indices(g.cells.size(), [&](std::size_t c) {
    const auto [k, l] = g.cells[c];
    const ComplexPoint z = g.z(k, l);
    std::vector<int> out;
    for (std::size_t a = 0; a < units.size(); ++a) {
      const UnitImaginary& u = units[a];
      if (!d.contains(tau(u, z))) continue;
      if (!d.contains(tau(u, {z.alpha + g.h, z.beta})) ||
          !d.contains(tau(u, {z.alpha - g.h, z.beta})) ||
          !d.contains(tau(u, {z.alpha, z.beta + g.h})) ||
          !d.contains(tau(u, {z.alpha, z.beta - g.h})))
        continue;
      out.push_back(static_cast<int>(a));
    }
    return out;
  });
}

CCLWitness chord_witness(const ComplexPoint& z, const UnitImaginary& a, const UnitImaginary& b,
                         std::size_t samples) {
  CCLWitness w;
  w.base = {{0.0, 1.0}, {z, z}, {}};
  w.coord1 = {{0.0, 1.0}, {a, a}, {}};
  w.coord2 = {{0.0, 1.0}, {a, b}, {}};
  w.resolution = samples;
  w.certified = true;
  return w;
}

// Extends `w` by a base step to z with constant coordinates.
CCLWitness extend_witness(const CCLWitness& w, const ComplexPoint& z) {
  CCLWitness out = w;
  const double n = static_cast<double>(w.base.breakpoints.size() - 1);
  const double scale = n / (n + 1.0);
  for (auto* bp : {&out.base.breakpoints, &out.coord1.breakpoints, &out.coord2.breakpoints}) {
    for (double& t : *bp) t *= scale;
    bp->push_back(1.0);
  }
  out.base.values.push_back(z);
  if (!out.base.bends.empty()) out.base.bends.push_back(1.0);
  out.coord1.values.push_back(out.coord1.values.back());
  out.coord2.values.push_back(out.coord2.values.back());
  if (!out.coord1.weights.empty()) out.coord1.weights.push_back(out.coord1.weights.back());
  if (!out.coord2.weights.empty()) out.coord2.weights.push_back(out.coord2.weights.back());
  out.resolution = w.resolution + 4;
  return out;
}

std::size_t chord_samples(const UnitImaginary& a, const UnitImaginary& b) {
  return 4 * static_cast<std::size_t>(std::ceil(angle_between(a, b) / 0.02)) + 5;
}

UnionFind quotient_graph(const QuotientSample& q) {
  UnionFind uf(q.points.size());
  for (std::size_t p = 0; p < q.points.size(); ++p) uf.unite(p, q.labels[p]);
  for (const auto& [a, b] : q.adjacency) uf.unite(a, b);
  return uf;
}

}  // namespace

std::vector<std::size_t> QuotientSample::classes() const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < labels.size(); ++p)
    if (labels[p] == p) out.push_back(p);
  return out;
}

std::vector<std::size_t> QuotientSample::members(std::size_t class_id) const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < labels.size(); ++p)
    if (labels[p] == class_id) out.push_back(p);
  return out;
}

QuotientSample build_quotient(const Domain& d, const Subsphere& sub, const SamplePlan& plan) {
  plan.validate();
  const Grid g = make_grid(d, plan);

  // Grow the unit sample until enough units see the domain somewhere.
  std::vector<UnitImaginary> units;
  std::vector<std::vector<int>> support;
  int count = sub.dimension() == 1 ? 2 : kFirstUnitCount;
  int supported = 0;
  for (;;) {
    units = sub.sample(count, plan.seed);
    support = supports(d, g, units);
    std::vector<char> seen(units.size(), 0);
    for (const auto& s : support)
      for (int a : s) seen[static_cast<std::size_t>(a)] = 1;
    supported = static_cast<int>(std::count(seen.begin(), seen.end(), 1));
    if (supported >= plan.quotient_min_units || sub.dimension() == 1 ||
        count * 4 > plan.quotient_max_unit_samples)
      break;
    count *= 4;
  }

  QuotientSample q;
  std::vector<int> unit_of;
  std::unordered_map<std::uint64_t, std::size_t> cell_start;
  std::vector<std::size_t> cell_begin;
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    const auto [k, l] = g.cells[c];
    cell_start[cell_key(k, l)] = c;
    cell_begin.push_back(q.points.size());
    for (int a : support[c]) {
      q.points.push_back({g.z(k, l), units[static_cast<std::size_t>(a)]});
      q.cells.emplace_back(k, l);
      unit_of.push_back(a);
    }
  }
  cell_begin.push_back(q.points.size());
  if (q.points.empty()) throw EmptySampleError("no admissible (z, I) samples in the domain");

  q.resolution.z_step = g.h;
  q.resolution.alpha_origin = g.alpha0;
  q.resolution.alpha_nodes = 2 * g.kmax + 1;
  q.resolution.beta_min = -g.lmax;
  q.resolution.beta_max = g.lmax;
  q.resolution.unit_samples = count;
  q.resolution.supported_units = supported;
  q.resolution.link_angle = effective_link_angle(sub, count, plan.link_angle);

  // Point at cell (k, l) carrying unit a, if sampled.
  auto lookup = [&](int k, int l, int a) -> std::size_t {
    auto it = cell_start.find(cell_key(k, l));
    if (it == cell_start.end()) return kNone;
    const auto first = unit_of.begin() + static_cast<std::ptrdiff_t>(cell_begin[it->second]);
    const auto last = unit_of.begin() + static_cast<std::ptrdiff_t>(cell_begin[it->second + 1]);
    const auto pos = std::lower_bound(first, last, a);
    return pos != last && *pos == a ? static_cast<std::size_t>(pos - unit_of.begin()) : kNone;
  };

  // Adjacency: same unit, neighbouring z, midpoint inside.
  for (std::size_t p = 0; p < q.points.size(); ++p) {
    const auto [k, l] = q.cells[p];
    for (const auto& [dk, dl] : {std::pair{1, 0}, std::pair{0, 1}}) {
      const std::size_t r = lookup(k + dk, l + dl, unit_of[p]);
      if (r == kNone) continue;
      const ComplexPoint a = q.points[p].z, b = q.points[r].z;
      const ComplexPoint mid{0.5 * (a.alpha + b.alpha), 0.5 * (a.beta + b.beta)};
      if (d.contains(tau(q.points[p].i, mid))) q.adjacency.emplace_back(p, r);
    }
  }

  UnionFind uf(q.points.size());
  auto try_chord = [&](std::size_t p, std::size_t r) {
    if (uf.find(p) == uf.find(r)) return;
    const std::size_t n = chord_samples(q.points[p].i, q.points[r].i);
    const CCLWitness w = chord_witness(q.points[p].z, q.points[p].i, q.points[r].i, n);
    if (!ccl_verify(w, d, q.points[p].octonion(), q.points[r].octonion(), n)) return;
    uf.unite(p, r);
    q.merges.push_back({MergeRecord::Kind::link, p, r, 0});
  };

  // Link-graph chords, then direct chords between leftover classes of a cell.
  const auto nb = link_neighbours(units, q.resolution.link_angle);
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    const auto [k, l] = g.cells[c];
    for (std::size_t p = cell_begin[c]; p < cell_begin[c + 1]; ++p)
      for (int b : nb[static_cast<std::size_t>(unit_of[p])]) {
        if (b <= unit_of[p]) continue;
        const std::size_t r = lookup(k, l, b);
        if (r != kNone) try_chord(p, r);
      }
    std::vector<std::size_t> reps;
    for (std::size_t p = cell_begin[c]; p < cell_begin[c + 1]; ++p)
      if (uf.find(p) == p) reps.push_back(p);
    for (std::size_t x = 0; x < reps.size(); ++x)
      for (std::size_t y = x + 1; y < reps.size(); ++y) try_chord(reps[x], reps[y]);
  }

  // Carry merges to neighbouring z along constant coordinates.
  auto propagate = [&](std::size_t first) {
    std::deque<std::size_t> queue;
    for (std::size_t m = first; m < q.merges.size(); ++m) queue.push_back(m);
    while (!queue.empty()) {
      const std::size_t m = queue.front();
      queue.pop_front();
      const MergeRecord rec = q.merges[m];
      const auto [k, l] = q.cells[rec.a];
      for (const auto& [dk, dl] :
           {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
        const std::size_t pa = lookup(k + dk, l + dl, unit_of[rec.a]);
        const std::size_t pb = lookup(k + dk, l + dl, unit_of[rec.b]);
        if (pa == kNone || pb == kNone || uf.find(pa) == uf.find(pb)) continue;
        const ComplexPoint z0 = q.points[rec.a].z, z1 = q.points[pa].z;
        bool ok = true;
        for (double s : {0.25, 0.5, 0.75}) {
          const ComplexPoint zs{(1 - s) * z0.alpha + s * z1.alpha, (1 - s) * z0.beta + s * z1.beta};
          if (!d.contains(tau(q.points[rec.a].i, zs)) || !d.contains(tau(q.points[rec.b].i, zs))) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        uf.unite(pa, pb);
        q.merges.push_back({MergeRecord::Kind::propagated, pa, pb, m});
        queue.push_back(q.merges.size() - 1);
      }
    }
  };
  propagate(0);

  // Budgeted searches between classes still split at one z.
  SamplePlan search_plan = plan;
  search_plan.node_budget = plan.quotient_search_budget;
  for (std::size_t c = 0; c < g.cells.size() && q.resolution.searches < plan.quotient_max_searches;
       ++c) {
    std::vector<std::size_t> reps;
    for (std::size_t p = cell_begin[c]; p < cell_begin[c + 1]; ++p)
      if (uf.find(p) == p) reps.push_back(p);
    for (std::size_t x = 1; x < reps.size(); ++x) {
      if (q.resolution.searches >= plan.quotient_max_searches) break;
      if (uf.find(reps[0]) == uf.find(reps[x])) continue;
      ++q.resolution.searches;
      const SearchResult res = ccl_search(d, q.points[reps[0]].octonion(),
                                          q.points[reps[x]].octonion(), sub, search_plan);
      if (!res.witness) continue;
      uf.unite(reps[0], reps[x]);
      q.search_witnesses.push_back(*res.witness);
      q.merges.push_back(
          {MergeRecord::Kind::search, reps[0], reps[x], q.search_witnesses.size() - 1});
      propagate(q.merges.size() - 1);
    }
  }

  q.labels.resize(q.points.size());
  for (std::size_t p = 0; p < q.points.size(); ++p) q.labels[p] = uf.find(p);
  return q;
}

ComplexPoint project_P(const QuotientSample& q, std::size_t class_id) {
  if (class_id >= q.labels.size() || q.labels[class_id] != class_id)
    throw LookupError("unknown quotient class " + std::to_string(class_id));
  return q.points[class_id].z;
}

int count_components(const QuotientSample& q) {
  UnionFind uf = quotient_graph(q);
  int n = 0;
  for (std::size_t p = 0; p < q.points.size(); ++p) n += uf.find(p) == p ? 1 : 0;
  return n;
}

double class_projection_spread(const QuotientSample& q) {
  double spread = 0.0;
  for (std::size_t p = 0; p < q.points.size(); ++p)
    spread = std::max(spread, distance(q.points[p].z, q.points[q.labels[p]].z));
  return spread;
}

Report local_injectivity_check(const QuotientSample& q, int hops) {
  if (hops < 0) throw PreconditionError("hop radius must be non-negative");
  const auto classes = q.classes();
  std::map<std::size_t, std::size_t> index;
  for (std::size_t c = 0; c < classes.size(); ++c) index[classes[c]] = c;
  std::vector<std::vector<std::size_t>> nb(classes.size());
  for (const auto& [a, b] : q.adjacency) {
    const std::size_t ca = index.at(q.labels[a]), cb = index.at(q.labels[b]);
    if (ca == cb) continue;
    nb[ca].push_back(cb);
    nb[cb].push_back(ca);
  }
  for (auto& v : nb) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  std::vector<std::pair<std::size_t, std::size_t>> violations;
  std::vector<int> depth(classes.size(), -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<std::size_t> reach{c};
    depth[c] = 0;
    for (std::size_t head = 0; head < reach.size(); ++head) {
      const std::size_t u = reach[head];
      if (depth[u] == hops) continue;
      for (std::size_t v : nb[u])
        if (depth[v] < 0) {
          depth[v] = depth[u] + 1;
          reach.push_back(v);
        }
    }
    for (std::size_t u : reach) depth[u] = -1;
    for (std::size_t v : reach) {
      if (v == c) continue;
      if (distance(q.points[classes[c]].z, q.points[classes[v]].z) <= kSameZ)
        violations.emplace_back(std::min(classes[c], classes[v]), std::max(classes[c], classes[v]));
    }
  }
  std::sort(violations.begin(), violations.end());
  violations.erase(std::unique(violations.begin(), violations.end()), violations.end());

  Report r;
  r.op = "local-injectivity";
  r.samples = classes.size();
  r.max_residual = static_cast<double>(violations.size());
  r.mean_residual = classes.empty() ? 0.0 : r.max_residual / static_cast<double>(classes.size());
  r.tolerance = 0.0;
  r.pass = violations.empty();
  if (!violations.empty()) r.worst_point = q.points[violations.front().first].octonion();
  nlohmann::json v = nlohmann::json::array();
  for (const auto& [a, b] : violations) v.push_back({a, b});
  r.details = {{"hops", hops}, {"violations", v}};
  return r;
}

StemVector quotient_stem(const OctField& f, const QuotientSample& q, std::size_t class_id,
                         const FDScheme& s) {
  project_P(q, class_id);
  const auto mem = q.members(class_id);
  const auto stems = kernels::map_indices(mem.size(), [&](std::size_t j) {
    const SlicePoint& p = q.points[mem[j]];
    StemVector st = stem_at(f, p.octonion(), s);
    // stem_at works in the β > 0 chart; the class lives at z, so flip for β < 0.
    if (p.z.beta < 0.0) st.v = -st.v;
    return st;
  });
  for (const auto& st : stems)
    if (distance(st, stems.front()) > 1e-6)
      throw IntegrityError("class representatives disagree on the stem");
  return stems.front();
}

CCLWitness merge_witness(const QuotientSample& q, std::size_t k) {
  if (k >= q.merges.size()) throw LookupError("unknown merge " + std::to_string(k));
  const MergeRecord& m = q.merges[k];
  switch (m.kind) {
    case MergeRecord::Kind::link:
      return chord_witness(q.points[m.a].z, q.points[m.a].i, q.points[m.b].i,
                           chord_samples(q.points[m.a].i, q.points[m.b].i));
    case MergeRecord::Kind::propagated:
      return extend_witness(merge_witness(q, m.parent), q.points[m.a].z);
    case MergeRecord::Kind::search:
      return q.search_witnesses.at(m.parent);
  }
  throw LookupError("unknown merge kind");
}

std::vector<std::size_t> replay_merges(const QuotientSample& q, const Domain& d,
                                       std::size_t stride) {
  if (stride == 0) throw PreconditionError("stride must be positive");
  std::vector<std::size_t> picks;
  for (std::size_t k = 0; k < q.merges.size(); k += stride) picks.push_back(k);
  const auto ok = kernels::map_indices(picks.size(), [&](std::size_t j) {
    const MergeRecord& m = q.merges[picks[j]];
    const CCLWitness w = merge_witness(q, picks[j]);
    return static_cast<char>(
        ccl_verify(w, d, q.points[m.a].octonion(), q.points[m.b].octonion(), w.resolution));
  });
  std::vector<std::size_t> failed;
  for (std::size_t j = 0; j < picks.size(); ++j)
    if (!ok[j]) failed.push_back(picks[j]);
  return failed;
}

ClassPath lift_path_to_quotient(const QuotientSample& q, const Domain& d,
                                const CircularLifting& cl, std::size_t samples) {
  if (samples < 2) throw PreconditionError("class path needs at least two samples");
  const double h = q.resolution.z_step;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_cell;
  for (std::size_t p = 0; p < q.points.size(); ++p)
    by_cell[cell_key(q.cells[p].first, q.cells[p].second)].push_back(p);
  UnionFind uf = quotient_graph(q);

  ClassPath out;
  std::size_t root = kNone;
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(samples - 1);
    const SlicePoint sp{cl.base.eval(t), cl.coord.eval(t)};
    out.t.push_back(t);
    out.points.push_back(sp);
    if (!d.contains(sp.octonion())) out.lifted_in_domain = false;
    // The sample is its own class; P returns its z.
    out.max_projection_error = std::max(out.max_projection_error, distance(sp.z, cl.base.eval(t)));

    const int k0 = static_cast<int>(std::lround((sp.z.alpha - q.resolution.alpha_origin) / h));
    const int l0 = static_cast<int>(std::lround(sp.z.beta / h));
    std::size_t best = kNone;
    double best_d = std::numeric_limits<double>::infinity();
    for (int dk = -1; dk <= 1; ++dk)
      for (int dl = -1; dl <= 1; ++dl) {
        auto it = by_cell.find(cell_key(k0 + dk, l0 + dl));
        if (it == by_cell.end()) continue;
        for (std::size_t p : it->second) {
          const double dist = distance(q.points[p].z, sp.z) +
                              distance(q.points[p].i.as_octonion(), sp.i.as_octonion());
          if (dist < best_d) {
            best_d = dist;
            best = p;
          }
        }
      }
    if (best == kNone) {
      out.nearest_class.push_back(kNone);
      out.single_component = false;
      continue;
    }
    out.nearest_class.push_back(q.labels[best]);
    out.max_grid_offset =
        std::max(out.max_grid_offset, distance(project_P(q, q.labels[best]), sp.z));
    const std::size_t r = uf.find(best);
    if (root == kNone) root = r;
    if (r != root) out.single_component = false;
  }
  return out;
}

}  // namespace octoslice
