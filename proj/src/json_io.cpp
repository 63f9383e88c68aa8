#include "octoslice/json_io.hpp"

#include <fstream>
#include <sstream>

namespace octoslice {

namespace {

template <std::size_t N>
std::array<double, N> numbers(const json& j, const char* what) {
  if (!j.is_array() || j.size() != N)
    throw ParseError(std::string(what) + " must be an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t k = 0; k < N; ++k) {
    if (!j[k].is_number()) throw ParseError(std::string(what) + " entries must be numbers");
    out[k] = j[k].get<double>();
  }
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw ParseError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ParseError(std::string("\"") + key + "\" entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

template <class T>
void override_key(const json& j, const char* key, T& target) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ParseError(std::string("plan key \"") + key + "\" must be a number");
  } else {
    if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.get<long long>() < 0))
      throw ParseError(std::string("plan key \"") + key + "\" must be an integer");
  }
  target = v.get<T>();
}

// Wraps a construction whose own validation throws PreconditionError.
template <class Fn>
auto checked(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

void to_json(json& j, const Octonion& x) { j = x.coeffs(); }
void to_json(json& j, const UnitImaginary& u) { j = u.components(); }
void to_json(json& j, const ComplexPoint& z) { j = json::array({z.alpha, z.beta}); }
void to_json(json& j, const StemVector& s) { j = {{"u", s.u}, {"v", s.v}}; }

void to_json(json& j, const ScanReport& s) {
  j = {{"grid", s.grid}, {"strict_maxima", s.strict_maxima}, {"pass", s.pass}};
}

void to_json(json& j, const Domain& d) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          j = {{"type", "ball"}, {"center", v.center}, {"radius", v.radius}};
        } else if constexpr (std::is_same_v<T, BallUnion>) {
          json balls = json::array();
          for (const auto& b : v.balls) balls.push_back({{"center", b.center}, {"radius", b.radius}});
          j = {{"type", "ball_union"}, {"balls", balls}};
        } else if constexpr (std::is_same_v<T, SlabCone>) {
          j = {{"type", "slab_cone"}, {"i0", v.i0}, {"half_angle", v.half_angle}};
        } else if constexpr (std::is_same_v<T, BallChain>) {
          j = {{"type", "ball_chain"}, {"i", v.i}, {"j", v.j},
               {"theta_steps", v.theta_steps}, {"radius", v.radius}};
        } else {
          j = {{"type", "predicate"}, {"name", v.name}};
        }
      },
      d.variant());
}

void to_json(json& j, const SamplePlan& p) {
  j = {{"seed", p.seed},
       {"sphere_samples", p.sphere_samples},
       {"link_angle", p.link_angle},
       {"min_component_samples", p.min_component_samples},
       {"a_min", p.a_min},
       {"a_max", p.a_max},
       {"a_steps", p.a_steps},
       {"b_min", p.b_min},
       {"b_max", p.b_max},
       {"b_steps", p.b_steps},
       {"slice_eval_units", p.slice_eval_units},
       {"point_samples", p.point_samples},
       {"sample_box_radius", p.sample_box_radius},
       {"min_axis_distance", p.min_axis_distance},
       {"slice_tolerance", p.slice_tolerance},
       {"sfr_tolerance", p.sfr_tolerance},
       {"node_budget", p.node_budget},
       {"search_sphere_samples", p.search_sphere_samples},
       {"base_step", p.base_step},
       {"quotient_min_units", p.quotient_min_units},
       {"quotient_max_unit_samples", p.quotient_max_unit_samples},
       {"quotient_max_searches", p.quotient_max_searches},
       {"quotient_search_budget", p.quotient_search_budget}};
}

void to_json(json& j, const PolyPathC& p) {
  j = {{"breakpoints", p.breakpoints}, {"values", p.values}};
  if (!p.bends.empty()) j["bends"] = p.bends;
}

void to_json(json& j, const PolyPathS& p) {
  j = {{"breakpoints", p.breakpoints}, {"values", p.values}};
  if (!p.weights.empty()) j["weights"] = p.weights;
}

void to_json(json& j, const Polyline& p) {
  j = {{"breakpoints", p.breakpoints}, {"values", p.values}};
}

void to_json(json& j, const CircularLifting& c) { j = {{"base", c.base}, {"coord", c.coord}}; }

void to_json(json& j, const ApproximateLifting& a) {
  j = {{"lifting", a.lifting},
       {"adjusted", a.adjusted},
       {"sup_distance", a.sup_distance},
       {"resolution", a.resolution},
       {"endpoints_exact", a.endpoints_exact},
       {"certified", a.certified}};
}

void to_json(json& j, const CCLWitness& w) {
  j = {{"base", w.base},
       {"coord1", w.coord1},
       {"coord2", w.coord2},
       {"resolution", w.resolution},
       {"certified", w.certified}};
}

void to_json(json& j, const SearchResult& r) {
  j = {{"status", r.status},
       {"witness", r.witness ? json(*r.witness) : json(nullptr)},
       {"budget_exhausted", r.budget_exhausted},
       {"nodes_expanded", r.nodes_expanded},
       {"base_step", r.base_step},
       {"link_angle", r.link_angle},
       {"unit_samples", r.unit_samples}};
}

void to_json(json& j, const QuotientSample& q) {
  json points = json::array();
  for (const auto& p : q.points) points.push_back({{"z", p.z}, {"i", p.i}});
  json kinds = {{"link", 0}, {"propagated", 0}, {"search", 0}};
  for (const auto& m : q.merges) {
    const char* k = m.kind == MergeRecord::Kind::link         ? "link"
                    : m.kind == MergeRecord::Kind::propagated ? "propagated"
                                                              : "search";
    kinds[k] = kinds[k].get<int>() + 1;
  }
  const auto& r = q.resolution;
  j = {{"points", points},
       {"labels", q.labels},
       {"components", count_components(q)},
       {"classes", q.classes().size()},
       {"resolution",
        {{"z_step", r.z_step},
         {"alpha_origin", r.alpha_origin},
         {"alpha_nodes", r.alpha_nodes},
         {"beta_index_range", {r.beta_min, r.beta_max}},
         {"unit_samples", r.unit_samples},
         {"supported_units", r.supported_units},
         {"link_angle", r.link_angle},
         {"searches", r.searches},
         {"adjacency_edges", q.adjacency.size()},
         {"merges", kinds}}}};
}

void to_json(json& j, const GoldenPoint& g) {
  j = {{"input", g.input}, {"expected", g.expected}, {"tolerance", g.tolerance}, {"source", g.source}};
}

Octonion parse_octonion(const json& j) {
  return checked([&] { return Octonion(numbers<8>(j, "octonion")); });
}

UnitImaginary parse_unit(const json& j) {
  return checked([&] { return UnitImaginary(numbers<7>(j, "unit imaginary")); });
}

ComplexPoint parse_complex(const json& j) {
  const auto c = numbers<2>(j, "complex point");
  return {c[0], c[1]};
}

Domain parse_domain(const json& j) {
  return checked([&]() -> Domain {
    const json& type = field(j, "type");
    if (!type.is_string()) throw ParseError("domain \"type\" must be a string");
    const std::string t = type.get<std::string>();
    auto ball = [](const json& b) { return Ball{parse_octonion(field(b, "center")), number(b, "radius")}; };
    if (t == "ball") return Domain(ball(j));
    if (t == "ball_union") {
      const json& balls = field(j, "balls");
      if (!balls.is_array()) throw ParseError("\"balls\" must be an array");
      BallUnion u;
      for (const auto& b : balls) u.balls.push_back(ball(b));
      return Domain(u);
    }
    if (t == "slab_cone") {
      SlabCone s{parse_unit(field(j, "i0"))};
      if (j.contains("half_angle")) s.half_angle = number(j, "half_angle");
      return Domain(s);
    }
    if (t == "ball_chain") {
      BallChain c;
      if (j.contains("i")) c.i = parse_unit(j.at("i"));
      if (j.contains("j")) c.j = parse_unit(j.at("j"));
      if (j.contains("theta_steps")) {
        if (!j.at("theta_steps").is_number_integer()) throw ParseError("\"theta_steps\" must be an integer");
        c.theta_steps = j.at("theta_steps").get<int>();
      }
      if (j.contains("radius")) c.radius = number(j, "radius");
      return Domain(c);
    }
    throw ParseError("unknown domain type \"" + t + "\"");
  });
}

SamplePlan parse_plan(const json& j, SamplePlan p) {
  if (!j.is_object()) throw ParseError("plan must be a JSON object");
  static const std::vector<std::string> known = {
      "seed", "sphere_samples", "link_angle", "min_component_samples", "a_min", "a_max",
      "a_steps", "b_min", "b_max", "b_steps", "slice_eval_units", "point_samples",
      "sample_box_radius", "min_axis_distance", "slice_tolerance", "sfr_tolerance",
      "node_budget", "search_sphere_samples", "base_step", "quotient_min_units",
      "quotient_max_unit_samples", "quotient_max_searches", "quotient_search_budget"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("unknown plan key \"" + key + "\"");
  override_key(j, "seed", p.seed);
  override_key(j, "sphere_samples", p.sphere_samples);
  override_key(j, "link_angle", p.link_angle);
  override_key(j, "min_component_samples", p.min_component_samples);
  override_key(j, "a_min", p.a_min);
  override_key(j, "a_max", p.a_max);
  override_key(j, "a_steps", p.a_steps);
  override_key(j, "b_min", p.b_min);
  override_key(j, "b_max", p.b_max);
  override_key(j, "b_steps", p.b_steps);
  override_key(j, "slice_eval_units", p.slice_eval_units);
  override_key(j, "point_samples", p.point_samples);
  override_key(j, "sample_box_radius", p.sample_box_radius);
  override_key(j, "min_axis_distance", p.min_axis_distance);
  override_key(j, "slice_tolerance", p.slice_tolerance);
  override_key(j, "sfr_tolerance", p.sfr_tolerance);
  override_key(j, "node_budget", p.node_budget);
  override_key(j, "search_sphere_samples", p.search_sphere_samples);
  override_key(j, "base_step", p.base_step);
  override_key(j, "quotient_min_units", p.quotient_min_units);
  override_key(j, "quotient_max_unit_samples", p.quotient_max_unit_samples);
  override_key(j, "quotient_max_searches", p.quotient_max_searches);
  override_key(j, "quotient_search_budget", p.quotient_search_budget);
  checked([&] {
    p.validate();
    return 0;
  });
  return p;
}

Polyline parse_polyline(const json& j) {
  return checked([&] {
    if (j.is_array()) {
      std::vector<Octonion> v;
      for (const auto& x : j) v.push_back(parse_octonion(x));
      return Polyline::uniform(std::move(v));
    }
    Polyline p;
    for (const auto& x : field(j, "values")) p.values.push_back(parse_octonion(x));
    p.breakpoints = j.contains("breakpoints") ? number_list(j, "breakpoints")
                                              : Polyline::uniform(p.values).breakpoints;
    p.validate();
    return p;
  });
}

PolyPathC parse_complex_path(const json& j) {
  return checked([&] {
    PolyPathC p;
    p.breakpoints = number_list(j, "breakpoints");
    for (const auto& x : field(j, "values")) p.values.push_back(parse_complex(x));
    if (j.contains("bends")) p.bends = number_list(j, "bends");
    p.validate();
    return p;
  });
}

PolyPathS parse_sphere_path(const json& j) {
  return checked([&] {
    PolyPathS p;
    p.breakpoints = number_list(j, "breakpoints");
    for (const auto& x : field(j, "values")) p.values.push_back(parse_unit(x));
    if (j.contains("weights")) p.weights = number_list(j, "weights");
    p.validate();
    return p;
  });
}

CCLWitness parse_witness(const json& j) {
  return checked([&] {
    CCLWitness w;
    w.base = parse_complex_path(field(j, "base"));
    w.coord1 = parse_sphere_path(field(j, "coord1"));
    w.coord2 = parse_sphere_path(field(j, "coord2"));
    if (j.contains("resolution")) w.resolution = field(j, "resolution").get<std::size_t>();
    if (j.contains("certified")) w.certified = field(j, "certified").get<bool>();
    return w;
  });
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

json golden_fixtures() {
  std::vector<GoldenField> fields{slab_cone_field(), sqrt_sfr_field()};
  for (auto& f : baseline_fields()) fields.push_back(std::move(f));
  fields.push_back(coordinate_probe_field());
  fields.push_back(affine_sfr_field());
  json out = json::object();
  for (const auto& f : fields) out[f.name] = {{"domain", f.domain}, {"points", f.points}};
  return out;
}

}  // namespace octoslice
