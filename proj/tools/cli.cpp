#include "cli.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "octoslice/acceptance.hpp"
#include "octoslice/cclspace.hpp"
#include "octoslice/golden.hpp"
#include "octoslice/json_io.hpp"
#include "octoslice/liftings.hpp"
#include "octoslice/slicefn.hpp"

namespace octoslice::cli {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Options {
  std::string field = "identity";
  std::string domain, plan, out;
  std::string name, point, z, units, path, x, xp;
  std::string center, half_extent, counts, pair, subsphere;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tolerance = kUnset;
  double delta = kUnset;
  int m = 0, n = 0;
  int hops = 2;
  bool fd = false;
  bool all = false;
  bool summary = false;
};

struct Outcome {
  json body;
  int code = 0;
};

// Inline JSON when the text starts like JSON, otherwise a file path.
json load(const std::string& text, const char* flag) {
  if (text.empty()) throw ParseError(std::string("missing ") + flag);
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{' ||
                                     text[first] == '-' || std::isdigit(text[first])))
    return parse_text(text);
  return read_json_file(text);
}

GoldenField field_named(const std::string& name) {
  if (name == "slab-cone") return slab_cone_field();
  if (name == "sqrt-example") return sqrt_sfr_field();
  if (name == "constant") return constant_field();
  if (name == "identity") return identity_field();
  if (name == "gaussian") return gaussian_field();
  if (name == "coordinate") return coordinate_probe_field();
  if (name == "affine-sfr") return affine_sfr_field();
  throw ParseError("unknown field \"" + name + "\"");
}

struct Context {
  Options o;
  GoldenField g = identity_field();
  std::optional<Domain> domain_override;
  SamplePlan plan;
  FDScheme scheme;

  const Domain& domain() const { return domain_override ? *domain_override : g.domain; }

  Subsphere subsphere() const {
    if (o.subsphere.empty()) return Subsphere::standard();
    const json j = load(o.subsphere, "--subsphere");
    if (!j.is_array()) throw ParseError("--subsphere must be an array of units");
    std::vector<UnitImaginary> basis;
    for (const auto& u : j) basis.push_back(parse_unit(u));
    try {
      return Subsphere(basis);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }

  OrthoPair pair() const {
    if (o.pair.empty()) return OrthoPair(UnitImaginary::basis(1), UnitImaginary::basis(2));
    const json j = load(o.pair, "--pair");
    if (!j.is_array() || j.size() != 2) throw ParseError("--pair must hold two units");
    try {
      return OrthoPair(parse_unit(j[0]), parse_unit(j[1]));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
};

Context make_context(const Options& o) {
  Context c{o, field_named(o.field), std::nullopt, {}, {}};
  if (!o.domain.empty()) c.domain_override = parse_domain(load(o.domain, "--domain"));
  if (!o.plan.empty()) c.plan = parse_plan(load(o.plan, "--plan"));
  if (o.seed_set) c.plan.seed = o.seed;
  c.scheme.prefer_closed_form = !o.fd;
  return c;
}

QuatCoords quat_or_scalar(const std::string& text, double fallback, const char* flag) {
  QuatCoords q{fallback, fallback, fallback, fallback};
  if (text.empty()) return q;
  const json j = load(text, flag);
  if (j.is_number()) {
    q.fill(j.get<double>());
    return q;
  }
  if (!j.is_array() || j.size() != 4) throw ParseError(std::string(flag) + " must be a number or 4 numbers");
  for (std::size_t k = 0; k < 4; ++k) {
    if (!j[k].is_number()) throw ParseError(std::string(flag) + " entries must be numbers");
    q[k] = j[k].get<double>();
  }
  return q;
}

Outcome cmd_eval(const Context& c) {
  const Octonion x = parse_octonion(load(c.o.point, "--point"));
  return {{{"field", c.g.name}, {"point", x}, {"value", c.g.field(x)}}, 0};
}

Outcome cmd_op(const Context& c) {
  const std::string& name = c.o.name;
  const Octonion x = parse_octonion(load(c.o.point, "--point"));
  json body{{"op", name}, {"field", c.g.name}, {"point", x}};
  std::optional<Octonion> value;
  bool residual_op = false;
  if (name == "slice-fueter") {
    value = slice_fueter(c.g.field, x, c.scheme);
    residual_op = true;
  } else if (name == "cauchy-fueter") {
    const OrthoPair p = c.pair();
    value = cauchy_fueter(c.g.field, p, p.project(x), c.scheme);
    residual_op = true;
  } else if (name == "slice-laplacian") {
    const OrthoPair p = c.pair();
    value = slice_laplacian(c.g.field, p, p.project(x), c.scheme);
  } else if (name == "spherical-dirac") {
    value = spherical_dirac(c.g.field, x, c.scheme);
  } else if (name == "euler") {
    value = euler_operator(c.g.field, x, c.scheme);
  } else if (name == "tangential") {
    if (!(c.o.m >= 1 && c.o.n <= 7 && c.o.m < c.o.n)) throw ParseError("tangential needs 1 <= --m < --n <= 7");
    value = tangential_operator(c.g.field, x, c.o.m, c.o.n, c.scheme);
  } else if (name == "gradient") {
    const Gradient grad = gradient(c.g.field, x, c.scheme);
    body["value"] = json(std::vector<Octonion>(grad.begin(), grad.end()));
    return {body, 0};
  } else {
    throw ParseError("unknown operator \"" + name + "\"");
  }
  body["value"] = *value;
  body["residual"] = value->norm();
  const bool checked = residual_op || !std::isnan(c.o.tolerance);
  if (!checked) return {body, 0};
  const double tol = std::isnan(c.o.tolerance) ? c.plan.sfr_tolerance : c.o.tolerance;
  const bool pass = value->norm() <= tol;
  body["tolerance"] = tol;
  body["pass"] = pass;
  return {body, pass ? 0 : 1};
}

Outcome cmd_stem(const Context& c) {
  if (!c.o.point.empty()) {
    const Octonion x = parse_octonion(load(c.o.point, "--point"));
    json body = stem_at(c.g.field, x, c.scheme);
    body["method"] = "gamma";
    return {body, 0};
  }
  const ComplexPoint z = parse_complex(load(c.o.z, "--z"));
  const json u = load(c.o.units, "--units");
  if (!u.is_array() || u.size() != 2) throw ParseError("--units must hold two units");
  json body = stem_from_two_units(c.g.field, z, parse_unit(u[0]), parse_unit(u[1]));
  body["method"] = "two-units";
  return {body, 0};
}

Outcome cmd_bv(const Context& c) {
  if (!c.g.stem) throw ParseError("field \"" + c.g.name + "\" has no closed-form stem");
  const ComplexPoint z = parse_complex(load(c.o.z, "--z"));
  const BVResidual r = bers_vekua_residual(*c.g.stem, z, c.scheme);
  const double res = std::max(r.r1_applicable ? r.r1.norm() : 0.0, r.r2.norm());
  const double tol = std::isnan(c.o.tolerance) ? c.plan.slice_tolerance : c.o.tolerance;
  const bool pass = res <= tol;
  return {{{"z", z}, {"stem", c.g.stem->name}, {"r1", r.r1}, {"r1_applicable", r.r1_applicable},
           {"r2", r.r2}, {"residual", res}, {"tolerance", tol}, {"pass", pass}},
          pass ? 0 : 1};
}

Outcome cmd_sfr(Context c) {
  if (!std::isnan(c.o.tolerance)) c.plan.sfr_tolerance = c.o.tolerance;
  const Report r = sfr_check(c.g.field, c.domain(), c.subsphere(), c.plan, c.scheme);
  return {r, r.pass ? 0 : 1};
}

Outcome cmd_slice(Context c) {
  if (!std::isnan(c.o.tolerance)) c.plan.slice_tolerance = c.o.tolerance;
  const Report r = sliceness_check(c.g.field, c.domain(), c.subsphere(), c.plan, c.scheme);
  return {r, r.pass ? 0 : 1};
}

Outcome cmd_maxmod(const Context& c) {
  SliceGrid grid;
  grid.center = quat_or_scalar(c.o.center, 0.0, "--center");
  grid.half_extent = quat_or_scalar(c.o.half_extent, 1.0, "--half-extent");
  const QuatCoords counts = quat_or_scalar(c.o.counts, 10.0, "--counts");
  for (std::size_t k = 0; k < 4; ++k) {
    if (counts[k] != std::floor(counts[k]) || counts[k] < 1) throw ParseError("--counts must be positive integers");
    grid.counts[k] = static_cast<int>(counts[k]);
  }
  const ScanReport s = modulus_local_max_scan(c.g.field, c.pair(), grid, &c.domain());
  json body = s;
  body["nodes_in_domain"] = s.nodes_in_domain;
  body["interior_nodes"] = s.interior_nodes;
  return {body, s.pass ? 0 : 1};
}

Outcome cmd_lift(const Context& c) {
  if (std::isnan(c.o.delta)) throw ParseError("missing --delta");
  if (!(c.o.delta > 0.0)) throw PreconditionError("--delta must be positive");
  const Polyline path = parse_polyline(load(c.o.path, "--path"));
  const ApproximateLifting a = lift_approximate(path, c.o.delta);
  json body = a;
  body["delta"] = c.o.delta;
  bool ok = a.certified;
  if (c.domain_override) {
    const bool inside = lift_in_domain(a.lifting, *c.domain_override, a.resolution);
    body["in_domain"] = inside;
    ok = ok && inside;
  }
  return {body, ok ? 0 : 1};
}

Outcome cmd_search(const Context& c) {
  const Octonion x = parse_octonion(load(c.o.x, "--x"));
  const Octonion xp = parse_octonion(load(c.o.xp, "--xp"));
  const SearchResult r = ccl_search(c.domain(), x, xp, c.subsphere(), c.plan);
  return {r, r.status == "unverified" ? 1 : 0};
}

Outcome cmd_quotient(const Context& c) {
  const QuotientSample q = build_quotient(c.domain(), c.subsphere(), c.plan);
  json body = q;
  if (c.o.summary) {
    body.erase("points");
    body.erase("labels");
  }
  const Report inj = local_injectivity_check(q, c.o.hops);
  body["local_injectivity"] = inj;
  const bool ok = body["components"].get<int>() <= 2 && inj.pass;
  return {body, ok ? 0 : 1};
}

Outcome cmd_verify(const Context& c) {
  AcceptanceOptions opts;
  opts.seed = c.plan.seed;
  const auto results = run_acceptance(opts, !c.o.all);
  json failure = nullptr;
  bool pass = results.size() == acceptance_criteria().size();
  for (const auto& r : results)
    if (!r.pass) {
      pass = false;
      if (failure.is_null()) failure = r;
    }
  return {{{"pass", pass}, {"criteria", results}, {"failure", failure}}, pass ? 0 : 1};
}

void write(const json& body, const std::string& path, std::ostream& out) {
  const std::string text = body.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slice analysis on octonions: evaluation, operators, stems, liftings, quotients", "octoslice"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--field", o.field,
                  "built-in field: slab-cone, sqrt-example, constant, identity, gaussian, "
                  "coordinate, affine-sfr");
    s->add_option("--domain", o.domain, "domain JSON file (or inline JSON); defaults to the field's");
    s->add_option("--plan", o.plan, "sample plan JSON file (or inline JSON)");
    s->add_option("--seed", o.seed, "random seed (default 0)")->each([&](const std::string&) { o.seed_set = true; });
    s->add_option("--out", o.out, "write JSON here instead of stdout");
    s->add_option("--tolerance", o.tolerance, "pass threshold");
    s->add_flag("--fd", o.fd, "finite differences even where closed-form partials exist");
  };
  struct Command {
    const char* name;
    const char* help;
    std::function<Outcome(const Context&)> fn;
  };
  const std::vector<Command> commands{
      {"eval", "evaluate a field at --point", cmd_eval},
      {"op", "apply operator --name at --point", cmd_op},
      {"stem", "stem vector from --z and two --units, or from --point", cmd_stem},
      {"bv-residual", "Bers-Vekua residual of the closed-form stem at --z", cmd_bv},
      {"sfr-check", "slice Fueter-regularity check on the domain", cmd_sfr},
      {"slice-check", "sliceness check on the domain", cmd_slice},
      {"maxmod-scan", "strict interior modulus maxima on a quaternion slice grid", cmd_maxmod},
      {"lift-approx", "approximate a polyline --path by a circular lifting within --delta", cmd_lift},
      {"ccl-search", "coupled-lifting witness between --x and --xp", cmd_search},
      {"quotient", "sampled quotient of the slice union", cmd_quotient},
      {"verify-suite", "run the acceptance battery", cmd_verify},
      {"fixtures", "export golden points as JSON", [](const Context&) { return Outcome{golden_fixtures(), 0}; }},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& cmd : commands) {
    CLI::App* s = app.add_subcommand(cmd.name, cmd.help);
    common(s);
    subs.emplace_back(s, &cmd);
  }
  auto sub = [&](const char* name) { return app.get_subcommand(name); };
  sub("eval")->add_option("--point", o.point, "octonion [8]")->required();
  sub("op")->add_option("--name", o.name,
                        "slice-fueter, cauchy-fueter, slice-laplacian, spherical-dirac, euler, "
                        "tangential, gradient")->required();
  sub("op")->add_option("--point", o.point, "octonion [8]")->required();
  sub("op")->add_option("--pair", o.pair, "quaternion slice units [[7],[7]]");
  sub("op")->add_option("--m", o.m, "tangential index m");
  sub("op")->add_option("--n", o.n, "tangential index n");
  sub("stem")->add_option("--z", o.z, "complex point [alpha, beta]");
  sub("stem")->add_option("--units", o.units, "two units [[7],[7]]");
  sub("stem")->add_option("--point", o.point, "octonion [8] (stem via the spherical Dirac operator)");
  sub("bv-residual")->add_option("--z", o.z, "complex point [alpha, beta]")->required();
  for (const char* s : {"sfr-check", "slice-check", "ccl-search", "quotient"})
    sub(s)->add_option("--subsphere", o.subsphere, "orthonormal units [[7],...]; default e1,e2,e3");
  sub("maxmod-scan")->add_option("--center", o.center, "grid centre, 4 slice coordinates");
  sub("maxmod-scan")->add_option("--half-extent", o.half_extent, "half extent, number or 4 numbers");
  sub("maxmod-scan")->add_option("--counts", o.counts, "nodes per axis, integer or 4 integers");
  sub("maxmod-scan")->add_option("--pair", o.pair, "quaternion slice units [[7],[7]]");
  sub("lift-approx")->add_option("--path", o.path, "polyline JSON file or inline")->required();
  sub("lift-approx")->add_option("--delta", o.delta, "approximation bound, > 0")->required();
  sub("ccl-search")->add_option("--x", o.x, "octonion [8]")->required();
  sub("ccl-search")->add_option("--xp", o.xp, "octonion [8]")->required();
  sub("quotient")->add_option("--hops", o.hops, "hop radius of the injectivity check");
  sub("quotient")->add_flag("--summary", o.summary, "omit points and labels");
  sub("verify-suite")->add_flag("--all", o.all, "keep going after a failure");

  std::vector<std::string> args;
  for (int k = argc - 1; k > 0; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  const Command* chosen = nullptr;
  for (const auto& [s, cmd] : subs)
    if (s->parsed()) chosen = cmd;
  try {
    const Context c = make_context(o);
    const Outcome result = chosen->fn(c);
    write(result.body, o.out, out);
    return result.code;
  } catch (const ParseError& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    write({{"error", e.kind()}, {"message", e.what()}}, o.out, out);
    return 1;
  }
}

}  // namespace octoslice::cli
