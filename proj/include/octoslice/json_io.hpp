#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "octoslice/cclspace.hpp"
#include "octoslice/domains.hpp"
#include "octoslice/golden.hpp"
#include "octoslice/liftings.hpp"
#include "octoslice/octonion.hpp"
#include "octoslice/slicefn.hpp"

namespace octoslice {

using json = nlohmann::json;

// Writers. Octonion [8], UnitImaginary [7], ComplexPoint [2].
void to_json(json& j, const Octonion& x);
void to_json(json& j, const UnitImaginary& u);
void to_json(json& j, const ComplexPoint& z);
void to_json(json& j, const StemVector& s);
void to_json(json& j, const ScanReport& s);
void to_json(json& j, const Domain& d);
void to_json(json& j, const SamplePlan& p);
void to_json(json& j, const PolyPathC& p);
void to_json(json& j, const PolyPathS& p);
void to_json(json& j, const Polyline& p);
void to_json(json& j, const CircularLifting& c);
void to_json(json& j, const ApproximateLifting& a);
void to_json(json& j, const CCLWitness& w);
void to_json(json& j, const SearchResult& r);
void to_json(json& j, const QuotientSample& q);
void to_json(json& j, const GoldenPoint& g);

// Readers; malformed input raises ParseError.
Octonion parse_octonion(const json& j);
UnitImaginary parse_unit(const json& j);
ComplexPoint parse_complex(const json& j);
Domain parse_domain(const json& j);
// Starts from `base` and overrides the keys present.
SamplePlan parse_plan(const json& j, SamplePlan base = {});
Polyline parse_polyline(const json& j);
PolyPathC parse_complex_path(const json& j);
PolyPathS parse_sphere_path(const json& j);
CCLWitness parse_witness(const json& j);

json parse_text(const std::string& text);
json read_json_file(const std::string& path);

// Golden points of every built-in field, keyed by field name.
json golden_fixtures();

}  // namespace octoslice
