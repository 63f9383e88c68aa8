#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "octoslice/diffops.hpp"
#include "octoslice/domains.hpp"
#include "octoslice/octonion.hpp"
#include "octoslice/slicefn.hpp"

namespace octoslice {

// Index of the segment [t_k, t_{k+1}] holding t, and the local parameter.
struct SegmentPosition {
  std::size_t k;
  double s;
};
SegmentPosition locate(const std::vector<double>& breakpoints, double t);

// Piecewise path in C. Segment k is linear unless bends[k] < 1, in which case
// β follows |(1−s)β_k U + s β_{k+1} U'| for units at cosine bends[k] (the
// modulus of a straight segment between two imaginary parts).
struct PolyPathC {
  std::vector<double> breakpoints;
  std::vector<ComplexPoint> values;
  std::vector<double> bends;

  void validate() const;
  ComplexPoint eval(double t) const;
};

// Piecewise path on the imaginary sphere: normalize((1−s)w_k U_k + s w_{k+1} U_{k+1}).
// Weights default to 1 (plain renormalized chord).
struct PolyPathS {
  std::vector<double> breakpoints;
  std::vector<UnitImaginary> values;
  std::vector<double> weights;

  void validate() const;
  UnitImaginary eval(double t) const;
};

struct CircularLifting {
  PolyPathC base;
  PolyPathS coord;
};

Octonion lift_eval(const CircularLifting& cl, double t);

struct Polyline {
  std::vector<double> breakpoints;
  std::vector<Octonion> values;

  void validate() const;
  Octonion eval(double t) const;
  // Vertices at uniform breakpoints.
  static Polyline uniform(std::vector<Octonion> vertices);
};

// Exact decomposition of a polyline avoiding R on (0, 1): base Re + i|Im|,
// coordinate Im/|Im| (one-sided limits at real endpoints).
CircularLifting lift_decompose(const Polyline& path);

struct ApproximateLifting {
  CircularLifting lifting;
  Polyline adjusted;  // the pushed-off polyline that was decomposed
  double sup_distance = 0.0;
  std::size_t resolution = 0;
  bool endpoints_exact = false;
  bool certified = false;
};

ApproximateLifting lift_approximate(const Polyline& path, double delta);

bool lift_in_domain(const CircularLifting& cl, const Domain& d, std::size_t samples);

// Polyline between two points of a ball union through overlapping balls, with
// its clearance from the boundary (minimum over vertices of the enclosing ball).
struct BallPath {
  Polyline path;
  double clearance = 0.0;
};
std::optional<BallPath> ball_graph_polyline(const Domain& d, const Octonion& x,
                                            const Octonion& y);

struct CCLWitness {
  PolyPathC base;
  PolyPathS coord1;
  PolyPathS coord2;
  std::size_t resolution = 0;
  bool certified = false;
};

struct SearchResult {
  std::optional<CCLWitness> witness;
  // "found", "unequal-base", "exhausted" (graph fully explored) or "budget".
  std::string status;
  bool budget_exhausted = false;
  std::size_t nodes_expanded = 0;
  double base_step = 0.0;
  double link_angle = 0.0;
  int unit_samples = 0;
};

SearchResult ccl_search(const Domain& d, const Octonion& x, const Octonion& xp,
                        const Subsphere& sub, const SamplePlan& plan);

bool ccl_verify(const CCLWitness& w, const Domain& d, const Octonion& x, const Octonion& xp,
                std::size_t samples);

struct TransportResult {
  StemVector at_x;
  StemVector at_xp;
  double deviation = 0.0;
};

TransportResult stem_transport(const OctField& f, const CCLWitness& w, const Octonion& x,
                               const Octonion& xp, const Domain& d, const FDScheme& s = {});


}  // namespace octoslice
