#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "octoslice/diffops.hpp"
#include "octoslice/domains.hpp"
#include "octoslice/liftings.hpp"
#include "octoslice/report.hpp"
#include "octoslice/slicefn.hpp"

namespace octoslice {

// A point (z, I) of the disjoint union of complex slices.
struct SlicePoint {
  ComplexPoint z;
  UnitImaginary i;

  Octonion octonion() const { return tau(i, z); }
};

// How two samples at the same z were shown equivalent.
//  link:       constant base, coordinates I_a and the chord I_a -> I_b.
//  propagated: the parent merge's witness followed by a base step to this z.
//  search:     a witness found by ccl_search (stored in search_witnesses).
struct MergeRecord {
  enum class Kind { link, propagated, search };
  Kind kind = Kind::link;
  std::size_t a = 0, b = 0;  // sample indices
  std::size_t parent = 0;    // merge index for propagated, witness index for search
};

struct QuotientResolution {
  double z_step = 0.0;
  double alpha_origin = 0.0;
  int alpha_nodes = 0;
  int beta_min = 0, beta_max = 0;  // β = l·z_step for l in [beta_min, beta_max]
  int unit_samples = 0;
  int supported_units = 0;
  double link_angle = 0.0;
  int searches = 0;
};

struct QuotientSample {
  std::vector<SlicePoint> points;
  // Class label of each point: the smallest member index of its class.
  std::vector<std::size_t> labels;
  // Grid neighbours (same unit, neighbouring z); lower index first.
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;
  std::vector<MergeRecord> merges;
  std::vector<CCLWitness> search_witnesses;
  // Grid cell (k, l) of each point.
  std::vector<std::pair<int, int>> cells;
  QuotientResolution resolution;

  // Distinct class labels, ascending.
  std::vector<std::size_t> classes() const;
  // Members of a class, ascending.
  std::vector<std::size_t> members(std::size_t class_id) const;
};

QuotientSample build_quotient(const Domain& d, const Subsphere& sub, const SamplePlan& plan);

ComplexPoint project_P(const QuotientSample& q, std::size_t class_id);

int count_components(const QuotientSample& q);

// Largest |z − z'| between members of one class.
double class_projection_spread(const QuotientSample& q);

Report local_injectivity_check(const QuotientSample& q, int hops);

StemVector quotient_stem(const OctField& f, const QuotientSample& q, std::size_t class_id,
                         const FDScheme& s = {});

// Full witness behind merge `k`.
CCLWitness merge_witness(const QuotientSample& q, std::size_t k);

// Replays ccl_verify on every `stride`-th merge witness; returns the failing merge indices.
std::vector<std::size_t> replay_merges(const QuotientSample& q, const Domain& d,
                                       std::size_t stride = 1);

// A circular lifting sampled as a path of classes. Each sample (γ(t), Θ(t)) is
// its own exact class point; it is paired with the nearest grid class.
struct ClassPath {
  std::vector<double> t;
  std::vector<SlicePoint> points;
  std::vector<std::size_t> nearest_class;
  double max_projection_error = 0.0;  // |P(class) − base(t)|
  double max_grid_offset = 0.0;       // |P(nearest class) − base(t)|
  bool lifted_in_domain = true;
  bool single_component = true;       // all nearest classes in one component
};

ClassPath lift_path_to_quotient(const QuotientSample& q, const Domain& d,
                                const CircularLifting& cl, std::size_t samples);

}  // namespace octoslice
