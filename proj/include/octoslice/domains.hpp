#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "octoslice/octonion.hpp"
#include "octoslice/report.hpp"

namespace octoslice {

struct Box {
  std::array<double, 8> lo{};
  std::array<double, 8> hi{};

  bool bounded() const;
  double diameter() const;
  Box clipped(double radius) const;
};

struct Ball {
  Octonion center;
  double radius = 1.0;

  bool contains(const Octonion& x) const { return (x - center).norm2() < radius * radius; }
  // Distance from x to the complement; negative outside.
  double clearance(const Octonion& x) const { return radius - (x - center).norm(); }
};

struct BallUnion {
  std::vector<Ball> balls;
};

// |Im| < 1, or |Im| >= 1 with Im inside the cone of half-angle `half_angle`
// around +i0 or -i0.
struct SlabCone {
  UnitImaginary i0;
  double half_angle = 0.7853981633974483;
};

// Union of balls B_t of radius `radius` centred at cos t + (2 + sin t)·φ(t),
// φ(t) = I cos(t/2) + J sin(t/2), over a uniform grid of t in [-π, π].
struct BallChain {
  UnitImaginary i = UnitImaginary::basis(1);
  UnitImaginary j = UnitImaginary::basis(2);
  int theta_steps = 2048;
  double radius = 0.25;

  double theta_at(int k) const;
  Octonion direction(double theta) const;
  Octonion center(double theta) const;
  // Grid indices k with x in B_{t_k}, ascending.
  std::vector<int> covering(const Octonion& x) const;
  // Covering index whose ball centre is nearest to x.
  std::optional<int> deepest(const Octonion& x) const;
};

struct PredicateDomain {
  std::function<bool(const Octonion&)> fn;
  Box box;
  std::string name = "predicate";
};

class Domain {
 public:
  using Variant = std::variant<Ball, BallUnion, SlabCone, BallChain, PredicateDomain>;

  Domain(Variant v);  // NOLINT(google-explicit-constructor)

  bool contains(const Octonion& x) const;
  Box bounding_box() const;
  // Smallest geometric feature (ball diameter); bounds the sampling step.
  double feature_size() const;
  std::string type_name() const;
  const Variant& variant() const { return v_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&v_);
  }

 private:
  Variant v_;
};

// Every ball of a ball-like domain, or nothing.
std::vector<Ball> balls_of(const Domain& d);

struct SamplePlan {
  std::uint64_t seed = 0;

  int sphere_samples = 4000;
  double link_angle = 0.15;
  int min_component_samples = 3;

  // (a, b) grid for sphere-slice scans.
  double a_min = -1.0, a_max = 1.0;
  int a_steps = 5;
  double b_min = 0.5, b_max = 2.0;
  int b_steps = 4;
  // Units per component whose field values enter the sliceness spread.
  int slice_eval_units = 40;

  int point_samples = 200;
  double sample_box_radius = 4.0;
  double min_axis_distance = 0.5;
  double slice_tolerance = 1e-6;
  double sfr_tolerance = 1e-5;

  std::size_t node_budget = 200000;
  int search_sphere_samples = 1500;
  double base_step = 0.1;

  int quotient_min_units = 60;
  int quotient_max_unit_samples = 102400;
  int quotient_max_searches = 64;
  std::size_t quotient_search_budget = 20000;

  void validate() const;
};

// Orthonormal units spanning a great subsphere of the imaginary sphere.
class Subsphere {
 public:
  explicit Subsphere(std::vector<UnitImaginary> basis);
  static Subsphere standard();  // span{e1, e2, e3}
  // Orthonormal completion of {a, b} (or {a} when b is parallel) to 3 units.
  static Subsphere spanning(const UnitImaginary& a, const UnitImaginary& b);

  const std::vector<UnitImaginary>& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  bool contains(const UnitImaginary& u, double tol = 1e-9) const;
  // Deterministic sample of `count` units; a Fibonacci lattice for 2-spheres.
  std::vector<UnitImaginary> sample(int count, std::uint64_t seed) const;

 private:
  std::vector<UnitImaginary> basis_;
};

bool sphere_slice_member(const Domain& d, double a, double b, const UnitImaginary& i);

// Union-find over a fixed index range.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0);
  std::size_t add();
  std::size_t find(std::size_t x);
  // Returns true when two distinct sets were joined; the smaller root wins.
  bool unite(std::size_t a, std::size_t b);
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

// Component labels (smallest member index) of the link graph on `units`:
// pairs closer than `link_angle` whose chord midpoint passes `member`.
std::vector<std::size_t> link_components(
    const std::vector<UnitImaginary>& units, double link_angle,
    const std::function<bool(const UnitImaginary&)>& member);

// Link angle used with `count` samples of `sub`: at least twice the spacing.
double effective_link_angle(const Subsphere& sub, int count, double link_angle);

// Neighbour lists of the link graph (no membership filter), ascending.
std::vector<std::vector<int>> link_neighbours(const std::vector<UnitImaginary>& units,
                                              double link_angle);

enum class Verdict { same, different, unknown };
std::string to_string(Verdict v);

Verdict same_component(const Domain& d, double a, double b, const UnitImaginary& i1,
                       const UnitImaginary& i2, const Subsphere& sub, const SamplePlan& plan);

Report circularly_connected_scan(const Domain& d, const Subsphere& sub, const SamplePlan& plan);

// Uniform-in-ball sampling for ball-like domains, rejection otherwise.
Octonion sample_point(const Domain& d, std::mt19937_64& rng, const SamplePlan& plan);

// Samples whose axis-aligned stencil of half-width `margin` stays inside and
// whose distance to the real axis is at least plan.min_axis_distance.
std::vector<Octonion> interior_samples(const Domain& d, const SamplePlan& plan, int count,
                                       double margin, std::uint64_t seed);

bool stencil_inside(const Domain& d, const Octonion& x, double margin);

}  // namespace octoslice
