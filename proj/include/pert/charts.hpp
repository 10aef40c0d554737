#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pert/avoid_core.hpp"
#include "pert/geom.hpp"

namespace pert {

// Region of chart coordinate space a chart's image is declared to cover.
struct ImageRegion {
  enum class Kind { All, Ball, Box };
  Kind kind = Kind::All;
  RatVec center;     // Ball
  Rat radius = 0;    // Ball
  RatVec lo, hi;     // Box

  bool contains(const RatVec& w) const;
  // eta(w): distance from w to the region boundary scaled into (0,1];
  // used as the chart-local margin of safety. All => 1.
  Rat margin(const RatVec& w) const;
};

// A chart of the target manifold with exact rational evaluators in both
// directions and a certified Lipschitz constant for the inverse (chart
// coordinates -> ambient metric).
struct Chart {
  enum class Kind { Affine, Stereographic };
  Kind kind = Kind::Affine;
  std::string name;
  int chart_dim = 0;
  int ambient_dim = 0;
  ImageRegion image;

  // Affine: inverse(w) = A w + b (A ambient_dim x chart_dim), forward is a
  // declared left inverse F y + c with F A = I.
  RatMat A, F;
  RatVec b, c;

  // Stereographic: unit sphere S^{chart_dim} in R^{chart_dim+1}, projecting
  // from pole_sign * e0.
  int pole_sign = 1;

  RatVec forward(const RatVec& ambient) const;   // chart coordinates
  RatVec inverse(const RatVec& w) const;         // ambient point
  bool in_domain(const RatVec& ambient) const;   // forward defined here?
  Rat inverse_lipschitz() const;  // exact upper bound, ambient metric
};

Chart affine_chart(std::string name, RatMat A, RatVec b, ImageRegion image = {});
Chart stereographic_chart(std::string name, int sphere_dim, int pole_sign,
                          ImageRegion image = {});

struct Atlas {
  int ambient_dim = 0;
  std::vector<Chart> charts;
};

// Bad set Z inside a chart: its preimage in chart coordinates, given as an
// exact distance evaluator. dist_sq_lower(w) is a certified lower bound on
// the squared chart-coordinate distance from w to the preimage.
struct ChartTarget {
  enum class Kind { Point, Subspace };
  Kind kind = Kind::Point;
  int chart = 0;
  RatVec point;    // Point: the single bad point
  RatMat basis;    // Subspace: rows span the subspace through `point`
  int codim = 0;   // Lipschitz codimension certificate q

  Rat dist_sq_lower(const RatVec& w) const;  // exact for these kinds
  // Offset of w from the target in the codim normal directions; the map
  // "w -> offset" vanishes exactly on the target and is 1-Lipschitz up to
  // the returned scale.
  RatVec offset(const RatVec& w) const;
};

ChartTarget point_target(int chart, RatVec point);
ChartTarget subspace_target(int chart, RatVec point, RatMat basis, int ambient_chart_dim);

// PL map into the manifold: exact ambient vertex positions plus, per
// maximal simplex, a chart in whose domain all its vertices lie. Midpoint
// coherence across charts is certified at build time.
struct ChartedMap {
  int ambient_dim = 0;
  std::vector<RatVec> values;       // ambient point per vertex
  std::vector<int> chart_of;        // per simplex id: chart index (-1 none)
};

ChartedMap make_charted_map(const SimplicialComplex& K, const Atlas& atlas,
                            std::vector<RatVec> ambient_values);

// Transport across a refinement: added vertices are evaluated through the
// carrier simplex's chart (chart-space affine interpolation, then inverse).
ChartedMap transport_charted(const Refinement& step, const SimplicialComplex& old_K,
                             const Atlas& atlas, const ChartedMap& u);

struct ChartLocalResult {
  Refinement ref;
  ChartedMap u;       // input transported
  ChartedMap g;       // perturbed map
  PLScalarField eps;  // transported tolerance
  Certificate clearance;   // exact: squared ambient distance to Z lower bound > 0
  Certificate bound;       // exact: pointwise ambient ||g - u|| < eps
  AvoidZeroResult core;    // the kernel run in chart coordinates
};

// Chart-local avoidance: push the part of u carried by target.chart through
// the chart, run the avoid-zero kernel on the offset map, pull back.
// `mask` restricts to simplex ids (empty = all simplices in the chart's
// domain); vertices outside are frozen.
ChartLocalResult chart_local_avoid(const SimplicialComplex& K, const Atlas& atlas,
                                   const ChartedMap& u, const PLScalarField& eps,
                                   const ChartTarget& target, const AvoidOptions& opts = {});

// Exact lower bound on squared ambient distance from g to the target set,
// certified per simplex (vertex + midpoint evaluation with the chart
// Lipschitz constant absorbing the interpolation error).
Certificate certify_clearance(const SimplicialComplex& K, const Atlas& atlas, const ChartedMap& g,
                              const ChartTarget& target);

// Exact pointwise ambient bound ||g - u|| < eps (vertexwise, convexity).
Certificate certify_ambient_bound(const SimplicialComplex& K, const ChartedMap& u,
                                  const ChartedMap& g, const PLScalarField& eps);

}  // namespace pert
