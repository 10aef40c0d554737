#pragma once

#include "pert/complex.hpp"

namespace pert {

// Graph-geodesic distance along edges from a source vertex set. Edge
// lengths are the (dyadically rounded) embedded Euclidean lengths; path
// sums are accumulated exactly, so the 1-Lipschitz edge inequality holds
// exactly for the stored values. Unreachable vertices are capped at a
// value exceeding every geodesic (total edge length + 1).
struct DistanceResult {
  std::vector<Rat> d;
  std::vector<char> reachable;
  Rat unreachable_cap;
};

DistanceResult distance_to(const SimplicialComplex& K, const std::vector<int>& sources,
                           const std::vector<char>* vertex_mask = nullptr);

// spec [OP] distance_field: EmptyRegion on empty S.
PLScalarField distance_field(const SimplicialComplex& K, const VertexRegion& S);

// spec [OP] urysohn: lo on F, hi on G, the ratio formula in between.
// Convention: if either region is empty the constant midpoint field is
// returned. RegionsIntersect if the closed spans meet.
PLScalarField urysohn(const SimplicialComplex& K, const VertexRegion& F, const VertexRegion& G,
                      const Rat& lo, const Rat& hi);

}  // namespace pert
