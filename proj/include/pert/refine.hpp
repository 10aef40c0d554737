#pragma once

#include "pert/complex.hpp"

namespace pert {

// One added vertex expressed as a convex combination of earlier vertices
// (parents may themselves be added vertices; index < own index).
struct VertexCombo {
  std::vector<std::pair<int, Rat>> parents;
};

// Refinement of a complex: the refined complex, the combination defining
// each added vertex, and for each refined simplex the original simplex
// carrying it. The geometric carrier is unchanged as a point set.
struct Refinement {
  SimplicialComplex refined;
  int old_vertex_count = 0;
  std::vector<VertexCombo> added;      // vertices old_vertex_count..N-1
  std::vector<int> carrier;            // per refined simplex id: original simplex id

  PLScalarField transport(const PLScalarField& f) const;
  PLMap transport(const PLMap& f) const;
  // Old vertex indices are preserved: vertex v of the original complex is
  // vertex v of the refined one.
};

// Identity refinement (rounds = 0 case and loop seeds).
Refinement identity_refinement(const SimplicialComplex& K);

// Compose: `second` refines `first.refined`.
Refinement compose(const Refinement& first, const Refinement& second);

// Barycentric subdivision applied `rounds` times.
Refinement subdivide(const SimplicialComplex& K, int rounds);

// Conforming refinement of a marked simplex set: longest-edge bisection
// with Rivara cascading (complexes of dimension <= 2). Marked simplices of
// positive dimension are refined; marked vertices are ignored.
Refinement refine_marked(const SimplicialComplex& K, const std::vector<int>& marked_simplices);

// Transport of a vertex region across a refinement: the refined region
// spans the same point set (closed mode: all refined vertices lying inside
// the original span).
VertexRegion transport_region(const Refinement& r, const SimplicialComplex& old_K,
                              const VertexRegion& region);

}  // namespace pert
