#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pert/complex.hpp"
#include "pert/geom.hpp"

namespace pert {

// Per-simplex verdict with an exact-arithmetic witness. For nonvanishing,
// a passing simplex carries a separating vector h (h.g(v) >= |h|^2 > 0 at
// every vertex); a failing one carries convex coefficients combining the
// vertex values to the origin. For bounds, the witness is the vertex
// margin eps^2 - |g-f|^2 (negative on failure).
struct SimplexVerdict {
  int simplex = -1;
  bool pass = false;
  RatVec witness;
  std::string note;
};

struct Certificate {
  enum class Kind { Nonvanishing, PointwiseBound, Clearance };
  Kind kind = Kind::Nonvanishing;
  bool pass = false;
  std::vector<SimplexVerdict> verdicts;

  std::vector<int> failing_simplices() const;
};

// Exact decision of "g != 0 on the whole carrier" for a PL map: per
// simplex, the origin must lie outside the convex hull of the vertex
// values. Restricted to `mask` simplex ids when given.
Certificate certify_nonvanishing(const SimplicialComplex& K, const PLMap& g,
                                 const std::vector<int>* mask = nullptr);

// Variant deciding nonvanishing of a coordinate slice [first, last) of g.
Certificate certify_nonvanishing_slice(const SimplicialComplex& K, const PLMap& g, int first,
                                       int last, const std::vector<int>* mask = nullptr);

// Exact decision of "||g - f|| < eps pointwise": on a simplex ||g-f|| is
// convex and eps affine, so vertex checks are exact for the whole simplex.
Certificate certify_bound(const SimplicialComplex& K, const PLMap& f, const PLMap& g,
                          const PLScalarField& eps, const std::vector<int>* mask = nullptr);

}  // namespace pert
