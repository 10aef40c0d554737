#pragma once

#include <optional>
#include <vector>

#include "pert/rational.hpp"

namespace pert {

using RatMat = std::vector<RatVec>;  // row-major

// Solves A x = b exactly; returns nullopt if singular/inconsistent.
// A may be rectangular (rows >= cols); consistency is checked.
std::optional<RatVec> solve_exact(RatMat A, RatVec b);

// Rank of the matrix over Q.
int rank_exact(RatMat A);

// Result of the exact origin-vs-convex-hull query for a finite point set.
// If inside: coeffs holds convex coefficients with sum 1 combining to 0.
// If outside: witness is the closest point of the hull to the origin; it
// separates: witness . p >= |witness|^2 > 0 for every input point p.
struct HullQuery {
  bool contains_origin = false;
  Rat dist_sq;           // squared distance from origin to the hull
  RatVec witness;        // separating vector (closest point) when outside
  RatVec coeffs;         // convex combination when inside (aligned with input)
};

HullQuery origin_in_hull(const std::vector<RatVec>& points);

// Affine independence of a point set (columns p_i - p_0 full rank).
bool affinely_independent(const std::vector<RatVec>& points);

}  // namespace pert
