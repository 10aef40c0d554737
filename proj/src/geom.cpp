#include "pert/geom.hpp"

#include <algorithm>

namespace pert {

std::optional<RatVec> solve_exact(RatMat A, RatVec b) {
  const std::size_t rows = A.size();
  if (rows == 0) return RatVec{};
  const std::size_t cols = A[0].size();
  if (b.size() != rows) throw EngineError("DimMismatch", "solve_exact: rhs size");
  std::vector<int> pivot_col_of_row;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    Rat inv = A[r][c];
    for (std::size_t j = c; j < cols; ++j) A[r][j] /= inv;
    b[r] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rat f = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;  // inconsistent
  if (r < cols) return std::nullopt;     // underdetermined: caller wants unique
  RatVec x(cols, Rat(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col_of_row[i]] = b[i];
  return x;
}

int rank_exact(RatMat A) {
  if (A.empty()) return 0;
  const std::size_t rows = A.size(), cols = A[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (A[i][c] == 0) continue;
      Rat f = A[i][c] / A[r][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

bool affinely_independent(const std::vector<RatVec>& points) {
  if (points.size() <= 1) return true;
  RatMat M;
  for (std::size_t i = 1; i < points.size(); ++i) M.push_back(sub(points[i], points[0]));
  return rank_exact(M) == static_cast<int>(points.size() - 1);
}

namespace {

// Projection of the origin onto the affine hull of an affinely independent
// subset, expressed in barycentric coordinates. Returns nullopt on a
// degenerate Gram system (cannot happen for independent points).
std::optional<RatVec> project_origin(const std::vector<RatVec>& pts) {
  // x = p0 + sum_i t_i (p_i - p0); minimize |x|^2 -> normal equations.
  const std::size_t k = pts.size();
  if (k == 1) return RatVec{Rat(1)};
  RatMat D;
  for (std::size_t i = 1; i < k; ++i) D.push_back(sub(pts[i], pts[0]));
  RatMat G(k - 1, RatVec(k - 1));
  RatVec rhs(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    for (std::size_t j = 0; j + 1 < k; ++j) G[i][j] = dot(D[i], D[j]);
    rhs[i] = -dot(D[i], pts[0]);
  }
  auto t = solve_exact(G, rhs);
  if (!t) return std::nullopt;
  RatVec lambda(k);
  Rat s = 0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    lambda[i + 1] = (*t)[i];
    s += (*t)[i];
  }
  lambda[0] = 1 - s;
  return lambda;
}

}  // namespace

HullQuery origin_in_hull(const std::vector<RatVec>& points) {
  if (points.empty()) throw EngineError("BadInput", "origin_in_hull: empty point set");
  const std::size_t n = points.size();
  if (n > 20) throw EngineError("BadInput", "origin_in_hull: point set too large");
  HullQuery best;
  bool have = false;
  // Caratheodory: the closest point lies in the relative interior of the
  // hull of some affinely independent subset.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<RatVec> subset;
    std::vector<int> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        subset.push_back(points[i]);
        idx.push_back(static_cast<int>(i));
      }
    if (!affinely_independent(subset)) continue;
    auto lambda = project_origin(subset);
    if (!lambda) continue;
    bool feasible = true;
    for (const Rat& l : *lambda)
      if (l < 0) {
        feasible = false;
        break;
      }
    if (!feasible) continue;
    RatVec x(points[0].size(), Rat(0));
    for (std::size_t i = 0; i < subset.size(); ++i)
      x = add(x, scale((*lambda)[i], subset[i]));
    Rat d2 = norm_sq(x);
    if (!have || d2 < best.dist_sq) {
      have = true;
      best.dist_sq = d2;
      best.witness = x;
      best.coeffs.assign(n, Rat(0));
      for (std::size_t i = 0; i < subset.size(); ++i) best.coeffs[idx[i]] = (*lambda)[i];
    }
    if (d2 == 0) break;
  }
  if (!have) throw EngineError("Internal", "hull query found no candidate");
  best.contains_origin = (best.dist_sq == 0);
  if (best.contains_origin)
    best.witness.clear();
  else {
    // sanity: witness separates every input point
    Rat w2 = norm_sq(best.witness);
    for (const auto& p : points)
      if (dot(best.witness, p) < w2)
        throw EngineError("Internal", "hull witness failed separation check");
    best.coeffs.clear();
  }
  return best;
}

}  // namespace pert
