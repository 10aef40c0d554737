#pragma once

#include <cstdint>
#include <optional>

#include "pert/certify.hpp"
#include "pert/refine.hpp"

namespace pert {

struct AvoidOptions {
  std::uint64_t seed = 1;
  int max_subdiv = 48;   // refinement iterations (adaptive bisection rounds)
  int max_retries = 12;  // shell-radius redraws per refinement level
  // Simplex ids the construction is confined to (closed under faces); the
  // map is left untouched at vertices outside. Empty = whole complex.
  std::vector<int> mask;
  // Vertices that must keep their input value bit-for-bit.
  std::vector<int> frozen_verts;
};

// Level-set regions of one avoid-zero run. F[i]/G[i] are vertex-spanned
// stand-ins for {f_i >= eps} / {f_i <= -eps} satisfying the threshold
// sandwich (contained in {f_i >= eps/2} resp. {f_i <= -eps/2}).
struct LevelSets {
  Refinement ref;  // subdivision applied to reach representability
  PLMap f;
  PLScalarField eps;
  std::vector<VertexRegion> F, G;
  int rounds_used = 0;
};

struct ShrinkCertEntry {
  int simplex = -1;
  int index = -1;       // witness coordinate i
  bool inside_V = false;  // true: simplex inside V_i; false: misses cl(W_i)
};

// The (V_i, W_i) shell data with its per-simplex empty-intersection
// certificate: every simplex is inside some V_i or disjoint from some
// closure(W_i).
struct ShrinkSystem {
  std::vector<VertexRegion> V, W;  // open-star regions (vertex sets A_i, B_i)
  std::vector<Rat> radii;
  std::vector<Rat> deltas;
  std::vector<ShrinkCertEntry> cert;
  bool pass = false;
  std::vector<int> offending;  // simplices with no witness index (on failure)
};

struct AvoidZeroResult {
  Refinement ref;  // total refinement applied to the input complex
  PLMap f;         // input transported to the refined complex
  PLScalarField eps;
  PLMap g;
  Certificate nonvanishing;
  Certificate bound;
  LevelSets levels;
  ShrinkSystem shrink;
  int retries_used = 0;
  int refine_rounds_used = 0;
};

// Rational upper bound for 2*sqrt(m)+1 (the pre-scaling constant).
Rat prescale_constant(int m);

// spec [OP] level_sets: subdivides until each region satisfies the
// sandwich invariant with thresholds eps and eps/2.
LevelSets level_sets(const SimplicialComplex& K, const PLMap& f, const PLScalarField& eps,
                     const AvoidOptions& opts = {});

// spec [OP] shrink: randomized shell radii + exact certification. Throws
// RetryBudgetExceeded when no certified system is found at this
// subdivision (the offending simplices are reported in the message).
ShrinkSystem shrink(const SimplicialComplex& K, const std::vector<VertexRegion>& F,
                    const std::vector<VertexRegion>& G, const AvoidOptions& opts = {});

// spec [OP] avoid_zero: the full kernel. Requires target dimension
// exactly dim K + 1 (DimensionMismatch otherwise).
AvoidZeroResult avoid_zero(const SimplicialComplex& K, const PLMap& f, const PLScalarField& eps,
                           const AvoidOptions& opts = {});

// Internal masked kernel: target dimension m may exceed mask dim + 1.
AvoidZeroResult avoid_zero_masked(const SimplicialComplex& K, const PLMap& f,
                                  const PLScalarField& eps, const AvoidOptions& opts);

// spec [OP] oracle_constant_shift: independent oracle g = f - v for a
// sampled constant v with |v| < min eps, certified nonvanishing.
PLMap oracle_constant_shift(const SimplicialComplex& K, const PLMap& f, const PLScalarField& eps,
                            std::uint64_t seed, int sample_budget = 4096);

}  // namespace pert
