#pragma once

#include <map>
#include <string>
#include <vector>

#include "pert/rational.hpp"

namespace pert {

// Finite geometric simplicial complex with embedded vertices. The simplex
// list is downward closed (every face present), tuples strictly sorted,
// and every simplex geometrically non-degenerate.
struct SimplicialComplex {
  std::vector<RatVec> vertices;             // embedding coordinates
  std::vector<std::vector<int>> simplices;  // all faces, sorted by (dim, lex)
  int dim = 0;

  // Derived structure, rebuilt by finalize().
  std::vector<std::vector<int>> neighbors;       // vertex adjacency lists
  std::vector<std::pair<int, int>> edges;        // 1-simplices
  std::vector<int> maximal;                      // ids of maximal simplices
  std::map<std::vector<int>, int> simplex_index;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int find_simplex(const std::vector<int>& s) const;
  bool has_simplex(const std::vector<int>& s) const { return find_simplex(s) >= 0; }

  Rat edge_length_sq(int u, int v) const;
  // Edge length as a fixed dyadic rational (rounded Euclidean length); the
  // same value is used everywhere the metric is consulted.
  Rat edge_length(int u, int v) const;

  void finalize();  // sorts, deduplicates, rebuilds caches, validates
};

// spec: raw vertex/simplex data in, invariants established (faces completed
// by downward closure), DegenerateSimplex/BadIndex on bad input.
SimplicialComplex build_complex(std::vector<RatVec> vertices,
                                std::vector<std::vector<int>> simplices);

struct PLScalarField {
  std::vector<Rat> values;  // one per vertex of the carrying complex
};

struct PLMap {
  int target_dim = 0;
  std::vector<RatVec> values;  // one target_dim-vector per vertex
};

void check_field(const SimplicialComplex& K, const PLScalarField& f,
                 bool strictly_positive = false);
void check_map(const SimplicialComplex& K, const PLMap& f);

// Vertex-index set interpreted either as the closed subcomplex it spans or
// as the union of open stars of its vertices.
struct VertexRegion {
  enum class Mode { Closed, OpenStar };
  Mode mode = Mode::Closed;
  std::vector<int> verts;  // sorted, unique

  bool empty() const { return verts.empty(); }
  bool contains_vertex(int v) const;
};

VertexRegion make_region(const SimplicialComplex& K, std::vector<int> verts,
                         VertexRegion::Mode mode);

// Complement vertex set.
std::vector<int> complement_verts(const SimplicialComplex& K, const std::vector<int>& verts);

// Simplex ids of the closed span of a vertex set (simplices with all
// vertices in the set).
std::vector<int> closed_span(const SimplicialComplex& K, const std::vector<int>& verts);

// A simplex lies inside the open-star union of S iff all its vertices are
// in S; it meets the union iff some vertex is in S.
bool simplex_inside_star(const std::vector<int>& simplex, const std::vector<char>& in_set);
bool simplex_meets_star(const std::vector<int>& simplex, const std::vector<char>& in_set);

// S together with all graph neighbors of S (vertex set of the closure of
// the open-star union of S).
std::vector<int> with_neighbors(const SimplicialComplex& K, const std::vector<int>& verts);

std::vector<char> vertex_flags(const SimplicialComplex& K, const std::vector<int>& verts);

// Evaluate PL data at a barycentric point of a simplex.
RatVec eval_map(const SimplicialComplex& K, const PLMap& f, const std::vector<int>& simplex,
                const RatVec& barycentric);

}  // namespace pert
