#include "pert/complex.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pert/geom.hpp"

namespace pert {

int SimplicialComplex::find_simplex(const std::vector<int>& s) const {
  auto it = simplex_index.find(s);
  return it == simplex_index.end() ? -1 : it->second;
}

Rat SimplicialComplex::edge_length_sq(int u, int v) const {
  return norm_sq(sub(vertices[u], vertices[v]));
}

Rat SimplicialComplex::edge_length(int u, int v) const {
  return rat_from_double(std::sqrt(rat_to_double(edge_length_sq(u, v))));
}

void SimplicialComplex::finalize() {
  const int n = vertex_count();
  std::set<std::vector<int>> all;
  for (auto& s : simplices) {
    for (int v : s)
      if (v < 0 || v >= n) throw EngineError("BadIndex", "vertex index out of range");
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] == s[i + 1])
        throw EngineError("DegenerateSimplex", "repeated vertex in simplex");
    // downward closure by subset enumeration
    const unsigned m = static_cast<unsigned>(s.size());
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> face;
      for (unsigned i = 0; i < m; ++i)
        if (mask & (1u << i)) face.push_back(s[i]);
      all.insert(face);
    }
  }
  for (int v = 0; v < n; ++v) all.insert({v});

  simplices.assign(all.begin(), all.end());
  std::stable_sort(simplices.begin(), simplices.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  simplex_index.clear();
  for (std::size_t i = 0; i < simplices.size(); ++i)
    simplex_index[simplices[i]] = static_cast<int>(i);

  dim = 0;
  for (const auto& s : simplices) dim = std::max(dim, static_cast<int>(s.size()) - 1);

  // geometric non-degeneracy
  for (const auto& s : simplices) {
    if (s.size() < 2) continue;
    std::vector<RatVec> pts;
    for (int v : s) pts.push_back(vertices[v]);
    if (!affinely_independent(pts))
      throw EngineError("DegenerateSimplex", "affinely dependent vertices");
  }

  neighbors.assign(n, {});
  edges.clear();
  for (const auto& s : simplices) {
    if (s.size() != 2) continue;
    edges.emplace_back(s[0], s[1]);
    neighbors[s[0]].push_back(s[1]);
    neighbors[s[1]].push_back(s[0]);
  }
  for (auto& nb : neighbors) std::sort(nb.begin(), nb.end());

  maximal.clear();
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const auto& s = simplices[i];
    bool is_max = true;
    // s is maximal iff no cofacet exists: try adding each other vertex
    std::vector<char> in(n, 0);
    for (int v : s) in[v] = 1;
    std::set<int> cands;
    for (int v : s)
      for (int u : neighbors[v])
        if (!in[u]) cands.insert(u);
    for (int u : cands) {
      std::vector<int> t = s;
      t.push_back(u);
      std::sort(t.begin(), t.end());
      if (has_simplex(t)) {
        is_max = false;
        break;
      }
    }
    if (is_max && s.size() == 1 && !neighbors[s[0]].empty()) is_max = false;
    if (is_max) maximal.push_back(static_cast<int>(i));
  }
}

SimplicialComplex build_complex(std::vector<RatVec> vertices,
                                std::vector<std::vector<int>> simplices) {
  SimplicialComplex K;
  if (!vertices.empty()) {
    const std::size_t d = vertices[0].size();
    for (const auto& v : vertices)
      if (v.size() != d) throw EngineError("BadIndex", "inconsistent vertex dimension");
  }
  K.vertices = std::move(vertices);
  K.simplices = std::move(simplices);
  K.finalize();
  return K;
}

void check_field(const SimplicialComplex& K, const PLScalarField& f, bool strictly_positive) {
  if (static_cast<int>(f.values.size()) != K.vertex_count())
    throw EngineError("CarrierMismatch", "field value count != vertex count");
  if (strictly_positive)
    for (const Rat& v : f.values)
      if (v <= 0) throw EngineError("BadInput", "tolerance field not strictly positive");
}

void check_map(const SimplicialComplex& K, const PLMap& f) {
  if (static_cast<int>(f.values.size()) != K.vertex_count())
    throw EngineError("CarrierMismatch", "map value count != vertex count");
  for (const auto& v : f.values)
    if (static_cast<int>(v.size()) != f.target_dim)
      throw EngineError("DimMismatch", "map row has wrong dimension");
}

bool VertexRegion::contains_vertex(int v) const {
  return std::binary_search(verts.begin(), verts.end(), v);
}

VertexRegion make_region(const SimplicialComplex& K, std::vector<int> verts,
                         VertexRegion::Mode mode) {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (int v : verts)
    if (v < 0 || v >= K.vertex_count()) throw EngineError("BadIndex", "region vertex out of range");
  VertexRegion r;
  r.mode = mode;
  r.verts = std::move(verts);
  return r;
}

std::vector<int> complement_verts(const SimplicialComplex& K, const std::vector<int>& verts) {
  std::vector<char> in = vertex_flags(K, verts);
  std::vector<int> out;
  for (int v = 0; v < K.vertex_count(); ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

std::vector<int> closed_span(const SimplicialComplex& K, const std::vector<int>& verts) {
  std::vector<char> in = vertex_flags(K, verts);
  std::vector<int> ids;
  for (std::size_t i = 0; i < K.simplices.size(); ++i) {
    bool all = true;
    for (int v : K.simplices[i])
      if (!in[v]) {
        all = false;
        break;
      }
    if (all) ids.push_back(static_cast<int>(i));
  }
  return ids;
}

bool simplex_inside_star(const std::vector<int>& simplex, const std::vector<char>& in_set) {
  for (int v : simplex)
    if (!in_set[v]) return false;
  return true;
}

bool simplex_meets_star(const std::vector<int>& simplex, const std::vector<char>& in_set) {
  for (int v : simplex)
    if (in_set[v]) return true;
  return false;
}

std::vector<int> with_neighbors(const SimplicialComplex& K, const std::vector<int>& verts) {
  std::set<int> out(verts.begin(), verts.end());
  for (int v : verts)
    for (int u : K.neighbors[v]) out.insert(u);
  return {out.begin(), out.end()};
}

std::vector<char> vertex_flags(const SimplicialComplex& K, const std::vector<int>& verts) {
  std::vector<char> in(K.vertex_count(), 0);
  for (int v : verts) in[v] = 1;
  return in;
}

RatVec eval_map(const SimplicialComplex& K, const PLMap& f, const std::vector<int>& simplex,
                const RatVec& barycentric) {
  if (simplex.size() != barycentric.size())
    throw EngineError("DimMismatch", "eval_map: barycentric size");
  RatVec out(f.target_dim, Rat(0));
  for (std::size_t i = 0; i < simplex.size(); ++i)
    out = add(out, scale(barycentric[i], f.values[simplex[i]]));
  return out;
}

}  // namespace pert
