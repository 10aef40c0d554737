#include "pert/refine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pert {

namespace {

std::vector<std::vector<int>> trace_supports(const SimplicialComplex& refined,
                                             int old_vertex_count,
                                             const std::vector<VertexCombo>& added) {
  std::vector<std::vector<int>> sup(refined.vertex_count());
  for (int v = 0; v < old_vertex_count; ++v) sup[v] = {v};
  for (std::size_t i = 0; i < added.size(); ++i) {
    std::set<int> s;
    for (const auto& [p, w] : added[i]) {
      (void)w;
      s.insert(sup[p].begin(), sup[p].end());
    }
    sup[old_vertex_count + static_cast<int>(i)].assign(s.begin(), s.end());
  }
  return sup;
}

void fill_carriers(Refinement& r, const SimplicialComplex& old_K) {
  auto sup = trace_supports(r.refined, r.old_vertex_count, r.added);
  r.carrier.assign(r.refined.simplices.size(), -1);
  for (std::size_t i = 0; i < r.refined.simplices.size(); ++i) {
    std::set<int> u;
    for (int v : r.refined.simplices[i]) u.insert(sup[v].begin(), sup[v].end());
    std::vector<int> key(u.begin(), u.end());
    int id = old_K.find_simplex(key);
    if (id < 0) throw EngineError("Internal", "refined simplex escapes original carrier");
    r.carrier[i] = id;
  }
}

}  // namespace

PLScalarField Refinement::transport(const PLScalarField& f) const {
  PLScalarField out;
  out.values = f.values;
  out.values.resize(refined.vertex_count());
  for (std::size_t i = 0; i < added.size(); ++i) {
    Rat v = 0;
    for (const auto& [p, w] : added[i]) v += w * out.values[p];
    out.values[old_vertex_count + static_cast<int>(i)] = v;
  }
  return out;
}

PLMap Refinement::transport(const PLMap& f) const {
  PLMap out;
  out.target_dim = f.target_dim;
  out.values = f.values;
  out.values.resize(refined.vertex_count());
  for (std::size_t i = 0; i < added.size(); ++i) {
    RatVec v(f.target_dim, Rat(0));
    for (const auto& [p, w] : added[i]) v = add(v, scale(w, out.values[p]));
    out.values[old_vertex_count + static_cast<int>(i)] = v;
  }
  return out;
}

Refinement identity_refinement(const SimplicialComplex& K) {
  Refinement r;
  r.refined = K;
  r.old_vertex_count = K.vertex_count();
  r.carrier.resize(K.simplices.size());
  for (std::size_t i = 0; i < K.simplices.size(); ++i) r.carrier[i] = static_cast<int>(i);
  return r;
}

Refinement compose(const Refinement& first, const Refinement& second) {
  Refinement r;
  r.refined = second.refined;
  r.old_vertex_count = first.old_vertex_count;
  r.added = first.added;
  r.added.insert(r.added.end(), second.added.begin(), second.added.end());
  r.carrier.resize(second.carrier.size());
  for (std::size_t i = 0; i < second.carrier.size(); ++i)
    r.carrier[i] = first.carrier[second.carrier[i]];
  return r;
}

namespace {

Refinement barycentric_once(const SimplicialComplex& K) {
  Refinement r;
  r.old_vertex_count = K.vertex_count();
  std::vector<RatVec> verts = K.vertices;
  std::map<std::vector<int>, int> bary_id;
  for (int v = 0; v < K.vertex_count(); ++v) bary_id[{v}] = v;
  for (const auto& s : K.simplices) {
    if (s.size() < 2) continue;
    RatVec c(K.vertices[0].size(), Rat(0));
    Rat w = Rat(1, static_cast<unsigned>(s.size()));
    VertexCombo combo;
    for (int v : s) {
      c = add(c, scale(w, K.vertices[v]));
      combo.parents.emplace_back(v, w);
    }
    bary_id[s] = static_cast<int>(verts.size());
    verts.push_back(c);
    r.added.push_back(std::move(combo));
  }
  // cells: one per (maximal simplex, vertex permutation), vertices are the
  // barycenters of the prefix faces
  std::vector<std::vector<int>> cells;
  for (int mid : K.maximal) {
    std::vector<int> s = K.simplices[mid];
    std::sort(s.begin(), s.end());
    std::vector<int> perm(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) perm[i] = static_cast<int>(i);
    do {
      std::vector<int> cell;
      std::vector<int> prefix;
      for (std::size_t k = 0; k < s.size(); ++k) {
        prefix.push_back(s[perm[k]]);
        std::vector<int> key = prefix;
        std::sort(key.begin(), key.end());
        cell.push_back(bary_id.at(key));
      }
      cells.push_back(cell);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  SimplicialComplex refined;
  refined.vertices = std::move(verts);
  refined.simplices = std::move(cells);
  refined.finalize();
  r.refined = std::move(refined);
  fill_carriers(r, K);
  return r;
}

}  // namespace

Refinement subdivide(const SimplicialComplex& K, int rounds) {
  if (rounds < 0) throw EngineError("BadInput", "subdivide: negative rounds");
  Refinement acc = identity_refinement(K);
  for (int i = 0; i < rounds; ++i) acc = compose(acc, barycentric_once(acc.refined));
  return acc;
}

namespace {

struct Mesh {
  std::vector<RatVec> coords;
  std::vector<VertexCombo> added;
  int old_vertex_count = 0;
  struct Tri { int v[3]; bool alive = true; };
  struct Seg { int v[2]; bool alive = true; };
  std::vector<Tri> tris;
  std::vector<Seg> segs;
  std::map<std::pair<int, int>, int> midpoint;  // split edge -> midpoint vertex

  const SimplicialComplex* K = nullptr;

  static std::pair<int, int> key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

  Rat len_sq(int u, int v) const { return norm_sq(sub(coords[u], coords[v])); }

  // longest edge of a triangle, deterministic tie-break on the index pair
  std::pair<int, int> longest_edge(const Tri& t) const {
    std::pair<int, int> best = key(t.v[0], t.v[1]);
    Rat best_len = len_sq(best.first, best.second);
    for (auto [a, b] : {std::pair{t.v[0], t.v[2]}, std::pair{t.v[1], t.v[2]}}) {
      auto k = key(a, b);
      Rat l = len_sq(k.first, k.second);
      if (l > best_len || (l == best_len && k < best)) {
        best = k;
        best_len = l;
      }
    }
    return best;
  }

  bool tri_has_edge(const Tri& t, std::pair<int, int> e) const {
    int hit = 0;
    for (int x : t.v)
      if (x == e.first || x == e.second) ++hit;
    return hit == 2;
  }

  int ensure_midpoint(std::pair<int, int> e) {
    auto it = midpoint.find(e);
    if (it != midpoint.end()) return it->second;
    int m = static_cast<int>(coords.size());
    coords.push_back(scale(Rat(1, 2), add(coords[e.first], coords[e.second])));
    VertexCombo c;
    c.parents = {{e.first, Rat(1, 2)}, {e.second, Rat(1, 2)}};
    added.push_back(std::move(c));
    midpoint[e] = m;
    return m;
  }

  void split_edge(std::pair<int, int> e) {
    int m = ensure_midpoint(e);
    const std::size_t ntri = tris.size();
    for (std::size_t i = 0; i < ntri; ++i) {
      if (!tris[i].alive || !tri_has_edge(tris[i], e)) continue;
      int apex = -1;
      for (int x : tris[i].v)
        if (x != e.first && x != e.second) apex = x;
      tris[i].alive = false;
      tris.push_back({{apex, e.first, m}, true});
      tris.push_back({{apex, m, e.second}, true});
    }
    const std::size_t nseg = segs.size();
    for (std::size_t i = 0; i < nseg; ++i) {
      if (!segs[i].alive) continue;
      auto k = key(segs[i].v[0], segs[i].v[1]);
      if (k != e) continue;
      segs[i].alive = false;
      segs.push_back({{e.first, m}, true});
      segs.push_back({{m, e.second}, true});
    }
  }

  // Rivara longest-edge bisection of triangle index ti.
  void bisect_triangle(std::size_t ti) {
    std::vector<std::size_t> stack{ti};
    int guard = 0;
    while (!stack.empty()) {
      if (++guard > 1000000) throw EngineError("Internal", "bisection cascade did not terminate");
      std::size_t t = stack.back();
      if (!tris[t].alive) {
        stack.pop_back();
        continue;
      }
      auto e = longest_edge(tris[t]);
      std::vector<std::size_t> bad;
      for (std::size_t j = 0; j < tris.size(); ++j) {
        if (j == t || !tris[j].alive || !tri_has_edge(tris[j], e)) continue;
        if (longest_edge(tris[j]) != e) bad.push_back(j);
      }
      if (bad.empty()) {
        split_edge(e);
        stack.pop_back();
      } else {
        for (std::size_t b : bad) stack.push_back(b);
      }
    }
  }
};

}  // namespace

Refinement refine_marked(const SimplicialComplex& K, const std::vector<int>& marked_simplices) {
  if (K.dim > 2) return subdivide(K, 1);  // bisection refiner covers dim <= 2

  Mesh mesh;
  mesh.K = &K;
  mesh.coords = K.vertices;
  mesh.old_vertex_count = K.vertex_count();
  std::vector<int> isolated;
  for (int mid : K.maximal) {
    const auto& s = K.simplices[mid];
    if (s.size() == 3)
      mesh.tris.push_back({{s[0], s[1], s[2]}, true});
    else if (s.size() == 2)
      mesh.segs.push_back({{s[0], s[1]}, true});
    else
      isolated.push_back(s[0]);
  }

  // translate marks to the maximal cells containing them
  std::vector<char> tri_marked(mesh.tris.size(), 0), seg_marked(mesh.segs.size(), 0);
  for (int sid : marked_simplices) {
    if (sid < 0 || sid >= static_cast<int>(K.simplices.size()))
      throw EngineError("BadIndex", "refine_marked: bad simplex id");
    const auto& s = K.simplices[sid];
    if (s.size() < 2) continue;
    for (std::size_t i = 0; i < mesh.tris.size(); ++i) {
      const auto& t = mesh.tris[i];
      int hit = 0;
      for (int v : s)
        for (int x : t.v)
          if (v == x) ++hit;
      if (hit == static_cast<int>(s.size())) tri_marked[i] = 1;
    }
    if (s.size() == 2)
      for (std::size_t i = 0; i < mesh.segs.size(); ++i)
        if (Mesh::key(mesh.segs[i].v[0], mesh.segs[i].v[1]) == Mesh::key(s[0], s[1]))
          seg_marked[i] = 1;
  }

  for (std::size_t i = 0; i < seg_marked.size(); ++i)
    if (seg_marked[i] && mesh.segs[i].alive)
      mesh.split_edge(Mesh::key(mesh.segs[i].v[0], mesh.segs[i].v[1]));
  for (std::size_t i = 0; i < tri_marked.size(); ++i)
    if (tri_marked[i] && mesh.tris[i].alive) mesh.bisect_triangle(i);

  std::vector<std::vector<int>> cells;
  for (const auto& t : mesh.tris)
    if (t.alive) cells.push_back({t.v[0], t.v[1], t.v[2]});
  for (const auto& s : mesh.segs)
    if (s.alive) cells.push_back({s.v[0], s.v[1]});
  for (int v : isolated) cells.push_back({v});

  Refinement r;
  r.old_vertex_count = K.vertex_count();
  r.added = std::move(mesh.added);
  SimplicialComplex refined;
  refined.vertices = std::move(mesh.coords);
  refined.simplices = std::move(cells);
  refined.finalize();
  r.refined = std::move(refined);
  fill_carriers(r, K);
  return r;
}

VertexRegion transport_region(const Refinement& r, const SimplicialComplex& old_K,
                              const VertexRegion& region) {
  if (region.mode != VertexRegion::Mode::Closed)
    throw EngineError("BadInput", "transport_region: closed regions only");
  auto sup = trace_supports(r.refined, r.old_vertex_count, r.added);
  std::vector<char> in = vertex_flags(old_K, region.verts);
  std::vector<int> out;
  for (int v = 0; v < r.refined.vertex_count(); ++v) {
    bool inside = true;
    for (int o : sup[v])
      if (!in[o]) {
        inside = false;
        break;
      }
    if (inside) out.push_back(v);
  }
  VertexRegion res;
  res.mode = VertexRegion::Mode::Closed;
  res.verts = std::move(out);
  return res;
}

}  // namespace pert
