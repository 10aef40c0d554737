#include "pert/distance.hpp"

#include <algorithm>
#include <queue>

namespace pert {

DistanceResult distance_to(const SimplicialComplex& K, const std::vector<int>& sources,
                           const std::vector<char>* vertex_mask) {
  const int n = K.vertex_count();
  DistanceResult res;
  res.d.assign(n, Rat(0));
  res.reachable.assign(n, 0);
  Rat total = 0;
  for (auto [u, v] : K.edges) total += K.edge_length(u, v);
  res.unreachable_cap = total + 1;

  using Item = std::pair<Rat, int>;
  auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  std::vector<char> done(n, 0);
  std::vector<Rat> dist(n, res.unreachable_cap);
  for (int s : sources) {
    if (s < 0 || s >= n) throw EngineError("BadIndex", "distance source out of range");
    if (vertex_mask && !(*vertex_mask)[s]) continue;
    dist[s] = 0;
    pq.emplace(Rat(0), s);
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    res.reachable[u] = 1;
    res.d[u] = d;
    for (int w : K.neighbors[u]) {
      if (done[w]) continue;
      if (vertex_mask && !(*vertex_mask)[w]) continue;
      Rat nd = d + K.edge_length(u, w);
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.emplace(nd, w);
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (!res.reachable[v]) res.d[v] = res.unreachable_cap;
  return res;
}

PLScalarField distance_field(const SimplicialComplex& K, const VertexRegion& S) {
  if (S.empty()) throw EngineError("EmptyRegion", "distance_field: empty source region");
  auto res = distance_to(K, S.verts);
  PLScalarField f;
  f.values = std::move(res.d);
  return f;
}

PLScalarField urysohn(const SimplicialComplex& K, const VertexRegion& F, const VertexRegion& G,
                      const Rat& lo, const Rat& hi) {
  PLScalarField out;
  out.values.assign(K.vertex_count(), (lo + hi) / 2);
  if (F.empty() || G.empty()) return out;  // midpoint convention
  {
    std::vector<int> inter;
    std::set_intersection(F.verts.begin(), F.verts.end(), G.verts.begin(), G.verts.end(),
                          std::back_inserter(inter));
    if (!inter.empty())
      throw EngineError("RegionsIntersect", "urysohn: F and G share vertices");
  }
  auto dF = distance_to(K, F.verts);
  auto dG = distance_to(K, G.verts);
  for (int v = 0; v < K.vertex_count(); ++v) {
    const Rat& a = dF.d[v];
    const Rat& b = dG.d[v];
    if (a + b == 0) throw EngineError("RegionsIntersect", "urysohn: zero separation at vertex");
    out.values[v] = lo + (hi - lo) * a / (a + b);
  }
  return out;
}

}  // namespace pert
