#include "pert/avoid_core.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "pert/distance.hpp"

namespace pert {

namespace {

// Mask-local view: simplices (closed under faces), vertex set, the edge
// graph of the mask, and the longest mask edge.
struct MaskCtx {
  std::vector<int> simplex_ids;
  std::vector<char> in_simplex;
  std::vector<int> verts;
  std::vector<char> in_vert;
  std::vector<std::vector<int>> nbrs;
  int dim = 0;
  Rat max_edge = 0;
};

MaskCtx make_mask(const SimplicialComplex& K, const std::vector<int>& mask_ids) {
  MaskCtx m;
  m.in_simplex.assign(K.simplices.size(), 0);
  std::set<std::vector<int>> faces;
  std::vector<int> base = mask_ids;
  if (base.empty())
    for (std::size_t i = 0; i < K.simplices.size(); ++i) base.push_back(static_cast<int>(i));
  for (int sid : base) {
    if (sid < 0 || sid >= static_cast<int>(K.simplices.size()))
      throw EngineError("BadIndex", "mask simplex out of range");
    const auto& s = K.simplices[sid];
    const unsigned sz = static_cast<unsigned>(s.size());
    for (unsigned sub = 1; sub < (1u << sz); ++sub) {
      std::vector<int> f;
      for (unsigned i = 0; i < sz; ++i)
        if (sub & (1u << i)) f.push_back(s[i]);
      faces.insert(std::move(f));
    }
  }
  for (const auto& f : faces) {
    int id = K.find_simplex(f);
    if (id < 0) throw EngineError("Internal", "mask face missing from complex");
    m.in_simplex[id] = 1;
  }
  m.in_vert.assign(K.vertex_count(), 0);
  m.nbrs.assign(K.vertex_count(), {});
  for (std::size_t i = 0; i < K.simplices.size(); ++i) {
    if (!m.in_simplex[i]) continue;
    m.simplex_ids.push_back(static_cast<int>(i));
    const auto& s = K.simplices[i];
    m.dim = std::max(m.dim, static_cast<int>(s.size()) - 1);
    for (int v : s) m.in_vert[v] = 1;
    if (s.size() == 2) {
      m.nbrs[s[0]].push_back(s[1]);
      m.nbrs[s[1]].push_back(s[0]);
      m.max_edge = std::max(m.max_edge, K.edge_length(s[0], s[1]));
    }
  }
  for (int v = 0; v < K.vertex_count(); ++v)
    if (m.in_vert[v]) m.verts.push_back(v);
  return m;
}

struct MaskDist {
  std::vector<Rat> d;
  std::vector<char> reach;
  Rat cap;
};

MaskDist mask_dijkstra(const SimplicialComplex& K, const MaskCtx& m,
                       const std::vector<int>& sources) {
  MaskDist res;
  const int n = K.vertex_count();
  Rat total = 1;
  for (int v : m.verts)
    for (int u : m.nbrs[v])
      if (u > v) total += K.edge_length(u, v);
  res.cap = total;
  res.d.assign(n, total);
  res.reach.assign(n, 0);
  using Item = std::pair<Rat, int>;
  auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  std::vector<Rat> dist(n, total);
  std::vector<char> done(n, 0);
  for (int s : sources) {
    if (!m.in_vert[s]) continue;
    dist[s] = 0;
    pq.emplace(Rat(0), s);
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    res.reach[u] = 1;
    res.d[u] = d;
    for (int w : m.nbrs[u]) {
      if (done[w]) continue;
      Rat nd = d + K.edge_length(u, w);
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.emplace(nd, w);
      }
    }
  }
  return res;
}

Rat draw_unit(std::mt19937_64& rng) {
  return Rat(Int(rng()), Int(1) << 64);
}

std::vector<int> level_violations(const SimplicialComplex& K, const MaskCtx& m, const PLMap& f,
                                  const PLScalarField& et) {
  std::vector<int> bad;
  for (int sid : m.simplex_ids) {
    const auto& s = K.simplices[sid];
    if (s.size() < 2) continue;
    bool viol = false;
    for (int i = 0; i < f.target_dim && !viol; ++i) {
      bool hiF = false, loF = false, hiG = false, loG = false;
      for (int v : s) {
        const Rat& fv = f.values[v][i];
        const Rat& ev = et.values[v];
        if (fv - ev >= 0) hiF = true;
        if (fv - ev / 2 < 0) loF = true;
        if (fv + ev <= 0) hiG = true;
        if (fv + ev / 2 > 0) loG = true;
      }
      viol = (hiF && loF) || (hiG && loG);
    }
    if (viol) bad.push_back(sid);
  }
  return bad;
}

void build_level_regions(const SimplicialComplex& K, const MaskCtx& m, const PLMap& f,
                         const PLScalarField& et, std::vector<VertexRegion>& F,
                         std::vector<VertexRegion>& G) {
  F.assign(f.target_dim, {});
  G.assign(f.target_dim, {});
  for (int i = 0; i < f.target_dim; ++i) {
    std::vector<int> fv, gv;
    for (int v : m.verts) {
      if (f.values[v][i] >= et.values[v] / 2) fv.push_back(v);
      if (f.values[v][i] <= -et.values[v] / 2) gv.push_back(v);
    }
    F[i] = make_region(K, std::move(fv), VertexRegion::Mode::Closed);
    G[i] = make_region(K, std::move(gv), VertexRegion::Mode::Closed);
  }
}

std::vector<int> neighbors_of(const MaskCtx& m, const std::vector<char>& set) {
  std::set<int> out;
  for (int v : m.verts) {
    if (set[v]) {
      out.insert(v);
      continue;
    }
    for (int u : m.nbrs[v])
      if (set[u]) {
        out.insert(v);
        break;
      }
  }
  return {out.begin(), out.end()};
}

// One shrink attempt with the given radii fractions; exact feasibility
// checks + the per-simplex empty-intersection certificate.
ShrinkSystem try_shrink(const SimplicialComplex& K, const MaskCtx& m,
                        const std::vector<VertexRegion>& F, const std::vector<VertexRegion>& G,
                        const std::vector<Rat>& fractions) {
  const int mdim = static_cast<int>(F.size());
  ShrinkSystem sys;
  sys.V.resize(mdim);
  sys.W.resize(mdim);
  sys.radii.assign(mdim, Rat(0));
  sys.deltas.assign(mdim, Rat(0));
  std::vector<std::vector<char>> A(mdim), NB(mdim);
  std::vector<char> trivial(mdim, 0);

  for (int i = 0; i < mdim; ++i) {
    if (F[i].empty()) {
      trivial[i] = 1;  // V_i = W_i = empty: annulus empty, certificate trivial
      sys.V[i].mode = sys.W[i].mode = VertexRegion::Mode::OpenStar;
      continue;
    }
    auto d = mask_dijkstra(K, m, F[i].verts);
    Rat bound = d.cap;  // default: swallow the whole mask when G_i is empty
    if (!G[i].empty()) {
      for (int v : G[i].verts) bound = std::min(bound, d.d[v]);
    }
    Rat r = bound * (Rat(1, 4) + fractions[i] / 2);
    std::vector<char> a(K.vertex_count(), 0);
    for (int v : m.verts)
      if (d.d[v] < r) a[v] = 1;
    // delta chosen so closure(V) subset W holds by construction
    Rat delta = r / 16;
    for (int v : m.verts) {
      if (a[v]) continue;
      bool rim = false;
      for (int u : m.nbrs[v])
        if (a[u]) rim = true;
      if (rim) delta = std::max(delta, (d.d[v] - r) * Rat(17, 16));
    }
    std::vector<char> b(K.vertex_count(), 0);
    for (int v : m.verts)
      if (d.d[v] < r + delta) b[v] = 1;
    // W_i subset U_i = X - G_i: closure(W_i) must miss G_i
    std::vector<char> nb(K.vertex_count(), 0);
    for (int v : neighbors_of(m, b)) nb[v] = 1;
    for (int v : G[i].verts)
      if (nb[v]) {
        sys.pass = false;
        sys.offending = {};  // infeasible radii; caller redraws
        sys.radii[i] = r;
        return sys;
      }
    sys.radii[i] = r;
    sys.deltas[i] = delta;
    std::vector<int> averts, bverts;
    for (int v : m.verts) {
      if (a[v]) averts.push_back(v);
      if (b[v]) bverts.push_back(v);
    }
    sys.V[i] = make_region(K, std::move(averts), VertexRegion::Mode::OpenStar);
    sys.W[i] = make_region(K, std::move(bverts), VertexRegion::Mode::OpenStar);
    A[i] = std::move(a);
    NB[i] = std::move(nb);
  }

  sys.pass = true;
  for (int sid : m.simplex_ids) {
    ShrinkCertEntry e;
    e.simplex = sid;
    const auto& s = K.simplices[sid];
    for (int i = 0; i < mdim && e.index < 0; ++i) {
      if (trivial[i]) {
        e.index = i;
        e.inside_V = false;  // W_i empty: simplex misses closure(W_i)
        break;
      }
      bool all_in_A = true, meets_NB = false;
      for (int v : s) {
        if (!A[i][v]) all_in_A = false;
        if (NB[i][v]) meets_NB = true;
      }
      if (all_in_A) {
        e.index = i;
        e.inside_V = true;
      } else if (!meets_NB) {
        e.index = i;
        e.inside_V = false;
      }
    }
    if (e.index < 0) {
      sys.pass = false;
      sys.offending.push_back(sid);
    }
    sys.cert.push_back(e);
  }
  return sys;
}

}  // namespace

Rat prescale_constant(int m) { return 2 * sqrt_upper(Rat(m), 24) + 1; }

LevelSets level_sets(const SimplicialComplex& K, const PLMap& f, const PLScalarField& eps,
                     const AvoidOptions& opts) {
  check_map(K, f);
  check_field(K, eps);
  LevelSets ls;
  ls.ref = identity_refinement(K);
  ls.f = f;
  ls.eps = eps;
  for (int round = 0;; ++round) {
    const SimplicialComplex& Kc = ls.ref.refined;
    std::vector<int> mask_ids;
    for (int sid : opts.mask)
      for (std::size_t i = 0; i < Kc.simplices.size(); ++i)
        if (ls.ref.carrier[i] == sid) mask_ids.push_back(static_cast<int>(i));
    MaskCtx m = make_mask(Kc, mask_ids);
    for (int v : m.verts)
      if (ls.eps.values[v] <= 0)
        throw EngineError("BadInput", "level_sets: tolerance not positive on carrier");
    auto bad = level_violations(Kc, m, ls.f, ls.eps);
    if (bad.empty()) {
      build_level_regions(Kc, m, ls.f, ls.eps, ls.F, ls.G);
      ls.rounds_used = round;
      return ls;
    }
    if (round >= opts.max_subdiv)
      throw EngineError("SubdivisionBudgetExceeded",
                        "level_sets: sandwich not reached in " + std::to_string(round) + " rounds");
    Refinement step = refine_marked(Kc, bad);
    ls.f = step.transport(ls.f);
    ls.eps = step.transport(ls.eps);
    ls.ref = compose(ls.ref, step);
  }
}

ShrinkSystem shrink(const SimplicialComplex& K, const std::vector<VertexRegion>& F,
                    const std::vector<VertexRegion>& G, const AvoidOptions& opts) {
  if (F.size() != G.size()) throw EngineError("BadInput", "shrink: F/G count mismatch");
  const int mdim = static_cast<int>(F.size());
  MaskCtx m = make_mask(K, opts.mask);
  if (m.dim + 1 > mdim)
    throw EngineError("DimensionMismatch", "shrink: need dim K < number of region pairs");
  std::mt19937_64 rng(substream_seed(opts.seed, "shrink"));
  ShrinkSystem last;
  for (int retry = 0; retry <= opts.max_retries; ++retry) {
    std::vector<Rat> fr(mdim);
    for (auto& x : fr) x = draw_unit(rng);
    last = try_shrink(K, m, F, G, fr);
    if (last.pass) return last;
  }
  std::ostringstream os;
  os << "shrink: no certified system in " << opts.max_retries << " retries; offending simplices:";
  for (std::size_t i = 0; i < last.offending.size() && i < 8; ++i) os << ' ' << last.offending[i];
  throw EngineError("RetryBudgetExceeded", os.str());
}

namespace {

PLScalarField build_phi(const SimplicialComplex& K, const MaskCtx& m, const VertexRegion& Fhat,
                        const VertexRegion& Ghat, const VertexRegion& V, const VertexRegion& W) {
  PLScalarField phi;
  phi.values.assign(K.vertex_count(), Rat(0));
  if (Fhat.empty() && Ghat.empty()) {
    for (auto& v : phi.values) v = 1;  // nonzero constant convention
    return phi;
  }
  if (Fhat.empty()) {
    for (auto& v : phi.values) v = -1;  // V=W=empty: X-W is everything
    return phi;
  }
  // phi = 1 on closure(V_i) (vertex set N(A_i)), -1 on X-W_i.
  std::vector<char> a = vertex_flags(K, V.verts);
  std::vector<int> Fprime = neighbors_of(m, a);
  std::vector<char> b = vertex_flags(K, W.verts);
  std::vector<int> Gprime;
  for (int v : m.verts)
    if (!b[v]) Gprime.push_back(v);
  if (Gprime.empty()) {
    for (auto& v : phi.values) v = 1;
    return phi;
  }
  auto dF = mask_dijkstra(K, m, Fprime);
  auto dG = mask_dijkstra(K, m, Gprime);
  for (int v : m.verts) {
    Rat denom = dF.d[v] + dG.d[v];
    if (denom == 0) throw EngineError("Internal", "phi regions touch");
    phi.values[v] = 1 - 2 * dF.d[v] / denom;
  }
  return phi;
}

}  // namespace

AvoidZeroResult avoid_zero_masked(const SimplicialComplex& K, const PLMap& f,
                                  const PLScalarField& eps, const AvoidOptions& opts) {
  check_map(K, f);
  check_field(K, eps);
  const int mdim = f.target_dim;
  {
    MaskCtx m0 = make_mask(K, opts.mask);
    if (m0.dim + 1 > mdim)
      throw EngineError("DimensionMismatch",
                        "avoid_zero: target dimension must exceed carrier dimension");
  }
  const Rat cm = prescale_constant(mdim);

  AvoidZeroResult res;
  res.ref = identity_refinement(K);
  res.f = f;
  res.eps = eps;
  std::vector<int> cur_mask = opts.mask;
  std::vector<char> frozen(K.vertex_count(), 0);
  for (int v : opts.frozen_verts) frozen[v] = 1;
  std::mt19937_64 rng(substream_seed(opts.seed, "avoid_zero"));

  for (int round = 0; round <= opts.max_subdiv; ++round) {
    const SimplicialComplex& Kc = res.ref.refined;
    MaskCtx m = make_mask(Kc, cur_mask);
    for (int v : m.verts)
      if (res.eps.values[v] <= 0)
        throw EngineError("BadInput", "avoid_zero: tolerance not positive on carrier");

    PLScalarField etilde;
    etilde.values.resize(Kc.vertex_count());
    for (int v = 0; v < Kc.vertex_count(); ++v) etilde.values[v] = res.eps.values[v] / cm;

    std::vector<int> marked = level_violations(Kc, m, res.f, etilde);
    if (!marked.empty()) {
      res.refine_rounds_used = round + 1;
      Refinement step = refine_marked(Kc, marked);
      std::vector<int> nm;
      std::vector<char> old_in(Kc.simplices.size(), 0);
      for (int sid : cur_mask) old_in[sid] = 1;
      bool full = cur_mask.empty();
      for (std::size_t i = 0; i < step.refined.simplices.size(); ++i)
        if (full || old_in[step.carrier[i]]) nm.push_back(static_cast<int>(i));
      res.f = step.transport(res.f);
      res.eps = step.transport(res.eps);
      res.ref = compose(res.ref, step);
      cur_mask = full ? std::vector<int>{} : nm;
      std::vector<char> nfro(step.refined.vertex_count(), 0);
      for (int v = 0; v < static_cast<int>(frozen.size()); ++v) nfro[v] = frozen[v];
      frozen = std::move(nfro);
      continue;
    }

    std::vector<VertexRegion> F, G;
    build_level_regions(Kc, m, res.f, etilde, F, G);
    res.levels.F = F;
    res.levels.G = G;

    bool refined_this_round = false;
    for (int retry = 0; retry <= opts.max_retries; ++retry) {
      std::vector<Rat> fr(mdim);
      for (auto& x : fr) x = draw_unit(rng);
      ShrinkSystem sys = try_shrink(Kc, m, F, G, fr);
      ++res.retries_used;
      if (!sys.pass) {
        res.shrink = std::move(sys);
        continue;
      }
      // build g
      PLMap g;
      g.target_dim = mdim;
      g.values = res.f.values;
      std::vector<std::vector<char>> inF(mdim), inG(mdim);
      std::vector<PLScalarField> phi(mdim);
      for (int i = 0; i < mdim; ++i) {
        inF[i] = vertex_flags(Kc, F[i].verts);
        inG[i] = vertex_flags(Kc, G[i].verts);
        phi[i] = build_phi(Kc, m, F[i], G[i], sys.V[i], sys.W[i]);
      }
      for (int v : m.verts) {
        if (frozen[v]) continue;
        for (int i = 0; i < mdim; ++i)
          if (!inF[i][v] && !inG[i][v])
            g.values[v][i] = etilde.values[v] * phi[i].values[v];
      }
      Certificate nv = certify_nonvanishing(Kc, g, &m.simplex_ids);
      Certificate bd = certify_bound(Kc, res.f, g, res.eps, &m.simplex_ids);
      if (nv.pass && bd.pass) {
        res.g = std::move(g);
        res.nonvanishing = std::move(nv);
        res.bound = std::move(bd);
        res.shrink = std::move(sys);
        res.refine_rounds_used = round;
        return res;
      }
      // refine where certification failed and restart the outer loop
      std::vector<int> bad = nv.failing_simplices();
      auto bb = bd.failing_simplices();
      bad.insert(bad.end(), bb.begin(), bb.end());
      if (bad.empty()) break;
      res.refine_rounds_used = round + 1;
      Refinement step = refine_marked(Kc, bad);
      std::vector<char> old_in(Kc.simplices.size(), 0);
      for (int sid : cur_mask) old_in[sid] = 1;
      bool full = cur_mask.empty();
      std::vector<int> nm;
      for (std::size_t i = 0; i < step.refined.simplices.size(); ++i)
        if (full || old_in[step.carrier[i]]) nm.push_back(static_cast<int>(i));
      res.f = step.transport(res.f);
      res.eps = step.transport(res.eps);
      res.ref = compose(res.ref, step);
      cur_mask = full ? std::vector<int>{} : nm;
      std::vector<char> nfro(step.refined.vertex_count(), 0);
      for (int v = 0; v < static_cast<int>(frozen.size()); ++v) nfro[v] = frozen[v];
      frozen = std::move(nfro);
      refined_this_round = true;
      break;
    }
    if (refined_this_round) continue;
    if (res.shrink.pass) continue;
    // shrink kept failing: refine its offending simplices (or the whole
    // mask when the failure was an infeasible radius draw)
    std::vector<int> bad = res.shrink.offending;
    if (bad.empty()) bad = m.simplex_ids;
    res.refine_rounds_used = round + 1;
    Refinement step = refine_marked(Kc, bad);
    std::vector<char> old_in(Kc.simplices.size(), 0);
    for (int sid : cur_mask) old_in[sid] = 1;
    bool full = cur_mask.empty();
    std::vector<int> nm;
    for (std::size_t i = 0; i < step.refined.simplices.size(); ++i)
      if (full || old_in[step.carrier[i]]) nm.push_back(static_cast<int>(i));
    res.f = step.transport(res.f);
    res.eps = step.transport(res.eps);
    res.ref = compose(res.ref, step);
    cur_mask = full ? std::vector<int>{} : nm;
    std::vector<char> nfro(step.refined.vertex_count(), 0);
    for (int v = 0; v < static_cast<int>(frozen.size()); ++v) nfro[v] = frozen[v];
    frozen = std::move(nfro);
  }
  throw EngineError("SubdivisionBudgetExceeded",
                    "avoid_zero: certificates not reached within the refinement budget");
}

AvoidZeroResult avoid_zero(const SimplicialComplex& K, const PLMap& f, const PLScalarField& eps,
                           const AvoidOptions& opts) {
  if (f.target_dim != K.dim + 1)
    throw EngineError("DimensionMismatch",
                      "avoid_zero: target dimension must be dim K + 1 (got " +
                          std::to_string(f.target_dim) + " for dim " + std::to_string(K.dim) + ")");
  check_field(K, eps, /*strictly_positive=*/true);
  AvoidOptions o = opts;
  o.mask.clear();
  return avoid_zero_masked(K, f, eps, o);
}

PLMap oracle_constant_shift(const SimplicialComplex& K, const PLMap& f, const PLScalarField& eps,
                            std::uint64_t seed, int sample_budget) {
  check_map(K, f);
  check_field(K, eps, true);
  if (f.target_dim <= K.dim)
    throw EngineError("DimensionMismatch", "oracle: target dimension must exceed dim K");
  Rat min_eps = eps.values[0];
  for (const Rat& e : eps.values) min_eps = std::min(min_eps, e);
  std::mt19937_64 rng(substream_seed(seed, "oracle_constant_shift"));
  for (int it = 0; it < sample_budget; ++it) {
    RatVec v(f.target_dim);
    for (auto& x : v) x = (2 * draw_unit(rng) - 1) * min_eps;
    if (norm_sq(v) >= min_eps * min_eps || norm_sq(v) == 0) continue;
    PLMap g;
    g.target_dim = f.target_dim;
    g.values = f.values;
    for (auto& row : g.values) row = sub(row, v);
    if (certify_nonvanishing(K, g).pass) return g;
  }
  throw EngineError("OracleExhausted", "oracle_constant_shift: sample budget exhausted");
}

}  // namespace pert
