#include "pert/certify.hpp"

namespace pert {

std::vector<int> Certificate::failing_simplices() const {
  std::vector<int> out;
  for (const auto& v : verdicts)
    if (!v.pass) out.push_back(v.simplex);
  return out;
}

Certificate certify_nonvanishing_slice(const SimplicialComplex& K, const PLMap& g, int first,
                                       int last, const std::vector<int>* mask) {
  if (first < 0 || last > g.target_dim || first >= last)
    throw EngineError("DimMismatch", "certify_nonvanishing: bad coordinate slice");
  check_map(K, g);
  Certificate cert;
  cert.kind = Certificate::Kind::Nonvanishing;
  cert.pass = true;
  std::vector<int> ids;
  if (mask)
    ids = *mask;
  else
    for (std::size_t i = 0; i < K.simplices.size(); ++i) ids.push_back(static_cast<int>(i));
  for (int sid : ids) {
    const auto& s = K.simplices[sid];
    std::vector<RatVec> pts;
    for (int v : s)
      pts.emplace_back(g.values[v].begin() + first, g.values[v].begin() + last);
    auto q = origin_in_hull(pts);
    SimplexVerdict verdict;
    verdict.simplex = sid;
    verdict.pass = !q.contains_origin;
    verdict.witness = verdict.pass ? q.witness : q.coeffs;
    verdict.note = verdict.pass ? "separator" : "convex-combination";
    if (!verdict.pass) cert.pass = false;
    cert.verdicts.push_back(std::move(verdict));
  }
  return cert;
}

Certificate certify_nonvanishing(const SimplicialComplex& K, const PLMap& g,
                                 const std::vector<int>* mask) {
  return certify_nonvanishing_slice(K, g, 0, g.target_dim, mask);
}

Certificate certify_bound(const SimplicialComplex& K, const PLMap& f, const PLMap& g,
                          const PLScalarField& eps, const std::vector<int>* mask) {
  check_map(K, f);
  check_map(K, g);
  check_field(K, eps);
  if (f.target_dim != g.target_dim)
    throw EngineError("CarrierMismatch", "certify_bound: target dimensions differ");
  Certificate cert;
  cert.kind = Certificate::Kind::PointwiseBound;
  cert.pass = true;
  std::vector<int> ids;
  if (mask)
    ids = *mask;
  else
    for (std::size_t i = 0; i < K.simplices.size(); ++i) ids.push_back(static_cast<int>(i));
  for (int sid : ids) {
    const auto& s = K.simplices[sid];
    SimplexVerdict verdict;
    verdict.simplex = sid;
    verdict.pass = true;
    for (int v : s) {
      Rat margin = eps.values[v] * eps.values[v] - norm_sq(sub(g.values[v], f.values[v]));
      verdict.witness.push_back(margin);
      if (margin <= 0) verdict.pass = false;
    }
    verdict.note = "vertex margins eps^2 - |g-f|^2";
    if (!verdict.pass) cert.pass = false;
    cert.verdicts.push_back(std::move(verdict));
  }
  return cert;
}

}  // namespace pert
