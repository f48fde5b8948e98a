#include "silting/homology.hpp"

#include <algorithm>

namespace silting {

namespace {

std::vector<PathWord> slice_basis(const DgAlgebra& alg, int deg,
                                  const std::optional<std::pair<int, int>>& piece) {
  if (!piece) return alg.paths_of_degree(deg);
  return alg.paths_of_degree(deg, piece->first, piece->second);
}

// matrix of d: (degree p) -> (degree p+1), columns over the p-basis
SparseMat d_matrix(const DgAlgebra& alg, const std::vector<PathWord>& dom,
                   const std::vector<PathWord>& cod) {
  std::map<PathWord, int> index;
  for (size_t r = 0; r < cod.size(); ++r) index[cod[r]] = static_cast<int>(r);
  SparseMat m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
  for (size_t c = 0; c < dom.size(); ++c) {
    AlgebraElement dx = alg.d_path(dom[c]);
    for (auto& [p, v] : dx.terms) {
      auto it = index.find(p);
      if (it != index.end()) m.add(it->second, static_cast<int>(c), v);
    }
  }
  return m;
}

std::map<int, int> dims_at(const BuiltAlgebra& alg, int lo, int hi,
                           const std::optional<std::pair<int, int>>& piece,
                           std::map<int, std::vector<AlgebraElement>>* bases) {
  std::map<int, int> dims;
  for (int p = lo; p <= hi; ++p) {
    auto bp = slice_basis(alg, p, piece);
    auto bup = slice_basis(alg, p + 1, piece);
    auto bdn = slice_basis(alg, p - 1, piece);
    SparseMat dp = d_matrix(alg, bp, bup);
    SparseMat dprev = d_matrix(alg, bdn, bp);
    Rref ep = rref(dp);
    std::vector<Vec> ker = ep.kernel();
    std::vector<Vec> img;
    for (size_t c = 0; c < bdn.size(); ++c) {
      Vec v(bp.size());
      AlgebraElement dx = alg.d_path(bdn[c]);
      std::map<PathWord, int> index;
      for (size_t r = 0; r < bp.size(); ++r) index[bp[r]] = static_cast<int>(r);
      bool nz = false;
      for (auto& [pw, val] : dx.terms) {
        auto it = index.find(pw);
        if (it != index.end()) { v[it->second] = val; nz = true; }
      }
      if (nz) img.push_back(std::move(v));
    }
    std::vector<Vec> reps = quotient_representatives(ker, img);
    dims[p] = static_cast<int>(reps.size());
    if (bases) {
      std::vector<AlgebraElement> out;
      for (auto& v : reps) {
        AlgebraElement e;
        for (size_t k = 0; k < bp.size(); ++k)
          if (!v[k].is_zero()) e.add_term(bp[k], v[k]);
        out.push_back(std::move(e));
      }
      (*bases)[p] = std::move(out);
    }
  }
  return dims;
}

}  // namespace

HomologySlice homology(const BuiltAlgebra& alg, int lo, int hi,
                       std::optional<std::pair<int, int>> piece, int stability_delta) {
  HomologySlice s;
  s.lo = lo;
  s.hi = hi;
  s.piece = piece;
  s.L = alg.L;
  s.dim = dims_at(alg, lo, hi, piece, &s.basis);
  if (stability_delta > 0) {
    BuiltAlgebra hi_alg = alg.rebuild_at(alg.L + stability_delta);
    s.L2 = hi_alg.L;
    auto dims2 = dims_at(hi_alg, lo, hi, piece, nullptr);
    s.stable = dims2 == s.dim;
  } else {
    s.L2 = s.L;
    s.stable = true;
  }
  return s;
}

std::optional<int> stability_bound(const DgAlgebra& alg, int lo) {
  const GradedQuiver& q = alg.quiver();
  int n = static_cast<int>(q.vertices.size());
  // longest path in the degree-0 subquiver; nullopt on a degree-0 cycle
  std::vector<std::vector<int>> adj(n);
  for (auto& a : q.arrows)
    if (a.deg == 0) adj[a.src].push_back(a.tgt);
  std::vector<int> state(n, 0), longest(n, -1);
  bool cyclic = false;
  auto dfs = [&](auto&& self, int v) -> int {
    if (state[v] == 1) { cyclic = true; return 0; }
    if (state[v] == 2) return longest[v];
    state[v] = 1;
    int best = 0;
    for (int w : adj[v]) best = std::max(best, 1 + self(self, w));
    state[v] = 2;
    return longest[v] = best;
  };
  int c = 0;
  for (int v = 0; v < n; ++v) c = std::max(c, dfs(dfs, v));
  if (cyclic) return std::nullopt;
  int d = -lo;
  return d + (d + 1) * c;
}

}  // namespace silting
