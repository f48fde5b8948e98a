#include "silting/perfmod.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace silting {

namespace {

int env_delta() {
  if (const char* s = std::getenv("SILTING_DELTA")) return std::max(1, std::atoi(s));
  return 2;
}

Scalar sign(int k) { return Scalar(k % 2 == 0 ? 1 : -1); }

}  // namespace

PerfModule free_module(const BuiltAlgebra& A, int vertex, int shift) {
  PerfModule x;
  x.A = &A;
  x.summands = {{vertex, shift}};
  x.delta = {{AlgebraElement{}}};
  return x;
}

PerfModule algebra_module(const BuiltAlgebra& A, int skip_vertex) {
  PerfModule x;
  x.A = &A;
  for (int i = 0; i < A.num_vertices(); ++i)
    if (i != skip_vertex) x.summands.push_back({i, 0});
  x.delta = zero_mat(x.size(), x.size());
  return x;
}

PerfModule direct_sum(const PerfModule& x, const PerfModule& y) {
  PerfModule z;
  z.A = x.A ? x.A : y.A;
  z.summands = x.summands;
  z.summands.insert(z.summands.end(), y.summands.begin(), y.summands.end());
  int n = z.size(), nx = x.size();
  z.delta = zero_mat(n, n);
  for (int r = 0; r < nx; ++r)
    for (int c = 0; c < nx; ++c) z.delta[r][c] = x.delta[r][c];
  for (int r = nx; r < n; ++r)
    for (int c = nx; c < n; ++c) z.delta[r][c] = y.delta[r - nx][c - nx];
  return z;
}

Mat zero_mat(int rows, int cols) {
  return Mat(rows, std::vector<AlgebraElement>(cols));
}

Mat identity_mat(const PerfModule& x) {
  Mat m = zero_mat(x.size(), x.size());
  for (int k = 0; k < x.size(); ++k) m[k][k] = x.A->unit(x.summands[k].first);
  return m;
}

bool mat_is_zero(const Mat& f) {
  for (auto& row : f)
    for (auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

Mat mat_compose(const PerfModule& x, const PerfModule& y, const PerfModule& z,
                const Mat& g, const Mat& f) {
  Mat out = zero_mat(z.size(), x.size());
  for (int r = 0; r < z.size(); ++r)
    for (int c = 0; c < x.size(); ++c)
      for (int k = 0; k < y.size(); ++k)
        out[r][c] = x.A->add(out[r][c], x.A->mul(g[r][k], f[k][c]));
  return out;
}

Mat apply_hom_differential(const PerfModule& x, const PerfModule& y, const Mat& f, int n) {
  const BuiltAlgebra& A = *x.A;
  Mat out = zero_mat(y.size(), x.size());
  for (int r = 0; r < y.size(); ++r)
    for (int c = 0; c < x.size(); ++c) {
      AlgebraElement v = A.scale(sign(y.summands[r].second), A.d(f[r][c]));
      for (int k = 0; k < y.size(); ++k) v = A.add(v, A.mul(y.delta[r][k], f[k][c]));
      for (int k = 0; k < x.size(); ++k)
        v = A.add(v, A.scale(-sign(n), A.mul(f[r][k], x.delta[k][c])));
      out[r][c] = v;
    }
  return out;
}

std::optional<std::string> square_zero_residual(const PerfModule& x) {
  const BuiltAlgebra& A = *x.A;
  for (int r = 0; r < x.size(); ++r)
    for (int c = 0; c < x.size(); ++c) {
      AlgebraElement v = A.scale(sign(x.summands[r].second), A.d(x.delta[r][c]));
      for (int k = 0; k < x.size(); ++k) v = A.add(v, A.mul(x.delta[r][k], x.delta[k][c]));
      if (!v.is_zero()) {
        std::ostringstream os;
        os << "square-zero fails at (" << r << "," << c << "): " << A.element_str(v);
        return os.str();
      }
    }
  return std::nullopt;
}

void assert_square_zero(const PerfModule& x, const char* where) {
  if (auto bad = square_zero_residual(x))
    throw std::logic_error(std::string(where) + ": " + *bad);
}

PerfModule shift_module(const PerfModule& x, int k) {
  PerfModule y = x;
  for (auto& [v, s] : y.summands) s += k;
  for (auto& row : y.delta)
    for (auto& e : row) e = x.A->scale(sign(k), e);
  return y;
}

PerfModule sort_summands(const PerfModule& x) {
  std::vector<int> order(x.size());
  for (int k = 0; k < x.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    auto ka = std::make_pair(x.summands[a].second, x.summands[a].first);
    auto kb = std::make_pair(x.summands[b].second, x.summands[b].first);
    return ka < kb;
  });
  PerfModule y;
  y.A = x.A;
  y.delta = zero_mat(x.size(), x.size());
  for (int r = 0; r < x.size(); ++r) {
    y.summands.push_back(x.summands[order[r]]);
    for (int c = 0; c < x.size(); ++c) y.delta[r][c] = x.delta[order[r]][order[c]];
  }
  return y;
}

HomSpace hom_space(const PerfModule& x, const PerfModule& y, int n) {
  HomSpace h;
  for (int r = 0; r < y.size(); ++r)
    for (int c = 0; c < x.size(); ++c) {
      int deg = n + y.summands[r].second - x.summands[c].second;
      for (const PathWord& p :
           x.A->paths_of_degree(deg, x.summands[c].first, y.summands[r].first)) {
        h.index[{{r, c}, p}] = static_cast<int>(h.basis.size());
        h.basis.push_back({r, c, p});
      }
    }
  return h;
}

namespace {

void expand_into(const HomSpace& to, int r, int c, const AlgebraElement& v,
                 SparseMat& m, int col) {
  for (auto& [p, cf] : v.terms) {
    auto it = to.index.find({{r, c}, p});
    if (it != to.index.end()) m.add(it->second, col, cf);
  }
}

}  // namespace

SparseMat hom_differential(const PerfModule& x, const PerfModule& y, int n,
                           const HomSpace& from, const HomSpace& to) {
  const BuiltAlgebra& A = *x.A;
  SparseMat m(static_cast<int>(to.basis.size()), static_cast<int>(from.basis.size()));
  for (size_t k = 0; k < from.basis.size(); ++k) {
    auto& [r, c, p] = from.basis[k];
    AlgebraElement e = A.from_path(p);
    expand_into(to, r, c, A.scale(sign(y.summands[r].second), A.d(e)), m,
                static_cast<int>(k));
    for (int r2 = 0; r2 < y.size(); ++r2)
      expand_into(to, r2, c, A.mul(y.delta[r2][r], e), m, static_cast<int>(k));
    for (int c2 = 0; c2 < x.size(); ++c2)
      expand_into(to, r, c2, A.scale(-sign(n), A.mul(e, x.delta[c][c2])), m,
                  static_cast<int>(k));
  }
  return m;
}

Mat hom_coords_to_mat(const PerfModule& x, const PerfModule& y, const HomSpace& h,
                      const Vec& coords) {
  Mat f = zero_mat(y.size(), x.size());
  for (size_t k = 0; k < h.basis.size(); ++k) {
    if (coords[k].is_zero()) continue;
    f[h.basis[k].r][h.basis[k].c].add_term(h.basis[k].p, coords[k]);
  }
  return f;
}

Vec mat_to_hom_coords(const PerfModule& x, const PerfModule& y, const HomSpace& h,
                      const Mat& f) {
  Vec v(h.basis.size());
  for (int r = 0; r < y.size(); ++r)
    for (int c = 0; c < x.size(); ++c)
      for (auto& [p, cf] : f[r][c].terms) {
        auto it = h.index.find({{r, c}, p});
        if (it == h.index.end())
          throw std::logic_error("mat_to_hom_coords: entry outside the hom space");
        v[it->second] = cf;
      }
  return v;
}

namespace {

int hom_dim_at(const PerfModule& x, const PerfModule& y, int n,
               std::vector<Mat>* reps) {
  HomSpace below = hom_space(x, y, n - 1);
  HomSpace at = hom_space(x, y, n);
  HomSpace above = hom_space(x, y, n + 1);
  SparseMat dn = hom_differential(x, y, n, at, above);
  SparseMat db = hom_differential(x, y, n - 1, below, at);
  Rref e = rref(dn);
  std::vector<Vec> cycles = e.kernel();
  std::vector<Vec> bounds;
  for (size_t k = 0; k < below.basis.size(); ++k) {
    Vec unit(below.basis.size());
    unit[k] = Scalar(1);
    bounds.push_back(db.apply(unit));
  }
  std::vector<Vec> classes = quotient_representatives(cycles, bounds);
  if (reps)
    for (auto& v : classes) reps->push_back(hom_coords_to_mat(x, y, at, v));
  return static_cast<int>(classes.size());
}

}  // namespace

HomResult hom_derived(const PerfModule& x, const PerfModule& y, int n,
                      bool check_stability) {
  HomResult res;
  res.dim = hom_dim_at(x, y, n, &res.basis);
  if (check_stability) {
    BuiltAlgebra big = x.A->rebuild_at(x.A->L + env_delta());
    PerfModule x2 = x, y2 = y;
    x2.A = y2.A = &big;
    res.stable = hom_dim_at(x2, y2, n, nullptr) == res.dim;
  }
  return res;
}

std::optional<Mat> hom_boundary_witness(const PerfModule& x, const PerfModule& y,
                                        const Mat& f, int n) {
  HomSpace below = hom_space(x, y, n - 1);
  HomSpace at = hom_space(x, y, n);
  SparseMat db = hom_differential(x, y, n - 1, below, at);
  Vec target = mat_to_hom_coords(x, y, at, f);
  auto sol = solve(db, target);
  if (!sol) return std::nullopt;
  return hom_coords_to_mat(x, y, below, *sol);
}

ConeResult cone(const PerfModule& x, const PerfModule& y, const Mat& f) {
  const BuiltAlgebra& A = *(x.A ? x.A : y.A);
  ConeResult res;
  PerfModule& c = res.cone;
  c.A = &A;
  for (auto& [v, s] : x.summands) c.summands.push_back({v, s + 1});
  for (auto& vs : y.summands) c.summands.push_back(vs);
  int nx = x.size(), n = c.size();
  c.delta = zero_mat(n, n);
  for (int r = 0; r < nx; ++r)
    for (int cc = 0; cc < nx; ++cc) c.delta[r][cc] = A.scale(Scalar(-1), x.delta[r][cc]);
  for (int r = 0; r < y.size(); ++r) {
    for (int cc = 0; cc < nx; ++cc) c.delta[nx + r][cc] = f[r][cc];
    for (int cc = 0; cc < y.size(); ++cc) c.delta[nx + r][nx + cc] = y.delta[r][cc];
  }
  assert_square_zero(c, "cone");
  res.incl_y = zero_mat(n, y.size());
  for (int k = 0; k < y.size(); ++k)
    res.incl_y[nx + k][k] = A.unit(y.summands[k].first);
  res.proj_sx = zero_mat(nx, n);
  for (int k = 0; k < nx; ++k) res.proj_sx[k][k] = A.unit(x.summands[k].first);
  return res;
}

MinimizeResult minimize(const PerfModule& x0) {
  const BuiltAlgebra& A = *x0.A;
  MinimizeResult res;
  PerfModule cur = x0;
  Mat incl = identity_mat(x0), proj = identity_mat(x0);
  PerfModule orig = x0;
  for (;;) {
    int pr = -1, pc = -1;
    for (int r = 0; r < cur.size() && pr < 0; ++r)
      for (int c = 0; c < cur.size(); ++c) {
        auto it = cur.delta[r][c].terms.find(PathWord::trivial(cur.summands[r].first));
        if (it != cur.delta[r][c].terms.end()) {
          pr = r;
          pc = c;
          break;
        }
      }
    if (pr < 0) break;
    ++res.reduced_pairs;
    AlgebraElement pinv = A.inv_unit(cur.delta[pr][pc], cur.summands[pr].first);
    std::vector<int> rest;
    for (int k = 0; k < cur.size(); ++k)
      if (k != pr && k != pc) rest.push_back(k);
    int n2 = static_cast<int>(rest.size());
    PerfModule nxt;
    nxt.A = &A;
    nxt.delta = zero_mat(n2, n2);
    for (int a = 0; a < n2; ++a) {
      nxt.summands.push_back(cur.summands[rest[a]]);
      for (int b = 0; b < n2; ++b)
        nxt.delta[a][b] =
            A.add(cur.delta[rest[a]][rest[b]],
                  A.scale(Scalar(-1),
                          A.mul(cur.delta[rest[a]][pc],
                                A.mul(pinv, cur.delta[pr][rest[b]]))));
    }
    // step witnesses: ι: nxt→cur, π: cur→nxt
    Mat si = zero_mat(cur.size(), n2), sp = zero_mat(n2, cur.size());
    for (int b = 0; b < n2; ++b) {
      si[rest[b]][b] = A.unit(nxt.summands[b].first);
      si[pc][b] = A.scale(Scalar(-1), A.mul(pinv, cur.delta[pr][rest[b]]));
    }
    for (int a = 0; a < n2; ++a) {
      sp[a][rest[a]] = A.unit(nxt.summands[a].first);
      sp[a][pr] = A.scale(Scalar(-1), A.mul(cur.delta[rest[a]][pc], pinv));
    }
    incl = mat_compose(nxt, cur, orig, incl, si);
    proj = mat_compose(orig, cur, nxt, sp, proj);
    cur = std::move(nxt);
  }
  // canonical order, permute witnesses along
  std::vector<int> order(cur.size());
  for (int k = 0; k < cur.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::make_pair(cur.summands[a].second, cur.summands[a].first) <
           std::make_pair(cur.summands[b].second, cur.summands[b].first);
  });
  PerfModule sorted;
  sorted.A = &A;
  sorted.delta = zero_mat(cur.size(), cur.size());
  Mat incl2 = zero_mat(orig.size(), cur.size()), proj2 = zero_mat(cur.size(), orig.size());
  for (int k = 0; k < cur.size(); ++k) {
    sorted.summands.push_back(cur.summands[order[k]]);
    for (int c = 0; c < cur.size(); ++c) sorted.delta[k][c] = cur.delta[order[k]][order[c]];
    for (int r = 0; r < orig.size(); ++r) incl2[r][k] = incl[r][order[k]];
    for (int c = 0; c < orig.size(); ++c) proj2[k][c] = proj[order[k]][c];
  }
  assert_square_zero(sorted, "minimize");
  if (!mat_is_zero(apply_hom_differential(sorted, orig, incl2, 0)))
    throw std::logic_error("minimize: inclusion witness not closed");
  res.model = std::move(sorted);
  res.incl = std::move(incl2);
  res.proj = std::move(proj2);
  return res;
}

IsoResult iso_test(const PerfModule& x, const PerfModule& y) {
  IsoResult res;
  auto mx = x.summands, my = y.summands;
  std::sort(mx.begin(), mx.end());
  std::sort(my.begin(), my.end());
  if (mx != my) return res;
  if (x.size() == 0) {
    res.iso = true;
    return res;
  }
  const BuiltAlgebra& A = *x.A;
  HomSpace at = hom_space(x, y, 0);
  HomSpace above = hom_space(x, y, 1);
  SparseMat d0 = hom_differential(x, y, 0, at, above);
  std::vector<Vec> closed = rref(d0).kernel();
  if (closed.empty()) return res;
  int n = x.size();
  // constant part of a closed map: scalar matrix over summand pairs
  auto const_part = [&](const Mat& f) {
    std::vector<Vec> m(n, Vec(n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        auto it = f[r][c].terms.find(PathWord::trivial(y.summands[r].first));
        if (it != f[r][c].terms.end()) m[r][c] = it->second;
      }
    return m;
  };
  std::vector<Mat> cands;
  for (auto& v : closed) cands.push_back(hom_coords_to_mat(x, y, at, v));
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 80; ++trial) {
    Mat f = zero_mat(n, n);
    for (size_t k = 0; k < cands.size(); ++k) {
      Scalar c(coef(rng));
      if (trial < static_cast<int>(cands.size())) c = Scalar(k == static_cast<size_t>(trial) ? 1 : 0);
      if (c.is_zero()) continue;
      for (int r = 0; r < n; ++r)
        for (int cc = 0; cc < n; ++cc) f[r][cc] = A.add(f[r][cc], A.scale(c, cands[k][r][cc]));
    }
    if (dense_rank(const_part(f)) == n) {
      res.iso = true;
      res.witness = f;
      return res;
    }
  }
  return res;
}

std::vector<int> k0_class(const PerfModule& x) {
  std::vector<int> v(x.A ? x.A->num_vertices() : 0, 0);
  for (auto& [vert, s] : x.summands) v[vert] += (s % 2 == 0 ? 1 : -1);
  return v;
}

std::vector<int> support_structural(const PerfModule& x) {
  std::vector<int> out;
  for (auto& [v, s] : x.summands)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> support_oracle(const PerfModule& x, int lo, int hi) {
  std::vector<int> out;
  for (int j = lo; j <= hi; ++j) {
    bool hit = false;
    for (int i = 0; i < x.A->num_vertices() && !hit; ++i) {
      FinDimDgModule s = simple_module(*x.A, i, j);
      if (hom_to_findim(x, s, 0) > 0) hit = true;
    }
    if (hit) out.push_back(j);
  }
  return out;
}

FinDimDgModule simple_module(const BuiltAlgebra& A, int vertex, int shift) {
  FinDimDgModule n;
  n.A = &A;
  n.basis = {{vertex, -shift}};
  n.d = SparseMat(1, 1);
  n.act.assign(A.quiver().arrows.size(), SparseMat(1, 1));
  return n;
}

FinDimDgModule to_findim(const PerfModule& x,
                         std::vector<std::pair<int, PathWord>>* labels, int deg_lo) {
  const BuiltAlgebra& A = *x.A;
  FinDimDgModule n;
  n.A = &A;
  std::map<std::pair<int, PathWord>, int> idx;
  std::vector<std::pair<int, PathWord>> elems;
  int lo = -A.L * 3 - 16, hi = A.L + 16;  // generous degree sweep
  for (int c = 0; c < x.size(); ++c) {
    auto [vert, s] = x.summands[c];
    for (int deg = lo; deg <= hi; ++deg)
      for (const PathWord& p : A.paths_of_degree(deg))
        if (p.tgt == vert && deg - s >= deg_lo) {
          idx[{c, p}] = static_cast<int>(elems.size());
          elems.push_back({c, p});
          n.basis.push_back({p.src, deg - s});
        }
  }
  if (labels) *labels = elems;
  int dim = static_cast<int>(elems.size());
  n.d = SparseMat(dim, dim);
  for (int k = 0; k < dim; ++k) {
    auto& [c, p] = elems[k];
    int s = x.summands[c].second;
    AlgebraElement dp = A.scale(sign(s), A.d_path(p));
    for (auto& [q, cf] : dp.terms) {
      auto it = idx.find({c, q});
      if (it != idx.end()) n.d.add(it->second, k, cf);
    }
    for (int r = 0; r < x.size(); ++r) {
      AlgebraElement v = A.mul(x.delta[r][c], A.from_path(p));
      for (auto& [q, cf] : v.terms) {
        auto it = idx.find({r, q});
        if (it != idx.end()) n.d.add(it->second, k, cf);
      }
    }
  }
  n.act.assign(A.quiver().arrows.size(), SparseMat(dim, dim));
  for (size_t a = 0; a < A.quiver().arrows.size(); ++a) {
    for (int k = 0; k < dim; ++k) {
      auto& [c, p] = elems[k];
      if (p.src != A.quiver().arrows[a].tgt) continue;
      PathWord q = p;
      q.arrows.push_back(static_cast<int>(a));
      q.src = A.quiver().arrows[a].src;
      if (q.length() > A.L) continue;
      auto it = idx.find({c, q});
      if (it != idx.end()) n.act[a].add(it->second, k, Scalar(1));
    }
  }
  return n;
}

int findim_homology_dim(const FinDimDgModule& n, int deg) {
  std::vector<int> at, below;
  for (int k = 0; k < n.dim(); ++k) {
    if (n.basis[k].second == deg) at.push_back(k);
    if (n.basis[k].second == deg - 1) below.push_back(k);
  }
  SparseMat dn(n.dim(), static_cast<int>(at.size()));
  for (size_t c = 0; c < at.size(); ++c)
    for (auto& [r, v] : n.d.column(at[c])) dn.add(r, static_cast<int>(c), v);
  SparseMat db(static_cast<int>(at.size()), static_cast<int>(below.size()));
  std::map<int, int> atidx;
  for (size_t k = 0; k < at.size(); ++k) atidx[at[k]] = static_cast<int>(k);
  for (size_t c = 0; c < below.size(); ++c)
    for (auto& [r, v] : n.d.column(below[c]))
      if (atidx.count(r)) db.add(atidx[r], static_cast<int>(c), v);
  return static_cast<int>(at.size()) - sparse_rank(dn) - sparse_rank(db);
}

std::optional<std::string> findim_check(const FinDimDgModule& n) {
  int dim = n.dim();
  SparseMat dd = n.d.mul(n.d);
  for (int r = 0; r < dim; ++r)
    if (!dd.row[r].empty()) return "d^2 != 0";
  for (int k = 0; k < dim; ++k) {
    Vec unit(dim);
    unit[k] = Scalar(1);
    Vec img = n.d.apply(unit);
    for (int r = 0; r < dim; ++r)
      if (!img[r].is_zero() && (n.basis[r].second != n.basis[k].second + 1 ||
                                n.basis[r].first != n.basis[k].first))
        return "d violates the (vertex, degree) grading";
  }
  return std::nullopt;
}

namespace {

// right action of an algebra element on a coordinate vector
Vec act_element(const FinDimDgModule& n, const Vec& x, const AlgebraElement& e) {
  Vec out(n.dim());
  for (auto& [p, cf] : e.terms) {
    Vec cur = x;
    if (p.length() == 0) {
      // x·e_v: keep coordinates at vertex v
      for (int k = 0; k < n.dim(); ++k)
        if (n.basis[k].first != p.src) cur[k] = Scalar();
    } else {
      for (int a : p.arrows) cur = n.act[a].apply(cur);
    }
    for (int k = 0; k < n.dim(); ++k) out[k] += cf * cur[k];
  }
  return out;
}

}  // namespace

int hom_to_findim(const PerfModule& x, const FinDimDgModule& n, int deg) {
  // Hom^k basis: (summand c, basis elem β of n at vertex i_c, degree k − s_c);
  // D(ν)_c = d_n(ν_c) − (−1)^k Σ_r ν_r · δ_rc
  auto space = [&](int k) {
    std::vector<std::pair<int, int>> b;  // (summand, n-basis index)
    for (int c = 0; c < x.size(); ++c)
      for (int j = 0; j < n.dim(); ++j)
        if (n.basis[j].first == x.summands[c].first &&
            n.basis[j].second == k - x.summands[c].second)
          b.push_back({c, j});
    return b;
  };
  auto differential = [&](int k, const std::vector<std::pair<int, int>>& from,
                          const std::vector<std::pair<int, int>>& to) {
    std::map<std::pair<int, int>, int> toidx;
    for (size_t t = 0; t < to.size(); ++t) toidx[to[t]] = static_cast<int>(t);
    SparseMat m(static_cast<int>(to.size()), static_cast<int>(from.size()));
    for (size_t f = 0; f < from.size(); ++f) {
      auto [c, j] = from[f];
      Vec v(n.dim());
      v[j] = Scalar(1);
      Vec dv = n.d.apply(v);
      for (int t = 0; t < n.dim(); ++t)
        if (!dv[t].is_zero() && toidx.count({c, t}))
          m.add(toidx[{c, t}], static_cast<int>(f), dv[t]);
      for (int c2 = 0; c2 < x.size(); ++c2) {
        if (x.delta[c][c2].is_zero()) continue;
        Vec w = act_element(n, v, x.delta[c][c2]);
        for (int t = 0; t < n.dim(); ++t)
          if (!w[t].is_zero() && toidx.count({c2, t}))
            m.add(toidx[{c2, t}], static_cast<int>(f), -sign(k) * w[t]);
      }
    }
    return m;
  };
  auto at = space(deg), below = space(deg - 1), above = space(deg + 1);
  SparseMat dn = differential(deg, at, above);
  SparseMat db = differential(deg - 1, below, at);
  int cyc = static_cast<int>(at.size()) - rref(dn).rank();
  return cyc - rref(db).rank();
}

TruncationAbove truncate_above(const PerfModule& x, int s) {
  const BuiltAlgebra& A = *x.A;
  // degrees < s die in the quotient anyway, so work in the window ≥ s
  FinDimDgModule f = to_findim(x, nullptr, s);
  int dim = f.dim();
  // dg submodule τ_{≤s}: degrees < s plus ker(d) in degree s, per vertex
  std::vector<Vec> sub;
  for (int k = 0; k < dim; ++k)
    if (f.basis[k].second < s) {
      Vec v(dim);
      v[k] = Scalar(1);
      sub.push_back(std::move(v));
    }
  for (int vert = 0; vert < A.num_vertices(); ++vert) {
    std::vector<int> slice;
    for (int k = 0; k < dim; ++k)
      if (f.basis[k].second == s && f.basis[k].first == vert) slice.push_back(k);
    if (slice.empty()) continue;
    SparseMat restricted(dim, static_cast<int>(slice.size()));
    for (size_t c = 0; c < slice.size(); ++c)
      for (auto& [r, val] : f.d.column(slice[c]))
        restricted.add(r, static_cast<int>(c), val);
    for (auto& kerv : rref(restricted).kernel()) {
      Vec v(dim);
      for (size_t c = 0; c < slice.size(); ++c) v[slice[c]] = kerv[c];
      sub.push_back(std::move(v));
    }
  }
  std::vector<Vec> full;
  for (int k = 0; k < dim; ++k) {
    Vec v(dim);
    v[k] = Scalar(1);
    full.push_back(std::move(v));
  }
  std::vector<Vec> reps = quotient_representatives(full, sub);
  int qdim = static_cast<int>(reps.size());
  // coordinates of any vector in the quotient basis: solve [R | S] c = v
  SparseMat rs(dim, qdim + static_cast<int>(sub.size()));
  for (int c = 0; c < qdim; ++c)
    for (int r = 0; r < dim; ++r)
      if (!reps[c][r].is_zero()) rs.add(r, c, reps[c][r]);
  for (size_t c = 0; c < sub.size(); ++c)
    for (int r = 0; r < dim; ++r)
      if (!sub[c][r].is_zero()) rs.add(r, qdim + static_cast<int>(c), sub[c][r]);
  auto project = [&](const Vec& v) {
    auto sol = solve(rs, v);
    if (!sol) throw std::logic_error("truncate_above: projection failed");
    Vec out(qdim);
    for (int k = 0; k < qdim; ++k) out[k] = (*sol)[k];
    return out;
  };
  TruncationAbove res;
  FinDimDgModule& q = res.module;
  q.A = &A;
  for (int k = 0; k < qdim; ++k) {
    int lead = -1;
    for (int r = 0; r < dim; ++r)
      if (!reps[k][r].is_zero()) { lead = r; break; }
    q.basis.push_back(f.basis[lead]);
  }
  q.d = SparseMat(qdim, qdim);
  for (int k = 0; k < qdim; ++k) {
    Vec img = project(f.d.apply(reps[k]));
    for (int r = 0; r < qdim; ++r)
      if (!img[r].is_zero()) q.d.add(r, k, img[r]);
  }
  q.act.assign(f.act.size(), SparseMat(qdim, qdim));
  for (size_t a = 0; a < f.act.size(); ++a)
    for (int k = 0; k < qdim; ++k) {
      Vec img = project(f.act[a].apply(reps[k]));
      for (int r = 0; r < qdim; ++r)
        if (!img[r].is_zero()) q.act[a].add(r, k, img[r]);
    }
  res.project.resize(dim);
  for (int k = 0; k < dim; ++k) {
    Vec v(dim);
    v[k] = Scalar(1);
    res.project[k] = project(v);
  }
  if (auto bad = findim_check(q))
    throw std::logic_error("truncate_above: " + *bad);
  return res;
}

namespace {

// cone of phi: P → N as a plain complex of vector spaces, basis = findim(P)
// shifted by 1 followed by N's basis
struct ConeComplex {
  FinDimDgModule fp;                       // findim of P
  std::vector<std::pair<int, PathWord>> labels;  // labels of fp basis
  int pdim = 0, ndim = 0;
  std::vector<int> degree;  // cone degree of each basis element
  SparseMat d{0, 0};
};

ConeComplex build_cone_complex(const PerfModule& p, const std::vector<Vec>& phi,
                               const FinDimDgModule& n, int floor) {
  const BuiltAlgebra& A = *n.A;
  ConeComplex cc;
  // homology is only read in cone degrees ≥ floor; the part of findim(p) below
  // module degree floor − 1 sits in a subcomplex that cannot affect it
  cc.fp = to_findim(p, &cc.labels, floor - 1);
  cc.pdim = cc.fp.dim();
  cc.ndim = n.dim();
  int dim = cc.pdim + cc.ndim;
  for (int k = 0; k < cc.pdim; ++k) cc.degree.push_back(cc.fp.basis[k].second - 1);
  for (int k = 0; k < cc.ndim; ++k) cc.degree.push_back(n.basis[k].second);
  cc.d = SparseMat(dim, dim);
  for (int c = 0; c < cc.pdim; ++c)
    for (auto& [r, v] : cc.fp.d.column(c)) cc.d.add(r, c, -v);
  // phi on basis (c, q): phi_c · q
  for (int k = 0; k < cc.pdim; ++k) {
    auto& [c, q] = cc.labels[k];
    Vec img = act_element(n, phi[c], A.from_path(q));
    for (int r = 0; r < cc.ndim; ++r)
      if (!img[r].is_zero()) cc.d.add(cc.pdim + r, k, img[r]);
  }
  for (int c = 0; c < cc.ndim; ++c)
    for (auto& [r, v] : n.d.column(c)) cc.d.add(cc.pdim + r, cc.pdim + c, v);
  return cc;
}

}  // namespace

PerfectModel perfect_model(const FinDimDgModule& n, const BuiltAlgebra& A, int floor) {
  PerfectModel pm;
  pm.model.A = &A;
  int top = floor;
  for (auto& [v, deg] : n.basis) top = std::max(top, deg);
  for (int deg = top; deg >= floor; --deg) {
    // kill H^deg of cone(phi), per vertex
    for (;;) {
      ConeComplex cc = build_cone_complex(pm.model, pm.phi, n, floor);
      int dim = cc.pdim + cc.ndim;
      bool attached = false;
      for (int vert = 0; vert < A.num_vertices(); ++vert) {
        // vertex of a cone basis element: src of path (P part) / basis label (N part)
        auto vertex_of = [&](int k) {
          return k < cc.pdim ? cc.labels[k].second.src : n.basis[k - cc.pdim].first;
        };
        std::vector<int> at, below;
        for (int k = 0; k < dim; ++k) {
          if (vertex_of(k) != vert) continue;
          if (cc.degree[k] == deg) at.push_back(k);
          if (cc.degree[k] == deg - 1) below.push_back(k);
        }
        if (at.empty()) continue;
        SparseMat dn(dim, static_cast<int>(at.size()));
        for (size_t c = 0; c < at.size(); ++c)
          for (auto& [r, v] : cc.d.column(at[c]))
            dn.add(r, static_cast<int>(c), v);
        std::vector<Vec> cycles;
        for (auto& kv : rref(dn).kernel()) {
          Vec v(dim);
          for (size_t c = 0; c < at.size(); ++c) v[at[c]] = kv[c];
          cycles.push_back(std::move(v));
        }
        if (cycles.empty()) continue;
        std::vector<Vec> bounds;
        for (int b : below) {
          Vec unit(dim);
          unit[b] = Scalar(1);
          bounds.push_back(cc.d.apply(unit));
        }
        std::vector<Vec> classes = quotient_representatives(cycles, bounds);
        for (auto& z : classes) {
          // attach Σ^{−deg}e_vert A with δ column −p and phi image ν
          int old = pm.model.size();
          pm.model.summands.push_back({vert, -deg});
          Mat nd = zero_mat(old + 1, old + 1);
          for (int r = 0; r < old; ++r)
            for (int c = 0; c < old; ++c) nd[r][c] = pm.model.delta[r][c];
          for (int r = 0; r < old; ++r) {
            AlgebraElement col;
            for (int k = 0; k < cc.pdim; ++k)
              if (cc.labels[k].first == r && !z[k].is_zero())
                col.add_term(cc.labels[k].second, -z[k]);
            nd[r][old] = col;
          }
          pm.model.delta = std::move(nd);
          Vec nu(cc.ndim);
          for (int k = 0; k < cc.ndim; ++k) nu[k] = z[cc.pdim + k];
          pm.phi.push_back(std::move(nu));
          attached = true;
        }
      }
      if (!attached) break;
    }
  }
  assert_square_zero(pm.model, "perfect_model");
  return pm;
}

std::optional<Mat> homotopy_lift(const PerfModule& x, const PerfectModel& pm,
                                 const FinDimDgModule& n,
                                 const std::vector<Vec>& gen_images) {
  const BuiltAlgebra& A = *x.A;
  const PerfModule& p = pm.model;
  // unknowns: u ∈ Hom^0(x, p), k ∈ Hom^{−1}(x, n)
  HomSpace u0 = hom_space(x, p, 0);
  HomSpace u1 = hom_space(x, p, 1);
  SparseMat du = hom_differential(x, p, 0, u0, u1);
  std::vector<std::pair<int, int>> kbasis, tbasis;  // (x summand, n basis index)
  for (int c = 0; c < x.size(); ++c)
    for (int j = 0; j < n.dim(); ++j) {
      if (n.basis[j].first != x.summands[c].first) continue;
      int rel = n.basis[j].second + x.summands[c].second;
      if (rel == -1) kbasis.push_back({c, j});
      if (rel == 0) tbasis.push_back({c, j});
    }
  std::map<std::pair<int, int>, int> tidx;
  for (size_t t = 0; t < tbasis.size(); ++t) tidx[tbasis[t]] = static_cast<int>(t);
  int nu = static_cast<int>(u0.basis.size()), nk = static_cast<int>(kbasis.size());
  int neq = static_cast<int>(u1.basis.size()) + static_cast<int>(tbasis.size());
  SparseMat sys(neq, nu + nk);
  Vec rhs(neq);
  // block 1: D(u) = 0
  for (int r = 0; r < static_cast<int>(u1.basis.size()); ++r)
    for (auto& [c, v] : du.row[r]) sys.add(r, c, v);
  int off = static_cast<int>(u1.basis.size());
  // block 2: phi∘u − D(k) = pi; component at (c, t): Σ_r (phi_r · u_rc)_t
  for (int col = 0; col < nu; ++col) {
    auto& [r, c, pw] = u0.basis[col];
    Vec img = act_element(n, pm.phi[r], A.from_path(pw));
    for (int t = 0; t < n.dim(); ++t)
      if (!img[t].is_zero() && tidx.count({c, t}))
        sys.add(off + tidx[{c, t}], col, img[t]);
  }
  // D(k)_c = d_n(k_c) + Σ_r k_r · δ^x_rc  (n = −1 gives +)
  for (int col = 0; col < nk; ++col) {
    auto [c, j] = kbasis[col];
    Vec v(n.dim());
    v[j] = Scalar(1);
    Vec dv = n.d.apply(v);
    for (int t = 0; t < n.dim(); ++t)
      if (!dv[t].is_zero() && tidx.count({c, t}))
        sys.add(off + tidx[{c, t}], nu + col, -dv[t]);
    for (int c2 = 0; c2 < x.size(); ++c2) {
      if (x.delta[c][c2].is_zero()) continue;
      Vec w = act_element(n, v, x.delta[c][c2]);
      for (int t = 0; t < n.dim(); ++t)
        if (!w[t].is_zero() && tidx.count({c2, t}))
          sys.add(off + tidx[{c2, t}], nu + col, -w[t]);
    }
  }
  for (int c = 0; c < x.size(); ++c)
    for (int t = 0; t < n.dim(); ++t)
      if (tidx.count({c, t})) rhs[off + tidx[{c, t}]] = gen_images[c][t];
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  Vec ucoords(nu);
  for (int k = 0; k < nu; ++k) ucoords[k] = (*sol)[k];
  return hom_coords_to_mat(x, p, u0, ucoords);
}

std::optional<int> longest_path_above(const BuiltAlgebra& A, int lo) {
  const GradedQuiver& q = A.quiver();
  int nv = A.num_vertices(), na = static_cast<int>(q.arrows.size());
  // the degree-0 subquiver must be acyclic for any length bound to exist
  std::vector<int> color(nv, 0);
  std::function<bool(int)> dfs = [&](int v) {
    color[v] = 1;
    for (int a = 0; a < na; ++a) {
      if (q.arrows[a].deg != 0 || q.arrows[a].src != v) continue;
      int w = q.arrows[a].tgt;
      if (color[w] == 1 || (color[w] == 0 && !dfs(w))) return false;
    }
    color[v] = 2;
    return true;
  };
  for (int v = 0; v < nv; ++v)
    if (color[v] == 0 && !dfs(v)) return std::nullopt;
  int K = std::max(0, -lo);
  // best[k][v] = longest walk from v of total degree ≥ −k
  std::vector<std::vector<int>> best(K + 1, std::vector<int>(nv, 0));
  for (int k = 0; k <= K; ++k) {
    for (int pass = 0; pass <= nv + 1; ++pass) {
      bool changed = false;
      for (int a = 0; a < na; ++a) {
        int d = -q.arrows[a].deg;
        if (d > k) continue;
        int cand = 1 + best[k - d][q.arrows[a].tgt];
        if (cand > best[k][q.arrows[a].src]) {
          best[k][q.arrows[a].src] = cand;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
  int out = 0;
  for (int v = 0; v < nv; ++v) out = std::max(out, best[K][v]);
  return out;
}

namespace {

// Resolving much past (lowest basis degree − m − 2) leaves the range where
// the honest algebra has syzygies and starts picking up the infinite tail of
// the non-smooth length truncation.
int resolution_floor(const FinDimDgModule& n, const BuiltAlgebra& A) {
  if (n.dim() == 0) return 0;
  int lo = n.basis[0].second;
  for (auto& [v, deg] : n.basis) lo = std::min(lo, deg);
  return lo - A.m() - 2;
}

// shared tail: lift the projection x -> tau and take the shifted cone
PerfModule finish_truncate_below(const PerfModule& x, int s,
                                 const TruncationAbove& ta, const PerfectModel& pm) {
  // generator images: projection of gen_c = (c, trivial path); the window must
  // match the one inside truncate_above, and generators below it project to 0
  std::vector<std::pair<int, PathWord>> labels;
  to_findim(x, &labels, s);
  std::vector<Vec> gens(x.size(), Vec(ta.module.dim()));
  for (size_t k = 0; k < labels.size(); ++k)
    if (labels[k].second.length() == 0) gens[labels[k].first] = ta.project[k];
  auto u = homotopy_lift(x, pm, ta.module, gens);
  if (!u) throw std::logic_error("smart_truncate_below: lift failed");
  ConeResult cr = cone(x, pm.model, *u);
  return minimize(shift_module(cr.cone, -1)).model;
}

}  // namespace

PerfModule stable_truncate_below(const PerfModule& x, int s) {
  const BuiltAlgebra& A = *x.A;
  TruncationAbove ta0 = truncate_above(x, s);
  int floor = resolution_floor(ta0.module, A);
  // A floor that cuts through live attachments leaves unkilled cone homology;
  // deepen until the resolution terminates (nothing attached in the bottom
  // two degrees), boosting the truncation order to keep the range honest.
  for (int attempt = 0;; ++attempt, floor -= 2) {
    auto need = longest_path_above(A, floor - 1);
    std::optional<BuiltAlgebra> big;
    const BuiltAlgebra* work = &A;
    if (need && *need + 2 > A.L) {
      big = A.rebuild_at(*need + 2);
      work = &*big;
    }
    PerfModule xw = x;
    xw.A = work;
    TruncationAbove ta = truncate_above(xw, s);
    PerfectModel pm = perfect_model(ta.module, *work, floor);
    int min_gen = floor + 2;
    for (auto& [v, sh] : pm.model.summands) min_gen = std::min(min_gen, -sh);
    if (min_gen < floor + 2 && need) {
      if (attempt >= 5)
        throw std::logic_error("stable_truncate_below: resolution does not terminate");
      continue;
    }
    PerfModule tb = finish_truncate_below(xw, s, ta, pm);
    if (work == &A) return tb;
    // project back to truncation order L
    PerfModule out;
    out.A = x.A;
    out.summands = tb.summands;
    out.delta = zero_mat(tb.size(), tb.size());
    for (int r = 0; r < tb.size(); ++r)
      for (int c = 0; c < tb.size(); ++c)
        for (auto& [p, v] : tb.delta[r][c].terms)
          if (p.length() <= A.L) out.delta[r][c].add_term(p, v);
    assert_square_zero(out, "stable_truncate_below");
    return out;
  }
}

PerfModule smart_truncate_below(const PerfModule& x, int s) {
  TruncationAbove ta = truncate_above(x, s);
  PerfectModel pm = perfect_model(ta.module, *x.A, resolution_floor(ta.module, *x.A));
  return finish_truncate_below(x, s, ta, pm);
}

PerfModule smart_truncate_below(const PerfModule& x, int s, int floor) {
  TruncationAbove ta = truncate_above(x, s);
  PerfectModel pm = perfect_model(ta.module, *x.A, floor);
  return finish_truncate_below(x, s, ta, pm);
}

std::string perfmodule_json(const PerfModule& x) {
  std::ostringstream os;
  os << "{\"summands\":[";
  for (int k = 0; k < x.size(); ++k) {
    if (k) os << ",";
    os << "[\"" << x.A->quiver().vertices[x.summands[k].first] << "\","
       << x.summands[k].second << "]";
  }
  os << "],\"delta\":[";
  for (int r = 0; r < x.size(); ++r) {
    if (r) os << ",";
    os << "[";
    for (int c = 0; c < x.size(); ++c) {
      if (c) os << ",";
      os << "\"" << x.A->element_str(x.delta[r][c]) << "\"";
    }
    os << "]";
  }
  os << "]}";
  return os.str();
}

}  // namespace silting
