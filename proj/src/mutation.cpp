#include "silting/mutation.hpp"

#include <algorithm>
#include <stdexcept>

namespace silting {

bool has_base_loop_at(const BuiltAlgebra& alg, int i) {
  for (auto& a : alg.base.quiver.arrows)
    if (a.src == i && a.tgt == i) return true;
  return false;
}

SimpleResolution resolve_simple(const BuiltAlgebra& alg, int i) {
  const GradedQuiver& q = alg.quiver();
  SimpleResolution res;
  res.vertex = i;
  PerfModule& y = res.Y;
  y.A = &alg;
  y.summands.push_back({i, 0});
  std::vector<int> col_arrow = {-1};  // arrow attached to each summand
  std::map<int, int> row_of_arrow;
  for (int j = 0; j <= alg.m() + 1; ++j)
    for (size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].tgt == i && q.arrows[a].deg == -j) {
        row_of_arrow[static_cast<int>(a)] = y.size();
        y.summands.push_back({q.arrows[a].src, j + 1});
        col_arrow.push_back(static_cast<int>(a));
      }
  y.delta = zero_mat(y.size(), y.size());
  for (int c = 1; c < y.size(); ++c) {
    int a = col_arrow[c];
    y.delta[0][c] = alg.from_path(PathWord{{a}, q.arrows[a].src, i});
    for (auto& [w, cf] : alg.darr[a].terms) {
      if (w.length() == 0) throw std::logic_error("resolve_simple: constant in d(arrow)");
      int lead = w.arrows[0];
      auto it = row_of_arrow.find(lead);
      if (it == row_of_arrow.end())
        throw std::logic_error("resolve_simple: leading factor is not an arrow into i");
      PathWord rest{std::vector<int>(w.arrows.begin() + 1, w.arrows.end()), w.src,
                    q.arrows[lead].src};
      y.delta[it->second][c] =
          alg.add(y.delta[it->second][c], alg.from_path(rest, -cf));
    }
  }
  assert_square_zero(y, "resolve_simple");
  // homology invariant: H(Y) ≅ S_i in the reliable window
  FinDimDgModule f = to_findim(y);
  for (int deg = -alg.m() - 1; deg <= 0; ++deg) {
    int dim = findim_homology_dim(f, deg);
    if (dim != (deg == 0 ? 1 : 0))
      throw std::logic_error("resolve_simple: homology is not the simple at degree " +
                             std::to_string(deg));
  }
  return res;
}

std::pair<PerfModule, PerfModule> truncate_weights(const SimpleResolution& y, int t) {
  const PerfModule& Y = y.Y;
  std::vector<int> low, high;
  for (int k = 0; k < Y.size(); ++k)
    (Y.summands[k].second <= t ? low : high).push_back(k);
  auto block = [&](const std::vector<int>& idx) {
    PerfModule b;
    b.A = Y.A;
    b.delta = zero_mat(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    for (size_t r = 0; r < idx.size(); ++r) {
      b.summands.push_back(Y.summands[idx[r]]);
      for (size_t c = 0; c < idx.size(); ++c) b.delta[r][c] = Y.delta[idx[r]][idx[c]];
    }
    assert_square_zero(b, "truncate_weights");
    return b;
  };
  return {block(low), block(high)};
}

namespace {

// classes of H^0 Hom(x, y) as coordinate vectors plus the ambient data
struct ClassSpace {
  HomSpace at;
  std::vector<Vec> cycles;
  std::vector<Vec> boundaries;
};

ClassSpace class_space(const PerfModule& x, const PerfModule& y) {
  ClassSpace cs;
  HomSpace below = hom_space(x, y, -1);
  cs.at = hom_space(x, y, 0);
  HomSpace above = hom_space(x, y, 1);
  SparseMat dn = hom_differential(x, y, 0, cs.at, above);
  SparseMat db = hom_differential(x, y, -1, below, cs.at);
  cs.cycles = rref(dn).kernel();
  for (size_t k = 0; k < below.basis.size(); ++k) {
    Vec unit(below.basis.size());
    unit[k] = Scalar(1);
    cs.boundaries.push_back(db.apply(unit));
  }
  return cs;
}

bool in_span(const std::vector<Vec>& span, const std::vector<Vec>& targets) {
  if (targets.empty()) return true;
  std::vector<Vec> rows = span;
  int before = dense_rank(rows);
  for (auto& t : targets) rows.push_back(t);
  return dense_rank(rows) == before;
}

}  // namespace

Approximation approximate(const PerfModule& x, const std::vector<int>& gens, Side side) {
  const BuiltAlgebra& A = *x.A;
  Approximation res;
  std::vector<PerfModule> N;
  for (int j : gens) N.push_back(free_module(A, j));
  // per generator: classes and radical-composite classes
  std::vector<ClassSpace> cs;
  for (size_t j = 0; j < N.size(); ++j)
    cs.push_back(side == Side::Right ? class_space(N[j], x) : class_space(x, N[j]));
  std::vector<std::vector<Mat>> tops(N.size());
  for (size_t j = 0; j < N.size(); ++j) {
    std::vector<Vec> radical = cs[j].boundaries;
    for (size_t k = 0; k < N.size(); ++k) {
      // degree-0 paths of length ≥ 1 between the generators
      int from = side == Side::Right ? gens[j] : gens[k];
      int to = side == Side::Right ? gens[k] : gens[j];
      for (const PathWord& p : A.paths_of_degree(0, from, to)) {
        if (p.length() == 0) continue;
        for (auto& h : cs[k].cycles) {
          // composite through N_k
          Mat hm = side == Side::Right ? hom_coords_to_mat(N[k], x, cs[k].at, h)
                                       : hom_coords_to_mat(x, N[k], cs[k].at, h);
          Mat comp;
          if (side == Side::Right) {
            Mat pm = zero_mat(1, 1);
            pm[0][0] = A.from_path(p);
            comp = mat_compose(N[j], N[k], x, hm, pm);
            radical.push_back(mat_to_hom_coords(N[j], x, cs[j].at, comp));
          } else {
            Mat pm = zero_mat(1, 1);
            pm[0][0] = A.from_path(p);
            comp = mat_compose(x, N[k], N[j], pm, hm);
            radical.push_back(mat_to_hom_coords(x, N[j], cs[j].at, comp));
          }
        }
      }
    }
    for (auto& v : quotient_representatives(cs[j].cycles, radical))
      tops[j].push_back(side == Side::Right ? hom_coords_to_mat(N[j], x, cs[j].at, v)
                                            : hom_coords_to_mat(x, N[j], cs[j].at, v));
  }
  // assemble O and the map
  PerfModule& O = res.obj;
  O.A = &A;
  std::vector<std::pair<int, Mat>> cols;  // (generator index, map component)
  for (size_t j = 0; j < N.size(); ++j)
    for (auto& f : tops[j]) {
      O.summands.push_back({gens[j], 0});
      cols.push_back({static_cast<int>(j), f});
    }
  O.delta = zero_mat(O.size(), O.size());
  if (side == Side::Right) {
    res.map = zero_mat(x.size(), O.size());
    for (int c = 0; c < O.size(); ++c)
      for (int r = 0; r < x.size(); ++r) res.map[r][c] = cols[c].second[r][0];
  } else {
    res.map = zero_mat(O.size(), x.size());
    for (int r = 0; r < O.size(); ++r)
      for (int c = 0; c < x.size(); ++c) res.map[r][c] = cols[r].second[0][c];
  }
  // surjectivity of the induced map on classes through every generator
  res.surjective = true;
  for (size_t k = 0; k < N.size(); ++k) {
    std::vector<Vec> image = cs[k].boundaries;
    if (side == Side::Right) {
      ClassSpace co = class_space(N[k], O);
      for (auto& g : co.cycles) {
        Mat gm = hom_coords_to_mat(N[k], O, co.at, g);
        Mat comp = mat_compose(N[k], O, x, res.map, gm);
        image.push_back(mat_to_hom_coords(N[k], x, cs[k].at, comp));
      }
    } else {
      ClassSpace co = class_space(O, N[k]);
      for (auto& g : co.cycles) {
        Mat gm = hom_coords_to_mat(O, N[k], co.at, g);
        Mat comp = mat_compose(x, O, N[k], gm, res.map);
        image.push_back(mat_to_hom_coords(x, N[k], cs[k].at, comp));
      }
    }
    if (!in_span(image, cs[k].cycles)) res.surjective = false;
  }
  return res;
}

MutationState mutation_start(const BuiltAlgebra& alg, int i, Side side) {
  MutationState st;
  st.A = &alg;
  st.vertex = i;
  st.side = side;
  st.current = free_module(alg, i);
  return st;
}

void mutate(MutationState& st) {
  const BuiltAlgebra& A = *st.A;
  std::vector<int> gens;
  for (int j = 0; j < A.num_vertices(); ++j)
    if (j != st.vertex) gens.push_back(j);
  MutationStep step;
  step.approx = approximate(st.current, gens, st.side);
  if (st.side == Side::Right) {
    ConeResult cr = cone(step.approx.obj, st.current, step.approx.map);
    MinimizeResult mm = minimize(shift_module(cr.cone, -1));
    step.approx.cone_reduced = mm.reduced_pairs;
    step.module = mm.model;
    // α: RA_t → O through the cone projection (matrices shift along with Σ^{−1})
    PerfModule sc = shift_module(cr.cone, -1);
    step.alpha = mat_compose(step.module, sc, step.approx.obj,
                             cr.proj_sx, mm.incl);
    if (!mat_is_zero(apply_hom_differential(step.module, step.approx.obj, step.alpha, 0)))
      throw std::logic_error("mutate: alpha is not closed");
  } else {
    ConeResult cr = cone(st.current, step.approx.obj, step.approx.map);
    MinimizeResult mm = minimize(cr.cone);
    step.approx.cone_reduced = mm.reduced_pairs;
    step.module = mm.model;
  }
  st.current = step.module;
  st.steps.push_back(std::move(step));
}

MutationState mutate_steps(const BuiltAlgebra& alg, int i, Side side, int t) {
  MutationState st = mutation_start(alg, i, side);
  for (int k = 0; k < t; ++k) mutate(st);
  return st;
}

std::pair<PerfModule, PerfModule> oracle_prop46(const BuiltAlgebra& alg, int i, int t) {
  if (has_base_loop_at(alg, i))
    throw std::invalid_argument("oracle_prop46: loop at the chosen vertex");
  SimpleResolution y = resolve_simple(alg, i);
  auto [low, high] = truncate_weights(y, t);
  return {sort_summands(shift_module(low, -t)), sort_summands(shift_module(high, -t - 1))};
}

ARAngleReport ar_angle(const BuiltAlgebra& alg, int i) {
  ARAngleReport rep;
  if (has_base_loop_at(alg, i)) {
    rep.refused = true;
    rep.reason = "loop at vertex";
    return rep;
  }
  int m = alg.m();
  MutationState st = mutate_steps(alg, i, Side::Right, m + 1);
  // terms RA_{m+1}, O^{(m+1)}, …, O^{(1)}, P_i
  rep.terms.push_back(st.steps[m].module);
  for (int t = m + 1; t >= 1; --t) rep.terms.push_back(st.steps[t - 1].approx.obj);
  rep.terms.push_back(free_module(alg, i));
  rep.sink_ok = st.steps[0].approx.surjective;
  // φ_t = α^{(t)} ∘ f^{(t+1)}: O^{(t+1)} → O^{(t)}; consecutive composites are
  // boundaries because triangle maps compose to zero up to homotopy
  std::vector<Mat> phi;  // phi[t-1]: O^{(t+1)} → O^{(t)} for t = 1..m
  for (int t = 1; t <= m; ++t) {
    const PerfModule& src = st.steps[t].approx.obj;
    const PerfModule& mid = st.steps[t - 1].module;  // RA_t
    const PerfModule& dst = st.steps[t - 1].approx.obj;
    Mat f = st.steps[t].approx.map;  // O^{(t+1)} → RA_t
    phi.push_back(mat_compose(src, mid, dst, st.steps[t - 1].alpha, f));
  }
  for (int t = 1; t + 1 <= m; ++t) {
    const PerfModule& src = st.steps[t + 1].approx.obj;
    const PerfModule& mid = st.steps[t].approx.obj;
    const PerfModule& dst = st.steps[t - 1].approx.obj;
    Mat comp = mat_compose(src, mid, dst, phi[t - 1], phi[t]);
    rep.composite_vanishes.push_back(
        hom_boundary_witness(src, dst, comp, 0).has_value());
  }
  // end composite h^{(1)} ∘ φ_1: O^{(2)} → P_i
  if (m >= 1) {
    const PerfModule& src = st.steps[1].approx.obj;
    const PerfModule& mid = st.steps[0].approx.obj;
    PerfModule pi = free_module(alg, i);
    Mat comp = mat_compose(src, mid, pi, st.steps[0].approx.map, phi[0]);
    rep.composite_vanishes.push_back(hom_boundary_witness(src, pi, comp, 0).has_value());
  }
  return rep;
}

}  // namespace silting
