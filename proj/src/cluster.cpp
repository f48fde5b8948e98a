#include "silting/cluster.hpp"

#include <sstream>

namespace silting {

namespace {

std::pair<int, int> shift_range(const PerfModule& x) {
  if (x.is_zero_object()) return {0, 0};
  int lo = x.summands[0].second, hi = lo;
  for (auto& [v, s] : x.summands) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

bool iso_or_both_zero(const PerfModule& a, const PerfModule& b) {
  if (a.is_zero_object() && b.is_zero_object()) return true;
  if (a.is_zero_object() != b.is_zero_object()) return false;
  return iso_test(a, b).iso;
}

}  // namespace

DomainTag tag_domain(const PerfModule& x) {
  DomainTag tag;
  auto [lo, hi] = shift_range(x);
  tag.min_shift = lo;
  tag.max_shift = hi;
  tag.in_F = lo >= 0 && hi <= x.A->m();
  return tag;
}

FRep normalize_to_F(const PerfModule& x) {
  FRep out;
  out.rep = sort_summands(minimize(x).model);
  auto [lo, hi] = shift_range(out.rep);
  if (!out.rep.is_zero_object() && lo < 0) {
    // homology above degree 0 is finite dimensional; discarding it keeps the
    // cluster image
    out.rep = sort_summands(stable_truncate_below(out.rep, 0));
    out.truncated = true;
  }
  out.tag = tag_domain(out.rep);
  return out;
}

ClusterHom hom_cluster(const PerfModule& x, const PerfModule& y, int t,
                       bool check_stability, bool cross_check) {
  const BuiltAlgebra& A = *x.A;
  const int m = A.m();
  ClusterHom out;
  if (x.is_zero_object() || y.is_zero_object()) {
    out.fast = true;
    return out;
  }
  auto [mnx, mxx] = shift_range(x);
  auto [mny, mxy] = shift_range(y);
  PerfModule sy = shift_module(y, t);
  bool fast_ok = -mnx + mxy + t <= m;
  if (fast_ok) {
    HomResult h = hom_derived(x, sy, 0, check_stability);
    out.dim = h.dim;
    out.fast = true;
    out.stable = h.stable;
  }
  if (!fast_ok || cross_check) {
    if (t < 0 || t > m)
      throw std::invalid_argument("hom_cluster: t outside [0, m] needs the fast path");
    int c = m - mxy - t;  // largest cut with τ_{≤c}x against Σ^t y admissible
    PerfModule tx = stable_truncate_below(x, c);
    HomResult h = hom_derived(tx, sy, 0, check_stability);
    if (out.fast && h.dim != out.dim)
      throw std::logic_error("hom_cluster: fast and truncation paths disagree");
    out.dim = h.dim;
    out.general = true;
    out.cut = c;
    out.stable = out.fast ? (out.stable && h.stable) : h.stable;
  }
  return out;
}

CTCheck cluster_tilting_check(const PerfModule& z) {
  FRep f = normalize_to_F(z);
  CTCheck out;
  out.pass = true;
  for (int r = 1; r <= z.A->m(); ++r) {
    out.dims.push_back(hom_cluster(f.rep, f.rep, r).dim);
    if (out.dims.back() != 0) out.pass = false;
  }
  return out;
}

PeriodicityReport periodicity_check(const BuiltAlgebra& alg, int i) {
  const int m = alg.m();
  PeriodicityReport rep;
  if (has_base_loop_at(alg, i)) {
    if (alg.num_vertices() != 1) {
      rep.refused = true;
      rep.reason = "loop at the vertex on a multi-vertex quiver";
      return rep;
    }
    // RA_t ≅ Σ^{−t}P: an isomorphism π(RA_r) ≅ π(RA_t), r = t+s+1, would force
    // Hom_C(P, Σ^{−s}P) into a vanishing extension group
    PerfModule p = free_module(alg, i);
    rep.reason = "loop at the vertex: the mutation classes stay pairwise distinct";
    for (int s = 0; s <= m; ++s)
      rep.loop_witness.push_back(hom_cluster(p, p, -s).dim);
    return rep;
  }

  MutationState right = mutate_steps(alg, i, Side::Right, m + 2);
  MutationState left = mutate_steps(alg, i, Side::Left, m + 1);
  auto ra = [&](int t) {
    return t == 0 ? free_module(alg, i) : right.steps[t - 1].module;
  };
  auto la = [&](int t) {
    return t == 0 ? free_module(alg, i) : left.steps[t - 1].module;
  };

  rep.oracle_ok = true;
  for (int t = 0; t <= m + 1; ++t) {
    auto [rt, lt] = oracle_prop46(alg, i, t);
    if (!iso_or_both_zero(rt, ra(t)) || !iso_or_both_zero(lt, la(m + 1 - t)))
      rep.oracle_ok = false;
  }

  FRep wrap = normalize_to_F(ra(m + 1));
  rep.wrap_ok = wrap.tag.in_F && iso_or_both_zero(wrap.rep, free_module(alg, i));

  FRep again = normalize_to_F(right.steps[m + 1].module);
  FRep first = normalize_to_F(ra(1));
  rep.spot_ok = iso_or_both_zero(again.rep, first.rep) &&
                iso_or_both_zero(right.steps[m + 1].approx.obj, right.steps[0].approx.obj);

  rep.holds = rep.oracle_ok && rep.wrap_ok && rep.spot_ok;
  return rep;
}

ComplementsReport complements(const BuiltAlgebra& alg, int i) {
  const int m = alg.m();
  ComplementsReport out;
  out.reps.push_back(free_module(alg, i));
  out.matches_left = true;
  MutationState right = mutate_steps(alg, i, Side::Right, m);
  for (int t = 1; t <= m; ++t) {
    FRep f = normalize_to_F(right.steps[t - 1].module);
    if (!f.tag.in_F)
      throw std::logic_error("complements: representative escaped the fundamental domain");
    MutationState left = mutate_steps(alg, i, Side::Left, m + 1 - t);
    if (!iso_or_both_zero(f.rep, left.current)) out.matches_left = false;
    out.reps.push_back(f.rep);
  }
  out.distinct = true;
  for (size_t a = 0; a < out.reps.size(); ++a)
    for (size_t b = a + 1; b < out.reps.size(); ++b)
      if (iso_or_both_zero(out.reps[a], out.reps[b])) out.distinct = false;
  PerfModule M = algebra_module(alg, i);
  out.all_tilting = true;
  for (auto& r : out.reps)
    if (!cluster_tilting_check(direct_sum(M, r)).pass) out.all_tilting = false;
  out.ok = out.matches_left && out.distinct && out.all_tilting &&
           static_cast<int>(out.reps.size()) == m + 1;
  return out;
}

EulerReport euler_les_check(const PerfModule& x, const PerfModule& y) {
  const BuiltAlgebra& A = *x.A;
  const int m = A.m();
  FRep fx = normalize_to_F(x), fy = normalize_to_F(y);
  if (!fx.tag.in_F || !fy.tag.in_F)
    throw std::invalid_argument("euler_les_check: inputs must normalize into F");
  EulerReport out;
  for (int i = 1; i <= m; ++i) {
    out.extD_xy.push_back(hom_derived(fx.rep, shift_module(fy.rep, i), 0).dim);
    out.extD_yx.push_back(hom_derived(fy.rep, shift_module(fx.rep, i), 0).dim);
    out.extC.push_back(hom_cluster(fx.rep, fy.rep, i).dim);
  }
  int sum = 0;
  for (int i = 1; i <= m; ++i) {
    int term = out.extD_xy[i - 1] - out.extC[i - 1] + out.extD_yx[m - i];
    sum += (i % 2 == 0) ? term : -term;
  }
  out.alternating_sum = sum;
  out.ends_ok = out.extD_xy[0] <= out.extC[0] && out.extC[m - 1] >= out.extD_yx[0];
  if (m == 1) out.additive = out.extC[0] == out.extD_xy[0] + out.extD_yx[0];
  out.holds = sum == 0 && out.ends_ok && (m != 1 || out.additive);
  return out;
}

}  // namespace silting
