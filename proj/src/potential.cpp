#include "silting/potential.hpp"

#include <algorithm>

#include "silting/linalg.hpp"

namespace silting {

TripleQuiver build_triple_quiver(const GradedQuiver& base, int m, bool preprojective_kind) {
  TripleQuiver tq;
  tq.m = m;
  tq.q = base;  // base arrows keep their indices, so W's words carry over
  tq.info.assign(base.arrows.size(), ArrowInfo{});
  std::vector<int> specials = preprojective_kind ? special_loops(base, m) : std::vector<int>{};
  auto is_special = [&](int a) {
    return std::find(specials.begin(), specials.end(), a) != specials.end();
  };
  for (size_t a = 0; a < base.arrows.size(); ++a) {
    tq.info[a].kind = ArrowKind::Original;
    tq.info[a].special = is_special(static_cast<int>(a));
    if (tq.info[a].special) {
      tq.info[a].dual = static_cast<int>(a);  // self-dual, no extra arrow
    } else {
      const Arrow& ar = base.arrows[a];
      int dual = tq.q.add_arrow(ar.name + "*", ar.tgt, ar.src, -m - ar.deg);
      tq.info.push_back(ArrowInfo{ArrowKind::Dual, static_cast<int>(a), false});
      tq.info[a].dual = dual;
    }
  }
  for (size_t i = 0; i < base.vertices.size(); ++i) {
    int t = tq.q.add_arrow("t_" + base.vertices[i], static_cast<int>(i),
                           static_cast<int>(i), -m - 1);
    tq.info.push_back(ArrowInfo{ArrowKind::TLoop, t, false});
    tq.tloop.push_back(t);
  }
  return tq;
}

AlgebraElement cyclic_derivative(const DgAlgebra& alg, const Superpotential& w, int arrow) {
  const GradedQuiver& q = alg.quiver();
  AlgebraElement out;
  for (auto& [p, c] : w.terms) {
    for (size_t k = 0; k < p.arrows.size(); ++k) {
      if (p.arrows[k] != arrow) continue;
      PathWord u{std::vector<int>(p.arrows.begin(), p.arrows.begin() + k),
                 q.arrows[arrow].tgt, p.tgt};
      PathWord v{std::vector<int>(p.arrows.begin() + k + 1, p.arrows.end()), p.src,
                 q.arrows[arrow].src};
      int du = path_degree(q, u), dv = path_degree(q, v), da = q.arrows[arrow].deg;
      Scalar sgn(((da + dv) * du) % 2 == 0 ? 1 : -1);
      auto vu = path_mul(v, u);
      if (!vu) throw std::logic_error("cyclic_derivative: non-cyclic potential term");
      out = alg.add(out, alg.from_path(*vu, sgn * c));
    }
  }
  return out;
}

namespace {

// e_i (Σ_{a∈Q₁} [a,a*]) e_i with [a,a*] = aa* − (−1)^{|a||a*|} a*a
AlgebraElement d_tloop(const DgAlgebra& alg, int vertex) {
  const GradedQuiver& q = alg.quiver();
  AlgebraElement out;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    if (alg.tq.info[a].kind != ArrowKind::Original) continue;
    int dual = alg.tq.info[a].dual;
    const Arrow& ar = q.arrows[a];
    const Arrow& du = q.arrows[dual];
    // a a* : cycle at tgt(a)
    if (ar.tgt == vertex)
      out.add_term(*path_mul(PathWord{{static_cast<int>(a)}, ar.src, ar.tgt},
                             PathWord{{dual}, du.src, du.tgt}),
                   Scalar(1));
    // −(−1)^{|a||a*|} a* a : cycle at src(a)
    if (ar.src == vertex)
      out.add_term(*path_mul(PathWord{{dual}, du.src, du.tgt},
                             PathWord{{static_cast<int>(a)}, ar.src, ar.tgt}),
                   Scalar((ar.deg * du.deg) % 2 == 0 ? -1 : 1));
  }
  return out;
}

}  // namespace

BuiltAlgebra ginzburg(const QuiverModel& model, int L) {
  DgAlgebra alg;
  alg.tq = build_triple_quiver(model.quiver, model.m, /*preprojective_kind=*/false);
  alg.L = L;
  alg.w = model.potential;
  alg.darr.assign(alg.quiver().arrows.size(), AlgebraElement{});
  for (size_t a = 0; a < alg.quiver().arrows.size(); ++a) {
    const ArrowInfo& inf = alg.tq.info[a];
    if (inf.kind == ArrowKind::Original) continue;  // d(a) = 0
    if (inf.kind == ArrowKind::Dual) {
      int base = inf.dual;
      Scalar sgn(alg.quiver().arrows[base].deg % 2 == 0 ? 1 : -1);
      alg.darr[a] = alg.scale(sgn, cyclic_derivative(alg, model.potential, base));
    } else {
      alg.darr[a] = d_tloop(alg, alg.quiver().arrows[a].src);
    }
  }
  return BuiltAlgebra(std::move(alg), AlgKind::Ginzburg, model);
}

BuiltAlgebra preprojective(const QuiverModel& model, int L) {
  DgAlgebra alg;
  alg.tq = build_triple_quiver(model.quiver, model.m, /*preprojective_kind=*/true);
  alg.L = L;
  alg.w = model.potential;
  alg.darr.assign(alg.quiver().arrows.size(), AlgebraElement{});
  for (size_t a = 0; a < alg.quiver().arrows.size(); ++a) {
    const ArrowInfo& inf = alg.tq.info[a];
    const GradedQuiver& q = alg.quiver();
    if (inf.kind == ArrowKind::TLoop) {
      alg.darr[a] = d_tloop(alg, q.arrows[a].src);
    } else if (inf.kind == ArrowKind::Original) {
      // da = {W,a} = (−1)^{(|a|+1)|a*|} ∂W/∂a*   (a* = a for special loops)
      int dual = inf.dual;
      Scalar sgn(((q.arrows[a].deg + 1) * q.arrows[dual].deg) % 2 == 0 ? 1 : -1);
      alg.darr[a] = alg.scale(sgn, cyclic_derivative(alg, model.potential, dual));
    } else {
      // da* = {W,a*} = (−1)^{|a|+1} ∂W/∂a
      int base = inf.dual;
      Scalar sgn((q.arrows[base].deg + 1) % 2 == 0 ? 1 : -1);
      alg.darr[a] = alg.scale(sgn, cyclic_derivative(alg, model.potential, base));
    }
  }
  return BuiltAlgebra(std::move(alg), AlgKind::Dpp, model);
}

BuiltAlgebra BuiltAlgebra::rebuild_at(int newL) const {
  switch (kind) {
    case AlgKind::Ginzburg: return ginzburg(base, newL);
    case AlgKind::Dpp: return preprojective(base, newL);
    case AlgKind::Custom: {
      BuiltAlgebra copy = *this;
      copy.L = newL;
      return copy;
    }
  }
  throw std::logic_error("rebuild_at: bad kind");
}

std::optional<int> verify_arrow_map(const DgAlgebra& src, const DgAlgebra& dst,
                                    const ArrowMap& iota) {
  for (size_t a = 0; a < src.quiver().arrows.size(); ++a) {
    auto it = iota.images.find(static_cast<int>(a));
    if (it == iota.images.end()) return static_cast<int>(a);
    AlgebraElement lhs = dst.d(it->second);
    AlgebraElement rhs = dst.substitute(src.darr[a], iota.images);
    if (!(lhs == rhs)) return static_cast<int>(a);
  }
  return std::nullopt;
}

std::pair<BuiltAlgebra, ArrowMap> ginzburg_to_dpp(const BuiltAlgebra& g) {
  if (g.kind != AlgKind::Ginzburg)
    throw std::invalid_argument("ginzburg_to_dpp: input must come from ginzburg()");
  const QuiverModel& src_model = g.base;
  const GradedQuiver& q = src_model.quiver;
  std::vector<int> specials = special_loops(q, src_model.m);
  auto is_special = [&](int a) {
    return std::find(specials.begin(), specials.end(), a) != specials.end();
  };
  QuiverModel tgt;
  tgt.m = src_model.m;
  tgt.quiver.vertices = q.vertices;
  // base-arrow index -> (primary image arrow, secondary image arrow or -1)
  std::vector<std::pair<int, int>> img(q.arrows.size(), {-1, -1});
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    if (is_special(static_cast<int>(a))) {
      int p1 = tgt.quiver.add_arrow(ar.name + "'", ar.src, ar.tgt, ar.deg);
      int p2 = tgt.quiver.add_arrow(ar.name + "''", ar.src, ar.tgt, ar.deg);
      img[a] = {p1, p2};
    } else {
      img[a] = {tgt.quiver.add_arrow(ar.name, ar.src, ar.tgt, ar.deg), -1};
    }
  }
  // W′ = W with each special loop replaced by a′ + a″√−1; target uses −W′.
  BuiltAlgebra shell;  // scratch algebra over the bare target quiver for expansion
  static_cast<DgAlgebra&>(shell).tq.q = tgt.quiver;
  shell.tq.m = tgt.m;
  shell.tq.info.assign(tgt.quiver.arrows.size(), ArrowInfo{});
  shell.darr.assign(tgt.quiver.arrows.size(), AlgebraElement{});
  shell.L = g.L;
  std::map<int, AlgebraElement> base_subst;
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    auto [p1, p2] = img[a];
    const Arrow& t1 = tgt.quiver.arrows[p1];
    AlgebraElement e = shell.from_path(PathWord{{p1}, t1.src, t1.tgt});
    if (p2 >= 0)
      e = shell.add(e, shell.from_path(PathWord{{p2}, t1.src, t1.tgt}, Scalar::unit_i()));
    base_subst[static_cast<int>(a)] = e;
  }
  AlgebraElement w_src;
  for (auto& [p, c] : src_model.potential.terms) w_src.add_term(p, c);
  AlgebraElement w_img = shell.substitute(w_src, base_subst);
  for (auto& [p, c] : w_img.terms) tgt.potential.add_term(p, -c);  // −W′
  BuiltAlgebra dpp = preprojective(tgt, g.L);
  // ι on the full triple quiver of the source
  ArrowMap iota;
  const GradedQuiver& dq = dpp.quiver();
  auto arrow_elem = [&](int idx, Scalar c = Scalar(1)) {
    const Arrow& ar = dq.arrows[idx];
    return dpp.from_path(PathWord{{idx}, ar.src, ar.tgt}, c);
  };
  for (size_t a = 0; a < g.quiver().arrows.size(); ++a) {
    const ArrowInfo& inf = g.tq.info[a];
    if (inf.kind == ArrowKind::TLoop) {
      iota.images[static_cast<int>(a)] = arrow_elem(dpp.tq.tloop[g.quiver().arrows[a].src]);
    } else if (inf.kind == ArrowKind::Original) {
      auto [p1, p2] = img[a];
      AlgebraElement e = arrow_elem(p1);
      if (p2 >= 0) e = dpp.add(e, arrow_elem(p2, Scalar::unit_i()));
      iota.images[static_cast<int>(a)] = e;
    } else {  // dual of base arrow inf.dual
      auto [p1, p2] = img[inf.dual];
      if (p2 >= 0) {
        AlgebraElement e = dpp.add(arrow_elem(p1), arrow_elem(p2, -Scalar::unit_i()));
        iota.images[static_cast<int>(a)] = e;
      } else {
        iota.images[static_cast<int>(a)] = arrow_elem(dpp.tq.info[p1].dual);
      }
    }
  }
  if (auto bad = verify_arrow_map(g, dpp, iota))
    throw std::logic_error("ginzburg_to_dpp: ι fails to commute with d at arrow " +
                           g.quiver().arrows[*bad].name);
  return {std::move(dpp), std::move(iota)};
}

std::pair<BuiltAlgebra, ArrowMap> normalize_degrees(const BuiltAlgebra& p) {
  if (p.kind != AlgKind::Dpp)
    throw std::invalid_argument("normalize_degrees: input must be deformed preprojective");
  const QuiverModel& src_model = p.base;
  const GradedQuiver& q = src_model.quiver;
  int m = src_model.m;
  // y = max degree over Q̄^V arrows; x = min; x + y = −m must hold
  int y = 0;
  bool have = false;
  for (size_t a = 0; a < p.quiver().arrows.size(); ++a) {
    if (p.tq.info[a].kind == ArrowKind::TLoop) continue;
    int d = p.quiver().arrows[a].deg;
    if (!have || d > y) y = d;
    have = true;
  }
  if (!have) {  // no arrows at all: nothing to normalize
    ArrowMap id;
    for (size_t a = 0; a < p.quiver().arrows.size(); ++a) {
      const Arrow& ar = p.quiver().arrows[a];
      id.images[static_cast<int>(a)] = p.from_path(PathWord{{static_cast<int>(a)}, ar.src, ar.tgt});
    }
    return {p, std::move(id)};
  }
  QuiverModel tgt;
  tgt.m = m;
  tgt.quiver.vertices = q.vertices;
  // base-arrow a -> (target base arrow index, moved?)
  struct Img { int arrow; bool moved; };
  std::vector<Img> img(q.arrows.size());
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    if (2 * ar.deg >= -m && ar.deg <= y) {
      img[a] = {tgt.quiver.add_arrow(ar.name, ar.src, ar.tgt, ar.deg), false};
    } else {
      int dd = -m - ar.deg;  // |b*| ∈ (−m/2, y]
      img[a] = {tgt.quiver.add_arrow(ar.name + "'", ar.tgt, ar.src, dd), true};
    }
  }
  BuiltAlgebra tgt_shell = preprojective(tgt, p.L);  // potential filled below; rebuild after
  const GradedQuiver& dq = tgt_shell.quiver();
  auto arrow_elem = [&](const DgAlgebra& alg, int idx, Scalar c = Scalar(1)) {
    const Arrow& ar = alg.quiver().arrows[idx];
    return alg.from_path(PathWord{{idx}, ar.src, ar.tgt}, c);
  };
  std::map<int, AlgebraElement> base_subst;  // on src base arrows, into target
  for (size_t a = 0; a < q.arrows.size(); ++a) {
    const Arrow& ar = q.arrows[a];
    if (!img[a].moved) {
      base_subst[static_cast<int>(a)] = arrow_elem(tgt_shell, img[a].arrow);
    } else {
      // ι(b) = (−1)^{|b||b*|+1} b′*
      int bstar_deg = -m - ar.deg;
      int bp = img[a].arrow;
      int bpstar = tgt_shell.tq.info[bp].dual;
      Scalar sgn((ar.deg * bstar_deg + 1) % 2 == 0 ? 1 : -1);
      base_subst[static_cast<int>(a)] = arrow_elem(tgt_shell, bpstar, sgn);
    }
  }
  AlgebraElement w_src;
  for (auto& [pw, c] : src_model.potential.terms) w_src.add_term(pw, c);
  AlgebraElement w_img = tgt_shell.substitute(w_src, base_subst);
  for (auto& [pw, c] : w_img.terms) tgt.potential.add_term(pw, c);  // W′ = ι(W)
  BuiltAlgebra out = preprojective(tgt, p.L);
  ArrowMap iota;
  for (size_t a = 0; a < p.quiver().arrows.size(); ++a) {
    const ArrowInfo& inf = p.tq.info[a];
    if (inf.kind == ArrowKind::TLoop) {
      iota.images[static_cast<int>(a)] = arrow_elem(out, out.tq.tloop[p.quiver().arrows[a].src]);
    } else if (inf.kind == ArrowKind::Original) {
      const Arrow& ar = q.arrows[a];
      if (!img[a].moved) {
        iota.images[static_cast<int>(a)] = arrow_elem(out, img[a].arrow);
      } else {
        int bp = img[a].arrow;
        Scalar sgn((ar.deg * (-m - ar.deg) + 1) % 2 == 0 ? 1 : -1);
        iota.images[static_cast<int>(a)] = arrow_elem(out, out.tq.info[bp].dual, sgn);
      }
    } else {  // dual of base arrow b = inf.dual: ι(b*) = b′ when moved, else dual
      int b = inf.dual;
      if (!img[b].moved) {
        iota.images[static_cast<int>(a)] = arrow_elem(out, out.tq.info[img[b].arrow].dual);
      } else {
        iota.images[static_cast<int>(a)] = arrow_elem(out, img[b].arrow);
      }
    }
  }
  if (auto bad = verify_arrow_map(p, out, iota))
    throw std::logic_error("normalize_degrees: ι fails to commute with d at arrow " +
                           p.quiver().arrows[*bad].name);
  return {std::move(out), std::move(iota)};
}

bool CyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.pass; });
}

CyReport check_strongly_cy_presentation(const DgAlgebra& p, int m) {
  CyReport rep;
  const GradedQuiver& q = p.quiver();
  // (a) d(V) ∩ V = 0: no linear term in any arrow differential
  bool no_linear = true;
  for (auto& dx : p.darr)
    for (auto& [pw, c] : dx.terms)
      if (pw.length() <= 1) no_linear = false;
  rep.checks.push_back({"d_has_no_linear_terms", no_linear, ""});
  // (b) z = Σ t_i of degree −m−1, one per vertex
  bool z_ok = p.tq.tloop.size() == q.vertices.size();
  for (int t : p.tq.tloop)
    if (q.arrows[t].deg != -m - 1 || q.arrows[t].src != q.arrows[t].tgt) z_ok = false;
  rep.checks.push_back({"central_z_of_degree_minus_m_minus_1", z_ok, ""});
  // dz as a sum over length-2 words αβ in the non-t arrows
  AlgebraElement dz;
  for (int t : p.tq.tloop) dz = p.add(dz, p.darr[t]);
  bool quadratic = true;
  auto is_t = [&](int a) { return p.tq.info[a].kind == ArrowKind::TLoop; };
  for (auto& [pw, c] : dz.terms)
    if (pw.length() != 2 || is_t(pw.arrows[0]) || is_t(pw.arrows[1])) quadratic = false;
  // (c) antisymmetry: F(dz) = −dz with F(αβ) = (−1)^{|α||β|} βα
  bool antisym = quadratic;
  if (quadratic) {
    AlgebraElement flipped;
    for (auto& [pw, c] : dz.terms) {
      int a = pw.arrows[0], b = pw.arrows[1];
      PathWord ba{{b, a}, q.arrows[a].src, q.arrows[b].tgt};
      Scalar sgn((q.arrows[a].deg * q.arrows[b].deg) % 2 == 0 ? 1 : -1);
      flipped.add_term(ba, sgn * c);
    }
    antisym = flipped == p.scale(Scalar(-1), dz);
  }
  rep.checks.push_back({"dz_antisymmetric_under_flip", antisym,
                        quadratic ? "" : "dz not a quadratic word in V_c"});
  // (d) η⁺ nondegenerate: η⁺(φ_γ) = (−1)^{m|γ|} Σ_{γβ term} c · β must have
  // full rank as a matrix over the non-t arrows
  std::vector<int> varrows;
  for (size_t a = 0; a < q.arrows.size(); ++a)
    if (!is_t(static_cast<int>(a))) varrows.push_back(static_cast<int>(a));
  std::map<int, int> col;
  for (size_t k = 0; k < varrows.size(); ++k) col[varrows[k]] = static_cast<int>(k);
  bool nondeg = quadratic;
  if (quadratic && !varrows.empty()) {
    SparseMat mat(static_cast<int>(varrows.size()), static_cast<int>(varrows.size()));
    for (auto& [pw, c] : dz.terms) {
      int a = pw.arrows[0], b = pw.arrows[1];
      Scalar sgn((m * q.arrows[a].deg) % 2 == 0 ? 1 : -1);
      mat.add(col[a], col[b], sgn * c);
    }
    nondeg = sparse_rank(mat) == static_cast<int>(varrows.size());
  }
  rep.checks.push_back({"eta_nondegenerate", nondeg, ""});
  return rep;
}

}  // namespace silting
