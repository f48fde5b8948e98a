#pragma once
#include "silting/algebra.hpp"

namespace silting {

enum class AlgKind { Ginzburg, Dpp, Custom };

// DgAlgebra plus enough provenance to rebuild at a different truncation order.
struct BuiltAlgebra : DgAlgebra {
  AlgKind kind = AlgKind::Custom;
  QuiverModel base;

  BuiltAlgebra() = default;
  BuiltAlgebra(DgAlgebra a, AlgKind k, QuiverModel b)
      : DgAlgebra(std::move(a)), kind(k), base(std::move(b)) {}
  BuiltAlgebra rebuild_at(int newL) const;
};

TripleQuiver build_triple_quiver(const GradedQuiver& base, int m, bool preprojective_kind);

// ∂W/∂a = Σ over decompositions p = u a v of every stored term of W of
// (−1)^{(|a|+|v|)|u|}·coeff·(v u).
AlgebraElement cyclic_derivative(const DgAlgebra& alg, const Superpotential& w, int arrow);

BuiltAlgebra ginzburg(const QuiverModel& model, int L);
BuiltAlgebra preprojective(const QuiverModel& model, int L);

// Arrow-level substitution map between two algebras (source arrow -> image).
struct ArrowMap {
  std::map<int, AlgebraElement> images;
};

// Checks d∘ι = ι∘d on every generator; returns the first offending arrow.
std::optional<int> verify_arrow_map(const DgAlgebra& src, const DgAlgebra& dst,
                                    const ArrowMap& iota);

// Γ_{m+2}(Q,W) ≅ Π(Q′,m+2,−W′): doubles each special loop a into a′, a″ with
// ι(a) = a′ + a″√−1, ι(a*) = a′ − a″√−1; identity elsewhere.
std::pair<BuiltAlgebra, ArrowMap> ginzburg_to_dpp(const BuiltAlgebra& g);

// Degree normalization: isomorphic dpp algebra whose base quiver is
// concentrated in [−m/2, y]; moved arrows b get ι(b) = (−1)^{|b||b*|+1}b′*,
// ι(b*) = b′.
std::pair<BuiltAlgebra, ArrowMap> normalize_degrees(const BuiltAlgebra& p);

struct CyReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
};

// Structural strongly-(m+2)-CY criterion: (a) no linear terms in d(arrows);
// (b) V = V_c ⊕ l·z with z = Σ t_i of degree −m−1; (c) dz antisymmetric under
// the flip v₁⊗v₂ ↦ (−1)^{|v₁||v₂|}v₂⊗v₁; (d) η⁺ nondegenerate on dual basis.
CyReport check_strongly_cy_presentation(const DgAlgebra& p, int m);

}  // namespace silting
