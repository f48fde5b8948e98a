#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "silting/quiver.hpp"

namespace silting {

enum class ArrowKind { Original, Dual, TLoop };

struct ArrowInfo {
  ArrowKind kind = ArrowKind::Original;
  int dual = -1;        // index of the dual arrow (self for special loops / t-loops)
  bool special = false;  // special loop of the base quiver (odd degree -m/2)
};

// Triple quiver: base arrows, dual arrows, one t_i loop per vertex.
struct TripleQuiver {
  GradedQuiver q;
  std::vector<ArrowInfo> info;
  std::vector<int> tloop;  // per vertex, arrow index of t_i
  int m = 1;
};

// Finite scalar combination of paths, carried modulo paths of length > L.
struct AlgebraElement {
  std::map<PathWord, Scalar> terms;

  bool is_zero() const { return terms.empty(); }
  void add_term(const PathWord& p, const Scalar& c);
  bool operator==(const AlgebraElement& o) const { return terms == o.terms; }
};

// Completed graded path dg algebra at truncation order L (A / m^{L+1}).
struct DgAlgebra {
  TripleQuiver tq;
  std::vector<AlgebraElement> darr;  // differential on each arrow
  int L = 8;
  Superpotential w;  // source superpotential (provenance only)

  const GradedQuiver& quiver() const { return tq.q; }
  int num_vertices() const { return static_cast<int>(tq.q.vertices.size()); }
  int m() const { return tq.m; }

  AlgebraElement unit(int vertex) const;  // e_i
  AlgebraElement from_path(const PathWord& p, const Scalar& c = Scalar(1)) const;
  AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) const;
  AlgebraElement scale(const Scalar& c, const AlgebraElement& x) const;
  AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const;
  // Substitute arrows by elements (degree-preserving); used by the ι maps.
  AlgebraElement substitute(const AlgebraElement& x,
                            const std::map<int, AlgebraElement>& images) const;

  // homogeneous degree; nullopt for 0 or mixed input
  std::optional<int> degree(const AlgebraElement& x) const;
  AlgebraElement d_path(const PathWord& p) const;  // graded Leibniz
  AlgebraElement d(const AlgebraElement& x) const;

  // inverse of x = λ e_v + (terms in m), λ ≠ 0, by a truncated geometric series
  AlgebraElement inv_unit(const AlgebraElement& x, int vertex) const;

  // Path bases ordered by (degree, length, lex by arrow indices).
  const std::vector<PathWord>& paths_of_degree(int deg) const;
  // e_j A e_i piece: paths with source i and target j.
  std::vector<PathWord> paths_of_degree(int deg, int i, int j) const;

  std::string element_str(const AlgebraElement& x) const;
  AlgebraElement parse_element(const std::string& s) const;

 private:
  mutable std::map<int, std::vector<PathWord>> path_cache_;
  mutable bool enumerated_ = false;
  void ensure_paths() const;
};

// Leibniz-extension entry points named as in the operation table.
AlgebraElement leibniz_d(const AlgebraElement& x, const DgAlgebra& alg);
struct DSquaredWitness {
  bool ok = true;
  int arrow = -1;
  AlgebraElement residual;
};
DSquaredWitness check_d_squared(const DgAlgebra& alg);

bool path_order_less(const PathWord& a, const PathWord& b);

}  // namespace silting
