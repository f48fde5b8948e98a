#pragma once
#include "silting/linalg.hpp"
#include "silting/potential.hpp"

namespace silting {

struct HomologySlice {
  int lo = 0, hi = 0;
  std::optional<std::pair<int, int>> piece;  // (i, j): e_j A e_i, source i target j
  std::map<int, int> dim;
  std::map<int, std::vector<AlgebraElement>> basis;
  bool stable = true;
  int L = 0, L2 = 0;
};

// H^p(A) (or of the e_j A e_i piece) for p in [lo, hi], on the length-≤L path
// basis; stability compares dimensions against a rebuild at L+delta.
HomologySlice homology(const BuiltAlgebra& alg, int lo, int hi,
                       std::optional<std::pair<int, int>> piece = std::nullopt,
                       int stability_delta = 2);

// L* = d + (d+1)c when the degree-0 subquiver is acyclic with longest
// degree-0 path c and d = −lo; truncation L ≥ L*+1 makes the window exact.
std::optional<int> stability_bound(const DgAlgebra& alg, int lo);

}  // namespace silting
