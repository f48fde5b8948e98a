#pragma once
#include <map>
#include <optional>
#include <vector>

#include "silting/scalar.hpp"

namespace silting {

using Vec = std::vector<Scalar>;

// Sparse matrix over the Gaussian rationals; rows are col->value maps.
struct SparseMat {
  int rows = 0, cols = 0;
  std::vector<std::map<int, Scalar>> row;

  SparseMat() = default;
  SparseMat(int r, int c) : rows(r), cols(c), row(r) {}
  void add(int r, int c, const Scalar& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = row[r].try_emplace(c, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) row[r].erase(it);
    }
  }
  Scalar get(int r, int c) const {
    auto it = row[r].find(c);
    return it == row[r].end() ? Scalar() : it->second;
  }
  Vec apply(const Vec& x) const;           // A x
  SparseMat mul(const SparseMat& o) const; // A * o
  std::vector<std::pair<int, Scalar>> column(int c) const;
};

// Reduced row echelon form; pivot columns chosen by fewest nonzeros among the
// active rows (exact arithmetic, so this is purely a sparsity heuristic).
struct Rref {
  int cols = 0;
  std::vector<std::map<int, Scalar>> rows;  // reduced rows, unit pivot coefficient
  std::vector<int> pivots;                  // pivot column per stored row

  int rank() const { return static_cast<int>(pivots.size()); }
  std::vector<Vec> kernel() const;
  // Reduce v modulo the row space (in place); returns true iff v lands in it.
  bool reduce(Vec& v) const;
};

Rref rref(const SparseMat& a);
int sparse_rank(const SparseMat& a);
std::optional<Vec> solve(const SparseMat& a, const Vec& b);  // A x = b

// Representatives of span(space)/span(subspace), eliminating from the largest
// coordinate so surviving representatives live on the smallest path indices
// (reproduces hand-picked bases like {α², αβ, βα} mod α²+β²).
std::vector<Vec> quotient_representatives(const std::vector<Vec>& space,
                                          const std::vector<Vec>& subspace);

// Independent dense eliminator (test oracle for the sparse kernel).
int dense_rank(std::vector<Vec> m);

}  // namespace silting
