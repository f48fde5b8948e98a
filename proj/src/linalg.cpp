#include "silting/linalg.hpp"

#include <algorithm>

namespace silting {

Vec SparseMat::apply(const Vec& x) const {
  Vec out(rows);
  for (int r = 0; r < rows; ++r)
    for (auto& [c, v] : row[r]) out[r] += v * x[c];
  return out;
}

std::vector<std::pair<int, Scalar>> SparseMat::column(int c) const {
  std::vector<std::pair<int, Scalar>> out;
  for (int r = 0; r < rows; ++r) {
    auto it = row[r].find(c);
    if (it != row[r].end()) out.push_back({r, it->second});
  }
  return out;
}

SparseMat SparseMat::mul(const SparseMat& o) const {
  SparseMat out(rows, o.cols);
  for (int r = 0; r < rows; ++r)
    for (auto& [k, v] : row[r])
      for (auto& [c, w] : o.row[k]) out.add(r, c, v * w);
  return out;
}

namespace {

using Row = std::map<int, Scalar>;

// r -= f * piv, kept clean of explicit zeros
void axpy(Row& r, const Scalar& f, const Row& piv) {
  for (auto& [c, v] : piv) {
    auto [it, fresh] = r.try_emplace(c, Scalar());
    it->second -= f * v;
    if (it->second.is_zero()) r.erase(it);
  }
}

// Elimination core; columns >= pivot_limit are never chosen as pivots.
// leftover (if given) receives the nonzero rows that could not be reduced away
// using allowed pivot columns.
Rref eliminate(const SparseMat& a, int pivot_limit, std::vector<Row>* leftover) {
  Rref e;
  e.cols = a.cols;
  std::vector<Row> active = a.row;
  std::vector<bool> used(active.size(), false);
  std::vector<int> colcount(a.cols, 0);
  for (size_t r = 0; r < active.size(); ++r)
    for (auto& [c, v] : active[r]) ++colcount[c];
  for (;;) {
    int best = -1;
    for (int c = 0; c < pivot_limit; ++c)
      if (colcount[c] > 0 && (best < 0 || colcount[c] < colcount[best])) best = c;
    if (best < 0) break;
    int prow = -1;
    for (size_t r = 0; r < active.size(); ++r) {
      if (used[r] || !active[r].count(best)) continue;
      if (prow < 0 || active[r].size() < active[prow].size()) prow = static_cast<int>(r);
    }
    used[prow] = true;
    Row piv = std::move(active[prow]);
    active[prow].clear();
    for (auto& [c, v] : piv) --colcount[c];
    Scalar inv = piv.at(best).inv();
    for (auto& [c, v] : piv) v = v * inv;
    for (size_t r = 0; r < active.size(); ++r) {
      if (used[r]) continue;
      auto it = active[r].find(best);
      if (it == active[r].end()) continue;
      Scalar f = it->second;
      for (auto& [c, v] : active[r]) --colcount[c];
      axpy(active[r], f, piv);
      for (auto& [c, v] : active[r]) ++colcount[c];
    }
    for (auto& stored : e.rows) {
      auto it = stored.find(best);
      if (it == stored.end()) continue;
      Scalar f = it->second;  // copy: axpy erases this entry
      axpy(stored, f, piv);
    }
    e.rows.push_back(std::move(piv));
    e.pivots.push_back(best);
  }
  if (leftover) {
    for (size_t r = 0; r < active.size(); ++r)
      if (!used[r] && !active[r].empty()) leftover->push_back(active[r]);
  }
  return e;
}

}  // namespace

Rref rref(const SparseMat& a) { return eliminate(a, a.cols, nullptr); }

std::vector<Vec> Rref::kernel() const {
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols);
    v[f] = Scalar(1);
    for (size_t k = 0; k < rows.size(); ++k) {
      auto it = rows[k].find(f);
      if (it != rows[k].end()) v[pivots[k]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool Rref::reduce(Vec& v) const {
  for (size_t k = 0; k < rows.size(); ++k) {
    Scalar f = v[pivots[k]];
    if (f.is_zero()) continue;
    for (auto& [c, w] : rows[k]) v[c] -= f * w;
  }
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

int sparse_rank(const SparseMat& a) { return rref(a).rank(); }

std::optional<Vec> solve(const SparseMat& a, const Vec& b) {
  SparseMat aug(a.rows, a.cols + 1);
  aug.row = a.row;
  for (int r = 0; r < a.rows; ++r) aug.add(r, a.cols, b[r]);
  std::vector<std::map<int, Scalar>> leftover;
  Rref e = eliminate(aug, a.cols, &leftover);
  if (!leftover.empty()) return std::nullopt;  // residual rhs: inconsistent
  Vec x(a.cols);
  for (size_t k = 0; k < e.pivots.size(); ++k) {
    auto it = e.rows[k].find(a.cols);
    x[e.pivots[k]] = it == e.rows[k].end() ? Scalar() : it->second;
  }
  return x;
}

std::vector<Vec> quotient_representatives(const std::vector<Vec>& space,
                                          const std::vector<Vec>& subspace) {
  if (space.empty()) return {};
  int n = static_cast<int>(space[0].size());
  // echelonize the subspace with pivots at the LARGEST coordinate so that the
  // surviving quotient representatives live on the smallest path indices
  std::vector<Vec> sub;
  std::vector<int> sub_piv;
  auto reduce_rev = [&](Vec& v) -> int {
    for (size_t k = 0; k < sub.size(); ++k) {
      Scalar f = v[sub_piv[k]];
      if (!f.is_zero())
        for (int c = 0; c < n; ++c) v[c] -= f * sub[k][c];
    }
    for (int c = n - 1; c >= 0; --c)
      if (!v[c].is_zero()) return c;
    return -1;
  };
  for (Vec v : subspace) {
    int p = reduce_rev(v);
    if (p < 0) continue;
    Scalar inv = v[p].inv();
    for (auto& s : v) s = s * inv;
    for (size_t k = 0; k < sub.size(); ++k) {
      Scalar f = sub[k][p];
      if (!f.is_zero())
        for (int c = 0; c < n; ++c) sub[k][c] -= f * v[c];
    }
    sub.push_back(std::move(v));
    sub_piv.push_back(p);
  }
  std::vector<Vec> reps;
  std::vector<int> reps_piv;
  for (Vec v : space) {
    if (reduce_rev(v) < 0) continue;
    for (size_t k = 0; k < reps.size(); ++k) {
      Scalar f = v[reps_piv[k]];
      if (!f.is_zero())
        for (int c = 0; c < n; ++c) v[c] -= f * reps[k][c];
    }
    int p = -1;
    for (int c = 0; c < n; ++c)
      if (!v[c].is_zero()) { p = c; break; }
    if (p < 0) continue;
    Scalar inv = v[p].inv();
    for (auto& s : v) s = s * inv;
    reps.push_back(std::move(v));
    reps_piv.push_back(p);
  }
  return reps;
}

int dense_rank(std::vector<Vec> m) {
  if (m.empty()) return 0;
  int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[r][c].is_zero()) { p = r; break; }
    if (p < 0) continue;
    std::swap(m[rank], m[p]);
    Scalar inv = m[rank][c].inv();
    for (int k = c; k < cols; ++k) m[rank][k] = m[rank][k] * inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      Scalar f = m[r][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace silting
