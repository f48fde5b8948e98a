#include "silting/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace silting {

bool path_order_less(const PathWord& a, const PathWord& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.arrows != b.arrows) return a.arrows < b.arrows;
  return a.src < b.src;
}

void AlgebraElement::add_term(const PathWord& p, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(p, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

AlgebraElement DgAlgebra::unit(int vertex) const {
  AlgebraElement e;
  e.add_term(PathWord::trivial(vertex), Scalar(1));
  return e;
}

AlgebraElement DgAlgebra::from_path(const PathWord& p, const Scalar& c) const {
  AlgebraElement e;
  if (p.length() <= L) e.add_term(p, c);
  return e;
}

AlgebraElement DgAlgebra::add(const AlgebraElement& x, const AlgebraElement& y) const {
  AlgebraElement out = x;
  for (auto& [p, c] : y.terms) out.add_term(p, c);
  return out;
}

AlgebraElement DgAlgebra::scale(const Scalar& c, const AlgebraElement& x) const {
  AlgebraElement out;
  if (c.is_zero()) return out;
  for (auto& [p, v] : x.terms) out.add_term(p, c * v);
  return out;
}

AlgebraElement DgAlgebra::mul(const AlgebraElement& x, const AlgebraElement& y) const {
  AlgebraElement out;
  for (auto& [p, cp] : x.terms)
    for (auto& [q, cq] : y.terms) {
      if (p.length() + q.length() > L) continue;
      auto r = path_mul(p, q);
      if (r) out.add_term(*r, cp * cq);
    }
  return out;
}

AlgebraElement DgAlgebra::substitute(const AlgebraElement& x,
                                     const std::map<int, AlgebraElement>& images) const {
  AlgebraElement out;
  for (auto& [p, c] : x.terms) {
    AlgebraElement acc;
    if (p.is_trivial()) {
      acc = unit(p.src);
    } else {
      acc = unit(p.tgt);
      for (int a : p.arrows) {
        auto it = images.find(a);
        AlgebraElement factor =
            it != images.end() ? it->second : from_path(PathWord{{a}, quiver().arrows[a].src, quiver().arrows[a].tgt});
        acc = mul(acc, factor);
      }
    }
    out = add(out, scale(c, acc));
  }
  return out;
}

std::optional<int> DgAlgebra::degree(const AlgebraElement& x) const {
  std::optional<int> deg;
  for (auto& [p, c] : x.terms) {
    int d = path_degree(quiver(), p);
    if (!deg) deg = d;
    else if (*deg != d) return std::nullopt;
  }
  return deg;
}

AlgebraElement DgAlgebra::d_path(const PathWord& p) const {
  AlgebraElement out;
  int sign_deg = 0;  // sum of degrees strictly left of the current position
  for (size_t k = 0; k < p.arrows.size(); ++k) {
    int a = p.arrows[k];
    if (!darr[a].is_zero()) {
      PathWord left{std::vector<int>(p.arrows.begin(), p.arrows.begin() + k),
                    quiver().arrows[a].tgt, p.tgt};
      PathWord right{std::vector<int>(p.arrows.begin() + k + 1, p.arrows.end()), p.src,
                     quiver().arrows[a].src};
      Scalar sgn(sign_deg % 2 == 0 ? 1 : -1);
      AlgebraElement mid = scale(sgn, darr[a]);
      out = add(out, mul(from_path(left), mul(mid, from_path(right))));
    }
    sign_deg += quiver().arrows[a].deg;
  }
  return out;
}

AlgebraElement DgAlgebra::d(const AlgebraElement& x) const {
  AlgebraElement out;
  for (auto& [p, c] : x.terms) out = add(out, scale(c, d_path(p)));
  return out;
}

AlgebraElement DgAlgebra::inv_unit(const AlgebraElement& x, int vertex) const {
  PathWord e = PathWord::trivial(vertex);
  auto it = x.terms.find(e);
  if (it == x.terms.end() || it->second.is_zero())
    throw std::domain_error("inv_unit: no invertible constant part");
  Scalar lam = it->second;
  AlgebraElement rest = x;
  rest.terms.erase(e);
  // (λe + r)^{-1} = λ^{-1} Σ (-r/λ)^k, truncated: r lies in m so r^{L+1} = 0
  AlgebraElement minus = scale(-lam.inv(), rest);
  AlgebraElement acc = unit(vertex), out = unit(vertex);
  for (int k = 1; k <= L; ++k) {
    acc = mul(acc, minus);
    if (acc.is_zero()) break;
    out = add(out, acc);
  }
  return scale(lam.inv(), out);
}

void DgAlgebra::ensure_paths() const {
  if (enumerated_) return;
  enumerated_ = true;
  std::vector<PathWord> frontier;
  for (int i = 0; i < num_vertices(); ++i) frontier.push_back(PathWord::trivial(i));
  std::vector<PathWord> all = frontier;
  for (int len = 1; len <= L; ++len) {
    std::vector<PathWord> next;
    for (auto& p : frontier)
      for (size_t a = 0; a < quiver().arrows.size(); ++a) {
        // extend on the source side: p ∘ a
        if (quiver().arrows[a].tgt != p.src) continue;
        PathWord np = p;
        np.arrows.push_back(static_cast<int>(a));
        np.src = quiver().arrows[a].src;
        next.push_back(std::move(np));
      }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  for (auto& p : all) path_cache_[path_degree(quiver(), p)].push_back(p);
  for (auto& [deg, v] : path_cache_) std::sort(v.begin(), v.end(), path_order_less);
}

const std::vector<PathWord>& DgAlgebra::paths_of_degree(int deg) const {
  ensure_paths();
  static const std::vector<PathWord> empty;
  auto it = path_cache_.find(deg);
  return it == path_cache_.end() ? empty : it->second;
}

std::vector<PathWord> DgAlgebra::paths_of_degree(int deg, int i, int j) const {
  std::vector<PathWord> out;
  for (auto& p : paths_of_degree(deg))
    if (p.src == i && p.tgt == j) out.push_back(p);
  return out;
}

std::string DgAlgebra::element_str(const AlgebraElement& x) const {
  if (x.is_zero()) return "0";
  std::vector<std::pair<PathWord, Scalar>> terms(x.terms.begin(), x.terms.end());
  std::sort(terms.begin(), terms.end(),
            [](auto& a, auto& b) { return path_order_less(a.first, b.first); });
  std::ostringstream out;
  bool first = true;
  for (auto& [p, c] : terms) {
    if (!first) out << " + ";
    first = false;
    out << c.str() << "*(" << path_str(quiver(), p) << ")";
  }
  return out.str();
}

AlgebraElement DgAlgebra::parse_element(const std::string& s) const {
  AlgebraElement out;
  std::string trimmed = s;
  if (trimmed == "0" || trimmed.empty()) return out;
  size_t pos = 0;
  while (pos < trimmed.size()) {
    size_t star = trimmed.find("*(", pos);
    if (star == std::string::npos) throw std::invalid_argument("bad element: " + s);
    Scalar c = Scalar::parse(trimmed.substr(pos, star - pos));
    size_t close = trimmed.find(')', star);
    if (close == std::string::npos) throw std::invalid_argument("bad element: " + s);
    std::istringstream in(trimmed.substr(star + 2, close - star - 2));
    PathWord p;
    std::string tok;
    bool trivial = false;
    while (in >> tok) {
      if (tok.rfind("e_", 0) == 0) {
        int v = quiver().vertex_index(tok.substr(2));
        if (v < 0) throw std::invalid_argument("bad vertex in element: " + tok);
        p = PathWord::trivial(v);
        trivial = true;
        break;
      }
      int a = quiver().arrow_index(tok);
      if (a < 0) throw std::invalid_argument("unknown arrow in element: " + tok);
      p.arrows.push_back(a);
    }
    if (!trivial) {
      if (p.arrows.empty()) throw std::invalid_argument("empty path in element: " + s);
      p.src = quiver().arrows[p.arrows.back()].src;
      p.tgt = quiver().arrows[p.arrows.front()].tgt;
      if (!path_composable(quiver(), p))
        throw std::invalid_argument("non-composable path in element: " + s);
    }
    out.add_term(p, c);
    pos = close + 1;
    while (pos < trimmed.size() && (trimmed[pos] == ' ' || trimmed[pos] == '+')) ++pos;
  }
  return out;
}

AlgebraElement leibniz_d(const AlgebraElement& x, const DgAlgebra& alg) { return alg.d(x); }

DSquaredWitness check_d_squared(const DgAlgebra& alg) {
  for (size_t a = 0; a < alg.quiver().arrows.size(); ++a) {
    AlgebraElement dd = alg.d(alg.darr[a]);
    if (!dd.is_zero()) return DSquaredWitness{false, static_cast<int>(a), dd};
  }
  return {};
}

}  // namespace silting
