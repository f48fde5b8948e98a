#pragma once
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "silting/cluster.hpp"
#include "silting/homology.hpp"

// Randomized law checks shared by the standalone property runner and the
// acceptance gate.
namespace props {
using namespace silting;

struct Suite {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string detail;
};

inline std::vector<BuiltAlgebra> algebra_pool() {
  std::vector<BuiltAlgebra> pool;
  pool.push_back(ginzburg(parse_quiver("m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\n"), 5));
  pool.push_back(ginzburg(
      parse_quiver("m 2\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\n"), 5));
  pool.push_back(preprojective(parse_quiver("m 2\nvertex v\narrow a: v -> v deg -1\n"), 6));
  pool.push_back(preprojective(
      parse_quiver("m 2\nvertex v\narrow alpha: v -> v deg -1\narrow beta: v -> v deg -1\n"), 6));
  pool.push_back(ginzburg(parse_quiver("m 1\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\n"
                                       "arrow b: 2 -> 3 deg 0\narrow c: 3 -> 1 deg 0\n"
                                       "potential 1*(c b a)\n"),
                          5));
  return pool;
}

inline Scalar random_scalar(std::mt19937& rng) {
  static const Scalar pool[] = {Scalar(1),
                                Scalar(-1),
                                Scalar(2),
                                Scalar(-3),
                                Scalar(Rational(1, 2)),
                                Scalar::unit_i(),
                                Scalar(Rational(1), Rational(-1))};
  return pool[rng() % 7];
}

inline AlgebraElement random_homogeneous(const BuiltAlgebra& A, std::mt19937& rng) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    int deg = -static_cast<int>(rng() % (2 * A.m() + 4));
    const auto& paths = A.paths_of_degree(deg);
    if (paths.empty()) continue;
    AlgebraElement x;
    int terms = 1 + rng() % 3;
    for (int k = 0; k < terms; ++k)
      x = A.add(x, A.from_path(paths[rng() % paths.size()], random_scalar(rng)));
    if (!x.is_zero()) return x;
  }
  return AlgebraElement{};
}

// d(d(x)) = 0 and d(xy) = d(x)y + (-1)^{|x|} x d(y) on random homogeneous x, y
inline Suite differential_laws(int n, unsigned seed = 2024) {
  Suite s{"d-squared and Leibniz on random homogeneous elements"};
  std::mt19937 rng(seed);
  std::vector<BuiltAlgebra> pool = algebra_pool();
  for (auto& A : pool)
    if (!check_d_squared(A).ok) {
      ++s.failures;
      s.detail = "d^2 != 0 on a generator";
      return s;
    }
  for (int k = 0; k < n; ++k) {
    const BuiltAlgebra& A = pool[rng() % pool.size()];
    AlgebraElement x = random_homogeneous(A, rng), y = random_homogeneous(A, rng);
    ++s.cases;
    if (!A.d(A.d(x)).is_zero()) {
      ++s.failures;
      if (s.detail.empty()) s.detail = "d^2 x != 0 for x = " + A.element_str(x);
      continue;
    }
    std::optional<int> dx = A.degree(x);
    if (!dx) continue;  // zero after truncation
    AlgebraElement lhs = A.d(A.mul(x, y));
    AlgebraElement rhs = A.add(A.mul(A.d(x), y),
                               A.scale(Scalar(*dx % 2 ? -1 : 1), A.mul(x, A.d(y))));
    if (!(lhs == rhs)) {
      ++s.failures;
      if (s.detail.empty()) s.detail = "Leibniz fails for x = " + A.element_str(x);
    }
  }
  return s;
}

// print -> parse returns the identical model (and the printed text is a fixed point)
inline Suite roundtrip(int n, unsigned seed = 77) {
  Suite s{"quiver DSL print/parse round-trip"};
  std::mt19937 rng(seed);
  for (int trial = 0; trial < n; ++trial) {
    QuiverModel mdl;
    mdl.m = 1 + rng() % 4;
    int nv = 1 + rng() % 4;
    for (int i = 0; i < nv; ++i) mdl.quiver.add_vertex("v" + std::to_string(i));
    int na = rng() % 6;
    for (int a = 0; a < na; ++a)
      mdl.quiver.add_arrow("a" + std::to_string(a), rng() % nv, rng() % nv,
                           -static_cast<int>(rng() % 4) + 1);
    if (na > 0 && trial % 2 == 0) {
      // random composable closed walk as a potential term
      PathWord p = PathWord::trivial(rng() % nv);
      for (int step = 0; step < 6; ++step) {
        std::vector<int> options;
        for (int a = 0; a < na; ++a)
          if (mdl.quiver.arrows[a].tgt == p.src) options.push_back(a);
        if (options.empty()) break;
        int a = options[rng() % options.size()];
        p.arrows.push_back(a);
        p.src = mdl.quiver.arrows[a].src;
        if (p.src == p.tgt && p.length() >= 2 && rng() % 2) break;
      }
      if (p.src == p.tgt && p.length() >= 2) mdl.potential.add_term(p, random_scalar(rng));
    }
    ++s.cases;
    std::string printed = print_quiver(mdl);
    QuiverModel back = parse_quiver(printed);
    bool same = back.m == mdl.m && back.quiver.vertices == mdl.quiver.vertices &&
                back.potential.terms == mdl.potential.terms &&
                back.quiver.arrows.size() == mdl.quiver.arrows.size() &&
                print_quiver(back) == printed;
    for (size_t a = 0; same && a < mdl.quiver.arrows.size(); ++a) {
      const Arrow &x = mdl.quiver.arrows[a], &y = back.quiver.arrows[a];
      same = x.name == y.name && x.src == y.src && x.tgt == y.tgt && x.deg == y.deg;
    }
    if (!same) {
      ++s.failures;
      if (s.detail.empty()) s.detail = "mismatch on:\n" + printed;
    }
  }
  return s;
}

// structural support (summand shifts of the minimal model) equals the oracle
// (pairing against shifted simples) on every module the mutation lab produces
inline Suite support_agreement() {
  Suite s{"structural vs oracle support"};
  auto probe = [&](const PerfModule& x) {
    ++s.cases;
    PerfModule mx = minimize(x).model;
    std::vector<int> st = support_structural(mx);
    if (st.empty()) return;
    std::vector<int> oracle = support_oracle(mx, st.front() - 1, st.back() + 1);
    if (st != oracle) {
      ++s.failures;
      if (s.detail.empty()) s.detail = "disagreement on " + perfmodule_json(mx);
    }
  };
  for (int m : {1, 2}) {
    BuiltAlgebra g = ginzburg(
        parse_quiver("m " + std::to_string(m) + "\nvertex 1 2\narrow a: 1 -> 2 deg 0\n"), 6);
    for (int i = 0; i < 2; ++i) {
      probe(free_module(g, i));
      probe(resolve_simple(g, i).Y);
      for (Side side : {Side::Right, Side::Left}) {
        MutationState st = mutation_start(g, i, side);
        for (int t = 1; t <= m + 1; ++t) {
          mutate(st);
          probe(st.current);
        }
      }
    }
  }
  return s;
}

// dim Hom_D(S_i, Sigma^n Y) = dim Hom_D(Y, Sigma^{m+2-n} S_i), with S_i
// presented by its minimal perfect resolution on the left hand side
inline Suite serre_duality() {
  Suite s{"Serre duality against simples"};
  std::vector<BuiltAlgebra> pool;
  pool.push_back(ginzburg(parse_quiver("m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\n"), 6));
  pool.push_back(ginzburg(
      parse_quiver("m 2\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\n"), 6));
  for (const BuiltAlgebra& g : pool) {
    std::vector<PerfModule> ys;
    for (int j = 0; j < g.num_vertices(); ++j) ys.push_back(free_module(g, j));
    ys.push_back(algebra_module(g));
    ys.push_back(normalize_to_F(mutate_steps(g, 1, Side::Right, 1).current).rep);
    for (int i = 0; i < g.num_vertices(); ++i) {
      PerfModule res = resolve_simple(g, i).Y;
      FinDimDgModule simple = simple_module(g, i);
      for (const PerfModule& y : ys)
        for (int n = 0; n <= g.m() + 2; ++n) {
          ++s.cases;
          int lhs = hom_derived(res, y, n).dim;
          int rhs = hom_to_findim(y, simple, g.m() + 2 - n);
          if (lhs != rhs) {
            ++s.failures;
            if (s.detail.empty()) {
              std::ostringstream os;
              os << "vertex " << g.quiver().vertices[i] << ", n = " << n << ": " << lhs
                 << " vs " << rhs;
              s.detail = os.str();
            }
          }
        }
    }
  }
  return s;
}

inline std::vector<Suite> run_all() {
  return {differential_laws(1000), roundtrip(200), support_agreement(), serre_duality()};
}

}  // namespace props
