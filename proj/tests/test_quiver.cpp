#include <doctest.h>

#include <random>

#include "silting/quiver.hpp"

using namespace silting;

namespace {

const char* kExample47 = R"(
m 2
vertex v
arrow a: v -> v deg -1
)";

const char* kExample412 = R"(
m 2
vertex v
arrow alpha: v -> v deg -1
arrow beta: v -> v deg -1
)";

}  // namespace

TEST_CASE("parse one-loop quiver") {
  QuiverModel mdl = parse_quiver(kExample47);
  CHECK(mdl.m == 2);
  CHECK(mdl.quiver.vertices.size() == 1);
  REQUIRE(mdl.quiver.arrows.size() == 1);
  CHECK(mdl.quiver.arrows[0].deg == -1);
  CHECK(mdl.potential.is_zero());
}

TEST_CASE("parse errors carry location") {
  CHECK_THROWS_AS(parse_quiver("m 2\narrow a: x -> y deg 0\n"), ParseError);
  CHECK_THROWS_AS(parse_quiver("vertex v\n"), ParseError);  // missing m
  CHECK_THROWS_AS(parse_quiver("m 2\nvertex v\nfrob v\n"), ParseError);
  CHECK_THROWS_AS(parse_quiver("m 0\nvertex v\n"), ParseError);
}

TEST_CASE("empty arrow list is a valid semisimple input") {
  QuiverModel mdl = parse_quiver("m 1\nvertex x y z\n");
  CHECK(mdl.quiver.vertices.size() == 3);
  CHECK(mdl.quiver.arrows.empty());
  CHECK(validate(mdl.quiver, mdl.potential, mdl.m).all_pass());
}

TEST_CASE("potential parsing and composability") {
  const char* src =
      "m 1\nvertex 1 2 3\n"
      "arrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\narrow c: 3 -> 1 deg 0\n"
      "potential 1*(c b a) + -1/2*(c b a c b a)\n";
  QuiverModel mdl = parse_quiver(src);
  CHECK(mdl.potential.terms.size() == 2);
  for (auto& [p, cf] : mdl.potential.terms) CHECK(p.src == p.tgt);
  CHECK_THROWS_AS(parse_quiver("m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\npotential 1*(a a)\n"),
                  ParseError);
}

TEST_CASE("validate flags special loops and potential conditions") {
  QuiverModel e47 = parse_quiver(kExample47);
  ValidationReport rep = validate(e47.quiver, e47.potential, e47.m);
  CHECK(rep.all_pass());
  REQUIRE(rep.special_loops.size() == 1);
  CHECK(rep.special_loops[0] == 0);

  QuiverModel a2 = parse_quiver("m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\n");
  ValidationReport rep2 = validate(a2.quiver, a2.potential, a2.m);
  CHECK(rep2.all_pass());
  CHECK(rep2.special_loops.empty());

  // length-2 cyclic term: reduced check fails
  QuiverModel bad = parse_quiver(
      "m 3\nvertex v\narrow x: v -> v deg -1\npotential 1*(x x)\n");
  ValidationReport rep3 = validate(bad.quiver, bad.potential, bad.m);
  bool reduced_pass = true;
  for (auto& c : rep3.checks)
    if (c.name == "potential_reduced") reduced_pass = c.pass;
  CHECK_FALSE(reduced_pass);
}

TEST_CASE("canonical rotation is rotation invariant") {
  QuiverModel mdl = parse_quiver(kExample412);
  GradedQuiver& q = mdl.quiver;
  PathWord w{{0, 1, 0, 1}, 0, 0};  // alpha beta alpha beta
  PathWord r1{{1, 0, 1, 0}, 0, 0};
  CHECK(canonical_rotation(w, q) == canonical_rotation(r1, q));
  PathWord mixed{{1, 0, 0}, 0, 0};
  PathWord rot{{0, 0, 1}, 0, 0};
  CHECK(canonical_rotation(mixed, q) == rot);
}

TEST_CASE("print then parse is the identity on random quivers") {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    QuiverModel mdl;
    std::uniform_int_distribution<int> nv(1, 4), na(0, 5), dm(1, 4);
    mdl.m = dm(rng);
    int n = nv(rng);
    for (int i = 0; i < n; ++i) mdl.quiver.add_vertex("v" + std::to_string(i));
    int arrows = na(rng);
    std::uniform_int_distribution<int> vpick(0, n - 1), dpick(-2, 0);
    for (int a = 0; a < arrows; ++a)
      mdl.quiver.add_arrow("a" + std::to_string(a), vpick(rng), vpick(rng), dpick(rng));
    // random composable cyclic word as a potential term now and then
    if (arrows > 0 && trial % 3 == 0) {
      int start = vpick(rng);
      PathWord p = PathWord::trivial(start);
      for (int step = 0; step < 6; ++step) {
        std::vector<int> options;
        for (int a = 0; a < arrows; ++a)
          if (mdl.quiver.arrows[a].tgt == p.src) options.push_back(a);
        if (options.empty()) break;
        int a = options[rng() % options.size()];
        p.arrows.push_back(a);
        p.src = mdl.quiver.arrows[a].src;
        if (p.src == p.tgt && p.length() >= 3) break;
      }
      if (p.src == p.tgt && p.length() >= 3)
        mdl.potential.add_term(p, Scalar(Rational(1, 2), Rational(1, 3)));
    }
    QuiverModel back = parse_quiver(print_quiver(mdl));
    CHECK(back.m == mdl.m);
    CHECK(back.quiver.vertices == mdl.quiver.vertices);
    REQUIRE(back.quiver.arrows.size() == mdl.quiver.arrows.size());
    for (size_t a = 0; a < mdl.quiver.arrows.size(); ++a) {
      CHECK(back.quiver.arrows[a].name == mdl.quiver.arrows[a].name);
      CHECK(back.quiver.arrows[a].src == mdl.quiver.arrows[a].src);
      CHECK(back.quiver.arrows[a].tgt == mdl.quiver.arrows[a].tgt);
      CHECK(back.quiver.arrows[a].deg == mdl.quiver.arrows[a].deg);
    }
    CHECK(back.potential.terms == mdl.potential.terms);
  }
}
