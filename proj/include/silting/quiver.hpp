#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "silting/scalar.hpp"

namespace silting {

struct Arrow {
  std::string name;
  int src = 0, tgt = 0;  // vertex indices
  int deg = 0;
};

// Finite graded quiver. Vertices and arrows keep declaration order; the
// resulting integer indices fix every matrix ordering downstream.
struct GradedQuiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& v) const;
  int arrow_index(const std::string& a) const;  // -1 if absent
  int add_vertex(const std::string& v);
  int add_arrow(const std::string& name, int src, int tgt, int deg);
};

// Composable sequence of arrow indices, written right-to-left: in `vu`, u is
// applied first. arrows.front() is the leftmost (last applied) arrow.
// Length-0 paths are the trivial paths e_i (src == tgt == i).
struct PathWord {
  std::vector<int> arrows;
  int src = 0, tgt = 0;

  static PathWord trivial(int i) { return PathWord{{}, i, i}; }
  int length() const { return static_cast<int>(arrows.size()); }
  bool is_trivial() const { return arrows.empty(); }
  auto operator<=>(const PathWord& o) const = default;
};

int path_degree(const GradedQuiver& q, const PathWord& p);
bool path_composable(const GradedQuiver& q, const PathWord& p);
// p*q = "apply q, then p"; nullopt when endpoints mismatch.
std::optional<PathWord> path_mul(const PathWord& p, const PathWord& q);
std::string path_str(const GradedQuiver& q, const PathWord& p);
// Lexicographically least rotation under arrow declaration indices.
PathWord canonical_rotation(const PathWord& p, const GradedQuiver& q);

// Scalar combination of cyclic paths. Terms are stored on the user's literal
// representatives; cyclic identification happens at cyclic-derivative time.
struct Superpotential {
  std::map<PathWord, Scalar> terms;

  bool is_zero() const { return terms.empty(); }
  void add_term(const PathWord& p, const Scalar& c);
};

struct QuiverModel {
  GradedQuiver quiver;
  Superpotential potential;
  int m = 1;
};

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " (line " + std::to_string(l) + ", column " +
                           std::to_string(c) + ")"),
        line(l), column(c) {}
};

// Line-oriented DSL:
//   m <positive int>
//   vertex <id> [<id> ...]
//   arrow <name>: <src> -> <tgt> deg <int>
//   potential <scalar>*(<arrow> <arrow> ...) [+ <scalar>*(...) ...]
QuiverModel parse_quiver(const std::string& source);
std::string print_quiver(const QuiverModel& model);

struct ValidationCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<int> special_loops;  // arrow indices with odd degree == -m/2
  bool all_pass() const;
};

ValidationReport validate(const GradedQuiver& q, const Superpotential& w, int m);
std::vector<int> special_loops(const GradedQuiver& q, int m);

}  // namespace silting
