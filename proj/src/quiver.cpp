#include "silting/quiver.hpp"

#include <algorithm>
#include <sstream>

namespace silting {

int GradedQuiver::vertex_index(const std::string& v) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == v) return static_cast<int>(i);
  return -1;
}

int GradedQuiver::arrow_index(const std::string& a) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == a) return static_cast<int>(i);
  return -1;
}

int GradedQuiver::add_vertex(const std::string& v) {
  vertices.push_back(v);
  return static_cast<int>(vertices.size()) - 1;
}

int GradedQuiver::add_arrow(const std::string& name, int src, int tgt, int deg) {
  arrows.push_back(Arrow{name, src, tgt, deg});
  return static_cast<int>(arrows.size()) - 1;
}

int path_degree(const GradedQuiver& q, const PathWord& p) {
  int d = 0;
  for (int a : p.arrows) d += q.arrows[a].deg;
  return d;
}

bool path_composable(const GradedQuiver& q, const PathWord& p) {
  if (p.is_trivial()) return p.src == p.tgt;
  if (q.arrows[p.arrows.back()].src != p.src) return false;
  if (q.arrows[p.arrows.front()].tgt != p.tgt) return false;
  for (size_t k = 0; k + 1 < p.arrows.size(); ++k)
    if (q.arrows[p.arrows[k]].src != q.arrows[p.arrows[k + 1]].tgt) return false;
  return true;
}

std::optional<PathWord> path_mul(const PathWord& p, const PathWord& q) {
  if (p.src != q.tgt) return std::nullopt;
  PathWord r;
  r.arrows = p.arrows;
  r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
  r.src = q.src;
  r.tgt = p.tgt;
  return r;
}

std::string path_str(const GradedQuiver& q, const PathWord& p) {
  if (p.is_trivial()) return "e_" + q.vertices[p.src];
  std::string out;
  for (size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) out += " ";
    out += q.arrows[p.arrows[k]].name;
  }
  return out;
}

PathWord canonical_rotation(const PathWord& p, const GradedQuiver& q) {
  if (p.length() <= 1 || p.src != p.tgt) return p;
  PathWord best = p;
  PathWord cur = p;
  for (int k = 1; k < p.length(); ++k) {
    // rotate: move leftmost arrow to the right end
    int a = cur.arrows.front();
    cur.arrows.erase(cur.arrows.begin());
    cur.arrows.push_back(a);
    cur.src = q.arrows[cur.arrows.back()].src;
    cur.tgt = q.arrows[cur.arrows.front()].tgt;
    if (cur.arrows < best.arrows) best = cur;
  }
  return best;
}

void Superpotential::add_term(const PathWord& p, const Scalar& c) {
  auto it = terms.find(p);
  if (it == terms.end()) {
    if (!c.is_zero()) terms.emplace(p, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

// Splits "c1*(w1 w2) + c2*(...)" into (scalar-text, arrow-name-list) pairs.
std::vector<std::pair<std::string, std::vector<std::string>>> split_potential(
    const std::string& body, int lineno) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  size_t pos = 0;
  auto skip_ws = [&] { while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos; };
  skip_ws();
  bool first = true;
  while (pos < body.size()) {
    if (!first) {
      if (body[pos] != '+')
        throw ParseError("expected '+' between potential terms", lineno, static_cast<int>(pos) + 1);
      ++pos;
      skip_ws();
    }
    first = false;
    size_t star = body.find("*(", pos);
    if (star == std::string::npos)
      throw ParseError("expected <scalar>*(...) in potential", lineno, static_cast<int>(pos) + 1);
    std::string coeff = body.substr(pos, star - pos);
    while (!coeff.empty() && std::isspace(static_cast<unsigned char>(coeff.back()))) coeff.pop_back();
    size_t close = body.find(')', star);
    if (close == std::string::npos)
      throw ParseError("unterminated '(' in potential", lineno, static_cast<int>(star) + 1);
    std::string word = body.substr(star + 2, close - star - 2);
    out.emplace_back(coeff, tokenize(word));
    pos = close + 1;
    skip_ws();
  }
  return out;
}

}  // namespace

QuiverModel parse_quiver(const std::string& source) {
  QuiverModel model;
  bool m_seen = false;
  std::istringstream in(source);
  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, std::string>> potential_lines;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "m") {
      if (toks.size() != 2) throw ParseError("m expects one integer", lineno, 1);
      try {
        model.m = std::stoi(toks[1]);
      } catch (...) {
        throw ParseError("non-integer m", lineno, 3);
      }
      if (model.m <= 0) throw ParseError("m must be positive", lineno, 3);
      m_seen = true;
    } else if (kw == "vertex") {
      if (toks.size() < 2) throw ParseError("vertex expects at least one id", lineno, 1);
      for (size_t k = 1; k < toks.size(); ++k) {
        if (model.quiver.vertex_index(toks[k]) >= 0)
          throw ParseError("duplicate vertex '" + toks[k] + "'", lineno, 1);
        model.quiver.add_vertex(toks[k]);
      }
    } else if (kw == "arrow") {
      // arrow <name>: <src> -> <tgt> deg <int>
      if (toks.size() != 7 || toks[3] != "->" || toks[5] != "deg")
        throw ParseError("arrow syntax: arrow <name>: <src> -> <tgt> deg <int>", lineno, 1);
      std::string name = toks[1];
      if (name.empty() || name.back() != ':')
        throw ParseError("arrow name must be followed by ':'", lineno, 1);
      name.pop_back();
      if (model.quiver.arrow_index(name) >= 0)
        throw ParseError("duplicate arrow '" + name + "'", lineno, 1);
      int src = model.quiver.vertex_index(toks[2]);
      int tgt = model.quiver.vertex_index(toks[4]);
      if (src < 0) throw ParseError("undeclared vertex '" + toks[2] + "'", lineno, 1);
      if (tgt < 0) throw ParseError("undeclared vertex '" + toks[4] + "'", lineno, 1);
      int deg;
      try {
        deg = std::stoi(toks[6]);
      } catch (...) {
        throw ParseError("non-integer degree", lineno, 1);
      }
      model.quiver.add_arrow(name, src, tgt, deg);
    } else if (kw == "potential") {
      auto body_pos = line.find("potential");
      potential_lines.emplace_back(lineno, line.substr(body_pos + 9));
    } else {
      throw ParseError("unknown keyword '" + kw + "'", lineno, 1);
    }
  }
  if (!m_seen) throw ParseError("missing 'm' line", lineno, 1);
  for (auto& [pl, body] : potential_lines) {
    for (auto& [coeff, names] : split_potential(body, pl)) {
      Scalar c;
      try {
        c = Scalar::parse(coeff);
      } catch (const std::exception& e) {
        throw ParseError(std::string("bad scalar: ") + e.what(), pl, 1);
      }
      PathWord p;
      if (names.empty()) throw ParseError("empty potential word", pl, 1);
      for (auto& n : names) {
        int idx = model.quiver.arrow_index(n);
        if (idx < 0) throw ParseError("undeclared arrow '" + n + "'", pl, 1);
        p.arrows.push_back(idx);
      }
      p.src = model.quiver.arrows[p.arrows.back()].src;
      p.tgt = model.quiver.arrows[p.arrows.front()].tgt;
      if (!path_composable(model.quiver, p))
        throw ParseError("non-composable potential word", pl, 1);
      model.potential.add_term(p, c);
    }
  }
  return model;
}

std::string print_quiver(const QuiverModel& model) {
  std::ostringstream out;
  out << "m " << model.m << "\n";
  if (!model.quiver.vertices.empty()) {
    out << "vertex";
    for (auto& v : model.quiver.vertices) out << " " << v;
    out << "\n";
  }
  for (auto& a : model.quiver.arrows)
    out << "arrow " << a.name << ": " << model.quiver.vertices[a.src] << " -> "
        << model.quiver.vertices[a.tgt] << " deg " << a.deg << "\n";
  if (!model.potential.is_zero()) {
    out << "potential ";
    bool first = true;
    for (auto& [p, c] : model.potential.terms) {
      if (!first) out << " + ";
      first = false;
      out << c.str() << "*(";
      for (size_t k = 0; k < p.arrows.size(); ++k) {
        if (k) out << " ";
        out << model.quiver.arrows[p.arrows[k]].name;
      }
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

std::vector<int> special_loops(const GradedQuiver& q, int m) {
  std::vector<int> out;
  for (size_t i = 0; i < q.arrows.size(); ++i) {
    const Arrow& a = q.arrows[i];
    // loop of odd degree equal to -m/2 (so m ≡ 2 mod 4 territory; requires 2|m)
    if (a.src == a.tgt && m % 2 == 0 && a.deg == -m / 2 && a.deg % 2 != 0)
      out.push_back(static_cast<int>(i));
  }
  return out;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.pass; });
}

ValidationReport validate(const GradedQuiver& q, const Superpotential& w, int m) {
  ValidationReport rep;
  bool degs_ok = true;
  std::string deg_detail;
  for (auto& a : q.arrows) {
    // V1: degrees in [-m/2, 0], i.e. 2*deg >= -m
    if (2 * a.deg < -m || a.deg > 0) {
      degs_ok = false;
      deg_detail += (deg_detail.empty() ? "" : ", ") + a.name;
    }
  }
  rep.checks.push_back({"degrees_in_range", degs_ok,
                        degs_ok ? "all arrow degrees in [-m/2, 0]"
                                : "out of range: " + deg_detail});

  bool homog = true, cyclic = true, reduced = true;
  for (auto& [p, c] : w.terms) {
    if (path_degree(q, p) != 1 - m) homog = false;
    if (p.src != p.tgt || !path_composable(q, p)) cyclic = false;
    if (p.length() < 3) reduced = false;
  }
  rep.checks.push_back({"potential_homogeneous_deg_1_minus_m", homog,
                        homog ? "degree 1-m" : "term of wrong degree present"});
  rep.checks.push_back({"potential_cyclic", cyclic,
                        cyclic ? "all terms cyclic" : "non-cyclic term present"});
  rep.checks.push_back({"potential_reduced", reduced,
                        reduced ? "all terms length >= 3" : "short term present"});
  rep.special_loops = special_loops(q, m);
  return rep;
}

}  // namespace silting
