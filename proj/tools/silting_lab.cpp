#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "silting/cluster.hpp"
#include "silting/hochschild.hpp"
#include "silting/homology.hpp"
#include "silting/report.hpp"

using namespace silting;

namespace {

int env_int(const char* name, int fallback) {
  if (const char* s = std::getenv(name)) return std::max(1, std::atoi(s));
  return fallback;
}

struct Common {
  std::string input;
  std::string kind = "ginzburg";
  int trunc = env_int("SILTING_TRUNC", 8);
  int delta = env_int("SILTING_DELTA", 2);
};

struct Output {
  std::string format = "json";
  std::string out;
  bool strict_stability = false;

  int emit(const Report& r) const {
    std::string text = r.render(format == "json");
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      f << text;
    }
    return r.exit_code();
  }
};

void add_common(CLI::App* sub, Common& c, bool need_input = true) {
  auto* opt = sub->add_option("--input", c.input, "quiver DSL file");
  if (need_input) opt->required()->check(CLI::ExistingFile);
  sub->add_option("--kind", c.kind, "algebra construction (ginzburg|dpp)")
      ->check(CLI::IsMember({"ginzburg", "dpp"}));
  sub->add_option("--trunc", c.trunc, "truncation order L");
  sub->add_option("--delta", c.delta, "stability rebuild offset");
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("missing input: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

BuiltAlgebra load_algebra(const Common& c) {
  setenv("SILTING_DELTA", std::to_string(c.delta).c_str(), 1);
  QuiverModel model = parse_quiver(slurp(c.input));
  ValidationReport v = validate(model.quiver, model.potential, model.m);
  if (!v.all_pass()) {
    std::string msg = "invalid quiver:";
    for (auto& ck : v.checks)
      if (!ck.pass) msg += " [" + ck.name + "] " + ck.detail;
    throw std::runtime_error(msg);
  }
  return c.kind == "dpp" ? preprojective(model, c.trunc) : ginzburg(model, c.trunc);
}

PerfModule load_module(const BuiltAlgebra& A, const std::string& path) {
  return module_from_json(A, Json::parse(slurp(path)));
}

int vertex_of(const BuiltAlgebra& A, const std::string& v) {
  int i = A.quiver().vertex_index(v);
  if (i >= 0) return i;
  try {
    i = std::stoi(v);
  } catch (...) {
    i = -1;
  }
  if (i >= 0 && i < A.num_vertices()) return i;
  throw std::runtime_error("unknown vertex: " + v);
}

Json validation_json(const ValidationReport& v) {
  Json checks = Json::array();
  for (auto& c : v.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return checks;
}

Json differential_json(const BuiltAlgebra& A) {
  Json d = Json::object();
  for (size_t a = 0; a < A.quiver().arrows.size(); ++a)
    d[A.quiver().arrows[a].name] = A.element_str(A.darr[a]);
  return d;
}

Json homology_json(const BuiltAlgebra& A, const HomologySlice& h) {
  Json j = Json::object();
  j["window"] = {h.lo, h.hi};
  j["L"] = h.L;
  j["stable"] = h.stable;
  Json dims = Json::object(), basis = Json::object();
  for (auto& [deg, n] : h.dim) {
    dims[std::to_string(deg)] = n;
    Json b = Json::array();
    for (auto& e : h.basis.at(deg)) b.push_back(A.element_str(e));
    basis[std::to_string(deg)] = b;
  }
  j["dim"] = dims;
  j["basis"] = basis;
  return j;
}

Json names_of(const BuiltAlgebra& A, const std::vector<int>& arrows) {
  Json j = Json::array();
  for (int a : arrows) j.push_back(A.quiver().arrows[a].name);
  return j;
}

// ---------------------------------------------------------------------------
// pinned scenario pipelines

std::string a2_src(int m) {
  return "m " + std::to_string(m) + "\nvertex 1 2\narrow a: 1 -> 2 deg 0\n";
}
std::string a3_src(int m) {
  return "m " + std::to_string(m) +
         "\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\n";
}
const char* kOneLoop2 = "m 2\nvertex v\narrow a: v -> v deg -1\n";
const char* kTwoLoop = "m 2\nvertex v\narrow alpha: v -> v deg -1\narrow beta: v -> v deg -1\n";
const char* kOneLoop3 = "m 3\nvertex v\narrow a: v -> v deg -1\n";

void stability_note(Report& r, const Output& o, const std::string& what, bool stable) {
  r.note(what + " stable", stable);
  if (o.strict_stability) r.require(what + " stable under deeper truncation", stable);
}

void scen_example_4_7(Report& r, int L, const Output& o) {
  QuiverModel q = parse_quiver(kOneLoop2);
  BuiltAlgebra g = ginzburg(q, L);
  BuiltAlgebra p = preprojective(q, L);
  HomologySlice hg = homology(g, -1, -1);
  HomologySlice hp = homology(p, -1, -1);
  r.note("quiver", "one vertex, one loop of degree -1, m = 2");
  r.note("ginzburg basis", homology_json(g, hg)["basis"]["-1"]);
  r.note("dpp basis", homology_json(p, hp)["basis"]["-1"]);
  r.check("dim H^-1 of the Ginzburg model", hg.dim.at(-1), 2);
  r.check("dim H^-1 of the deformed preprojective model", hp.dim.at(-1), 1);
  r.require("the two models are not quasi-isomorphic", hg.dim.at(-1) != hp.dim.at(-1));
  stability_note(r, o, "homology", hg.stable && hp.stable);
}

void scen_example_4_12(Report& r, int L, const Output& o) {
  BuiltAlgebra p = preprojective(parse_quiver(kTwoLoop), L);
  HomologySlice h = homology(p, -2, 0);
  r.note("quiver", "one vertex, two loops alpha, beta of degree -1, m = 2");
  r.check("dim H^0", h.dim.at(0), 1);
  r.check("dim H^-2", h.dim.at(-2), 3);
  Json basis = Json::array();
  for (auto& e : h.basis.at(-2)) basis.push_back(p.element_str(e));
  r.check("H^-2 basis", basis,
          Json::array({"1*(alpha alpha)", "1*(alpha beta)", "1*(beta alpha)"}));
  // the distinctness witness: Hom_C(pi(LA_2), Sigma pi(RA_1)) = H^-2 is nonzero
  PerfModule la2 = mutate_steps(p, 0, Side::Left, 2).current;
  PerfModule ra1 = mutate_steps(p, 0, Side::Right, 1).current;
  ClusterHom ch = hom_cluster(la2, ra1, 1);
  r.check("dim Hom_C(pi(LA_2), Sigma pi(RA_1))", ch.dim, 3);
  stability_note(r, o, "homology", h.stable);
}

void scen_loop_family(Report& r, int L, const Output& o) {
  BuiltAlgebra p = preprojective(parse_quiver(kOneLoop3), L);
  PerfModule P = free_module(p, 0);
  HomologySlice h = homology(p, -3, -1);
  r.note("quiver", "one vertex, one loop of degree -1, m = 3");
  for (int s = 1; s <= 3; ++s) {
    ClusterHom ch = hom_cluster(P, P, -s);
    r.check("Hom_C(P, Sigma^-" + std::to_string(s) + " P) matches dim H^-" + std::to_string(s),
            ch.dim, h.dim.at(-s));
    r.require("dim Hom_C(P, Sigma^-" + std::to_string(s) + " P) >= 1", ch.dim >= 1);
  }
  PeriodicityReport rep = periodicity_check(p, 0);
  r.note("loop witness dims", rep.loop_witness);
  r.require("periodicity fails on the loop family", !rep.refused && !rep.holds);
  stability_note(r, o, "homology", h.stable);
}

void scen_complements(Report& r, int m, int L, const Output&) {
  BuiltAlgebra g = ginzburg(parse_quiver(m == 1 ? a2_src(1) : a3_src(2)), L);
  for (int i = 0; i < g.num_vertices(); ++i) {
    ComplementsReport rep = complements(g, i);
    std::string at = " at vertex " + g.quiver().vertices[i];
    r.check("number of complements" + at, static_cast<int>(rep.reps.size()), m + 1);
    r.require("complements pairwise non-isomorphic" + at, rep.distinct);
    r.require("each completion is cluster tilting" + at, rep.all_tilting);
    r.require("representatives match the left mutations" + at, rep.matches_left);
  }
}

void scen_prop46_oracle(Report& r, int L, const Output&) {
  for (int m : {1, 2})
    for (bool three : {false, true}) {
      BuiltAlgebra g = ginzburg(parse_quiver(three ? a3_src(m) : a2_src(m)), L);
      std::string tag = std::string(three ? "A3" : "A2") + ", m = " + std::to_string(m);
      for (int i = 0; i < g.num_vertices(); ++i)
        for (int t = 0; t <= m + 1; ++t) {
          auto [ra, la] = oracle_prop46(g, i, t);
          std::string at = tag + ", vertex " + g.quiver().vertices[i] +
                           ", t = " + std::to_string(t);
          r.require("low weight block matches RA_t (" + at + ")",
                    iso_test(ra, mutate_steps(g, i, Side::Right, t).current).iso);
          r.require("high weight block matches LA_{m+1-t} (" + at + ")",
                    iso_test(la, mutate_steps(g, i, Side::Left, m + 1 - t).current).iso);
        }
    }
}

void scen_rigidity_acyclic(Report& r, int L, const Output& o) {
  for (bool three : {false, true}) {
    BuiltAlgebra a = preprojective(parse_quiver(three ? a3_src(2) : a2_src(2)), L);
    RigidityReport rep = rigidity_check(a);
    std::string tag = three ? "A3" : "A2";
    r.note(tag + " HH dims", rep.slice.dim);
    r.check("dim HH_0 (" + tag + ")", rep.slice.dim[0], a.num_vertices());
    r.check("dim HH_1 (" + tag + ")", rep.slice.dim[1], 0);
    r.require("rigidity holds (" + tag + ")", rep.pass);
    stability_note(r, o, tag + " Hochschild", rep.slice.stable);
  }
  BuiltAlgebra loop = preprojective(parse_quiver(kOneLoop2), L);
  RigidityReport rep = rigidity_check(loop);
  r.require("one-loop algebra fails rigidity", !rep.pass);
  r.check("loop witness", names_of(loop, rep.loop_witness), Json::array({"a"}));
}

void scen_euler_les(Report& r, int L, const Output&) {
  BuiltAlgebra g3 = ginzburg(parse_quiver(a3_src(2)), L);
  PerfModule x = normalize_to_F(mutate_steps(g3, 1, Side::Right, 1).current).rep;
  std::vector<std::pair<std::string, PerfModule>> ys;
  for (int j = 0; j < 3; ++j)
    ys.emplace_back("P_" + g3.quiver().vertices[j], free_module(g3, j));
  ys.emplace_back("M", algebra_module(g3, 1));
  ys.emplace_back("A", algebra_module(g3));
  for (auto& [name, y] : ys) {
    EulerReport e = euler_les_check(x, y);
    r.check("alternating sum for (rep RA_1, " + name + ")", e.alternating_sum, 0);
    r.require("end terms consistent for (rep RA_1, " + name + ")", e.holds);
  }
  BuiltAlgebra g2 = ginzburg(parse_quiver(a2_src(1)), L);
  PerfModule x2 = normalize_to_F(mutate_steps(g2, 1, Side::Right, 1).current).rep;
  for (int j = 0; j < 2; ++j) {
    EulerReport e = euler_les_check(x2, free_module(g2, j));
    r.require("m = 1 additivity for (rep RA_1, P_" + g2.quiver().vertices[j] + ")",
              e.additive);
  }
}

const std::vector<std::pair<std::string, int>> kScenarios = {
    {"example-4-7", 6},     {"example-4-12", 8},     {"loop-family", 8},
    {"a2-complements", 6},  {"a3-complements", 6},   {"prop46-oracle", 6},
    {"rigidity-acyclic", 8}, {"euler-les", 6}};

int run_scenario(const std::string& name, int trunc, const Output& o) {
  int L = trunc;
  bool known = false;
  for (auto& [n, def] : kScenarios)
    if (n == name) {
      known = true;
      if (L <= 0) L = def;
    }
  if (!known) {
    std::cerr << "unknown scenario: " << name << "\n";
    return 2;
  }
  Report r("scenario " + name);
  r.note("L", L);
  r.note("delta", env_int("SILTING_DELTA", 2));
  auto t0 = std::chrono::steady_clock::now();
  if (name == "example-4-7")
    scen_example_4_7(r, L, o);
  else if (name == "example-4-12")
    scen_example_4_12(r, L, o);
  else if (name == "loop-family")
    scen_loop_family(r, L, o);
  else if (name == "a2-complements")
    scen_complements(r, 1, L, o);
  else if (name == "a3-complements")
    scen_complements(r, 2, L, o);
  else if (name == "prop46-oracle")
    scen_prop46_oracle(r, L, o);
  else if (name == "rigidity-acyclic")
    scen_rigidity_acyclic(r, L, o);
  else if (name == "euler-les")
    scen_euler_les(r, L, o);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::string text = r.render(o.format == "json");
  if (o.out.empty())
    std::cout << text;
  else
    std::ofstream(o.out) << text;
  std::cerr << "scenario " << name << ": " << (r.failures ? "FAIL" : "ok") << " ("
            << r.doc["checks"].size() << " checks, " << ms << " ms)\n";
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"silting-lab: completed dg path algebras, silting mutation, cluster "
               "categories and Hochschild homology at a fixed truncation order"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--format", out.format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out.out, "write the report to a file instead of stdout");
  app.add_flag("--strict-stability", out.strict_stability,
               "treat unstable truncated results as failures");
  int rc = 0;

  // --- algebra construction --------------------------------------------
  Common cb;
  auto* build = app.add_subcommand("build", "construct the dg algebra and print its presentation");
  std::string build_kind;
  build->add_option("construction", build_kind, "ginzburg|dpp")
      ->required()
      ->check(CLI::IsMember({"ginzburg", "dpp"}));
  add_common(build, cb);
  build->callback([&] {
    cb.kind = build_kind;
    BuiltAlgebra a = load_algebra(cb);
    Report r("build " + build_kind);
    r.note("quiver", print_quiver(a.base));
    Json arrows = Json::array();
    for (auto& ar : a.quiver().arrows)
      arrows.push_back({{"name", ar.name},
                        {"src", a.quiver().vertices[ar.src]},
                        {"tgt", a.quiver().vertices[ar.tgt]},
                        {"deg", ar.deg}});
    r.note("triple quiver", arrows);
    r.note("differential", differential_json(a));
    r.note("validation", validation_json(validate(a.base.quiver, a.base.potential, a.m())));
    r.require("d squared is zero", check_d_squared(a).ok);
    rc = out.emit(r);
  });

  Common cn;
  auto* norm = app.add_subcommand("normalize", "degree-normalize a dpp presentation");
  add_common(norm, cn);
  norm->callback([&] {
    BuiltAlgebra a = load_algebra(cn);
    Report r("normalize");
    if (cn.kind == "ginzburg") {
      auto [p, iota] = ginzburg_to_dpp(a);
      a = p;
      r.note("converted", "ginzburg presentation rewritten as dpp first");
    }
    auto [p2, iota] = normalize_degrees(a);
    Json degs = Json::object(), images = Json::object();
    for (auto& ar : p2.quiver().arrows) degs[ar.name] = ar.deg;
    for (auto& [arrow, img] : iota.images)
      images[a.quiver().arrows[arrow].name] = p2.element_str(img);
    r.note("arrow degrees", degs);
    r.note("arrow images", images);
    r.require("arrow map intertwines the differentials",
              !verify_arrow_map(a, p2, iota).has_value());
    rc = out.emit(r);
  });

  Common cc;
  auto* check = app.add_subcommand("check", "structural checks on the construction");
  std::string check_what;
  check->add_option("what", check_what, "cy")->required()->check(CLI::IsMember({"cy"}));
  add_common(check, cc);
  check->callback([&] {
    BuiltAlgebra a = load_algebra(cc);
    Report r("check cy");
    CyReport cy = check_strongly_cy_presentation(a, a.m());
    for (auto& c : cy.checks) r.require(c.name + (c.detail.empty() ? "" : ": " + c.detail), c.pass);
    rc = out.emit(r);
  });

  // --- homology ---------------------------------------------------------
  Common ch;
  auto* hom = app.add_subcommand("homology", "algebra homology over a degree window");
  std::string window = "-2..0";
  std::vector<std::string> piece;
  hom->add_option("--window", window, "degree window lo..hi");
  hom->add_option("--piece", piece, "restrict to the e_j A e_i piece (source i, target j)")
      ->expected(2);
  add_common(hom, ch);
  hom->callback([&] {
    BuiltAlgebra a = load_algebra(ch);
    auto dots = window.find("..");
    if (dots == std::string::npos) throw std::runtime_error("window must be lo..hi");
    int lo = std::stoi(window.substr(0, dots)), hi = std::stoi(window.substr(dots + 2));
    std::optional<std::pair<int, int>> pp;
    if (!piece.empty()) pp = {vertex_of(a, piece[0]), vertex_of(a, piece[1])};
    HomologySlice h = homology(a, lo, hi, pp, ch.delta);
    Report r("homology");
    r.note("slice", homology_json(a, h));
    rc = out.emit(r);
  });

  // --- perfect module operations ---------------------------------------
  struct ModArgs {
    Common c;
    std::string module, other;
    int deg = 0;
    bool stable = false;
  };
  auto add_mod = [&](CLI::App* sub, ModArgs& m, bool two) {
    add_common(sub, m.c);
    sub->add_option("--module", m.module, "PerfModule JSON file")->required()->check(CLI::ExistingFile);
    if (two)
      sub->add_option("--other", m.other, "second PerfModule JSON file")
          ->required()
          ->check(CLI::ExistingFile);
  };

  ModArgs mh;
  auto* homd = app.add_subcommand("hom", "derived Hom dimension between perfect modules");
  add_mod(homd, mh, true);
  homd->add_option("--deg", mh.deg, "cohomological degree");
  homd->add_flag("--stable", mh.stable, "compare against a deeper truncation");
  homd->callback([&] {
    BuiltAlgebra a = load_algebra(mh.c);
    HomResult h = hom_derived(load_module(a, mh.module), load_module(a, mh.other), mh.deg, mh.stable);
    Report r("hom");
    r.note("deg", mh.deg);
    r.note("dim", h.dim);
    r.note("stable", h.stable);
    rc = out.emit(r);
  });

  ModArgs ms;
  auto* supp = app.add_subcommand("support", "support of a perfect module");
  add_mod(supp, ms, false);
  supp->callback([&] {
    BuiltAlgebra a = load_algebra(ms.c);
    PerfModule x = minimize(load_module(a, ms.module)).model;
    std::vector<int> st = support_structural(x);
    Report r("support");
    r.note("structural", st);
    if (!st.empty()) {
      std::vector<int> oracle = support_oracle(x, st.front() - 1, st.back() + 1);
      r.note("oracle", oracle);
      r.require("structural and oracle supports agree", st == oracle);
    }
    rc = out.emit(r);
  });

  ModArgs mi;
  auto* iso = app.add_subcommand("iso", "isomorphism test between perfect modules");
  add_mod(iso, mi, true);
  iso->callback([&] {
    BuiltAlgebra a = load_algebra(mi.c);
    IsoResult res = iso_test(minimize(load_module(a, mi.module)).model,
                             minimize(load_module(a, mi.other)).model);
    Report r("iso");
    r.note("iso", res.iso);
    rc = out.emit(r);
  });

  ModArgs mk;
  auto* k0 = app.add_subcommand("k0", "class in K_0 on the basis of vertex projectives");
  add_mod(k0, mk, false);
  k0->callback([&] {
    BuiltAlgebra a = load_algebra(mk.c);
    Report r("k0");
    r.note("class", k0_class(load_module(a, mk.module)));
    rc = out.emit(r);
  });

  // --- mutation lab -----------------------------------------------------
  struct VertArgs {
    Common c;
    std::string vertex;
    std::string dir = "right";
    int steps = 1, t = 0;
  };
  VertArgs vm;
  auto* mut = app.add_subcommand("mutate", "iterated silting mutation of a vertex projective");
  add_common(mut, vm.c);
  mut->add_option("--vertex", vm.vertex, "vertex name")->required();
  mut->add_option("--dir", vm.dir, "right|left")->check(CLI::IsMember({"right", "left"}));
  mut->add_option("--steps", vm.steps, "number of mutation steps");
  mut->callback([&] {
    BuiltAlgebra a = load_algebra(vm.c);
    MutationState st = mutate_steps(a, vertex_of(a, vm.vertex),
                                    vm.dir == "left" ? Side::Left : Side::Right, vm.steps);
    Report r("mutate");
    Json steps = Json::array();
    for (auto& s : st.steps)
      steps.push_back({{"module", module_json(s.module)},
                       {"approximation", module_json(s.approx.obj)},
                       {"surjective", s.approx.surjective}});
    r.note("dir", vm.dir);
    r.note("steps", steps);
    r.note("result", module_json(st.current));
    r.note("support", support_structural(st.current));
    rc = out.emit(r);
  });

  VertArgs vr;
  auto* res = app.add_subcommand("resolve-simple", "minimal perfect model of a simple module");
  add_common(res, vr.c);
  res->add_option("--vertex", vr.vertex, "vertex name")->required();
  res->callback([&] {
    BuiltAlgebra a = load_algebra(vr.c);
    SimpleResolution y = resolve_simple(a, vertex_of(a, vr.vertex));
    Report r("resolve-simple");
    r.note("module", module_json(y.Y));
    rc = out.emit(r);
  });

  VertArgs vo;
  auto* orc = app.add_subcommand("oracle46", "weight-truncation models of the mutations");
  add_common(orc, vo.c);
  orc->add_option("--vertex", vo.vertex, "vertex name")->required();
  orc->add_option("--t", vo.t, "weight cut");
  orc->callback([&] {
    BuiltAlgebra a = load_algebra(vo.c);
    int i = vertex_of(a, vo.vertex);
    auto [ra, la] = oracle_prop46(a, i, vo.t);
    Report r("oracle46");
    r.note("ra_model", module_json(ra));
    r.note("la_model", module_json(la));
    r.require("low block matches RA_t",
              iso_test(ra, mutate_steps(a, i, Side::Right, vo.t).current).iso);
    r.require("high block matches LA_{m+1-t}",
              iso_test(la, mutate_steps(a, i, Side::Left, a.m() + 1 - vo.t).current).iso);
    rc = out.emit(r);
  });

  VertArgs va;
  auto* ar = app.add_subcommand("ar-angle", "the (m+3)-angle ending in a vertex projective");
  add_common(ar, va.c);
  ar->add_option("--vertex", va.vertex, "vertex name")->required();
  ar->callback([&] {
    BuiltAlgebra a = load_algebra(va.c);
    ARAngleReport rep = ar_angle(a, vertex_of(a, va.vertex));
    Report r("ar-angle");
    if (rep.refused) {
      r.note("refused", rep.reason);
    } else {
      Json terms = Json::array();
      for (auto& t : rep.terms) terms.push_back(module_json(t));
      r.note("terms", terms);
      r.require("consecutive composites vanish up to homotopy",
                std::all_of(rep.composite_vanishes.begin(), rep.composite_vanishes.end(),
                            [](bool b) { return b; }));
      r.require("sink map is a minimal right approximation", rep.sink_ok);
    }
    rc = out.emit(r);
  });

  // --- cluster category -------------------------------------------------
  ModArgs mc;
  auto* clh = app.add_subcommand("cluster-hom", "Hom in the generalized cluster category");
  add_mod(clh, mc, true);
  clh->add_option("--t", mc.deg, "shift on the second argument");
  clh->add_flag("--stable", mc.stable, "compare against a deeper truncation");
  clh->callback([&] {
    BuiltAlgebra a = load_algebra(mc.c);
    ClusterHom h = hom_cluster(minimize(load_module(a, mc.module)).model,
                               minimize(load_module(a, mc.other)).model, mc.deg, mc.stable);
    Report r("cluster-hom");
    r.note("dim", h.dim);
    r.note("path", h.fast ? "direct" : "truncated");
    if (h.general) r.note("cut", h.cut);
    r.note("stable", h.stable);
    rc = out.emit(r);
  });

  ModArgs mt;
  auto* ct = app.add_subcommand("ct-check", "cluster-tilting test for the image of a module");
  add_mod(ct, mt, false);
  ct->callback([&] {
    BuiltAlgebra a = load_algebra(mt.c);
    CTCheck c = cluster_tilting_check(minimize(load_module(a, mt.module)).model);
    Report r("ct-check");
    r.note("dims", c.dims);
    r.note("pass", c.pass);
    rc = out.emit(r);
  });

  VertArgs vp;
  auto* per = app.add_subcommand("periodicity", "mutation periodicity at a vertex");
  add_common(per, vp.c);
  per->add_option("--vertex", vp.vertex, "vertex name")->required();
  per->callback([&] {
    BuiltAlgebra a = load_algebra(vp.c);
    PeriodicityReport rep = periodicity_check(a, vertex_of(a, vp.vertex));
    Report r("periodicity");
    if (rep.refused) {
      r.note("refused", rep.reason);
    } else {
      r.note("holds", rep.holds);
      r.note("oracle_ok", rep.oracle_ok);
      r.note("wrap_ok", rep.wrap_ok);
      r.note("spot_ok", rep.spot_ok);
      if (!rep.loop_witness.empty()) r.note("loop witness dims", rep.loop_witness);
    }
    rc = out.emit(r);
  });

  VertArgs vc;
  auto* comp = app.add_subcommand("complements", "complements of the almost complete object");
  add_common(comp, vc.c);
  comp->add_option("--vertex", vc.vertex, "vertex name")->required();
  comp->callback([&] {
    BuiltAlgebra a = load_algebra(vc.c);
    ComplementsReport rep = complements(a, vertex_of(a, vc.vertex));
    Report r("complements");
    Json reps = Json::array();
    for (auto& m : rep.reps) reps.push_back(module_json(m));
    r.note("count", rep.reps.size());
    r.note("representatives", reps);
    r.note("distinct", rep.distinct);
    r.note("all_tilting", rep.all_tilting);
    r.note("matches_left", rep.matches_left);
    r.note("ok", rep.ok);
    rc = out.emit(r);
  });

  ModArgs me;
  auto* eul = app.add_subcommand("euler-les", "Euler-characteristic consistency for a pair");
  add_mod(eul, me, true);
  eul->callback([&] {
    BuiltAlgebra a = load_algebra(me.c);
    EulerReport e = euler_les_check(minimize(load_module(a, me.module)).model,
                                    minimize(load_module(a, me.other)).model);
    Report r("euler-les");
    r.note("extD_xy", e.extD_xy);
    r.note("extC", e.extC);
    r.note("extD_yx", e.extD_yx);
    r.note("alternating_sum", e.alternating_sum);
    r.note("additive", e.additive);
    r.note("holds", e.holds);
    rc = out.emit(r);
  });

  // --- Hochschild -------------------------------------------------------
  Common chh;
  int pmax = 2, loop_deg = 1;
  auto* hh = app.add_subcommand("hochschild", "Hochschild homology of the dg algebra");
  add_common(hh, chh);
  hh->add_option("--pmax", pmax, "compute HH_0 .. HH_pmax");
  hh->callback([&] {
    BuiltAlgebra a = load_algebra(chh);
    HochschildSlice s = hochschild_homology(a, pmax);
    Report r("hochschild");
    r.note("model", s.model);
    r.note("dim", s.dim);
    r.note("hh0_basis", s.hh0_basis);
    r.note("stable", s.stable);
    rc = out.emit(r);
  });

  Common crg;
  auto* rig = app.add_subcommand("rigidity", "m-rigidity of the dg algebra");
  add_common(rig, crg);
  rig->callback([&] {
    BuiltAlgebra a = load_algebra(crg);
    RigidityReport rep = rigidity_check(a);
    Report r("rigidity");
    r.note("model", rep.slice.model);
    r.note("dim", rep.slice.dim);
    r.note("hh0_ok", rep.hh0_ok);
    r.note("higher_ok", rep.higher_ok);
    r.note("pass", rep.pass);
    r.note("loop_witness", names_of(a, rep.loop_witness));
    r.note("caveat", rep.caveat);
    rc = out.emit(r);
  });

  Common clo;
  auto* loops = app.add_subcommand("loops", "flat loops obstructing rigidity in one degree");
  add_common(loops, clo);
  loops->add_option("--deg", loop_deg, "homological degree p (loops of degree -p)");
  loops->callback([&] {
    BuiltAlgebra a = load_algebra(clo);
    Report r("loops");
    r.note("deg", loop_deg);
    r.note("loops", names_of(a, loop_obstruction(a, loop_deg)));
    rc = out.emit(r);
  });

  // --- scenarios --------------------------------------------------------
  std::vector<std::string> names;
  int scen_trunc = 0;
  auto* scen = app.add_subcommand("scenario", "run pinned verification pipelines");
  scen->add_option("names", names, "scenario names");
  scen->add_option("--trunc", scen_trunc, "override the pinned truncation order");
  scen->callback([&] {
    if (names.empty()) {
      std::cout << "available scenarios (default truncation order in parentheses):\n";
      for (auto& [n, def] : kScenarios) std::cout << "  " << n << " (" << def << ")\n";
      rc = 0;
      return;
    }
    for (auto& n : names) rc = std::max(rc, run_scenario(n, scen_trunc, out));
  });

  for (auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
    s->fallthrough();  // let --format/--out/--strict-stability follow the subcommand

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
