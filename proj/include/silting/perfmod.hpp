#pragma once
#include "silting/homology.hpp"
#include "silting/linalg.hpp"
#include "silting/potential.hpp"

namespace silting {

using Mat = std::vector<std::vector<AlgebraElement>>;

// Perfect dg module: ⊕ Σ^{s_c} e_{i_c}A with a degree-1 perturbation δ whose
// entry (r, c) lies in e_{i_r} A e_{i_c} and has degree 1 + s_r − s_c
// (rows = target summand, columns = source). Square-zero condition:
// (−1)^{s_r} d(δ_rc) + (δ²)_rc = 0 for all r, c.
struct PerfModule {
  const BuiltAlgebra* A = nullptr;
  std::vector<std::pair<int, int>> summands;  // (vertex, shift)
  Mat delta;

  int size() const { return static_cast<int>(summands.size()); }
  bool is_zero_object() const { return summands.empty(); }
};

PerfModule free_module(const BuiltAlgebra& A, int vertex, int shift = 0);
// ⊕_i e_iA (the algebra as a module), or the complement M = ⊕_{j≠i} e_jA.
PerfModule algebra_module(const BuiltAlgebra& A, int skip_vertex = -1);
PerfModule direct_sum(const PerfModule& x, const PerfModule& y);

// residual of the square-zero condition; empty matrix means ok
std::optional<std::string> square_zero_residual(const PerfModule& x);
void assert_square_zero(const PerfModule& x, const char* where);

PerfModule shift_module(const PerfModule& x, int k);  // Σ^k: shifts += k, δ *= (−1)^k
// canonical summand order (shift, vertex); returns the permuted module
PerfModule sort_summands(const PerfModule& x);

// Degree-n morphisms x → y: matrices f with f_rc ∈ e_{i_r}A e_{i_c} of degree
// n + s^y_r − s^x_c; differential
// D(f)_rc = (−1)^{s^y_r} d(f_rc) + (δ_y f)_rc − (−1)^n (f δ_x)_rc.
struct HomBasisElem {
  int r, c;
  PathWord p;
};
struct HomSpace {
  std::vector<HomBasisElem> basis;
  std::map<std::pair<std::pair<int, int>, PathWord>, int> index;
};
HomSpace hom_space(const PerfModule& x, const PerfModule& y, int n);
// matrix of D: Hom^n → Hom^{n+1} over the two bases
SparseMat hom_differential(const PerfModule& x, const PerfModule& y, int n,
                           const HomSpace& from, const HomSpace& to);
Mat hom_coords_to_mat(const PerfModule& x, const PerfModule& y, const HomSpace& h,
                      const Vec& coords);
Vec mat_to_hom_coords(const PerfModule& x, const PerfModule& y, const HomSpace& h,
                      const Mat& f);

Mat zero_mat(int rows, int cols);
Mat identity_mat(const PerfModule& x);
Mat mat_compose(const PerfModule& x, const PerfModule& y, const PerfModule& z,
                const Mat& g, const Mat& f);  // g∘f for f: x→y, g: y→z
Mat apply_hom_differential(const PerfModule& x, const PerfModule& y, const Mat& f, int n);
bool mat_is_zero(const Mat& f);

struct HomResult {
  int dim = 0;
  std::vector<Mat> basis;  // representative closed maps
  bool stable = true;      // dims agree at L and L+Δ (when checked)
};
// dim H^n Hom•(x, y); set check_stability to rebuild at L+Δ and compare.
HomResult hom_derived(const PerfModule& x, const PerfModule& y, int n,
                      bool check_stability = false);
// is the closed degree-n map f a boundary? witness = preimage under D
std::optional<Mat> hom_boundary_witness(const PerfModule& x, const PerfModule& y,
                                        const Mat& f, int n);

struct ConeResult {
  PerfModule cone;  // summands: Σx's (shifted by 1) then y's
  Mat incl_y;       // y → cone
  Mat proj_sx;      // cone → Σx
};
ConeResult cone(const PerfModule& x, const PerfModule& y, const Mat& f);

struct MinimizeResult {
  PerfModule model;
  Mat incl;  // model → x, closed degree 0, quasi-iso
  Mat proj;  // x → model
  int reduced_pairs = 0;
};
MinimizeResult minimize(const PerfModule& x);

struct IsoResult {
  bool iso = false;
  Mat witness;  // closed degree-0 map x → y with invertible constant part
};
IsoResult iso_test(const PerfModule& x, const PerfModule& y);

std::vector<int> k0_class(const PerfModule& x);  // Σ (−1)^s · unit(i)
// for minimal x: the set of shifts s with some summand Σ^s e_iA
std::vector<int> support_structural(const PerfModule& x);
// oracle: shifts j in [lo, hi] with Hom_D(x, Σ^j S_i) ≠ 0 for some i
std::vector<int> support_oracle(const PerfModule& x, int lo, int hi);

// Finite-dimensional right dg module: basis elements carry (vertex, degree);
// d has degree +1; act[a] is the right action by arrow a.
struct FinDimDgModule {
  const BuiltAlgebra* A = nullptr;
  std::vector<std::pair<int, int>> basis;  // (vertex, cohomological degree)
  SparseMat d{0, 0};
  std::vector<SparseMat> act;

  int dim() const { return static_cast<int>(basis.size()); }
};
FinDimDgModule simple_module(const BuiltAlgebra& A, int vertex, int shift = 0);
// underlying findim module of a perfect module; labels (if given) receives the
// (summand, path) tag of each basis element. With a finite deg_lo the result
// is the quotient dg module by the part in degrees < deg_lo (the differential
// only raises degree, so the window is a dg quotient).
FinDimDgModule to_findim(const PerfModule& x,
                         std::vector<std::pair<int, PathWord>>* labels = nullptr,
                         int deg_lo = std::numeric_limits<int>::min());
std::optional<std::string> findim_check(const FinDimDgModule& n);

int findim_homology_dim(const FinDimDgModule& n, int deg);

// dim H^{deg} Hom•(x, n) for cofibrant x; exact (no truncation loss beyond A)
int hom_to_findim(const PerfModule& x, const FinDimDgModule& n, int deg);

// τ_{≥s+1}x: quotient of x by the dg submodule (degrees < s) ⊕ ker d^s,
// together with the projection coordinates of each path-basis element of x.
struct TruncationAbove {
  FinDimDgModule module;
  std::vector<Vec> project;  // per basis element of to_findim(x)
};
TruncationAbove truncate_above(const PerfModule& x, int s);

// Minimal-model machinery for findim modules: perfect model p with a strict
// closed degree-0 quasi-iso phi: p → n (cone acyclic in degrees ≥ floor).
struct PerfectModel {
  PerfModule model;
  std::vector<Vec> phi;  // image of each summand generator in n's basis
  bool complete = true;  // cone acyclic down to the requested floor
};
PerfectModel perfect_model(const FinDimDgModule& n, const BuiltAlgebra& A, int floor);

// strict closed lift u: x → model with phi∘u homotopic to the given map
// (each generator of x sent to coords in n). Solves u, k jointly.
std::optional<Mat> homotopy_lift(const PerfModule& x, const PerfectModel& pm,
                                 const FinDimDgModule& n,
                                 const std::vector<Vec>& gen_images);

// τ_{≤s}x as a perfect model: minimal_model(Σ^{−1}cone(x → τ_{≥s+1}x)).
// Without an explicit floor, the resolution depth defaults to the generator
// window (min degree of τ_{≥s+1}x) − m − 2; resolving deeper runs into the
// length-truncation artifacts of A/m^{L+1}, which is not smooth.
PerfModule smart_truncate_below(const PerfModule& x, int s, int floor);
PerfModule smart_truncate_below(const PerfModule& x, int s);

// longest path of total degree ≥ lo; nullopt when the degree-0 subquiver has
// a cycle (then no length bound certifies a degree window)
std::optional<int> longest_path_above(const BuiltAlgebra& A, int lo);

// τ_{≤s}x computed at a truncation order large enough that every degree the
// resolution touches carries its full path basis, then projected back to the
// order of x.
PerfModule stable_truncate_below(const PerfModule& x, int s);

std::string perfmodule_json(const PerfModule& x);

}  // namespace silting
