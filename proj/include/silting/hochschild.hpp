#pragma once
#include "silting/potential.hpp"

namespace silting {

// Hochschild homology of the completed dg algebra, computed from the
// l-relative reduced bar complex: C = A ⊗̂_{l^e} Ā^{⊗̂_l q} with Ā the arrow
// ideal and every tensor truncated by total path length ≤ L. HH_p is the
// homology of the total complex in total degree −p (legs carry the shifted
// degree ‖a‖ = |a| − 1, so the classical case lands in degree −p at q = p).
struct HochschildSlice {
  std::vector<int> dim;                // dim HH_p for p = 0..p_max
  bool stable = true;                  // dims agree at L and L+Δ
  std::vector<std::string> hh0_basis;  // cyclic-word class representatives
  std::string model = "truncated l-relative model";
};
HochschildSlice hochschild_homology(const BuiltAlgebra& alg, int p_max,
                                    bool check_stability = true);

// residual description of the first failure of D² = 0 on the bar complex in
// total degrees [−p_max−1, 0]; nullopt when the check passes
std::optional<std::string> hochschild_d2_check(const BuiltAlgebra& alg, int p_max);

// m-rigidity: HH₀ ≃ l (trivial-path classes form a basis) and HH_p = 0 for
// 1 ≤ p ≤ m−1
struct RigidityReport {
  HochschildSlice slice;
  bool hh0_ok = false;
  bool higher_ok = false;
  bool pass = false;
  std::vector<int> loop_witness;  // double-quiver loops certifying a failure
  std::string caveat;
};
RigidityReport rigidity_check(const BuiltAlgebra& alg, int m = -1);

// loops of the double quiver (t-loops excluded) of degree −p with zero
// differential; each is a nonzero class obstructing HH_p ≃ (l or 0)
std::vector<int> loop_obstruction(const BuiltAlgebra& alg, int p);

}  // namespace silting
