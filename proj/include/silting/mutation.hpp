#pragma once
#include "silting/perfmod.hpp"

namespace silting {

// Y = P_i ⊕ ΣP′₀ ⊕ … ⊕ Σ^{m+2}P′_{m+1} with P′_j = ⊕ P_{s(ρ)} over arrows ρ
// into i of degree −j; δ_Y column of the summand attached to ρ carries ρ at
// the P_i row and −y_red at the rows of the leftmost factors of dρ.
struct SimpleResolution {
  int vertex = -1;
  PerfModule Y;
};
SimpleResolution resolve_simple(const BuiltAlgebra& alg, int i);

// (ε_{≤t}Y, ε_{≥t+1}Y): shift-≤t block and shift-≥t+1 quotient block
std::pair<PerfModule, PerfModule> truncate_weights(const SimpleResolution& y, int t);

enum class Side { Right, Left };

struct Approximation {
  PerfModule obj;  // O in add(M)
  Mat map;         // right: O → x; left: x → O
  bool surjective = false;   // every class through the generators factors
  int cone_reduced = 0;      // contractible pairs removed from the cone
};
// minimal right/left add(M)-approximation, M generated by the vertices in gens
Approximation approximate(const PerfModule& x, const std::vector<int>& gens, Side side);

struct MutationStep {
  Approximation approx;
  PerfModule module;  // RA_t (right) or LA_t (left), minimal
  Mat alpha;          // right: RA_t → O of the triangle RA_t → O → RA_{t−1}
};

struct MutationState {
  const BuiltAlgebra* A = nullptr;
  int vertex = -1;
  Side side = Side::Right;
  std::vector<MutationStep> steps;  // step t-1 holds RA_t / LA_t
  PerfModule current;               // RA_t (= e_iA at t = 0)

  int t() const { return static_cast<int>(steps.size()); }
};
MutationState mutation_start(const BuiltAlgebra& alg, int i, Side side);
void mutate(MutationState& st);
MutationState mutate_steps(const BuiltAlgebra& alg, int i, Side side, int t);

// (Σ^{−t}ε_{≤t}Y, Σ^{−t−1}ε_{≥t+1}Y); refuses when Q has a loop at i
std::pair<PerfModule, PerfModule> oracle_prop46(const BuiltAlgebra& alg, int i, int t);

bool has_base_loop_at(const BuiltAlgebra& alg, int i);

struct ARAngleReport {
  bool refused = false;
  std::string reason;
  std::vector<PerfModule> terms;          // RA_{m+1}, O^{(m+1)}, …, O^{(1)}, P_i
  std::vector<bool> composite_vanishes;   // consecutive composites are boundaries
  bool sink_ok = false;                   // h^{(1)} is a verified approximation
};
ARAngleReport ar_angle(const BuiltAlgebra& alg, int i);

}  // namespace silting
