// protocols.hpp — executable preparation protocols: squeezed vacuum,
// post-selected superpositions of squeezed states, and displaced (general)
// squeezed states, with exact post-selection bookkeeping.
#pragma once

#include "ionsq/propagators.hpp"

#include <optional>

namespace ionsq {

// Complex weights of the internal superpositions, two per cycle; cycle j
// consumes (p_{2j}, p_{2j+1}) in 0-based order (ion 1 first).
using WeightList = std::vector<Complex>;

// Realized sign and phase conventions, fixed operationally by running the
// composed sequence at small cutoffs. The displacement signs s_c, s_r satisfy
// final motional = D(s_c·2β_c) D(s_r·2β_r) S(2g)|00>.
struct ConventionReport {
  int carrier_sigma_y;      // σ_y eigenvalue of both ions after the carrier
  int displacement_sign_c;  // s_c
  int displacement_sign_r;  // s_r
  double tmsv_anchor_error;  // max |S(g)|00> − analytic expansion| from the
                             // squeeze-convention self-test
};

// Cached; executed once per process at fixed small cutoffs.
const ConventionReport& convention_self_test();

struct ProtocolOptions {
  double tail_budget = kDefaultTailBudget;
  double purity_tol = kPurityTol;
};

struct ProtocolResult {
  StateVector final_state;
  ModeState motional;                       // extracted motional factor
  std::vector<double> per_cycle_probability;
  double cumulative_probability = 1.0;
  std::optional<double> formula_probability;  // closed-form product estimate
  double tail_mass = 0.0;
  double motional_purity = 1.0;
  double fidelity_vs_target = 1.0;
  ConventionReport conventions{};
};

// (1/2)(|e>_1 − |g>_1)(|e>_2 + |g>_2)|0_c 0_r>: the σ_x product state the
// squeezing drive maps to a two-mode squeezed vacuum without entangling the
// internal degrees of freedom.
StateVector squeeze_protocol_initial(const SpaceDescriptor& space);

// N0 (|e>_1 + p1 |g>_1)(|e>_2 − p2 |g>_2)|00> with
// N0 = [(1+|p1|²)(1+|p2|²)]^{-1/2}.
StateVector weighted_protocol_initial(const SpaceDescriptor& space, Complex p1,
                                      Complex p2);

// One post-selection cycle: re-prepare the internal state with weights
// (p1, p2) keeping the motional part, evolve under the squeezing drive, and
// project onto no fluorescence (both ions in |e>). Returns the normalized
// conditioned state and the exact projection probability.
struct CycleOutcome {
  StateVector state;
  double probability;
};

CycleOutcome conditional_cycle(const StateVector& state, Complex g, Complex p1,
                               Complex p2,
                               const ProtocolOptions& opts = {});

// Squeezing drive on the σ_x product state: the output factorizes with the
// motional part in a two-mode squeezed vacuum S(2g)|00>. Fidelity against the
// analytic expansion is reported.
ProtocolResult squeezed_vacuum_protocol(const SpaceDescriptor& space, Complex g,
                                        const ProtocolOptions& opts = {});

// m = len/2 conditional cycles with identical interaction time; the final
// conditioned motional state is compared against the closed-form
// superposition prediction.
ProtocolResult superposition_protocol(const SpaceDescriptor& space, Complex g,
                                      const WeightList& weights,
                                      const ProtocolOptions& opts = {});

// Coefficients C_k of Σ_k C_k S(2(k−m)g)|00>: the coefficient of x^k in
// ∏_i [(1−p_i)x + (1+p_i)], computed by dynamic programming in O(m²).
std::vector<Complex> superposition_coefficients(const WeightList& weights);

// Literal evaluation of the superposition prediction (unnormalized motional).
ModeState predicted_superposition_state(const SpaceDescriptor& space, Complex g,
                                        const WeightList& weights);

// Closed-form product estimate ∏_i (1/4)(1+|p_i|²)^{-1} of the all-cycles
// no-fluorescence probability. Reported for comparison only: the exact
// projection norm is the ground truth and the two disagree already at g = 0.
double product_formula_probability(const WeightList& weights);

// Full displaced-squeezed sequence: squeezing drive, carrier rotation,
// conditional displacement of mode_c, flip of ion 1, conditional displacement
// of mode_r. The final motional factor equals
// D(s_c·2β_c) D(s_r·2β_r) S(2g)|00> with the recorded signs; factorization
// purity is asserted after every stage.
ProtocolResult general_squeezed_protocol(const SpaceDescriptor& space,
                                         Complex g, Complex beta_c,
                                         Complex beta_r,
                                         const ProtocolOptions& opts = {});

// Stage-resolved purities of the general protocol (diagnostic surface for the
// acceptance suite).
struct GeneralStageReport {
  std::array<double, 5> stage_purity;
  ProtocolResult result;
};

GeneralStageReport general_squeezed_protocol_staged(
    const SpaceDescriptor& space, Complex g, Complex beta_c, Complex beta_r,
    const ProtocolOptions& opts = {});

}  // namespace ionsq
