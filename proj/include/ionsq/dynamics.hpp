// dynamics.hpp — pre-RWA validator: the interaction-picture Hamiltonian of
// both ions in the two standing waves without any rotating-wave truncation,
// an adaptive norm-monitored integrator, and the RWA infidelity metric.
#pragma once

#include "ionsq/state.hpp"

#include <Eigen/SparseCore>

namespace ionsq {

// Trap and drive constants. Frequencies in rad/s. The Lamb-Dicke parameters
// are either set directly or derived from the wavevector as
// eta = k sqrt(1/(4 m mu)), eta_r = k sqrt(1/(4 m nu)).
struct PhysicalParams {
  double mu;      // center-of-mass mode frequency
  double nu;      // breathing mode frequency
  double omega0;  // internal transition frequency; cancels analytically in
                  // the interaction picture and never enters the numerics
  double rabi;    // Ω
  double eta_c;
  double eta_r;
  double mass = 0.0;        // optional, for wavevector-derived etas
  double wavevector = 0.0;  // optional

  // Desk-scale defaults: mu/2π = 1 MHz, nu = √3 mu (the standard two-ion
  // axial ratio), eta = eta_r = 0.1, Ω/2π = 20 kHz.
  static PhysicalParams defaults();

  // Fills eta_c/eta_r from (mass, wavevector) when provided.
  void derive_etas();

  // Lamb-Dicke regime guard (eta, eta_r in (0, 0.3]) and positivity checks.
  void validate() const;
};

enum class ExpansionOrder { Second, Fourth, ExactCosine };

// One Hermitian-paired frequency component of H(t) = Σ_j e^{i ω_j t} B_j.
// omega = k_mu·mu + k_nu·nu; the (0,0) component is the resonant part.
struct FrequencyTerm {
  int k_mu;
  int k_nu;
  double omega;
  Matrix matrix;
};

// Interaction-picture Hamiltonian of the two standing-wave drives with the
// cosine of each ion's position expanded to the requested order. Standing
// waves with both ions at anti-nodes; laser detunings ±(mu+nu). Only the
// optical carrier phases are removed analytically — every sideband-scale
// term is kept.
class InteractionHamiltonian {
 public:
  InteractionHamiltonian(const SpaceDescriptor& space,
                         const PhysicalParams& params, ExpansionOrder order);

  const SpaceDescriptor& space() const { return space_; }

  // Dense H(t); Hermitian at every t, real at t = 0.
  Matrix dense(double t) const;

  // out = H(t)·in, matrix-free over the stored mode-space structure.
  void apply(double t, const Vector& in, Vector& out) const;

  // Exact frequency decomposition (sorted by (k_mu, k_nu) for determinism).
  std::vector<FrequencyTerm> frequency_terms() const;

 private:
  SpaceDescriptor space_;
  PhysicalParams params_;
  ExpansionOrder order_;
  Eigen::SparseMatrix<Complex> cos1_, cos2_;  // cos(k x̂_i) expansions
  RealVector mode_energy_;                    // mu·n_c + nu·n_r per mode index
};

// Time-dependent generator interface for the integrator: out = H(t)·in.
class TimeDependentGenerator {
 public:
  virtual ~TimeDependentGenerator() = default;
  virtual long dim() const = 0;
  virtual void apply_hamiltonian(double t, const Vector& in,
                                 Vector& out) const = 0;
};

class InteractionGenerator final : public TimeDependentGenerator {
 public:
  explicit InteractionGenerator(InteractionHamiltonian h) : h_(std::move(h)) {}
  long dim() const override { return h_.space().dim(); }
  void apply_hamiltonian(double t, const Vector& in,
                         Vector& out) const override {
    h_.apply(t, in, out);
  }

 private:
  InteractionHamiltonian h_;
};

struct EvolveResult {
  StateVector state;
  long accepted_steps = 0;
  long rejected_steps = 0;
  double min_step = 0.0;
  double norm_drift = 0.0;
};

// Adaptive step-doubling RK4 (locally extrapolated) for i dψ/dt = H(t)ψ.
// `tol` bounds the global error (per-unit-time allocation); a fixed_step > 0
// disables adaptivity. The norm is monitored every step and drift beyond
// max(1e-8, 10·tol) raises a guard error; step underflow reports the failing
// time.
EvolveResult evolve_td(const TimeDependentGenerator& h, const StateVector& psi0,
                       double t0, double t1, double tol,
                       double fixed_step = 0.0);

struct RwaComparison {
  double infidelity;       // 1 − |<ψ_full|ψ_eff>|²
  Complex g;               // −i Ω η η_r t_final
  EvolveResult evolution;  // full-dynamics integration diagnostics
};

// Integrates the full interaction-picture dynamics from the squeeze-protocol
// initial state and compares with the closed-form squeezing drive.
RwaComparison rwa_infidelity(const SpaceDescriptor& space,
                             const PhysicalParams& params, double t_final,
                             ExpansionOrder order,
                             double integrator_tol = kDefaultIntegratorTol,
                             double tail_budget = kDefaultTailBudget);

}  // namespace ionsq
