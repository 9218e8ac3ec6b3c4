// operators.hpp — ladder and Pauli factories, anti-Hermitian matrix
// exponentials, two-mode squeezing and displacement operators, and the
// analytic TMSV expansion they are checked against.
#pragma once

#include "ionsq/state.hpp"

namespace ionsq {

// Squeezing argument of S(g) = exp(g* ab − g a†b†); the protocol applies
// S(2g), so the squeeze factor is r = 2|g|.
struct SqueezeParameter {
  Complex g;
  double protocol_r() const { return 2.0 * std::abs(g); }
};

struct DisplacementParameter {
  Complex beta;
  Subsystem mode;  // ModeC or ModeR
};

// <n-1| a |n> = sqrt(n). Requires dim >= 2.
Matrix annihilation(int dim);
Matrix creation(int dim);
Matrix number_operator(int dim);

enum class PauliAxis { X, Y, Z, Plus, Minus };
Matrix pauli(PauliAxis axis);

// max_ij |(U†U − I)_ij|
double unitarity_defect(const Matrix& u);

// exp(A) for anti-Hermitian A via eigendecomposition of the Hermitian iA.
// Uses a real-symmetric solver when iA is real. Result is unitary up to
// rounding; `tol` bounds the accepted anti-Hermiticity defect of the input.
Matrix expm_antihermitian(const Matrix& generator, double tol = kDefaultExpmTol);
Operator expm_antihermitian(const Operator& generator,
                            double tol = kDefaultExpmTol);

// Eigendecomposition of the Hermitian i*(g*ab − g a†b†)/|g| direction on the
// joint mode space; lets one squeeze generator serve every magnitude with the
// same phase. Cached by (dim_c, dim_r, phase).
struct SqueezeBasis {
  RealVector eigenvalues;  // of the Hermitian direction matrix
  Matrix eigenvectors;
  // S(c e^{i theta}) = V exp(-i c Λ) V† for real c >= 0.
  Matrix squeeze(double magnitude) const;
  Vector squeeze_vacuum(double magnitude) const;  // S|00>, column action only
};

// The basis for generator direction e^{i theta}; theta = arg(g).
const SqueezeBasis& squeeze_basis(int dim_c, int dim_r, Complex phase);

// S(g) on the joint mode space (exp of the truncated generator; exactly
// unitary there). No tail guard — callers guard where a state is produced.
Matrix mode_squeeze_matrix(int dim_c, int dim_r, Complex g);

// D(beta) = exp(beta a† − beta* a) on a single truncated mode.
Matrix mode_displace_matrix(int dim, Complex beta);

// Embedded operators on the full composite space, tail-guarded on their
// action on the vacuum: the top `kDefaultTailMargin` fraction of Fock levels
// of either mode must carry at most tail_budget of the population.
Operator two_mode_squeeze(const SpaceDescriptor& space, Complex g,
                          double tail_budget = kDefaultTailBudget);
Operator displace(const SpaceDescriptor& space, Subsystem mode, Complex beta,
                  double tail_budget = kDefaultTailBudget);

// Analytic Fock expansion of S(g_applied)|00>: the |n,n> coefficient is
// sech(r)·(−e^{i theta} tanh r)^n with g_applied = r e^{i theta}. Returned as
// the list of pair coefficients for n = 0..cutoff.
std::vector<Complex> tmsv_pair_amplitudes(Complex g_applied, int cutoff);

// Same expansion written onto the joint mode space.
ModeState tmsv_mode_state(Complex g_applied, int dim_c, int dim_r);

// Guard helpers used by operator factories and protocols.
void check_mode_tail(const ModeState& m, double tail_budget, const char* who);

}  // namespace ionsq
