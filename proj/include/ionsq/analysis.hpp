// analysis.hpp — fidelities, quadrature covariance, EPR variances, squeezing
// in dB, mode entanglement entropy and truncation diagnostics.
#pragma once

#include "ionsq/state.hpp"

#include <array>

namespace ionsq {

double fidelity(const StateVector& a, const StateVector& b);
double fidelity(const ModeState& a, const ModeState& b);

// Second central moments over (X_c, P_c, X_r, P_r) with X = (a+a†)/√2,
// P = (a−a†)/(i√2), symmetrized ordering; vacuum variance is 1/2.
struct CovarianceData {
  Eigen::Matrix4d cov;
  Eigen::Vector4d mean;
};

CovarianceData covariance(const ModeState& m,
                          double tail_budget = kDefaultTailBudget);

// Symplectic eigenvalues of a 4x4 covariance matrix (two values).
std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& cov);

// Variances of the rotated EPR combinations
//   u∓(phi) = [X_c cos(phi) + P_c sin(phi) ∓ (X_r cos(phi) − P_r sin(phi))]/√2.
struct EprVariances {
  double minus_var;
  double plus_var;
};

EprVariances epr_variance(const ModeState& m, double phi,
                          double tail_budget = kDefaultTailBudget);
EprVariances epr_variance(const CovarianceData& c, double phi);

struct EprMinimum {
  double phi;
  double minus_var;
  double plus_var;  // conjugate-combination variance at the same phi
};

// Golden-section search of the minus-combination variance over phi ∈ [0, π).
EprMinimum epr_min_variance(const ModeState& m,
                            double tail_budget = kDefaultTailBudget);

// −10 log10(variance / (1/2)); positive for squeezing below vacuum.
double squeezing_db(double variance);

// Base-2 von Neumann entropy of the mode_c reduced state of a pure motional
// state.
double mode_entanglement_entropy(const ModeState& m);

// Population in the top `margin` fraction of Fock levels of either mode.
double tail_mass(const ModeState& m, double margin = kDefaultTailMargin);
double tail_mass(const StateVector& psi, double margin = kDefaultTailMargin);

}  // namespace ionsq
