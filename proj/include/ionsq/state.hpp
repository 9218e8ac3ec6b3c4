// state.hpp — state vectors, dense operators, tensor embedding, projection
// and partial trace on the composite space.
#pragma once

#include "ionsq/space.hpp"
#include "ionsq/types.hpp"

#include <vector>

namespace ionsq {

// Complex amplitude vector over the composite basis. Value-like; operations
// never mutate their inputs.
struct StateVector {
  SpaceDescriptor space;
  Vector amps;

  StateVector(SpaceDescriptor s, Vector a);
};

// Dense complex matrix acting on the full composite space.
struct Operator {
  SpaceDescriptor space;
  Matrix mat;

  Operator(SpaceDescriptor s, Matrix m);
};

// Reduced density matrix over the kept subsystems (in subsystem order).
struct DensityMatrix {
  std::vector<Subsystem> kept;
  Matrix rho;
};

// Pure motional state over mode_c ⊗ mode_r, index n_c * dim_r + n_r.
struct ModeState {
  int dim_c;
  int dim_r;
  Vector amps;
};

StateVector basis_state(const SpaceDescriptor& space, IonLevel s1, IonLevel s2,
                        int n_c, int n_r);

// Embeds a local operator on one subsystem as identity everywhere else.
Operator tensor_embed(const SpaceDescriptor& space, const Matrix& local_op,
                      Subsystem which);

StateVector apply(const Operator& op, const StateVector& psi);
Complex inner(const StateVector& a, const StateVector& b);  // conj-linear in a
double norm(const StateVector& psi);
double norm(const ModeState& m);
StateVector normalized(const StateVector& psi);
ModeState normalized(const ModeState& m);

Complex inner(const ModeState& a, const ModeState& b);

struct Projection {
  StateVector state;   // unnormalized projected component
  double probability;  // its squared norm
};

// Projects onto a definite internal configuration of both ions.
Projection project_internal(const StateVector& psi, IonLevel s1, IonLevel s2);

DensityMatrix partial_trace(const StateVector& psi,
                            const std::vector<Subsystem>& keep);

double purity(const DensityMatrix& dm);

// Motional part of the full state as a (row-major) ModeState. Requires the
// state to factorize as internal ⊗ motional; the reduced-state purity deficit
// is checked against purity_tol.
ModeState motional_factor(const StateVector& psi,
                          double purity_tol = kPurityTol);

// Reduced density matrix of mode_c from a pure motional state.
Matrix mode_c_reduced(const ModeState& m);

StateVector compose_state(const SpaceDescriptor& space,
                          const Eigen::Vector4cd& internal,
                          const ModeState& motional);

}  // namespace ionsq
