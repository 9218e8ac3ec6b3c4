#include "ionsq/state.hpp"

#include <algorithm>
#include <string>

namespace ionsq {

StateVector::StateVector(SpaceDescriptor s, Vector a)
    : space(s), amps(std::move(a)) {
  if (amps.size() != space.dim()) {
    throw DimensionError("state-core", "amplitude-length",
                         "amplitude vector length " +
                             std::to_string(amps.size()) +
                             " does not match space dimension " +
                             std::to_string(space.dim()));
  }
}

Operator::Operator(SpaceDescriptor s, Matrix m) : space(s), mat(std::move(m)) {
  if (mat.rows() != space.dim() || mat.cols() != space.dim()) {
    throw DimensionError("state-core", "operator-shape",
                         "operator matrix does not match space dimension");
  }
}

StateVector basis_state(const SpaceDescriptor& space, IonLevel s1, IonLevel s2,
                        int n_c, int n_r) {
  Vector v = Vector::Zero(space.dim());
  v(space.index_of(s1, s2, n_c, n_r)) = 1.0;
  return StateVector(space, std::move(v));
}

namespace {

// Dimensions of the four factors in tensor order.
std::array<long, 4> factor_dims(const SpaceDescriptor& space) {
  return {2, 2, space.dim_c(), space.dim_r()};
}

}  // namespace

Operator tensor_embed(const SpaceDescriptor& space, const Matrix& local_op,
                      Subsystem which) {
  const auto dims = factor_dims(space);
  const int k = static_cast<int>(which);
  const long d = dims[k];
  if (local_op.rows() != d || local_op.cols() != d) {
    throw DimensionError("state-core", "embed-dimension",
                         "local operator is " + std::to_string(local_op.rows()) +
                             "x" + std::to_string(local_op.cols()) +
                             " but subsystem dimension is " +
                             std::to_string(d));
  }
  // Index splits as (left, local, right) with the embedded factor in the
  // middle; the embedding is identity on left and right.
  long left = 1, right = 1;
  for (int i = 0; i < k; ++i) left *= dims[i];
  for (int i = k + 1; i < 4; ++i) right *= dims[i];

  Matrix full = Matrix::Zero(space.dim(), space.dim());
  for (long l = 0; l < left; ++l) {
    for (long i = 0; i < d; ++i) {
      for (long j = 0; j < d; ++j) {
        const Complex v = local_op(i, j);
        if (v == Complex(0.0, 0.0)) continue;
        const long row0 = (l * d + i) * right;
        const long col0 = (l * d + j) * right;
        for (long r = 0; r < right; ++r) full(row0 + r, col0 + r) = v;
      }
    }
  }
  return Operator(space, std::move(full));
}

StateVector apply(const Operator& op, const StateVector& psi) {
  require_same_space(op.space, psi.space, "apply");
  return StateVector(psi.space, op.mat * psi.amps);
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_space(a.space, b.space, "inner");
  return a.amps.dot(b.amps);  // Eigen's dot conjugates the first argument
}

double norm(const StateVector& psi) { return psi.amps.norm(); }

double norm(const ModeState& m) { return m.amps.norm(); }

StateVector normalized(const StateVector& psi) {
  const double n = norm(psi);
  if (n == 0.0) {
    throw GuardError("state-core", "zero-norm",
                     "cannot normalize a zero state");
  }
  return StateVector(psi.space, psi.amps / n);
}

ModeState normalized(const ModeState& m) {
  const double n = norm(m);
  if (n == 0.0) {
    throw GuardError("state-core", "zero-norm",
                     "cannot normalize a zero motional state");
  }
  return ModeState{m.dim_c, m.dim_r, m.amps / n};
}

Complex inner(const ModeState& a, const ModeState& b) {
  if (a.dim_c != b.dim_c || a.dim_r != b.dim_r) {
    throw DimensionError("state-core", "space-mismatch",
                         "inner: motional states have different cutoffs");
  }
  return a.amps.dot(b.amps);
}

Projection project_internal(const StateVector& psi, IonLevel s1, IonLevel s2) {
  const long block = static_cast<long>(s1) * 2 + static_cast<long>(s2);
  const long md = psi.space.mode_dim();
  Vector out = Vector::Zero(psi.space.dim());
  out.segment(block * md, md) = psi.amps.segment(block * md, md);
  const double p = out.squaredNorm();
  return Projection{StateVector(psi.space, std::move(out)), p};
}

DensityMatrix partial_trace(const StateVector& psi,
                            const std::vector<Subsystem>& keep) {
  if (keep.empty()) {
    throw DimensionError("state-core", "empty-keep",
                         "partial_trace: keep set must be nonempty");
  }
  std::array<bool, 4> kept{false, false, false, false};
  for (Subsystem s : keep) kept[static_cast<int>(s)] = true;

  const auto dims = std::array<long, 4>{2, 2, psi.space.dim_c(),
                                        psi.space.dim_r()};
  long dk = 1, dt = 1;
  for (int i = 0; i < 4; ++i) (kept[i] ? dk : dt) *= dims[i];

  // Strides of each factor in the flat index, row-major composite order.
  std::array<long, 4> stride;
  long s = 1;
  for (int i = 3; i >= 0; --i) {
    stride[i] = s;
    s *= dims[i];
  }
  // Offset of a (kept multi-index, traced multi-index) pair in the flat index.
  auto offset = [&](long mk, long mt) {
    long off = 0;
    // Both multi-indices unpack row-major over their own factor lists.
    long rk = mk, rt = mt;
    for (int i = 3; i >= 0; --i) {
      if (kept[i]) {
        off += (rk % dims[i]) * stride[i];
        rk /= dims[i];
      } else {
        off += (rt % dims[i]) * stride[i];
        rt /= dims[i];
      }
    }
    return off;
  };

  Matrix rho = Matrix::Zero(dk, dk);
  for (long mt = 0; mt < dt; ++mt) {
    for (long i = 0; i < dk; ++i) {
      const Complex ai = psi.amps(offset(i, mt));
      if (ai == Complex(0.0, 0.0)) continue;
      for (long j = 0; j < dk; ++j) {
        rho(i, j) += ai * std::conj(psi.amps(offset(j, mt)));
      }
    }
  }

  std::vector<Subsystem> kept_order;
  for (int i = 0; i < 4; ++i) {
    if (kept[i]) kept_order.push_back(static_cast<Subsystem>(i));
  }
  return DensityMatrix{std::move(kept_order), std::move(rho)};
}

double purity(const DensityMatrix& dm) {
  // tr(rho^2) = squared Frobenius norm for Hermitian rho.
  return dm.rho.squaredNorm();
}

ModeState motional_factor(const StateVector& psi, double purity_tol) {
  const long md = psi.space.mode_dim();
  // Marginal weight of each internal configuration.
  Eigen::Vector4d w;
  for (int b = 0; b < 4; ++b) w(b) = psi.amps.segment(b * md, md).squaredNorm();
  int best = 0;
  w.maxCoeff(&best);
  if (w(best) == 0.0) {
    throw GuardError("state-core", "zero-norm",
                     "motional_factor: state has zero norm");
  }

  const DensityMatrix dm =
      partial_trace(normalized(psi), {Subsystem::ModeC, Subsystem::ModeR});
  const double pur = purity(dm);
  if (std::abs(pur - 1.0) > purity_tol) {
    throw GuardError("state-core", "factorization-purity",
                     "motional reduced state is not pure (purity deficit " +
                         std::to_string(std::abs(pur - 1.0)) +
                         "); internal and motional degrees of freedom are "
                         "entangled",
                     purity_tol);
  }
  // For a product state every internal component carries the same motional
  // factor; take the heaviest one.
  Vector m = psi.amps.segment(best * md, md);
  m /= m.norm();
  return ModeState{psi.space.dim_c(), psi.space.dim_r(), std::move(m)};
}

Matrix mode_c_reduced(const ModeState& m) {
  Eigen::Map<const Matrix> psi(m.amps.data(), m.dim_r, m.dim_c);
  // amps is row-major (n_c, n_r); the map above reads column-major, so
  // psi(n_r, n_c). rho_c = psi^T conj(psi) contracted over n_r.
  Matrix rho = psi.transpose() * psi.conjugate();
  return rho;
}

StateVector compose_state(const SpaceDescriptor& space,
                          const Eigen::Vector4cd& internal,
                          const ModeState& motional) {
  if (motional.dim_c != space.dim_c() || motional.dim_r != space.dim_r()) {
    throw DimensionError("state-core", "space-mismatch",
                         "compose_state: motional cutoffs do not match space");
  }
  const long md = space.mode_dim();
  Vector v(space.dim());
  for (int b = 0; b < 4; ++b) v.segment(b * md, md) = internal(b) * motional.amps;
  return StateVector(space, std::move(v));
}

}  // namespace ionsq
