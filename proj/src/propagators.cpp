#include "ionsq/propagators.hpp"

#include <string>

namespace ionsq {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix ion1_op(const Matrix& m) { return kron(m, Matrix::Identity(2, 2)); }
Matrix ion2_op(const Matrix& m) { return kron(Matrix::Identity(2, 2), m); }

}  // namespace

SumKronOp::SumKronOp(SpaceDescriptor space, std::vector<Term> terms)
    : space_(space), terms_(std::move(terms)) {
  const long md = space_.mode_dim();
  for (const Term& t : terms_) {
    if (t.internal.rows() != 4 || t.internal.cols() != 4) {
      throw DimensionError("propagators", "term-shape",
                           "internal factor must be 4x4");
    }
    if (t.modes.size() != 0 && (t.modes.rows() != md || t.modes.cols() != md)) {
      throw DimensionError("propagators", "term-shape",
                           "mode factor must match the joint mode dimension");
    }
  }
}

Vector SumKronOp::apply(const Vector& amps) const {
  const long md = space_.mode_dim();
  if (amps.size() != space_.dim()) {
    throw DimensionError("propagators", "apply-shape",
                         "state length does not match space");
  }
  Eigen::Map<const Matrix> in(amps.data(), md, 4);
  Matrix out = Matrix::Zero(md, 4);
  for (const Term& t : terms_) {
    const Matrix w = t.modes.size() == 0 ? Matrix(in) : Matrix(t.modes * in);
    out.noalias() += w * t.internal.transpose();
  }
  return Eigen::Map<Vector>(out.data(), space_.dim());
}

StateVector SumKronOp::apply(const StateVector& psi) const {
  require_same_space(space_, psi.space, "SumKronOp::apply");
  return StateVector(space_, apply(psi.amps));
}

Operator SumKronOp::to_operator() const {
  const long md = space_.mode_dim();
  Matrix full = Matrix::Zero(space_.dim(), space_.dim());
  for (const Term& t : terms_) {
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        const Complex c = t.internal(p, q);
        if (c == Complex(0.0, 0.0)) continue;
        auto block = full.block(p * md, q * md, md, md);
        if (t.modes.size() == 0) {
          block.diagonal().array() += c;
        } else {
          block += c * t.modes;
        }
      }
    }
  }
  return Operator(space_, std::move(full));
}

double SumKronOp::unitarity_defect() const {
  const long md = space_.mode_dim();
  const size_t n = terms_.size();
  // U†U = Σ_jk (A_j† A_k) ⊗ (M_j† M_k); scan its 4x4 grid of mode blocks.
  std::vector<std::vector<Matrix>> mode_prod(n);
  for (size_t j = 0; j < n; ++j) {
    mode_prod[j].resize(n);
    for (size_t k = 0; k < n; ++k) {
      const Matrix& mj = terms_[j].modes;
      const Matrix& mk = terms_[k].modes;
      if (mj.size() == 0 && mk.size() == 0) continue;  // identity, handled below
      if (mj.size() == 0) {
        mode_prod[j][k] = mk;
      } else if (mk.size() == 0) {
        mode_prod[j][k] = mj.adjoint();
      } else {
        mode_prod[j][k] = mj.adjoint() * mk;
      }
    }
  }
  double defect = 0.0;
  Matrix block(md, md);
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      block.setZero();
      for (size_t j = 0; j < n; ++j) {
        for (size_t k = 0; k < n; ++k) {
          const Complex c =
              terms_[j].internal.col(p).dot(terms_[k].internal.col(q));
          if (c == Complex(0.0, 0.0)) continue;
          if (mode_prod[j][k].size() == 0) {
            block.diagonal().array() += c;
          } else {
            block += c * mode_prod[j][k];
          }
        }
      }
      if (p == q) block.diagonal().array() -= 1.0;
      defect = std::max(defect, block.cwiseAbs().maxCoeff());
    }
  }
  return defect;
}

Operator squeeze_hamiltonian(const SpaceDescriptor& space, double rabi,
                             double eta_c, double eta_r) {
  const Matrix ab =
      kron(annihilation(space.dim_c()), annihilation(space.dim_r()));
  const Matrix mode_part = rabi * eta_c * eta_r * (ab + Matrix(ab.adjoint()));
  const Matrix sx = pauli(PauliAxis::X);
  const Matrix internal = ion1_op(sx) - ion2_op(sx);
  Matrix full = kron(internal, mode_part);
  return Operator(space, std::move(full));
}

SumKronOp squeeze_drive(const SpaceDescriptor& space, Complex g,
                        double tail_budget) {
  const int dc = space.dim_c(), dr = space.dim_r();
  // Guard on the extreme state the drive can reach from vacuum, S(2g)|00>.
  {
    const Matrix s2 = mode_squeeze_matrix(dc, dr, 2.0 * g);
    check_mode_tail(ModeState{dc, dr, s2.col(0)}, tail_budget, "squeeze_drive");
  }
  const Matrix s = mode_squeeze_matrix(dc, dr, g);
  const Matrix sdag = s.adjoint();
  const Matrix plus = sdag + s;
  const Matrix minus = sdag - s;

  const Matrix sx = pauli(PauliAxis::X);
  const Matrix x1 = ion1_op(sx), x2 = ion2_op(sx);
  const Matrix id4 = Matrix::Identity(4, 4);

  std::vector<SumKronOp::Term> terms;
  terms.push_back({0.25 * id4, plus * plus});
  terms.push_back({-0.25 * (x1 * x2), minus * minus});
  terms.push_back({0.25 * (x1 - x2), plus * minus});
  return SumKronOp(space, std::move(terms));
}

namespace {

// Shared assembly of the two displacement drives. `on_c` picks the displaced
// mode; the internal axis is σ_y for both.
SumKronOp displacement_drive(const SpaceDescriptor& space, Complex beta,
                             bool on_c, double tail_budget, bool per_ion_form,
                             const char* who) {
  const int dim = on_c ? space.dim_c() : space.dim_r();
  {
    // Extreme reachable coherent state D(2 beta)|0>.
    const Matrix d2 = mode_displace_matrix(dim, 2.0 * beta);
    Vector joint = Vector::Zero(space.mode_dim());
    for (int n = 0; n < dim; ++n) {
      joint(on_c ? space.mode_index_of(n, 0) : space.mode_index_of(0, n)) =
          d2(n, 0);
    }
    check_mode_tail(ModeState{space.dim_c(), space.dim_r(), std::move(joint)},
                    tail_budget, who);
  }

  const Matrix d = mode_displace_matrix(dim, beta);
  const Matrix local_plus = Matrix(d.adjoint()) + d;
  const Matrix local_minus = Matrix(d.adjoint()) - d;
  auto to_joint = [&](const Matrix& m) {
    return on_c ? kron(m, Matrix::Identity(space.dim_r(), space.dim_r()))
                : kron(Matrix::Identity(space.dim_c(), space.dim_c()), m);
  };
  const Matrix plus = to_joint(local_plus);
  const Matrix minus = to_joint(local_minus);

  const Matrix sy = pauli(PauliAxis::Y);
  const Matrix y1 = ion1_op(sy), y2 = ion2_op(sy);
  const Matrix id4 = Matrix::Identity(4, 4);

  std::vector<SumKronOp::Term> terms;
  if (per_ion_form) {
    // ∏_i (1/2)[(D†+D) − σ_yi (D†−D)], expanded; P and M commute.
    terms.push_back({0.25 * id4, plus * plus});
    terms.push_back({-0.25 * y2, plus * minus});
    terms.push_back({-0.25 * y1, minus * plus});
    terms.push_back({0.25 * (y1 * y2), minus * minus});
  } else {
    // (1/4){P² − σ_y1σ_y2 M² + (σ_y1−σ_y2) P M}
    terms.push_back({0.25 * id4, plus * plus});
    terms.push_back({-0.25 * (y1 * y2), minus * minus});
    terms.push_back({0.25 * (y1 - y2), plus * minus});
  }
  return SumKronOp(space, std::move(terms));
}

}  // namespace

SumKronOp com_displace_drive(const SpaceDescriptor& space, Complex beta_c,
                             double tail_budget) {
  return displacement_drive(space, beta_c, /*on_c=*/true, tail_budget,
                            /*per_ion_form=*/true, "com_displace_drive");
}

SumKronOp breathing_displace_drive(const SpaceDescriptor& space,
                                   Complex beta_r, double tail_budget) {
  return displacement_drive(space, beta_r, /*on_c=*/false, tail_budget,
                            /*per_ion_form=*/false, "breathing_displace_drive");
}

SumKronOp carrier_rotation(const SpaceDescriptor& space) {
  const Complex i(0.0, 1.0);
  const Matrix id2 = Matrix::Identity(2, 2);
  const Matrix f1 = 0.5 * (id2 - i * pauli(PauliAxis::X) +
                           i * pauli(PauliAxis::Y) + i * pauli(PauliAxis::Z));
  const Matrix f2 = 0.5 * (id2 - i * pauli(PauliAxis::X) -
                           i * pauli(PauliAxis::Y) - i * pauli(PauliAxis::Z));
  std::vector<SumKronOp::Term> terms;
  terms.push_back({kron(f1, f2), Matrix()});
  return SumKronOp(space, std::move(terms));
}

SumKronOp ion1_flip(const SpaceDescriptor& space) {
  std::vector<SumKronOp::Term> terms;
  terms.push_back({-ion1_op(pauli(PauliAxis::Z)), Matrix()});
  return SumKronOp(space, std::move(terms));
}

}  // namespace ionsq
