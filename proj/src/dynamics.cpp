#include "ionsq/dynamics.hpp"

#include "ionsq/analysis.hpp"
#include "ionsq/operators.hpp"
#include "ionsq/propagators.hpp"
#include "ionsq/protocols.hpp"

#include <map>
#include <string>

namespace ionsq {

PhysicalParams PhysicalParams::defaults() {
  PhysicalParams p{};
  p.mu = 2.0 * kPi * 1.0e6;
  p.nu = std::sqrt(3.0) * p.mu;
  p.omega0 = 0.0;
  p.rabi = 2.0 * kPi * 20.0e3;
  p.eta_c = 0.1;
  p.eta_r = 0.1;
  return p;
}

void PhysicalParams::derive_etas() {
  if (wavevector > 0.0 && mass > 0.0) {
    eta_c = wavevector * std::sqrt(1.0 / (4.0 * mass * mu));
    eta_r = wavevector * std::sqrt(1.0 / (4.0 * mass * nu));
  }
}

void PhysicalParams::validate() const {
  if (!(mu > 0.0) || !(nu > 0.0)) {
    throw GuardError("dynamics", "frequencies",
                     "mode frequencies must be positive");
  }
  if (mu == nu) {
    throw GuardError("dynamics", "frequencies",
                     "degenerate mode frequencies (mu == nu) put the "
                     "difference sideband on resonance");
  }
  if (!(rabi >= 0.0)) {
    throw GuardError("dynamics", "rabi", "Rabi frequency must be >= 0");
  }
  if (!(eta_c > 0.0) || !(eta_r > 0.0) || eta_c > 0.3 || eta_r > 0.3) {
    throw GuardError("dynamics", "lamb-dicke",
                     "Lamb-Dicke guard: eta and eta_r must lie in (0, 0.3], "
                     "got eta=" + std::to_string(eta_c) +
                         ", eta_r=" + std::to_string(eta_r),
                     0.3);
  }
}

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

// Dense cos expansion of q = eta (a+a†) ⊗ I + s·eta_r I ⊗ (b+b†) on the
// joint mode space.
Matrix cos_expansion(int dim_c, int dim_r, double eta_c, double eta_r,
                     double sign_r, ExpansionOrder order) {
  const Matrix xc = annihilation(dim_c) + creation(dim_c);
  const Matrix xr = annihilation(dim_r) + creation(dim_r);
  const Matrix q = eta_c * kron(xc, Matrix::Identity(dim_r, dim_r)) +
                   sign_r * eta_r * kron(Matrix::Identity(dim_c, dim_c), xr);
  const long md = q.rows();
  switch (order) {
    case ExpansionOrder::Second: {
      const Matrix q2 = q * q;
      return Matrix::Identity(md, md) - 0.5 * q2;
    }
    case ExpansionOrder::Fourth: {
      const Matrix q2 = q * q;
      return Matrix::Identity(md, md) - 0.5 * q2 + (q2 * q2) / 24.0;
    }
    case ExpansionOrder::ExactCosine: {
      // q is real symmetric; take the cosine on its spectrum.
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(q.real());
      if (es.info() != Eigen::Success) {
        throw GuardError("dynamics", "eigensolver",
                         "cosine eigendecomposition failed");
      }
      const RealMatrix c = es.eigenvectors() *
                           es.eigenvalues().array().cos().matrix().asDiagonal() *
                           es.eigenvectors().transpose();
      return c.cast<Complex>();
    }
  }
  throw DimensionError("dynamics", "order", "unknown expansion order");
}

}  // namespace

InteractionHamiltonian::InteractionHamiltonian(const SpaceDescriptor& space,
                                               const PhysicalParams& params,
                                               ExpansionOrder order)
    : space_(space), params_(params), order_(order) {
  params_.validate();
  const int dc = space.dim_c(), dr = space.dim_r();
  // Ion 1 sits at −d/2: k x̂_1 = eta (a+a†) − eta_r (b+b†); ion 2 at +d/2
  // carries the opposite breathing-mode sign.
  cos1_ = cos_expansion(dc, dr, params_.eta_c, params_.eta_r, -1.0, order)
              .sparseView();
  cos2_ = cos_expansion(dc, dr, params_.eta_c, params_.eta_r, +1.0, order)
              .sparseView();
  mode_energy_.resize(space.mode_dim());
  for (int nc = 0; nc < dc; ++nc) {
    for (int nr = 0; nr < dr; ++nr) {
      mode_energy_(space.mode_index_of(nc, nr)) =
          params_.mu * nc + params_.nu * nr;
    }
  }
}

void InteractionHamiltonian::apply(double t, const Vector& in,
                                   Vector& out) const {
  const long md = space_.mode_dim();
  if (in.size() != space_.dim()) {
    throw DimensionError("dynamics", "apply-shape",
                         "state length does not match space");
  }
  out.resize(space_.dim());

  // Interaction-picture mode phases e^{-i E_m t}.
  Vector phase(md);
  for (long m = 0; m < md; ++m) {
    phase(m) = std::exp(Complex(0.0, -mode_energy_(m) * t));
  }

  Eigen::Map<const Matrix> in_blocks(in.data(), md, 4);
  Matrix w(md, 4);
  for (int b = 0; b < 4; ++b) w.col(b) = phase.cwiseProduct(in_blocks.col(b));

  const Matrix u1 = cos1_ * w;
  const Matrix u2 = cos2_ * w;

  // H(t) = 2 Ω cos((mu+nu) t) [σ_x1 ⊗ M_1(t) + σ_x2 ⊗ M_2(t)] with
  // M_i(t) = U0†(t) C_i U0(t); σ_x1 swaps the ion-1 bit of the block index,
  // σ_x2 the ion-2 bit.
  const double scale =
      2.0 * params_.rabi * std::cos((params_.mu + params_.nu) * t);
  Eigen::Map<Matrix> out_blocks(out.data(), md, 4);
  for (int b = 0; b < 4; ++b) {
    out_blocks.col(b) =
        scale * phase.conjugate().cwiseProduct(u1.col(b ^ 2) + u2.col(b ^ 1));
  }
}

Matrix InteractionHamiltonian::dense(double t) const {
  const long md = space_.mode_dim();
  Vector phase(md);
  for (long m = 0; m < md; ++m) {
    phase(m) = std::exp(Complex(0.0, -mode_energy_(m) * t));
  }
  const Matrix m1 = phase.conjugate().asDiagonal() * Matrix(cos1_) *
                    Matrix(phase.asDiagonal());
  const Matrix m2 = phase.conjugate().asDiagonal() * Matrix(cos2_) *
                    Matrix(phase.asDiagonal());
  const Matrix sx = pauli(PauliAxis::X);
  const Matrix id2 = Matrix::Identity(2, 2);
  const double scale =
      2.0 * params_.rabi * std::cos((params_.mu + params_.nu) * t);
  return scale * (kron(kron(sx, id2), m1) + kron(kron(id2, sx), m2));
}

std::vector<FrequencyTerm> InteractionHamiltonian::frequency_terms() const {
  const long md = space_.mode_dim();
  const Matrix sx = pauli(PauliAxis::X);
  const Matrix id2 = Matrix::Identity(2, 2);
  const Matrix x1 = kron(sx, id2), x2 = kron(id2, sx);

  // 2 Ω cos((mu+nu)t) = Ω e^{+i(mu+nu)t} + Ω e^{-i(mu+nu)t}; each matrix
  // element of M_i(t) adds e^{i(E_m − E_n)t}. Group by the integer frequency
  // coefficients (k_mu, k_nu).
  std::map<std::pair<int, int>, Matrix> groups;
  auto add = [&](int k_mu, int k_nu, const Matrix& internal, long m, long n,
                 Complex value) {
    auto key = std::make_pair(k_mu, k_nu);
    auto it = groups.find(key);
    if (it == groups.end()) {
      it = groups.emplace(key, Matrix::Zero(space_.dim(), space_.dim())).first;
    }
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        if (internal(p, q) == Complex(0.0, 0.0)) continue;
        it->second(p * md + m, q * md + n) +=
            params_.rabi * internal(p, q) * value;
      }
    }
  };

  for (int ion = 0; ion < 2; ++ion) {
    const auto& c = ion == 0 ? cos1_ : cos2_;
    const Matrix& internal = ion == 0 ? x1 : x2;
    for (int outer = 0; outer < c.outerSize(); ++outer) {
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(c, outer); it;
           ++it) {
        const long m = it.row(), n = it.col();
        const int dkc =
            int(m / space_.dim_r()) - int(n / space_.dim_r());
        const int dkr =
            int(m % space_.dim_r()) - int(n % space_.dim_r());
        // e^{i(E_m−E_n)t} with E = mu n_c + nu n_r gives (−dkc, −dkr)...
        // U0† C U0 element (m,n) carries e^{+i(E_m−E_n)t}.
        for (int s : {+1, -1}) {
          add(dkc + s, dkr + s, internal, m, n, it.value());
        }
      }
    }
  }

  std::vector<FrequencyTerm> out;
  out.reserve(groups.size());
  for (auto& [key, mat] : groups) {
    out.push_back(FrequencyTerm{key.first, key.second,
                                key.first * params_.mu + key.second * params_.nu,
                                std::move(mat)});
  }
  return out;
}

namespace {

class Rk4Stepper {
 public:
  explicit Rk4Stepper(const TimeDependentGenerator& h) : h_(h) {}

  // One classical RK4 step of dy/dt = −i H(t) y.
  Vector step(double t, const Vector& y, double dt) const {
    const Complex mi(0.0, -1.0);
    Vector hy(y.size());
    h_.apply_hamiltonian(t, y, hy);
    const Vector k1 = mi * hy;
    h_.apply_hamiltonian(t + 0.5 * dt, y + 0.5 * dt * k1, hy);
    const Vector k2 = mi * hy;
    h_.apply_hamiltonian(t + 0.5 * dt, y + 0.5 * dt * k2, hy);
    const Vector k3 = mi * hy;
    h_.apply_hamiltonian(t + dt, y + dt * k3, hy);
    const Vector k4 = mi * hy;
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

 private:
  const TimeDependentGenerator& h_;
};

}  // namespace

EvolveResult evolve_td(const TimeDependentGenerator& h, const StateVector& psi0,
                       double t0, double t1, double tol, double fixed_step) {
  if (h.dim() != psi0.space.dim()) {
    throw DimensionError("dynamics", "apply-shape",
                         "generator dimension does not match the state");
  }
  if (std::abs(norm(psi0) - 1.0) > 1e-10) {
    throw GuardError("dynamics", "input-norm",
                     "evolve_td requires a normalized initial state", 1e-10);
  }
  const double span = t1 - t0;
  EvolveResult res{psi0};
  if (span == 0.0) return res;
  if (span < 0.0) {
    throw DimensionError("dynamics", "time-order", "evolve_td needs t1 >= t0");
  }

  const Rk4Stepper stepper(h);
  const double norm_guard = std::max(1e-8, 10.0 * tol);
  const double h_min = 1e-14 * span;

  Vector y = psi0.amps;
  double t = t0;
  double dt = fixed_step > 0.0 ? fixed_step : span / 100.0;
  res.min_step = dt;

  while (t < t1) {
    dt = std::min(dt, t1 - t);
    if (fixed_step > 0.0) {
      y = stepper.step(t, y, dt);
      t += dt;
      ++res.accepted_steps;
    } else {
      const Vector y_big = stepper.step(t, y, dt);
      Vector y_half = stepper.step(t, y, 0.5 * dt);
      y_half = stepper.step(t + 0.5 * dt, y_half, 0.5 * dt);
      const double err = (y_half - y_big).norm();  // ≈ 15× the fine error
      const double allowed = 15.0 * tol * dt / span;
      if (err <= allowed || dt <= h_min) {
        if (dt <= h_min && err > allowed) {
          throw GuardError("dynamics", "step-underflow",
                           "evolve_td: step size underflow at t = " +
                               std::to_string(t) +
                               " (stiffness or too tight a tolerance)");
        }
        // Local extrapolation: cancels the leading error term.
        y = y_half + (y_half - y_big) / 15.0;
        t += dt;
        ++res.accepted_steps;
        res.min_step = std::min(res.min_step, dt);
      } else {
        ++res.rejected_steps;
      }
      const double ratio = err > 0.0 ? allowed / err : 4.0;
      dt *= std::clamp(0.9 * std::pow(ratio, 0.2), 0.1, 4.0);
      dt = std::max(dt, h_min);
    }

    const double drift = std::abs(y.norm() - 1.0);
    res.norm_drift = std::max(res.norm_drift, drift);
    if (drift > norm_guard) {
      throw GuardError("dynamics", "norm-drift",
                       "evolve_td: norm drift " + std::to_string(drift) +
                           " exceeded the guard at t = " + std::to_string(t),
                       norm_guard);
    }
  }

  res.state = StateVector(psi0.space, std::move(y));
  return res;
}

RwaComparison rwa_infidelity(const SpaceDescriptor& space,
                             const PhysicalParams& params, double t_final,
                             ExpansionOrder order, double integrator_tol,
                             double tail_budget) {
  const StateVector psi0 = squeeze_protocol_initial(space);
  const InteractionGenerator gen(InteractionHamiltonian(space, params, order));
  EvolveResult full = evolve_td(gen, psi0, 0.0, t_final, integrator_tol);

  const Complex g =
      Complex(0.0, -1.0) * params.rabi * params.eta_c * params.eta_r * t_final;
  const StateVector eff = squeeze_drive(space, g, tail_budget).apply(psi0);

  const double f = fidelity(full.state, eff);
  return RwaComparison{1.0 - f, g, std::move(full)};
}

}  // namespace ionsq
