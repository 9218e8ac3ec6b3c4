#include "ionsq/analysis.hpp"

#include <cmath>
#include <string>

namespace ionsq {

double fidelity(const StateVector& a, const StateVector& b) {
  require_same_space(a.space, b.space, "fidelity");
  const double na = a.amps.squaredNorm();
  const double nb = b.amps.squaredNorm();
  if (na == 0.0 || nb == 0.0) {
    throw GuardError("analysis", "zero-norm", "fidelity of a zero state");
  }
  return std::norm(a.amps.dot(b.amps)) / (na * nb);
}

double fidelity(const ModeState& a, const ModeState& b) {
  if (a.dim_c != b.dim_c || a.dim_r != b.dim_r) {
    throw DimensionError("analysis", "space-mismatch",
                         "fidelity: motional states have different cutoffs");
  }
  const double na = a.amps.squaredNorm();
  const double nb = b.amps.squaredNorm();
  if (na == 0.0 || nb == 0.0) {
    throw GuardError("analysis", "zero-norm", "fidelity of a zero state");
  }
  return std::norm(a.amps.dot(b.amps)) / (na * nb);
}

namespace {

enum class Mode { C, R };

// psi index is n_c * dim_r + n_r.
Vector apply_annihilation(const ModeState& m, Mode which) {
  Vector out = Vector::Zero(m.amps.size());
  if (which == Mode::C) {
    for (int nc = 0; nc + 1 < m.dim_c; ++nc) {
      const double f = std::sqrt(double(nc + 1));
      for (int nr = 0; nr < m.dim_r; ++nr) {
        out(long(nc) * m.dim_r + nr) = f * m.amps(long(nc + 1) * m.dim_r + nr);
      }
    }
  } else {
    for (int nc = 0; nc < m.dim_c; ++nc) {
      for (int nr = 0; nr + 1 < m.dim_r; ++nr) {
        out(long(nc) * m.dim_r + nr) =
            std::sqrt(double(nr + 1)) * m.amps(long(nc) * m.dim_r + nr + 1);
      }
    }
  }
  return out;
}

Vector apply_creation(const ModeState& m, Mode which) {
  Vector out = Vector::Zero(m.amps.size());
  if (which == Mode::C) {
    for (int nc = 1; nc < m.dim_c; ++nc) {
      const double f = std::sqrt(double(nc));
      for (int nr = 0; nr < m.dim_r; ++nr) {
        out(long(nc) * m.dim_r + nr) = f * m.amps(long(nc - 1) * m.dim_r + nr);
      }
    }
  } else {
    for (int nc = 0; nc < m.dim_c; ++nc) {
      for (int nr = 1; nr < m.dim_r; ++nr) {
        out(long(nc) * m.dim_r + nr) =
            std::sqrt(double(nr)) * m.amps(long(nc) * m.dim_r + nr - 1);
      }
    }
  }
  return out;
}

}  // namespace

CovarianceData covariance(const ModeState& m, double tail_budget) {
  const double tail = tail_mass(m);
  if (tail > tail_budget) {
    throw GuardError("analysis", "tail-mass",
                     "covariance: moments unreliable, tail mass " +
                         std::to_string(tail) + " exceeds budget",
                     tail_budget);
  }
  const ModeState psi = normalized(m);
  const Complex i(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // Quadrature-applied vectors; X = (a+a†)/√2, P = −i(a−a†)/√2.
  std::array<Vector, 4> q;
  {
    const Vector ac = apply_annihilation(psi, Mode::C);
    const Vector cc = apply_creation(psi, Mode::C);
    const Vector ar = apply_annihilation(psi, Mode::R);
    const Vector cr = apply_creation(psi, Mode::R);
    q[0] = (ac + cc) * inv_sqrt2;
    q[1] = -i * (ac - cc) * inv_sqrt2;
    q[2] = (ar + cr) * inv_sqrt2;
    q[3] = -i * (ar - cr) * inv_sqrt2;
  }

  CovarianceData out;
  for (int a = 0; a < 4; ++a) out.mean(a) = psi.amps.dot(q[a]).real();
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      // Symmetrized second moment <(Q_a Q_b + Q_b Q_a)/2> = Re <Q_a ψ|Q_b ψ>.
      const double s = q[a].dot(q[b]).real() - out.mean(a) * out.mean(b);
      out.cov(a, b) = s;
      out.cov(b, a) = s;
    }
  }
  return out;
}

std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& cov) {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1;
  omega(1, 0) = -1;
  omega(2, 3) = 1;
  omega(3, 2) = -1;
  Eigen::EigenSolver<Eigen::Matrix4d> es(omega * cov);
  Eigen::Vector4d mags = es.eigenvalues().cwiseAbs();
  std::sort(mags.data(), mags.data() + 4);
  // Eigenvalues of Ω·cov come in ±iν pairs.
  return {mags(0), mags(2)};
}

EprVariances epr_variance(const CovarianceData& c, double phi) {
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // Co-rotated quadratures of both modes; the minus combination carries the
  // two-mode squeezing for every squeeze phase.
  Eigen::Vector4d wm, wp;
  wm << cp, sp, -cp, -sp;
  wp << cp, sp, cp, sp;
  wm *= inv_sqrt2;
  wp *= inv_sqrt2;
  return EprVariances{wm.dot(c.cov * wm), wp.dot(c.cov * wp)};
}

EprVariances epr_variance(const ModeState& m, double phi, double tail_budget) {
  return epr_variance(covariance(m, tail_budget), phi);
}

EprMinimum epr_min_variance(const ModeState& m, double tail_budget) {
  const CovarianceData c = covariance(m, tail_budget);
  auto f = [&](double phi) { return epr_variance(c, phi).minus_var; };

  // Golden-section over [0, π); the variance is smooth and π-periodic.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = kPi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-6) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  const double phi = (a + b) / 2.0;
  const EprVariances v = epr_variance(c, phi);
  return EprMinimum{phi, v.minus_var, v.plus_var};
}

double squeezing_db(double variance) {
  if (!(variance > 0.0)) {
    throw DimensionError("analysis", "variance-positive",
                         "squeezing_db needs a positive variance");
  }
  return -10.0 * std::log10(variance / 0.5);
}

double mode_entanglement_entropy(const ModeState& m) {
  const Matrix rho = mode_c_reduced(normalized(m));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  if (es.info() != Eigen::Success) {
    throw GuardError("analysis", "eigensolver",
                     "entropy eigendecomposition failed");
  }
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam > 1e-15) s -= lam * std::log2(lam);
  }
  return s;
}

namespace {

int tail_threshold(int dim, double margin) {
  return static_cast<int>(std::ceil((1.0 - margin) * dim));
}

}  // namespace

double tail_mass(const ModeState& m, double margin) {
  if (!(margin > 0.0 && margin < 1.0)) {
    throw DimensionError("analysis", "margin-range",
                         "tail_mass margin must lie in (0,1)");
  }
  const int tc = tail_threshold(m.dim_c, margin);
  const int tr = tail_threshold(m.dim_r, margin);
  double tail = 0.0;
  for (int nc = 0; nc < m.dim_c; ++nc) {
    for (int nr = 0; nr < m.dim_r; ++nr) {
      if (nc >= tc || nr >= tr) {
        tail += std::norm(m.amps(long(nc) * m.dim_r + nr));
      }
    }
  }
  const double total = m.amps.squaredNorm();
  return total > 0.0 ? tail / total : 0.0;
}

double tail_mass(const StateVector& psi, double margin) {
  if (!(margin > 0.0 && margin < 1.0)) {
    throw DimensionError("analysis", "margin-range",
                         "tail_mass margin must lie in (0,1)");
  }
  const int tc = tail_threshold(psi.space.dim_c(), margin);
  const int tr = tail_threshold(psi.space.dim_r(), margin);
  const long md = psi.space.mode_dim();
  double tail = 0.0;
  for (int b = 0; b < 4; ++b) {
    for (int nc = 0; nc < psi.space.dim_c(); ++nc) {
      for (int nr = 0; nr < psi.space.dim_r(); ++nr) {
        if (nc >= tc || nr >= tr) {
          tail += std::norm(psi.amps(b * md + psi.space.mode_index_of(nc, nr)));
        }
      }
    }
  }
  const double total = psi.amps.squaredNorm();
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace ionsq
