#include "ionsq/operators.hpp"

#include "ionsq/analysis.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace ionsq {

Matrix annihilation(int dim) {
  if (dim < 2) {
    throw DimensionError("operators", "ladder-dimension",
                         "annihilation operator needs dim >= 2, got " +
                             std::to_string(dim));
  }
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix creation(int dim) { return annihilation(dim).adjoint(); }

Matrix number_operator(int dim) {
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = double(k);
  return n;
}

Matrix pauli(PauliAxis axis) {
  const Complex i(0.0, 1.0);
  Matrix m = Matrix::Zero(2, 2);
  switch (axis) {
    case PauliAxis::X:
      m << 0, 1, 1, 0;
      break;
    case PauliAxis::Y:
      m << 0, -i, i, 0;
      break;
    case PauliAxis::Z:
      // |e> is component 0: sigma_z |e> = +|e>.
      m << 1, 0, 0, -1;
      break;
    case PauliAxis::Plus:
      m << 0, 1, 0, 0;  // sigma_+ |g> = |e>
      break;
    case PauliAxis::Minus:
      m << 0, 0, 1, 0;
      break;
  }
  return m;
}

double unitarity_defect(const Matrix& u) {
  Matrix utu = u.adjoint() * u;
  utu.diagonal().array() -= 1.0;
  return utu.cwiseAbs().maxCoeff();
}

namespace {

struct HermitianEig {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

// Eigendecomposition of a Hermitian matrix, through the real-symmetric
// solver when the imaginary part vanishes identically.
HermitianEig hermitian_eig(const Matrix& h) {
  const double im_max = h.imag().cwiseAbs().maxCoeff();
  if (im_max == 0.0) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.real());
    if (es.info() != Eigen::Success) {
      throw GuardError("operators", "eigensolver",
                       "real symmetric eigendecomposition failed");
    }
    return HermitianEig{es.eigenvalues(),
                        es.eigenvectors().cast<Complex>()};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) {
    throw GuardError("operators", "eigensolver",
                     "Hermitian eigendecomposition failed");
  }
  return HermitianEig{es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

Matrix expm_antihermitian(const Matrix& generator, double tol) {
  if (generator.rows() != generator.cols()) {
    throw DimensionError("operators", "expm-shape",
                         "expm_antihermitian: matrix must be square");
  }
  const double defect = (generator + generator.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-12) {
    throw GuardError("operators", "anti-hermitian",
                     "expm_antihermitian: generator is not anti-Hermitian "
                     "(defect " + std::to_string(defect) + ")",
                     1e-12);
  }
  (void)tol;  // eigendecomposition is accurate to rounding, well inside tol
  const Complex i(0.0, 1.0);
  const HermitianEig eig = hermitian_eig(i * generator);
  // exp(A) = exp(-i H) = V exp(-i Λ) V†
  Vector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k)));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

Operator expm_antihermitian(const Operator& generator, double tol) {
  return Operator(generator.space, expm_antihermitian(generator.mat, tol));
}

Matrix SqueezeBasis::squeeze(double magnitude) const {
  Vector phases(eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -magnitude * eigenvalues(k)));
  }
  return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
}

Vector SqueezeBasis::squeeze_vacuum(double magnitude) const {
  Vector w = eigenvectors.row(0).adjoint();  // V† e_0
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    w(k) *= std::exp(Complex(0.0, -magnitude * eigenvalues(k)));
  }
  return eigenvectors * w;
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

}  // namespace

const SqueezeBasis& squeeze_basis(int dim_c, int dim_r, Complex phase) {
  using Key = std::tuple<int, int, double, double>;
  static std::mutex mu;
  static std::map<Key, SqueezeBasis> cache;

  const Key key{dim_c, dim_r, phase.real(), phase.imag()};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // Hermitian direction K = i (phase* ab − phase a†b†); S(c·phase) = e^{-icK}.
  const Complex i(0.0, 1.0);
  const Matrix ab = kron(annihilation(dim_c), annihilation(dim_r));
  const Matrix gen = std::conj(phase) * ab - phase * ab.adjoint();
  HermitianEig eig = hermitian_eig(i * gen);
  SqueezeBasis basis{std::move(eig.eigenvalues), std::move(eig.eigenvectors)};
  return cache.emplace(key, std::move(basis)).first->second;
}

Matrix mode_squeeze_matrix(int dim_c, int dim_r, Complex g) {
  const double r = std::abs(g);
  if (r == 0.0) return Matrix::Identity(dim_c * dim_r, dim_c * dim_r);
  return squeeze_basis(dim_c, dim_r, g / r).squeeze(r);
}

Matrix mode_displace_matrix(int dim, Complex beta) {
  if (beta == Complex(0.0, 0.0)) return Matrix::Identity(dim, dim);
  const Matrix a = annihilation(dim);
  const Matrix gen = beta * a.adjoint() - std::conj(beta) * a;
  return expm_antihermitian(gen);
}

void check_mode_tail(const ModeState& m, double tail_budget, const char* who) {
  const double tail = tail_mass(m, kDefaultTailMargin);
  if (tail > tail_budget) {
    throw GuardError("operators", "tail-mass",
                     std::string(who) + ": truncation guard fired; top " +
                         std::to_string(int(kDefaultTailMargin * 100)) +
                         "% of Fock levels carry " + std::to_string(tail) +
                         " of the population (budget " +
                         std::to_string(tail_budget) + "); raise the cutoffs "
                         "or lower the squeezing/displacement",
                     tail_budget);
  }
}

Operator two_mode_squeeze(const SpaceDescriptor& space, Complex g,
                          double tail_budget) {
  const Matrix s = mode_squeeze_matrix(space.dim_c(), space.dim_r(), g);
  check_mode_tail(ModeState{space.dim_c(), space.dim_r(), s.col(0)},
                  tail_budget, "two_mode_squeeze");
  const long md = space.mode_dim();
  Matrix full = Matrix::Zero(space.dim(), space.dim());
  for (int b = 0; b < 4; ++b) full.block(b * md, b * md, md, md) = s;
  return Operator(space, std::move(full));
}

Operator displace(const SpaceDescriptor& space, Subsystem mode, Complex beta,
                  double tail_budget) {
  if (mode != Subsystem::ModeC && mode != Subsystem::ModeR) {
    throw DimensionError("operators", "displace-mode",
                         "displace acts on ModeC or ModeR");
  }
  const int dim = space.subsystem_dim(mode);
  const Matrix d = mode_displace_matrix(dim, beta);

  // Tail of D(beta)|0> on the displaced mode, vacuum elsewhere.
  Vector joint = Vector::Zero(space.mode_dim());
  if (mode == Subsystem::ModeC) {
    for (int n = 0; n < dim; ++n) joint(space.mode_index_of(n, 0)) = d(n, 0);
  } else {
    for (int n = 0; n < dim; ++n) joint(space.mode_index_of(0, n)) = d(n, 0);
  }
  check_mode_tail(ModeState{space.dim_c(), space.dim_r(), std::move(joint)},
                  tail_budget, "displace");

  return tensor_embed(space, d, mode);
}

std::vector<Complex> tmsv_pair_amplitudes(Complex g_applied, int cutoff) {
  if (cutoff < 1) {
    throw DimensionError("operators", "cutoff",
                         "tmsv_pair_amplitudes needs cutoff >= 1");
  }
  const double r = std::abs(g_applied);
  std::vector<Complex> c(cutoff + 1, Complex(0.0, 0.0));
  if (r == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const Complex phase = g_applied / r;
  const double th = std::tanh(r);
  const Complex ratio = -phase * th;
  Complex term = 1.0 / std::cosh(r);
  for (int n = 0; n <= cutoff; ++n) {
    c[n] = term;
    term *= ratio;
  }
  return c;
}

ModeState tmsv_mode_state(Complex g_applied, int dim_c, int dim_r) {
  const int pairs = std::min(dim_c, dim_r) - 1;
  const auto coeffs = tmsv_pair_amplitudes(g_applied, std::max(1, pairs));
  Vector amps = Vector::Zero(static_cast<long>(dim_c) * dim_r);
  for (int n = 0; n <= pairs; ++n) {
    amps(static_cast<long>(n) * dim_r + n) = coeffs[n];
  }
  return ModeState{dim_c, dim_r, std::move(amps)};
}

}  // namespace ionsq
