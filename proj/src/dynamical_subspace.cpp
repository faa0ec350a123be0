#include <cmath>

#include <Eigen/Eigenvalues>

#include "qpagerank/error.hpp"
#include "qpagerank/quantum_walk.hpp"

namespace qpr {
namespace {

constexpr double kOrthonormalityTolerance = 1e-10;
constexpr double kUnitarityTolerance = 1e-9;

// A_jk = <psi_j | S psi_k> = sqrt(G_kj) sqrt(G_jk).
Eigen::MatrixXd swap_overlaps(const SzegedyOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.nodes());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto psi_j = op.psi(static_cast<NodeId>(j));
    for (Eigen::Index k = 0; k < n; ++k) a(j, k) = psi_j[k] * op.psi(static_cast<NodeId>(k))[j];
  }
  return a;
}

// Chebyshev polynomial of the second kind U_j(cos theta), j >= -2.
double chebyshev_u(long j, double mu, double theta, double sin_theta) {
  if (j == -1) return 0.0;
  if (sin_theta < 1e-15) {
    const double sign = (mu < 0.0 && (j % 2 != 0)) ? -1.0 : 1.0;
    return sign * static_cast<double>(j + 1);
  }
  return std::sin(static_cast<double>(j + 1) * theta) / sin_theta;
}

}  // namespace

DynamicalSubspace::DynamicalSubspace(const SzegedyOperator& op, double rank_tolerance) : op_(op) {
  const auto n = static_cast<Eigen::Index>(op_.nodes());
  const Eigen::MatrixXd a = swap_overlaps(op_);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "eigendecomposition of A failed");
  mu_ = es.eigenvalues().cwiseMax(-1.0).cwiseMin(1.0);
  v_ = es.eigenvectors();
  const double v_error = (v_.transpose() * v_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (v_error > kOrthonormalityTolerance) {
    throw Error(ErrorKind::Numerical, "eigenvectors of A are not orthonormal");
  }

  // Plane i keeps e+ = (v, v)/sqrt(2(1+mu)) and e- = (v, -v)/sqrt(2(1-mu))
  // when their squared norms clear the tolerance. In the (e+, e-) basis U is
  //   [[cos, sin], [-sin, cos]];
  // a lone direction (mu = +-1) is an eigenvector of U with eigenvalue mu.
  struct Direction {
    Eigen::Index plane;
    int sign;
  };
  std::vector<Direction> dirs;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (1.0 + mu_[i] > rank_tolerance) dirs.push_back({i, +1});
    if (1.0 - mu_[i] > rank_tolerance) dirs.push_back({i, -1});
  }
  const auto d = static_cast<Eigen::Index>(dirs.size());

  basis_.setZero(2 * n, d);
  initial_.setZero(d);
  Eigen::MatrixXd one_step = Eigen::MatrixXd::Zero(d, d);
  eigenvalues_.setZero(d);
  eigenvectors_.setZero(d, d);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index c = 0; c < d; ++c) {
    const auto [i, sign] = dirs[static_cast<std::size_t>(c)];
    const double lambda = 1.0 + sign * mu_[i];
    const double scale = 1.0 / std::sqrt(2.0 * lambda);
    basis_.col(c).head(n) = scale * v_.col(i);
    basis_.col(c).tail(n) = (sign * scale) * v_.col(i);
    // psi0 = sum_i x_i (v_i, 0) and (v, 0) = (sqrt(2 lambda+) e+ + sqrt(2 lambda-) e-)/2.
    initial_[c] = v_.col(i).sum() * inv_sqrt_n * std::sqrt(lambda / 2.0);
  }
  for (Eigen::Index c = 0; c < d; ++c) {
    const auto [i, sign] = dirs[static_cast<std::size_t>(c)];
    const double cos_t = mu_[i];
    const double sin_t = std::sqrt((1.0 - mu_[i]) * (1.0 + mu_[i]));
    const bool paired = sign > 0 && c + 1 < d && dirs[static_cast<std::size_t>(c + 1)].plane == i;
    if (paired) {
      one_step(c, c) = cos_t;
      one_step(c, c + 1) = sin_t;
      one_step(c + 1, c) = -sin_t;
      one_step(c + 1, c + 1) = cos_t;
      // U^2 is the rotation by 2 theta: eigenvectors (1, +-i)/sqrt(2).
      const Complex phase = std::polar(1.0, 2.0 * std::atan2(sin_t, cos_t));
      const double h = std::sqrt(0.5);
      eigenvalues_[c] = phase;
      eigenvalues_[c + 1] = std::conj(phase);
      eigenvectors_(c, c) = h;
      eigenvectors_(c + 1, c) = Complex(0.0, h);
      eigenvectors_(c, c + 1) = h;
      eigenvectors_(c + 1, c + 1) = Complex(0.0, -h);
      ++c;
    } else {
      one_step(c, c) = mu_[i] < 0.0 ? -1.0 : 1.0;
      eigenvalues_[c] = 1.0;
      eigenvectors_(c, c) = 1.0;
    }
  }
  restricted_ = one_step * one_step;

  const double unitarity_error =
      (restricted_.transpose() * restricted_ - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unitarity_error > kUnitarityTolerance) {
    throw Error(ErrorKind::Numerical, "restricted two-step operator is not unitary");
  }
}

WalkState DynamicalSubspace::embed(const Eigen::VectorXcd& span_coefficients) const {
  const std::size_t n = nodes();
  if (static_cast<std::size_t>(span_coefficients.size()) != 2 * n) {
    throw Error(ErrorKind::DimensionMismatch, "expected 2N spanning-set coefficients");
  }
  WalkState state(n);
  for (NodeId x = 0; x < n; ++x) {
    const auto psi_x = op_.psi(x);
    for (NodeId y = 0; y < n; ++y) {
      state.at(x, y) = span_coefficients[x] * psi_x[y] + span_coefficients[n + y] * op_.psi(y)[x];
    }
  }
  return state;
}

WalkState DynamicalSubspace::basis_state(std::size_t d) const {
  if (d >= dimension()) throw Error(ErrorKind::OutOfRange, "basis index out of range");
  return embed(basis_.col(static_cast<Eigen::Index>(d)).cast<Complex>());
}

DynamicalSubspace build_dynamical_subspace(const SzegedyOperator& op) { return DynamicalSubspace(op); }

QuantumRankSeries evolve_spectral(const DynamicalSubspace& sub, const EvolveOptions& options) {
  if (options.steps == 0) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
  if (options.average_offset >= options.steps) {
    throw Error(ErrorKind::InvalidArgument, "average offset must be smaller than steps");
  }
  const std::size_t n = sub.nodes();
  const auto ni = static_cast<Eigen::Index>(n);
  const Eigen::VectorXd& mu = sub.overlap_eigenvalues();
  const Eigen::MatrixXd& v = sub.overlap_eigenvectors();

  // On plane i, k applications of U map the coefficients (x, 0) to
  // (-U_{k-2}(mu) x, U_{k-1}(mu) x), exact even where the plane degenerates.
  const Eigen::VectorXd x = v.transpose() * Eigen::VectorXd::Constant(ni, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::VectorXd theta(ni), sin_theta(ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    sin_theta[i] = std::sqrt((1.0 - mu[i]) * (1.0 + mu[i]));
    theta[i] = std::atan2(sin_theta[i], mu[i]);
  }

  // psi amplitudes by row (roots[x*N+y] = sqrt(G_yx)) and transposed.
  const auto& op = sub.op();
  std::vector<double> roots(n * n);
  std::vector<double> roots_t(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto psi = op.psi(static_cast<NodeId>(p));
    for (std::size_t q = 0; q < n; ++q) {
      roots[p * n + q] = psi[q];
      roots_t[q * n + p] = psi[q];
    }
  }

  std::vector<double> rows(n * options.steps, 0.0);
  Eigen::VectorXd ca(ni), cb(ni), a(ni), b(ni);
  for (std::size_t m = 0; m < options.steps; ++m) {
    const long k = 2 * static_cast<long>(m);
    for (Eigen::Index i = 0; i < ni; ++i) {
      ca[i] = -chebyshev_u(k - 2, mu[i], theta[i], sin_theta[i]) * x[i];
      cb[i] = chebyshev_u(k - 1, mu[i], theta[i], sin_theta[i]) * x[i];
    }
    a.noalias() = v * ca;
    b.noalias() = v * cb;
    double* row = rows.data() + m * n;
    // amplitude(p, q) = a_p sqrt(G_qp) + b_q sqrt(G_pq)
    for (std::size_t p = 0; p < n; ++p) {
      const double ap = a[static_cast<Eigen::Index>(p)];
      const double* psi_p = roots.data() + p * n;
      const double* back_p = roots_t.data() + p * n;
      for (std::size_t q = 0; q < n; ++q) {
        const double amp = ap * psi_p[q] + b[static_cast<Eigen::Index>(q)] * back_p[q];
        row[q] += amp * amp;
      }
    }
  }
  return QuantumRankSeries(n, options.steps, std::move(rows), options.average_offset);
}

}  // namespace qpr
