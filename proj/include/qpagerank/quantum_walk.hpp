#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qpagerank/classical.hpp"
#include "qpagerank/graph.hpp"

namespace qpr {

using Complex = std::complex<double>;

// Amplitudes over ordered node pairs (i, j) stored at i*N + j. The first
// register is the "from" node, the second register is the walker's position.
class WalkState {
 public:
  explicit WalkState(std::size_t nodes);
  WalkState(std::size_t nodes, std::vector<Complex> amplitudes);

  static WalkState basis(std::size_t nodes, NodeId first, NodeId second);

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

  Complex& at(NodeId first, NodeId second) { return amplitudes_[first * nodes_ + second]; }
  Complex at(NodeId first, NodeId second) const { return amplitudes_[first * nodes_ + second]; }

  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  double norm_squared() const;

 private:
  std::size_t nodes_;
  std::vector<Complex> amplitudes_;
};

// Szegedy lift of a column-stochastic matrix G:
//   |psi_j> = |j>_1 (x) sum_k sqrt(G_kj) |k>_2
// Each psi_j lives on the block of pairs (j, .), so the set is orthonormal.
class SzegedyOperator {
 public:
  /// Throws NotStochastic unless every column is >= 0 and sums to 1 within `tolerance`.
  explicit SzegedyOperator(Eigen::MatrixXd transition, double tolerance = 1e-10);
  explicit SzegedyOperator(const GoogleMatrix& g);

  std::size_t nodes() const noexcept { return nodes_; }
  const Eigen::MatrixXd& transition() const noexcept { return transition_; }

  /// sqrt(G_kj) for k = 0..N-1, i.e. the amplitudes of psi_j on pairs (j, k).
  std::span<const double> psi(NodeId j) const {
    return std::span<const double>(roots_).subspan(j * nodes_, nodes_);
  }

 private:
  std::size_t nodes_;
  Eigen::MatrixXd transition_;
  std::vector<double> roots_;
};

SzegedyOperator build_operator(const GoogleMatrix& g);

/// (1/sqrt(N)) sum_j |psi_j>.
WalkState initial_state(const SzegedyOperator& op);

/// (2 Pi - 1) state, Pi the projector onto span{psi_j}.
WalkState apply_reflection(WalkState state, const SzegedyOperator& op);
/// S state: amplitude(i, j) <-> amplitude(j, i).
WalkState apply_swap(WalkState state);
/// U^2 state with U = S (2 Pi - 1).
WalkState two_step(WalkState state, const SzegedyOperator& op);

/// I_q(i) = sum_j |amplitude(j, i)|^2.
RankVector instantaneous_qpr(const WalkState& state);

struct EvolveOptions {
  /// Number of recorded two-steps M (rows m = 0..M-1).
  std::size_t steps = 2048;
  /// First row included in the time average.
  std::size_t average_offset = 0;
};

// Instantaneous quantum PageRanks I_q(., m), m = 0..M-1, measured after m
// applications of U^2, plus their time average.
class QuantumRankSeries {
 public:
  QuantumRankSeries(std::size_t nodes, std::size_t steps, std::vector<double> rows,
                    std::size_t average_offset = 0);

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t average_offset() const noexcept { return average_offset_; }
  std::span<const double> row(std::size_t m) const {
    return std::span<const double>(rows_).subspan(m * nodes_, nodes_);
  }
  const RankVector& average() const noexcept { return average_; }

 private:
  std::size_t nodes_;
  std::size_t steps_;
  std::size_t average_offset_;
  std::vector<double> rows_;
  RankVector average_;
};

/// Direct backend: iterates U^2 on the full N^2 state.
QuantumRankSeries evolve(const SzegedyOperator& op, const EvolveOptions& options = {});

// Invariant subspace span{psi_j} + span{S psi_j} (dimension D <= 2N) holding
// the whole trajectory of the walk. Vectors are kept as coefficients over the
// spanning set (psi_0..psi_{N-1}, S psi_0..S psi_{N-1}), whose Gram matrix is
//   K = [[1, A], [A, 1]],  A_jk = <psi_j|S psi_k> = sqrt(G_kj G_jk).
// With A = V diag(mu) V^T, each eigenvector v_i spans the U-invariant plane
// {(x v_i, y v_i)}; its K-orthonormal basis is (v_i, +-v_i) / sqrt(2 (1 +- mu_i)),
// and U acts on it as a rotation by theta_i = acos(mu_i). A direction whose
// squared norm 1 +- mu_i is below the rank tolerance is dropped.
class DynamicalSubspace {
 public:
  explicit DynamicalSubspace(const SzegedyOperator& op, double rank_tolerance = 1e-10);

  const SzegedyOperator& op() const noexcept { return op_; }
  std::size_t nodes() const noexcept { return op_.nodes(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(basis_.cols()); }

  /// 2N x D coefficients of the orthonormal basis over the spanning set.
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }
  /// U^2 restricted to the subspace, D x D.
  const Eigen::MatrixXd& restricted_two_step() const noexcept { return restricted_; }
  const Eigen::VectorXcd& eigenvalues() const noexcept { return eigenvalues_; }
  /// Orthonormal eigenvectors as columns (D x D).
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return eigenvectors_; }
  /// Coordinates of the initial state in the orthonormal basis.
  const Eigen::VectorXd& initial_coordinates() const noexcept { return initial_; }

  /// mu_i and v_i (columns) of A.
  const Eigen::VectorXd& overlap_eigenvalues() const noexcept { return mu_; }
  const Eigen::MatrixXd& overlap_eigenvectors() const noexcept { return v_; }

  /// Materializes basis vector d as an N^2 walk state.
  WalkState basis_state(std::size_t d) const;
  /// Maps spanning-set coefficients (a, b) to the N^2 walk state.
  WalkState embed(const Eigen::VectorXcd& span_coefficients) const;

 private:
  SzegedyOperator op_;
  Eigen::VectorXd mu_;
  Eigen::MatrixXd v_;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd restricted_;
  Eigen::VectorXcd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
  Eigen::VectorXd initial_;
};

DynamicalSubspace build_dynamical_subspace(const SzegedyOperator& op);

/// Spectral backend: I_q from the eigendecomposition of U^2 on the subspace,
/// evaluated plane by plane in closed form.
QuantumRankSeries evolve_spectral(const DynamicalSubspace& sub, const EvolveOptions& options = {});

enum class Backend { Auto, Direct, Spectral };

/// Nodes up to which Backend::Auto picks the spectral backend.
inline constexpr std::size_t kSpectralBackendLimit = 256;

QuantumRankSeries quantum_rank_series(const SzegedyOperator& op, const EvolveOptions& options = {},
                                      Backend backend = Backend::Auto);

/// Average quantum PageRank of g at damping alpha.
RankVector quantum_pagerank(const DirectedGraph& g, double alpha = 0.85,
                            const EvolveOptions& options = {}, Backend backend = Backend::Auto);

/// Largest change of any node's average between the first half of the series
/// and the whole series (average at M vs 2M for a 2M-step series).
double average_drift(const QuantumRankSeries& series);

}  // namespace qpr
