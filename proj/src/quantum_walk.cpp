#include "qpagerank/quantum_walk.hpp"

#include <cmath>

#include "qpagerank/error.hpp"

namespace qpr {

WalkState::WalkState(std::size_t nodes) : nodes_(nodes), amplitudes_(nodes * nodes) {
  if (nodes == 0) throw Error(ErrorKind::InvalidArgument, "walk state needs at least one node");
}

WalkState::WalkState(std::size_t nodes, std::vector<Complex> amplitudes)
    : nodes_(nodes), amplitudes_(std::move(amplitudes)) {
  if (nodes == 0) throw Error(ErrorKind::InvalidArgument, "walk state needs at least one node");
  if (amplitudes_.size() != nodes * nodes) {
    throw Error(ErrorKind::DimensionMismatch, "walk state needs N^2 amplitudes");
  }
}

WalkState WalkState::basis(std::size_t nodes, NodeId first, NodeId second) {
  if (first >= nodes || second >= nodes) throw Error(ErrorKind::OutOfRange, "basis pair out of range");
  WalkState s(nodes);
  s.at(first, second) = 1.0;
  return s;
}

double WalkState::norm_squared() const {
  double total = 0.0;
  for (const Complex& a : amplitudes_) total += std::norm(a);
  return total;
}

SzegedyOperator::SzegedyOperator(Eigen::MatrixXd transition, double tolerance)
    : nodes_(static_cast<std::size_t>(transition.rows())), transition_(std::move(transition)) {
  if (nodes_ == 0 || transition_.rows() != transition_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "transition matrix must be square and non-empty");
  }
  roots_.resize(nodes_ * nodes_);
  for (std::size_t j = 0; j < nodes_; ++j) {
    double column_sum = 0.0;
    for (std::size_t k = 0; k < nodes_; ++k) {
      const double g = transition_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
      if (!std::isfinite(g) || g < -tolerance) {
        throw Error(ErrorKind::NotStochastic, "transition matrix has a negative entry");
      }
      column_sum += g;
      roots_[j * nodes_ + k] = std::sqrt(std::max(g, 0.0));
    }
    if (std::abs(column_sum - 1.0) > tolerance) {
      throw Error(ErrorKind::NotStochastic,
                  "column " + std::to_string(j) + " of the transition matrix does not sum to 1");
    }
  }
}

SzegedyOperator::SzegedyOperator(const GoogleMatrix& g) : SzegedyOperator(g.dense()) {}

SzegedyOperator build_operator(const GoogleMatrix& g) { return SzegedyOperator(g); }

WalkState initial_state(const SzegedyOperator& op) {
  const std::size_t n = op.nodes();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  WalkState state(n);
  for (NodeId j = 0; j < n; ++j) {
    const auto psi = op.psi(j);
    for (NodeId k = 0; k < n; ++k) state.at(j, k) = scale * psi[k];
  }
  return state;
}

WalkState apply_reflection(WalkState state, const SzegedyOperator& op) {
  const std::size_t n = op.nodes();
  if (state.nodes() != n) throw Error(ErrorKind::DimensionMismatch, "state and operator sizes differ");
  auto amp = state.amplitudes();
  for (std::size_t j = 0; j < n; ++j) {
    const auto psi = op.psi(static_cast<NodeId>(j));
    Complex* block = amp.data() + j * n;
    Complex overlap = 0.0;
    for (std::size_t k = 0; k < n; ++k) overlap += psi[k] * block[k];
    const Complex twice = 2.0 * overlap;
    for (std::size_t k = 0; k < n; ++k) block[k] = twice * psi[k] - block[k];
  }
  return state;
}

WalkState apply_swap(WalkState state) {
  const std::size_t n = state.nodes();
  auto amp = state.amplitudes();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) std::swap(amp[i * n + j], amp[j * n + i]);
  return state;
}

WalkState two_step(WalkState state, const SzegedyOperator& op) {
  state = apply_swap(apply_reflection(std::move(state), op));
  return apply_swap(apply_reflection(std::move(state), op));
}

RankVector instantaneous_qpr(const WalkState& state) {
  const std::size_t n = state.nodes();
  const auto amp = state.amplitudes();
  std::vector<double> p(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) p[i] += std::norm(amp[j * n + i]);
  return RankVector(std::move(p));
}

QuantumRankSeries::QuantumRankSeries(std::size_t nodes, std::size_t steps, std::vector<double> rows,
                                     std::size_t average_offset)
    : nodes_(nodes), steps_(steps), average_offset_(average_offset), rows_(std::move(rows)) {
  if (steps_ == 0) throw Error(ErrorKind::InvalidArgument, "series needs at least one step");
  if (rows_.size() != nodes_ * steps_) throw Error(ErrorKind::DimensionMismatch, "series has the wrong size");
  if (average_offset_ >= steps_) {
    throw Error(ErrorKind::InvalidArgument, "average offset must be smaller than the step count");
  }
  std::vector<double> avg(nodes_, 0.0);
  for (std::size_t m = average_offset_; m < steps_; ++m) {
    const auto r = row(m);
    for (std::size_t i = 0; i < nodes_; ++i) avg[i] += r[i];
  }
  const double count = static_cast<double>(steps_ - average_offset_);
  for (double& v : avg) v /= count;
  average_ = RankVector(std::move(avg));
}

namespace {
void check_options(const EvolveOptions& options) {
  if (options.steps == 0) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
  if (options.average_offset >= options.steps) {
    throw Error(ErrorKind::InvalidArgument, "average offset must be smaller than steps");
  }
}
}  // namespace

QuantumRankSeries evolve(const SzegedyOperator& op, const EvolveOptions& options) {
  check_options(options);
  const std::size_t n = op.nodes();
  std::vector<double> rows;
  rows.reserve(n * options.steps);
  WalkState state = initial_state(op);
  for (std::size_t m = 0; m < options.steps; ++m) {
    const RankVector p = instantaneous_qpr(state);
    rows.insert(rows.end(), p.values().begin(), p.values().end());
    if (m + 1 < options.steps) state = two_step(std::move(state), op);
  }
  return QuantumRankSeries(n, options.steps, std::move(rows), options.average_offset);
}

QuantumRankSeries quantum_rank_series(const SzegedyOperator& op, const EvolveOptions& options,
                                      Backend backend) {
  if (backend == Backend::Auto) {
    backend = op.nodes() <= kSpectralBackendLimit ? Backend::Spectral : Backend::Direct;
  }
  if (backend == Backend::Direct) return evolve(op, options);
  return evolve_spectral(DynamicalSubspace(op), options);
}

RankVector quantum_pagerank(const DirectedGraph& g, double alpha, const EvolveOptions& options,
                            Backend backend) {
  return quantum_rank_series(SzegedyOperator(google_matrix(g, alpha)), options, backend).average();
}

double average_drift(const QuantumRankSeries& series) {
  if (series.steps() < 2) throw Error(ErrorKind::InvalidArgument, "drift needs at least two steps");
  const std::size_t n = series.nodes();
  const std::size_t half = series.steps() / 2;
  std::vector<double> first(n, 0.0);
  std::vector<double> whole(n, 0.0);
  for (std::size_t m = 0; m < series.steps(); ++m) {
    const auto r = series.row(m);
    for (std::size_t i = 0; i < n; ++i) {
      whole[i] += r[i];
      if (m < half) first[i] += r[i];
    }
  }
  double drift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    drift = std::max(drift, std::abs(first[i] / static_cast<double>(half) -
                                     whole[i] / static_cast<double>(series.steps())));
  }
  return drift;
}

}  // namespace qpr
