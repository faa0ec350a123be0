#include "qpagerank/classical.hpp"

#include <numeric>

#include <Eigen/Eigenvalues>

namespace qpr {

RankVector::RankVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "rank values must be finite and non-negative");
    }
  }
}

RankVector RankVector::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "uniform rank vector needs n >= 1");
  return RankVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double RankVector::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

bool RankVector::is_normalized(double tolerance) const {
  return !values_.empty() && std::abs(sum() - 1.0) <= tolerance;
}

RankVector RankVector::normalized() const {
  const double s = sum();
  if (!(s > 0.0)) throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero vector");
  std::vector<double> out(values_);
  for (double& v : out) v /= s;
  return RankVector(std::move(out));
}

std::vector<NodeId> RankVector::order() const {
  std::vector<NodeId> idx(values_.size());
  std::iota(idx.begin(), idx.end(), NodeId{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [this](NodeId a, NodeId b) { return values_[a] > values_[b]; });
  return idx;
}

HyperlinkMatrix::HyperlinkMatrix(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  offsets_.assign(n + 1, 0);
  rows_.reserve(g.arc_count());
  for (NodeId j = 0; j < n; ++j) {
    for (const Arc& a : g.out_arcs(j)) rows_.push_back(a.dst);
    offsets_[j + 1] = rows_.size();
    if (offsets_[j] == offsets_[j + 1]) dangling_.push_back(j);
  }
}

std::span<const NodeId> HyperlinkMatrix::column_rows(NodeId j) const {
  return std::span<const NodeId>(rows_).subspan(offsets_[j], offsets_[j + 1] - offsets_[j]);
}

double HyperlinkMatrix::column_weight(NodeId j) const {
  const auto deg = offsets_[j + 1] - offsets_[j];
  return deg == 0 ? 0.0 : 1.0 / static_cast<double>(deg);
}

void HyperlinkMatrix::apply(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (NodeId j = 0; j < size(); ++j) {
    const double share = x[j] * column_weight(j);
    for (NodeId i : column_rows(j)) y[i] += share;
  }
}

Eigen::MatrixXd HyperlinkMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (NodeId j = 0; j < size(); ++j)
    for (NodeId i : column_rows(j)) h(i, j) = column_weight(j);
  return h;
}

StochasticMatrix::StochasticMatrix(HyperlinkMatrix links) : links_(std::move(links)) {}

void StochasticMatrix::apply(std::span<const double> x, std::span<double> y) const {
  links_.apply(x, y);
  double dangling_mass = 0.0;
  for (NodeId j : links_.dangling_nodes()) dangling_mass += x[j];
  if (dangling_mass != 0.0) {
    const double share = dangling_mass / static_cast<double>(size());
    for (double& v : y) v += share;
  }
}

Eigen::MatrixXd StochasticMatrix::dense() const {
  Eigen::MatrixXd e = links_.dense();
  const double fill = 1.0 / static_cast<double>(size());
  for (NodeId j : links_.dangling_nodes()) e.col(j).setConstant(fill);
  return e;
}

GoogleMatrix::GoogleMatrix(StochasticMatrix e, double alpha) : e_(std::move(e)), alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "damping alpha must lie in [0, 1]");
  }
}

void GoogleMatrix::apply(std::span<const double> x, std::span<double> y) const {
  e_.apply(x, y);
  const double teleport =
      (1.0 - alpha_) * std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(size());
  for (double& v : y) v = alpha_ * v + teleport;
}

Eigen::MatrixXd GoogleMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  return alpha_ * e_.dense() +
         Eigen::MatrixXd::Constant(n, n, (1.0 - alpha_) / static_cast<double>(n));
}

HyperlinkMatrix hyperlink_matrix(const DirectedGraph& g) { return HyperlinkMatrix(g); }

StochasticMatrix patch_dangling(HyperlinkMatrix h) { return StochasticMatrix(std::move(h)); }

GoogleMatrix google_matrix(StochasticMatrix e, double alpha) { return GoogleMatrix(std::move(e), alpha); }

GoogleMatrix google_matrix(const DirectedGraph& g, double alpha) {
  return GoogleMatrix(patch_dangling(hyperlink_matrix(g)), alpha);
}

namespace detail {

void finish_power_method(PowerMethodResult& result, std::vector<double>& x, double initial_mass,
                         const std::vector<std::vector<double>>& history, std::size_t head,
                         double tolerance) {
  if (!result.converged) {
    // history[(head - p) mod K] holds x_{k-p} for p = 1..K.
    for (std::size_t p = 2; p <= kCycleHistory && p <= result.iterations; ++p) {
      const auto& past = history[(head + kCycleHistory - p) % kCycleHistory];
      double diff = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) diff += std::abs(x[i] - past[i]);
      if (diff < tolerance) {
        result.cycle_period = p;
        break;
      }
    }
  }
  const double mass = std::accumulate(x.begin(), x.end(), 0.0);
  if (mass <= kDegenerateMass * initial_mass) {
    result.degenerate = true;
  } else {
    for (double& v : x) v /= mass;
  }
  result.ranks = RankVector(std::move(x));
}

}  // namespace detail

PowerMethodResult solve_pagerank(const GoogleMatrix& g, const PowerMethodOptions& options) {
  const std::vector<double> start(g.size(), 1.0 / static_cast<double>(g.size()));
  return power_method(g, start, options);
}

RankVector classical_pagerank(const DirectedGraph& g, double alpha, const PowerMethodOptions& options) {
  return solve_pagerank(google_matrix(g, alpha), options).ranks;
}

double second_eigenvalue_modulus(const GoogleMatrix& g) {
  if (g.size() < 2) throw Error(ErrorKind::InvalidArgument, "|lambda_2| needs at least 2 nodes");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(g.dense(), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "eigenvalue solver failed");
  std::vector<double> moduli;
  for (const auto& lambda : solver.eigenvalues()) moduli.push_back(std::abs(lambda));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli[1];
}

}  // namespace qpr
