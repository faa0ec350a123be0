#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qpagerank/error.hpp"
#include "qpagerank/graph.hpp"

namespace qpr {

/// Non-negative score per node: a classical PageRank or an average quantum one.
class RankVector {
 public:
  RankVector() = default;
  explicit RankVector(std::vector<double> values);

  static RankVector uniform(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double sum() const;
  bool is_normalized(double tolerance = 1e-10) const;
  RankVector normalized() const;

  /// Node ids by descending score; ties broken by ascending id.
  std::vector<NodeId> order() const;

  friend bool operator==(const RankVector&, const RankVector&) = default;

 private:
  std::vector<double> values_;
};

// H_ij = 1/outdeg(j) when j links to i. Stored column-wise (out-arcs of j).
class HyperlinkMatrix {
 public:
  explicit HyperlinkMatrix(const DirectedGraph& g);

  std::size_t size() const noexcept { return offsets_.size() - 1; }
  bool is_dangling(NodeId j) const { return offsets_[j] == offsets_[j + 1]; }
  std::span<const NodeId> column_rows(NodeId j) const;
  /// Weight of every non-zero entry in column j (0 for dangling columns).
  double column_weight(NodeId j) const;
  const std::vector<NodeId>& dangling_nodes() const noexcept { return dangling_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  Eigen::MatrixXd dense() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> rows_;
  std::vector<NodeId> dangling_;
};

/// E: the hyperlink matrix with dangling columns replaced by 1/N.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(HyperlinkMatrix links);

  std::size_t size() const noexcept { return links_.size(); }
  const HyperlinkMatrix& links() const noexcept { return links_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  Eigen::MatrixXd dense() const;

 private:
  HyperlinkMatrix links_;
};

/// G = alpha E + (1 - alpha)/N * ones, applied as a matvec in O(arcs + N).
class GoogleMatrix {
 public:
  GoogleMatrix(StochasticMatrix e, double alpha);

  std::size_t size() const noexcept { return e_.size(); }
  double alpha() const noexcept { return alpha_; }
  const StochasticMatrix& stochastic() const noexcept { return e_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  Eigen::MatrixXd dense() const;

 private:
  StochasticMatrix e_;
  double alpha_;
};

HyperlinkMatrix hyperlink_matrix(const DirectedGraph& g);
StochasticMatrix patch_dangling(HyperlinkMatrix h);
GoogleMatrix google_matrix(StochasticMatrix e, double alpha);
GoogleMatrix google_matrix(const DirectedGraph& g, double alpha);

template <class M>
concept LinearOperator = requires(const M& m, std::span<const double> x, std::span<double> y) {
  { m.size() } -> std::convertible_to<std::size_t>;
  m.apply(x, y);
};

struct PowerMethodOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 100000;
};

struct PowerMethodResult {
  /// Last iterate; renormalized to sum 1 unless the limit is degenerate.
  RankVector ranks;
  std::size_t iterations = 0;
  bool converged = false;
  /// The iterates drained to (numerically) zero mass.
  bool degenerate = false;
  /// When not converged: smallest p in [2, 8] with ||x_k - x_{k-p}||_1 < tol
  /// at exit, 0 if none.
  std::size_t cycle_period = 0;
};

namespace detail {
constexpr std::size_t kCycleHistory = 8;
// Mass below this fraction of the starting mass counts as a zero limit.
constexpr double kDegenerateMass = 1e-6;
void finish_power_method(PowerMethodResult& result, std::vector<double>& x, double initial_mass,
                         const std::vector<std::vector<double>>& history, std::size_t head,
                         double tolerance);
}  // namespace detail

/// Iterates x <- M x until the L1 change drops below the tolerance or the
/// iteration budget runs out.
template <LinearOperator M>
PowerMethodResult power_method(const M& m, std::span<const double> initial,
                               const PowerMethodOptions& options = {}) {
  const std::size_t n = m.size();
  if (initial.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "initial vector has the wrong dimension");
  }
  if (!(options.tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be > 0");
  double initial_mass = 0.0;
  for (double v : initial) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "initial vector must be finite and non-negative");
    }
    initial_mass += v;
  }
  if (initial_mass == 0.0) throw Error(ErrorKind::InvalidArgument, "initial vector is zero");

  std::vector<double> x(initial.begin(), initial.end());
  std::vector<double> y(n);
  std::vector<std::vector<double>> history(detail::kCycleHistory, std::vector<double>(n));
  std::size_t head = 0;

  PowerMethodResult result;
  while (result.iterations < options.max_iterations) {
    m.apply(x, y);
    ++result.iterations;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(y[i] - x[i]);
    history[head] = x;
    head = (head + 1) % detail::kCycleHistory;
    std::swap(x, y);
    if (change < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  detail::finish_power_method(result, x, initial_mass, history, head, options.tolerance);
  return result;
}

/// Stationary vector of the Google matrix, started from the uniform vector.
PowerMethodResult solve_pagerank(const GoogleMatrix& g, const PowerMethodOptions& options = {});

/// Classical PageRank with damping alpha (alpha = 1 runs on E alone).
RankVector classical_pagerank(const DirectedGraph& g, double alpha = 0.85,
                              const PowerMethodOptions& options = {});

/// |lambda_2| of G from the full dense spectrum.
double second_eigenvalue_modulus(const GoogleMatrix& g);

}  // namespace qpr
