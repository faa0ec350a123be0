#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qpagerank/classical.hpp"
#include "qpagerank/graph.hpp"
#include "qpagerank/quantum_walk.hpp"

namespace qpr {

enum class RankerKind { Classical, Quantum, Uniform };

std::string_view ranker_name(RankerKind kind);
RankerKind parse_ranker(std::string_view name);

// How a graph is turned into a rank vector. Uniform is a control that ignores
// the graph structure.
struct Ranker {
  RankerKind kind = RankerKind::Classical;
  double alpha = 0.85;
  EvolveOptions evolve{};
  Backend backend = Backend::Auto;
  PowerMethodOptions power{};
};

RankVector rank(const DirectedGraph& g, const Ranker& ranker);

// ---- localisation ---------------------------------------------------------

/// Inverse participation ratio (sum p_i^2)^-1 of a normalized distribution.
double ipr(const RankVector& p);

struct Ensemble {
  std::size_t nodes = 0;
  std::vector<DirectedGraph> graphs;
};

/// `instances` scale-free graphs for every size, seeds derived from `seed`.
std::vector<Ensemble> scale_free_ensembles(std::span<const std::size_t> sizes, std::size_t instances,
                                           std::uint64_t seed);

/// Per-instance seed used by scale_free_ensembles.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t nodes, std::uint64_t instance);

struct IprPoint {
  std::size_t nodes = 0;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t instances = 0;
};

struct IprScaling {
  std::vector<IprPoint> points;
  /// Least-squares slope of log(mean IPR) against log(N).
  double loglog_slope = 0.0;
  /// loglog_slope below the threshold: IPR grows sublinearly in N.
  bool localized = false;
};

inline constexpr double kLocalizationSlope = 0.9;

IprScaling ipr_scaling(std::span<const Ensemble> ensembles, const Ranker& ranker,
                       double threshold = kLocalizationSlope);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

// ---- damping stability ----------------------------------------------------

/// Classical (Bhattacharyya) fidelity sum_i sqrt(p_i q_i).
double fidelity(const RankVector& p, const RankVector& q);

struct FidelitySweep {
  std::vector<double> alpha_grid;
  std::vector<RankVector> ranks;
  /// Row-major |grid| x |grid| pairwise fidelities.
  std::vector<double> pairwise;
  double min_fidelity = 1.0;

  double at(std::size_t i, std::size_t j) const { return pairwise[i * alpha_grid.size() + j]; }
};

/// Inclusive grid lo..hi with `count` points.
std::vector<double> alpha_grid(double lo, double hi, std::size_t count);

/// Ranks g at every alpha of the grid (ranker.alpha is ignored).
FidelitySweep damping_sweep(const DirectedGraph& g, std::span<const double> grid, const Ranker& ranker);

// ---- scaling ----------------------------------------------------------------

/// Half-open index interval [first, last) into the descending-sorted values.
struct FitRange {
  std::size_t first = 0;
  std::size_t last = 0;
};

struct PowerLawFit {
  /// beta in p_k ~ k^-beta, k the 1-based position in descending order.
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  FitRange range;
};

struct PowerLawOptions {
  /// Explicit range; every value inside must be positive.
  std::optional<FitRange> range;
  /// Default range drops this fraction of trailing indices ...
  double tail_fraction = 0.05;
  /// ... and the floor class: values within this relative distance of the minimum.
  double floor_tolerance = 1e-4;
  bool exclude_floor = true;
};

PowerLawFit power_law_fit(const RankVector& p, const PowerLawOptions& options = {});

// ---- degeneracy -------------------------------------------------------------

struct DegeneracyProfile {
  std::size_t class_count = 0;
  /// Size of the class holding the smallest values.
  std::size_t tail_class_size = 0;
  std::size_t largest_class_size = 0;
  /// Class sizes from the highest to the lowest values.
  std::vector<std::size_t> class_sizes;
};

/// Sorted values split into classes; neighbours closer than `delta` relative
/// to the larger of the two share a class.
DegeneracyProfile degeneracy_profile(const RankVector& p, double delta = 1e-4);

// ---- rank comparison --------------------------------------------------------

inline constexpr double kTieTolerance = 1e-10;

/// Kendall tau-b. Values within relative `tie_tolerance` count as tied.
/// Two fully tied inputs give 1, a single fully tied input gives 0.
double kendall_tau_b(std::span<const double> a, std::span<const double> b,
                     double tie_tolerance = kTieTolerance);
double rank_correlation(const RankVector& a, const RankVector& b);

/// 1-based positions in descending order; tied groups share their mean position.
std::vector<double> fractional_ranks(std::span<const double> values, double tie_tolerance = kTieTolerance);

struct AttackReport {
  /// Attacked nodes (original ids) by descending importance.
  std::vector<NodeId> removed;
  /// Original ids of the surviving nodes, ascending.
  std::vector<NodeId> survivors;
  std::vector<double> pre_scores;
  std::vector<double> post_scores;
  double rank_correlation = 1.0;
  double mean_displacement = 0.0;
  double max_displacement = 0.0;
};

/// Removes the k top-ranked nodes, re-ranks the survivors and compares orders.
AttackReport attack_sensitivity(const DirectedGraph& g, std::size_t k, const Ranker& ranker);

}  // namespace qpr
