#include "qpagerank/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qpagerank/error.hpp"
#include "qpagerank/generators.hpp"
#include "qpagerank/parallel.hpp"

namespace qpr {
namespace {

constexpr double kNormalizationTolerance = 1e-9;

void require_normalized(const RankVector& p, const char* what) {
  if (!p.is_normalized(kNormalizationTolerance)) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs a normalized distribution");
  }
}

bool tied(double x, double y, double tolerance) {
  return std::abs(x - y) <= tolerance * std::max(std::abs(x), std::abs(y));
}

int compare(double x, double y, double tolerance) {
  if (tied(x, y, tolerance)) return 0;
  return x < y ? -1 : 1;
}

std::vector<double> sorted_descending(std::span<const double> values) {
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view ranker_name(RankerKind kind) {
  switch (kind) {
    case RankerKind::Classical: return "classical";
    case RankerKind::Quantum: return "quantum";
    case RankerKind::Uniform: return "uniform";
  }
  return "unknown";
}

RankerKind parse_ranker(std::string_view name) {
  if (name == "classical") return RankerKind::Classical;
  if (name == "quantum") return RankerKind::Quantum;
  if (name == "uniform") return RankerKind::Uniform;
  throw Error(ErrorKind::InvalidArgument, "unknown ranker '" + std::string(name) + "'");
}

RankVector rank(const DirectedGraph& g, const Ranker& ranker) {
  switch (ranker.kind) {
    case RankerKind::Classical:
      return classical_pagerank(g, ranker.alpha, ranker.power);
    case RankerKind::Quantum:
      return quantum_pagerank(g, ranker.alpha, ranker.evolve, ranker.backend);
    case RankerKind::Uniform:
      return RankVector::uniform(g.node_count());
  }
  throw Error(ErrorKind::InvalidArgument, "unknown ranker");
}

double ipr(const RankVector& p) {
  require_normalized(p, "ipr");
  double squares = 0.0;
  for (double v : p.values()) squares += v * v;
  return 1.0 / squares;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t nodes, std::uint64_t instance) {
  return splitmix64(splitmix64(base ^ (nodes << 32)) + instance);
}

std::vector<Ensemble> scale_free_ensembles(std::span<const std::size_t> sizes, std::size_t instances,
                                           std::uint64_t seed) {
  std::vector<Ensemble> out;
  for (std::size_t n : sizes) {
    Ensemble e{n, {}};
    for (std::size_t i = 0; i < instances; ++i) {
      e.graphs.push_back(generate_scale_free(n, derive_seed(seed, n, i)));
    }
    out.push_back(std::move(e));
  }
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "slope inputs differ in length");
  if (x.size() < 2) throw Error(ErrorKind::InvalidArgument, "slope needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "log-log slope needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw Error(ErrorKind::InvalidArgument, "log-log slope needs distinct x values");
  return sxy / sxx;
}

IprScaling ipr_scaling(std::span<const Ensemble> ensembles, const Ranker& ranker, double threshold) {
  if (ensembles.size() < 3) throw Error(ErrorKind::InvalidArgument, "IPR scaling needs at least 3 sizes");
  struct Job {
    std::size_t ensemble, instance;
  };
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < ensembles.size(); ++e) {
    if (ensembles[e].graphs.empty()) throw Error(ErrorKind::InvalidArgument, "empty ensemble");
    if (ensembles[e].graphs.size() < 5) {
      throw Error(ErrorKind::InvalidArgument, "IPR scaling needs at least 5 instances per size");
    }
    for (std::size_t i = 0; i < ensembles[e].graphs.size(); ++i) jobs.push_back({e, i});
  }
  std::vector<double> values(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t j) {
    values[j] = ipr(rank(ensembles[jobs[j].ensemble].graphs[jobs[j].instance], ranker));
  });

  IprScaling result;
  std::size_t cursor = 0;
  std::vector<double> xs, ys;
  for (const Ensemble& e : ensembles) {
    const std::size_t count = e.graphs.size();
    const std::span<const double> chunk(values.data() + cursor, count);
    cursor += count;
    const double mean = std::accumulate(chunk.begin(), chunk.end(), 0.0) / static_cast<double>(count);
    double var = 0.0;
    for (double v : chunk) var += (v - mean) * (v - mean);
    const double stddev = count > 1 ? std::sqrt(var / static_cast<double>(count - 1)) : 0.0;
    result.points.push_back({e.nodes, mean, stddev, count});
    xs.push_back(static_cast<double>(e.nodes));
    ys.push_back(mean);
  }
  result.loglog_slope = loglog_slope(xs, ys);
  result.localized = result.loglog_slope < threshold;
  return result;
}

double fidelity(const RankVector& p, const RankVector& q) {
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "fidelity of vectors of different size");
  require_normalized(p, "fidelity");
  require_normalized(q, "fidelity");
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) f += std::sqrt(p[i] * q[i]);
  return std::clamp(f, 0.0, 1.0);
}

std::vector<double> alpha_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "grid needs at least one point");
  if (!(lo <= hi)) throw Error(ErrorKind::InvalidArgument, "grid bounds must satisfy lo <= hi");
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  grid.back() = hi;
  return grid;
}

FidelitySweep damping_sweep(const DirectedGraph& g, std::span<const double> grid, const Ranker& ranker) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "damping sweep needs a non-empty grid");
  for (double a : grid) {
    if (!(a > 0.0 && a < 1.0)) throw Error(ErrorKind::InvalidArgument, "grid values must lie in (0, 1)");
  }
  FidelitySweep sweep;
  sweep.alpha_grid.assign(grid.begin(), grid.end());
  sweep.ranks.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    Ranker r = ranker;
    r.alpha = grid[i];
    sweep.ranks[i] = rank(g, r);
  });
  const std::size_t n = grid.size();
  sweep.pairwise.assign(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double f = fidelity(sweep.ranks[i], sweep.ranks[j]);
      sweep.pairwise[i * n + j] = sweep.pairwise[j * n + i] = f;
    }
  }
  sweep.min_fidelity = *std::min_element(sweep.pairwise.begin(), sweep.pairwise.end());
  return sweep;
}

PowerLawFit power_law_fit(const RankVector& p, const PowerLawOptions& options) {
  const std::vector<double> s = sorted_descending(p.values());
  const std::size_t n = s.size();
  const std::size_t positive =
      static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](double v) { return v > 0.0; }));

  FitRange range;
  if (options.range) {
    range = *options.range;
    if (range.first >= range.last || range.last > n) {
      throw Error(ErrorKind::InvalidArgument, "fit range out of bounds");
    }
    for (std::size_t k = range.first; k < range.last; ++k) {
      if (!(s[k] > 0.0)) throw Error(ErrorKind::InvalidArgument, "zero value inside the requested fit range");
    }
  } else {
    std::size_t last = positive;
    const auto tail = static_cast<std::size_t>(std::floor(options.tail_fraction * static_cast<double>(n)));
    last = std::min(last, n - std::min(tail, n));
    if (options.exclude_floor && positive > 0) {
      const double floor_value = s[positive - 1];
      std::size_t floor_start = positive - 1;
      while (floor_start > 0 && s[floor_start - 1] - floor_value < options.floor_tolerance * s[floor_start - 1]) {
        --floor_start;
      }
      last = std::min(last, floor_start);
    }
    range = {0, last};
  }
  const std::size_t count = range.last > range.first ? range.last - range.first : 0;
  if (count < 5) throw Error(ErrorKind::InvalidArgument, "power-law fit needs at least 5 positive values");

  double mx = 0.0, my = 0.0;
  for (std::size_t k = range.first; k < range.last; ++k) {
    mx += std::log(static_cast<double>(k + 1));
    my += std::log(s[k]);
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = range.first; k < range.last; ++k) {
    const double dx = std::log(static_cast<double>(k + 1)) - mx;
    const double dy = std::log(s[k]) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  PowerLawFit fit;
  fit.exponent = -slope;
  fit.intercept = my - slope * mx;
  const double residual = std::max(syy - slope * sxy, 0.0);
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - residual / syy, 0.0, 1.0) : 1.0;
  fit.range = range;
  return fit;
}

DegeneracyProfile degeneracy_profile(const RankVector& p, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "delta must be > 0");
  const std::vector<double> s = sorted_descending(p.values());
  DegeneracyProfile profile;
  if (s.empty()) return profile;
  std::size_t current = 1;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double scale = std::max(s[i - 1], s[i]);
    if (s[i - 1] - s[i] < delta * scale || scale == 0.0) {
      ++current;
    } else {
      profile.class_sizes.push_back(current);
      current = 1;
    }
  }
  profile.class_sizes.push_back(current);
  profile.class_count = profile.class_sizes.size();
  profile.tail_class_size = profile.class_sizes.back();
  profile.largest_class_size = *std::max_element(profile.class_sizes.begin(), profile.class_sizes.end());
  return profile;
}

double kendall_tau_b(std::span<const double> a, std::span<const double> b, double tie_tolerance) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "rank correlation of vectors of different size");
  const std::size_t n = a.size();
  std::int64_t concordant = 0, discordant = 0, tied_a = 0, tied_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int da = compare(a[i], a[j], tie_tolerance);
      const int db = compare(b[i], b[j], tie_tolerance);
      if (da == 0) ++tied_a;
      if (db == 0) ++tied_b;
      if (da == 0 || db == 0) continue;
      (da == db ? concordant : discordant) += 1;
    }
  }
  const auto pairs = static_cast<std::int64_t>(n * (n > 0 ? n - 1 : 0) / 2);
  const auto free_a = pairs - tied_a;
  const auto free_b = pairs - tied_b;
  if (free_a == 0 && free_b == 0) return 1.0;
  if (free_a == 0 || free_b == 0) return 0.0;
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(free_a) * static_cast<double>(free_b));
}

double rank_correlation(const RankVector& a, const RankVector& b) {
  return kendall_tau_b(a.values(), b.values());
}

std::vector<double> fractional_ranks(std::span<const double> values, double tie_tolerance) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  std::vector<double> ranks(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && tied(values[idx[end - 1]], values[idx[end]], tie_tolerance)) ++end;
    const double mean_rank = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t k = start; k < end; ++k) ranks[idx[k]] = mean_rank;
    start = end;
  }
  return ranks;
}

AttackReport attack_sensitivity(const DirectedGraph& g, std::size_t k, const Ranker& ranker) {
  const std::size_t n = g.node_count();
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "attack analysis needs at least 3 nodes");
  if (k >= n) throw Error(ErrorKind::InvalidArgument, "cannot remove k >= N nodes");

  const RankVector pre = rank(g, ranker);
  const auto order = pre.order();
  AttackReport report;
  report.removed.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));

  const ReducedGraph reduced = remove_nodes(g, report.removed);
  const RankVector post = rank(reduced.graph, ranker);

  report.survivors = reduced.original_index;
  for (NodeId v : report.survivors) report.pre_scores.push_back(pre[v]);
  report.post_scores.assign(post.values().begin(), post.values().end());

  report.rank_correlation = kendall_tau_b(report.pre_scores, report.post_scores);
  const auto before = fractional_ranks(report.pre_scores);
  const auto after = fractional_ranks(report.post_scores);
  double total = 0.0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    const double shift = std::abs(before[i] - after[i]);
    total += shift;
    report.max_displacement = std::max(report.max_displacement, shift);
  }
  report.mean_displacement = before.empty() ? 0.0 : total / static_cast<double>(before.size());
  return report;
}

}  // namespace qpr
