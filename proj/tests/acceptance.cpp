// Acceptance suite. One line per criterion:
//   criterion N: PASS|FAIL  <summary>
// followed by indented detail lines. Exit status is non-zero if any selected
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "qpagerank/analysis.hpp"
#include "qpagerank/classical.hpp"
#include "qpagerank/cli.hpp"
#include "qpagerank/generators.hpp"
#include "qpagerank/parallel.hpp"
#include "qpagerank/quantum_walk.hpp"

using namespace qpr;

namespace {

// Tolerances and ensemble sizes.
constexpr double kFig1Tol = 1e-9;
constexpr double kSpectralSlack = 1e-9;
constexpr double kNormTol = 1e-10;
constexpr double kBackendTol = 1e-8;
constexpr double kDenseTol = 1e-12;
constexpr double kUniformSlopeTol = 1e-6;
constexpr double kPlantedTol = 1e-6;
constexpr double kIprUlps = 2.0;
constexpr double kMajority = 0.8;

constexpr std::uint64_t kSeedSpectral = 0x5eed0002;
constexpr std::uint64_t kSeedBackend = 0x5eed0004;
constexpr std::uint64_t kSeedStructure = 0x5eed0007;
constexpr std::uint64_t kSeedDamping = 0x5eed0008;
constexpr std::uint64_t kSeedLocalization = 0x5eed0009;
constexpr std::uint64_t kSeedAttack = 0x5eed000a;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("     " + what); }
};

std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string vec(std::span<const double> v, int precision = 6) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i], precision);
  return s + ")";
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

std::string fraction(std::size_t hits, std::size_t total) {
  return std::to_string(hits) + "/" + std::to_string(total);
}

// ---------------------------------------------------------------------------

Outcome fig1_examples() {
  Outcome o;
  const std::vector<double> e0_2{1.0, 0.0};
  const std::vector<double> e0_4{1.0, 0.0, 0.0, 0.0};

  const auto h = power_method(hyperlink_matrix(benchmark_graph(Benchmark::Fig1a)), e0_2);
  o.require(h.degenerate && h.ranks[0] == 0.0 && h.ranks[1] == 0.0,
            "bare H on the 2-node web: zero limit flagged, I = " + vec(h.ranks.values()));

  const Eigen::MatrixXd e = patch_dangling(hyperlink_matrix(benchmark_graph(Benchmark::Fig1a))).dense();
  Eigen::MatrixXd want(2, 2);
  want << 0.0, 0.5, 1.0, 0.5;
  o.require(e == want, "patched E = [[0, 1/2], [1, 1/2]]");

  const auto d = power_method(patch_dangling(hyperlink_matrix(benchmark_graph(Benchmark::Fig1d))), e0_4);
  const double target[] = {0.0, 0.0, 0.6, 0.4};
  double err = 0.0;
  for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(d.ranks[i] - target[i]));
  o.require(d.converged && err <= kFig1Tol,
            "fig1d bare E from (1,0,0,0): stationary (0,0,0.6,0.4) within 1e-9; got " + vec(d.ranks.values()) +
                " converged=" + (d.converged ? "yes" : "no") + " cycle_period=" + std::to_string(d.cycle_period));
  if (!d.converged) {
    PowerMethodOptions one_more;
    one_more.max_iterations = d.iterations + 1;
    const auto next = power_method(patch_dangling(hyperlink_matrix(benchmark_graph(Benchmark::Fig1d))), e0_4, one_more);
    o.note("iterate " + std::to_string(d.iterations) + " = " + vec(d.ranks.values()) + ", iterate " +
           std::to_string(next.iterations) + " = " + vec(next.ranks.values()));
    const Eigen::MatrixXd ed = patch_dangling(hyperlink_matrix(benchmark_graph(Benchmark::Fig1d))).dense();
    Eigen::EigenSolver<Eigen::MatrixXd> es(ed);
    std::string ev;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev += fmt(es.eigenvalues()[i].real(), 4) + " ";
    o.note("E has eigenvalues { " + ev + "}: the sink {2,3} is a 2-cycle, the only fixed point is (0,0,0.5,0.5)");
  }

  const auto c = power_method(patch_dangling(hyperlink_matrix(benchmark_graph(Benchmark::Fig1c))), e0_4);
  o.require(!c.converged && c.iterations == PowerMethodOptions{}.max_iterations,
            "fig1c bare E flagged non-convergent (cycle_period=" + std::to_string(c.cycle_period) + ")");
  o.summary = "2-node web, patched E, fig1d stationary vector, fig1c non-convergence";
  return o;
}

Outcome spectral_bound() {
  Outcome o;
  std::mt19937_64 rng(kSeedSpectral);
  double worst[3] = {0, 0, 0};
  const double alphas[3] = {0.5, 0.85, 0.98};
  std::size_t violations = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 63;
    const double p = 0.02 + 0.3 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto g = oracle::random_digraph(n, p, rng());
    for (int a = 0; a < 3; ++a) {
      const double l2 = second_eigenvalue_modulus(google_matrix(g, alphas[a]));
      worst[a] = std::max(worst[a], l2 - alphas[a]);
      if (l2 > alphas[a] + kSpectralSlack) ++violations;
    }
  }
  o.require(violations == 0, "50 random digraphs (N <= 64) x 3 alphas, violations: " + std::to_string(violations));
  for (int a = 0; a < 3; ++a) o.note("alpha " + fmt(alphas[a]) + ": max(|lambda2| - alpha) = " + fmt(worst[a]));
  o.summary = "|lambda2(G)| <= alpha";
  return o;
}

std::vector<std::pair<std::string, DirectedGraph>> test_graphs() {
  std::vector<std::pair<std::string, DirectedGraph>> gs;
  for (Benchmark b : {Benchmark::Fig1a, Benchmark::Fig1c, Benchmark::Fig1d, Benchmark::Fig2b}) {
    gs.emplace_back(std::string(benchmark_name(b)), benchmark_graph(b));
  }
  gs.emplace_back("tree:3", generate_binary_tree(3));
  gs.emplace_back("tree:7", generate_binary_tree(7));
  gs.emplace_back("hierarchical:2", generate_hierarchical(2));
  gs.emplace_back("hierarchical:5", generate_hierarchical(5));
  for (std::size_t n : {32, 64, 128, 256}) gs.emplace_back("scalefree:" + std::to_string(n), generate_scale_free(n, n));
  return gs;
}

Outcome quantum_normalization() {
  Outcome o;
  const auto graphs = test_graphs();
  std::vector<double> row_err(graphs.size(), 0.0), norm_err(graphs.size(), 0.0);
  parallel_for(graphs.size(), [&](std::size_t gi) {
    const SzegedyOperator op(google_matrix(graphs[gi].second, 0.85));
    // Spectral series, m = 0..2048.
    const auto series = quantum_rank_series(op, {.steps = 2049}, Backend::Spectral);
    for (std::size_t m = 0; m < series.steps(); ++m) {
      double s = 0;
      for (double v : series.row(m)) s += v;
      row_err[gi] = std::max(row_err[gi], std::abs(s - 1.0));
    }
    // Direct iteration of U^2 on psi0, checking the norm at every step.
    WalkState state = initial_state(op);
    for (std::size_t m = 0; m <= 2048; ++m) {
      const double nrm = std::sqrt(state.norm_squared());
      norm_err[gi] = std::max(norm_err[gi], std::abs(nrm - 1.0));
      const RankVector iq = instantaneous_qpr(state);
      row_err[gi] = std::max(row_err[gi], std::abs(iq.sum() - 1.0));
      state = two_step(std::move(state), op);
    }
  });
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    o.require(row_err[gi] <= kNormTol && norm_err[gi] <= kNormTol,
              graphs[gi].first + " (N=" + std::to_string(graphs[gi].second.node_count()) +
                  "): max |sum I_q - 1| = " + fmt(row_err[gi], 3) + ", max | ||U^2 psi|| - 1 | = " +
                  fmt(norm_err[gi], 3));
  }
  o.summary = "sum_i I_q(i,m) = 1 and ||U^2 psi|| = 1 for m <= 2048";
  return o;
}

Outcome backend_equivalence() {
  Outcome o;
  std::vector<std::pair<std::string, DirectedGraph>> gs;
  for (Benchmark b : {Benchmark::Fig1a, Benchmark::Fig1b, Benchmark::Fig1c, Benchmark::Fig1d, Benchmark::Fig2b}) {
    gs.emplace_back(std::string(benchmark_name(b)), benchmark_graph(b));
  }
  for (std::uint64_t i = 0; i < 10; ++i) {
    gs.emplace_back("scalefree:64#" + std::to_string(i), generate_scale_free(64, derive_seed(kSeedBackend, 64, i)));
  }
  std::vector<double> diff(gs.size(), 0.0);
  std::vector<std::size_t> dim(gs.size(), 0);
  parallel_for(gs.size(), [&](std::size_t gi) {
    const SzegedyOperator op(google_matrix(gs[gi].second, 0.85));
    const auto sub = build_dynamical_subspace(op);
    dim[gi] = sub.dimension();
    const auto a = evolve(op, {.steps = 200});
    const auto b = evolve_spectral(sub, {.steps = 200});
    for (std::size_t m = 0; m < 200; ++m)
      for (std::size_t i = 0; i < op.nodes(); ++i) diff[gi] = std::max(diff[gi], std::abs(a.row(m)[i] - b.row(m)[i]));
  });
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    const std::size_t n = gs[gi].second.node_count();
    o.require(diff[gi] <= kBackendTol && dim[gi] <= 2 * n,
              gs[gi].first + ": max diff " + fmt(diff[gi], 3) + ", D = " + std::to_string(dim[gi]) + " (2N = " +
                  std::to_string(2 * n) + ")");
  }
  o.summary = "direct vs spectral series within 1e-8 at M = 200, D <= 2N";
  return o;
}

Outcome dense_oracle() {
  Outcome o;
  std::vector<std::pair<std::string, DirectedGraph>> gs{
      {"fig1a", benchmark_graph(Benchmark::Fig1a)}, {"fig1c", benchmark_graph(Benchmark::Fig1c)},
      {"fig1d", benchmark_graph(Benchmark::Fig1d)}, {"K3", complete_digraph(3)},
      {"tree:2", generate_binary_tree(2)},          {"single", DirectedGraph(1, {})},
      {"random4", oracle::random_digraph(4, 0.35, 11)}};
  for (const auto& [name, g] : gs) {
    for (double alpha : {0.25, 0.85, 1.0}) {
      const Eigen::MatrixXd gd = oracle::google(g, alpha);
      const auto dense = oracle::szegedy(gd);
      const SzegedyOperator op(gd);
      const std::size_t n = g.node_count();
      const auto dim = static_cast<Eigen::Index>(n * n);
      Eigen::MatrixXd composed(dim, dim);
      for (std::size_t col = 0; col < n * n; ++col) {
        const WalkState out = apply_swap(apply_reflection(WalkState::basis(n, col / n, col % n), op));
        for (std::size_t row = 0; row < n * n; ++row) {
          const Complex z = out.amplitudes()[row];
          composed(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = z.real();
          if (z.imag() != 0.0) composed(0, 0) = 1e9;
        }
      }
      const double err = (composed - dense.walk).cwiseAbs().maxCoeff();
      o.require(err <= kDenseTol, name + " alpha=" + fmt(alpha) + ": max |U_composed - S(2Pi-1)| = " + fmt(err, 3));
    }
  }
  o.summary = "explicit N^2 x N^2 S, Pi, U agree with the composed operations";
  return o;
}

Outcome small_networks() {
  Outcome o;
  const auto tree = generate_binary_tree(3);
  const SzegedyOperator op(google_matrix(tree, 0.85));
  const auto series = quantum_rank_series(op, {});
  const RankVector& avg = series.average();
  bool strictly_first = true;
  for (std::size_t i = 1; i < avg.size(); ++i) strictly_first = strictly_first && avg[0] > avg[i];
  o.require(strictly_first, "tree: average QPR root " + fmt(avg[0]) + " strictly first " + vec(avg.values(), 4));
  double peak = 0.0;
  for (std::size_t m = 0; m < series.steps(); ++m) peak = std::max(peak, series.row(m)[0]);
  const RankVector cl = classical_pagerank(tree, 0.85);
  o.require(peak > cl[0], "tree: max_m I_q(root, m) = " + fmt(peak) + " > classical " + fmt(cl[0]));

  const auto fig2b = benchmark_graph(Benchmark::Fig2b);
  const RankVector q2 = quantum_pagerank(fig2b, 0.85);
  const RankVector c2 = classical_pagerank(fig2b, 0.85);
  auto spread = [](const RankVector& r) {
    const auto [lo, hi] = std::minmax_element(r.values().begin(), r.values().end());
    return *hi - *lo;
  };
  o.require(spread(q2) < spread(c2), "fig2b: quantum spread " + fmt(spread(q2)) + " < classical " + fmt(spread(c2)));
  o.summary = "tree hierarchy and outperformance; fig2b homogeneity";
  return o;
}

struct StructureRow {
  bool hubs_kept = false;
  double beta_c = 0, beta_q = 0;
  std::size_t classes_c = 0, classes_q = 0;
};

Outcome scale_free_structure() {
  Outcome o;
  constexpr std::size_t kInstances = 20;
  const std::size_t sizes[] = {128};
  const auto ens = scale_free_ensembles(sizes, kInstances, kSeedStructure);
  std::vector<StructureRow> rows(kInstances);
  parallel_for(kInstances, [&](std::size_t i) {
    const auto& g = ens[0].graphs[i];
    const RankVector c = classical_pagerank(g, 0.85);
    const RankVector q = quantum_pagerank(g, 0.85);
    const auto co = c.order(), qo = q.order();
    bool kept = true;
    for (int h = 0; h < 3; ++h) kept = kept && std::find(qo.begin(), qo.begin() + 5, co[h]) != qo.begin() + 5;
    rows[i] = {kept, power_law_fit(c).exponent, power_law_fit(q).exponent, degeneracy_profile(c).class_count,
               degeneracy_profile(q).class_count};
  });
  std::size_t kept = 0, lifted = 0;
  std::vector<double> bc, bq;
  for (const auto& r : rows) {
    kept += r.hubs_kept;
    lifted += r.classes_q > r.classes_c;
    bc.push_back(r.beta_c);
    bq.push_back(r.beta_q);
  }
  o.require(static_cast<double>(kept) >= kMajority * kInstances,
            "(a) classical top-3 inside quantum top-5: " + fraction(kept, kInstances));
  o.require(median(bq) < median(bc),
            "(b) median beta: quantum " + fmt(median(bq), 4) + " < classical " + fmt(median(bc), 4));
  o.require(static_cast<double>(lifted) >= kMajority * kInstances,
            "(c) quantum class count > classical: " + fraction(lifted, kInstances));
  o.note("power-law fits exclude zeros, the last 5% and the tied floor class");
  o.summary = "hubs, power-law exponents and degeneracy on 20 x N=128";
  return o;
}

Outcome damping_stability() {
  Outcome o;
  constexpr std::size_t kInstances = 10;
  const std::size_t sizes[] = {128};
  const auto ens = scale_free_ensembles(sizes, kInstances, kSeedDamping);
  const auto grid = alpha_grid(0.01, 0.98, 10);
  std::vector<double> fc(kInstances), fq(kInstances);
  for (std::size_t i = 0; i < kInstances; ++i) {
    fc[i] = damping_sweep(ens[0].graphs[i], grid, Ranker{.kind = RankerKind::Classical}).min_fidelity;
    fq[i] = damping_sweep(ens[0].graphs[i], grid, Ranker{.kind = RankerKind::Quantum}).min_fidelity;
  }
  std::size_t wins = 0;
  for (std::size_t i = 0; i < kInstances; ++i) wins += fq[i] > fc[i];
  o.require(static_cast<double>(wins) >= kMajority * kInstances,
            "quantum min fidelity > classical: " + fraction(wins, kInstances));
  o.note("classical min fidelity " + vec(fc, 4));
  o.note("quantum   min fidelity " + vec(fq, 4));
  o.note("median quantum min fidelity " + fmt(median(fq), 4) + " (reference value 0.91, not asserted)");
  o.summary = "damping sweeps over 10 x N=128, alpha in [0.01, 0.98]";
  return o;
}

Outcome localization() {
  Outcome o;
  const std::size_t sizes[] = {32, 64, 128, 256};
  const auto ens = scale_free_ensembles(sizes, 20, kSeedLocalization);
  const IprScaling q = ipr_scaling(ens, Ranker{.kind = RankerKind::Quantum});
  const IprScaling u = ipr_scaling(ens, Ranker{.kind = RankerKind::Uniform});
  const IprScaling c = ipr_scaling(ens, Ranker{.kind = RankerKind::Classical});
  o.require(q.loglog_slope < kLocalizationSlope, "quantum IPR slope " + fmt(q.loglog_slope, 4) + " < 0.9");
  o.require(std::abs(u.loglog_slope - 1.0) <= kUniformSlopeTol,
            "uniform control slope " + fmt(u.loglog_slope, 10) + " = 1 within 1e-6");
  for (const auto& p : q.points) o.note("N=" + std::to_string(p.nodes) + " quantum mean IPR " + fmt(p.mean, 4));
  o.note("classical slope " + fmt(c.loglog_slope, 4));
  o.summary = "IPR scaling over N in {32, 64, 128, 256}";
  return o;
}

Outcome attack() {
  Outcome o;
  constexpr std::size_t kInstances = 20;
  const std::size_t sizes[] = {32};
  const auto ens = scale_free_ensembles(sizes, kInstances, kSeedAttack);
  std::vector<double> corr_c(kInstances * 3), corr_q(kInstances * 3);
  parallel_for(kInstances * 3, [&](std::size_t t) {
    const auto& g = ens[0].graphs[t / 3];
    const std::size_t k = 1 + t % 3;
    corr_c[t] = attack_sensitivity(g, k, Ranker{.kind = RankerKind::Classical}).rank_correlation;
    corr_q[t] = attack_sensitivity(g, k, Ranker{.kind = RankerKind::Quantum}).rank_correlation;
  });
  o.require(mean(corr_q) < mean(corr_c),
            "mean survivor tau: quantum " + fmt(mean(corr_q), 4) + " < classical " + fmt(mean(corr_c), 4));
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<double> c, q;
    for (std::size_t i = 0; i < kInstances; ++i) {
      c.push_back(corr_c[i * 3 + k - 1]);
      q.push_back(corr_q[i * 3 + k - 1]);
    }
    o.note("k=" + std::to_string(k) + ": classical " + fmt(mean(c), 4) + ", quantum " + fmt(mean(q), 4));
  }
  o.summary = "coordinated hub removal on 20 x N=32, k = 1..3";
  return o;
}

Outcome unit_oracles() {
  Outcome o;
  // 1/3 and 2/3 are already rounded, so 9/5 is reachable only up to the
  // rounding of the inputs: two ulps of 1.8.
  const double v = ipr(RankVector({1.0 / 3, 2.0 / 3}));
  o.require(std::abs(v - 1.8) <= kIprUlps * std::numeric_limits<double>::epsilon() * 1.8,
            "ipr((1/3, 2/3)) = " + fmt(v, 17));
  const double f = fidelity(RankVector({1.0, 0.0}), RankVector({0.5, 0.5}));
  o.require(std::abs(f - std::sqrt(0.5)) <= 1e-12, "fidelity((1,0),(1/2,1/2)) = " + fmt(f, 17));
  for (double beta : {0.5, 0.9, 2.0}) {
    std::vector<double> p(100);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::pow(static_cast<double>(k + 1), -beta);
    const double got = power_law_fit(RankVector(p).normalized()).exponent;
    o.require(std::abs(got - beta) <= kPlantedTol, "planted beta " + fmt(beta) + " -> " + fmt(got, 12));
  }
  const std::vector<double> a{0.1, 0.4, 0.2, 0.3}, r{0.4, 0.1, 0.3, 0.2};
  o.require(kendall_tau_b(a, a) == 1.0, "tau(identical) = " + fmt(kendall_tau_b(a, a)));
  o.require(kendall_tau_b(a, r) == -1.0, "tau(reversed) = " + fmt(kendall_tau_b(a, r)));
  o.summary = "ipr, fidelity, power-law and Kendall tau oracles";
  return o;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::istringstream in;
  std::ostringstream out, err;
  code = cli::run(args, in, out, err);
  return out.str() + "\x1f" + err.str();
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> pipelines{
      {"gen", "--gen", "scalefree:128", "--seed", "7"},
      {"gen", "--gen", "hierarchical:3", "--format", "pajek"},
      {"rank", "--gen", "scalefree:128", "--seed", "7"},
      {"rank", "--benchmark", "fig1d", "--alpha", "1.0", "--bare"},
      {"rank", "--gen", "scalefree:64", "--seed", "3", "--format", "json"},
      {"qrank", "--benchmark", "fig1d", "--alpha", "0.85", "--steps", "512", "--format", "csv"},
      {"qrank", "--gen", "scalefree:64", "--seed", "2", "--steps", "256", "--format", "json"},
      {"sweep", "--gen", "scalefree:64", "--seed", "7", "--ranker", "quantum", "--grid", "0.01:0.98:6"},
      {"sweep", "--gen", "scalefree:64", "--seed", "7", "--ranker", "classical", "--format", "json"},
      {"attack", "--gen", "scalefree:32", "--seed", "5", "--k", "3"},
      {"attack", "--gen", "scalefree:32", "--seed", "5", "--k", "2", "--format", "json"},
      {"analyze", "--gen", "scalefree:128", "--seed", "1"},
      {"analyze", "--gen", "scalefree:64", "--seed", "1", "--format", "json"},
      {"compare", "--benchmark", "fig2b"},
      {"compare", "--gen", "tree:3", "--format", "json"},
  };
  for (const auto& args : pipelines) {
    int c1 = -1, c2 = -1;
    const std::string first = run_cli(args, c1);
    const std::string second = run_cli(args, c2);
    std::string line;
    for (const auto& a : args) line += a + " ";
    o.require(c1 == 0 && c2 == 0 && first == second,
              line + "-> exit " + std::to_string(c1) + ", " + std::to_string(first.size()) + " bytes, identical=" +
                  (first == second ? "yes" : "no"));
  }
  o.summary = "CLI reruns are byte-identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion,-c", selected, "Criteria to run (default: all)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::function<Outcome()>> criteria{
      {1, fig1_examples},     {2, spectral_bound},        {3, quantum_normalization}, {4, backend_equivalence},
      {5, dense_oracle},      {6, small_networks},        {7, scale_free_structure},  {8, damping_stability},
      {9, localization},      {10, attack},               {11, unit_oracles},         {12, determinism},
  };
  if (selected.empty()) {
    for (const auto& [id, fn] : criteria) selected.push_back(id);
  }

  bool all = true;
  for (int id : selected) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria.at(id)();
    } catch (const std::exception& e) {
      out.pass = false;
      out.summary = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << out.summary << " ["
              << fmt(secs, 3) << " s]\n";
    for (const auto& d : out.details) std::cout << "    " << d << '\n';
    std::cout.flush();
    all = all && out.pass;
  }
  return all ? 0 : 1;
}
