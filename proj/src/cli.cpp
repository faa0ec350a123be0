#include "qpagerank/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpagerank/analysis.hpp"
#include "qpagerank/classical.hpp"
#include "qpagerank/error.hpp"
#include "qpagerank/export.hpp"
#include "qpagerank/generators.hpp"
#include "qpagerank/graph_io.hpp"
#include "qpagerank/quantum_walk.hpp"

namespace qpr::cli {
namespace {

struct Config {
  std::string command;
  std::string input;
  std::string gen;
  std::string benchmark;
  std::string output;
  std::string format = "csv";
  std::string ranker;
  std::string grid = "0.01:0.98:10";
  std::string bare;
  std::string backend = "auto";
  double alpha = 0.85;
  double tol = 1e-12;
  std::size_t steps = 2048;
  std::size_t offset = 0;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  bool bare_given = false;
};

class InvalidParameters : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  DirectedGraph graph;
  std::optional<std::uint64_t> seed;
};

bool looks_like_pajek(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '%') continue;
    return line[start] == '*';
  }
  return false;
}

Input load_input(const Config& cfg, std::istream& in) {
  const int sources = int(!cfg.input.empty()) + int(!cfg.gen.empty()) + int(!cfg.benchmark.empty());
  if (sources != 1) {
    throw InvalidParameters("exactly one of --input, --gen, --benchmark is required");
  }
  if (!cfg.gen.empty()) {
    return {generate(parse_generator_spec(cfg.gen, cfg.seed)), cfg.seed};
  }
  if (!cfg.benchmark.empty()) return {benchmark_graph(parse_benchmark(cfg.benchmark)), std::nullopt};
  if (cfg.input == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    return {looks_like_pajek(text) ? parse_pajek(text) : parse_edge_list(text), std::nullopt};
  }
  return {load_graph(cfg.input), std::nullopt};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw InvalidParameters("--grid expects lo:hi:count");
  try {
    std::size_t used = 0;
    const double lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    const double hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    const long count = std::stol(parts[2], &used);
    if (used != parts[2].size() || count < 1) throw std::invalid_argument("count");
    return alpha_grid(lo, hi, static_cast<std::size_t>(count));
  } catch (const std::logic_error&) {
    throw InvalidParameters("--grid expects lo:hi:count with numeric values");
  }
}

Backend parse_backend(const std::string& name) {
  if (name == "auto") return Backend::Auto;
  if (name == "direct") return Backend::Direct;
  if (name == "spectral") return Backend::Spectral;
  throw InvalidParameters("unknown backend '" + name + "'");
}

void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  throw InvalidParameters("format '" + cfg.format + "' is not supported by '" + cfg.command + "'");
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidParameters("--alpha must lie in [0, 1]");
}

Ranker make_ranker(const Config& cfg, RankerKind kind) {
  Ranker r;
  r.kind = kind;
  r.alpha = cfg.alpha;
  r.evolve.steps = cfg.steps;
  r.evolve.average_offset = cfg.offset;
  r.backend = parse_backend(cfg.backend);
  r.power.tolerance = cfg.tol;
  return r;
}

std::vector<RankerKind> selected_rankers(const Config& cfg, const char* fallback, bool allow_both) {
  const std::string name = cfg.ranker.empty() ? fallback : cfg.ranker;
  if (name == "both") {
    if (!allow_both) throw InvalidParameters("--ranker both is not supported by '" + cfg.command + "'");
    return {RankerKind::Classical, RankerKind::Quantum};
  }
  try {
    return {parse_ranker(name)};
  } catch (const Error&) {
    throw InvalidParameters("unknown ranker '" + name + "'");
  }
}

Provenance provenance(const Config& cfg, const Input& input, std::string_view ranker, bool quantum) {
  Provenance p;
  p.graph_hash = graph_hash_hex(input.graph);
  p.seed = input.seed;
  p.alpha = cfg.alpha;
  p.steps = quantum ? cfg.steps : 0;
  p.ranker = std::string(ranker);
  return p;
}

void warn_power_method(const PowerMethodResult& r, std::ostream& err) {
  if (r.degenerate) {
    err << "warning: power method iterates vanish (zero limit)\n";
  } else if (!r.converged) {
    err << "warning: power method did not converge after " << r.iterations << " iterations";
    if (r.cycle_period != 0) err << " (period-" << r.cycle_period << " cycle)";
    err << '\n';
  }
}

// ---- commands -----------------------------------------------------------

void cmd_gen(const Config& cfg, const Input& input, std::ostream& out) {
  require_format(cfg, {"csv", "edgelist", "pajek", "json"});
  const DirectedGraph& g = input.graph;
  if (cfg.format == "pajek") {
    out << to_pajek(g);
  } else if (cfg.format == "json") {
    nlohmann::json arcs = nlohmann::json::array();
    for (const Arc& a : g.arcs()) arcs.push_back({a.src, a.dst});
    nlohmann::json j{{"nodes", g.node_count()}, {"arcs", std::move(arcs)}, {"graph_hash", graph_hash_hex(g)}};
    if (g.has_labels()) j["labels"] = g.labels();
    out << j.dump(2) << '\n';
  } else {
    out << to_edge_list(g);
  }
}

void cmd_rank(const Config& cfg, const Input& input, std::ostream& out, std::ostream& err) {
  require_format(cfg, {"csv", "json"});
  const DirectedGraph& g = input.graph;
  PowerMethodOptions opts;
  opts.tolerance = cfg.tol;
  PowerMethodResult result;
  std::string method;
  if (cfg.bare_given) {
    // Undamped runs start from the first basis vector.
    std::vector<double> start(g.node_count(), 0.0);
    start[0] = 1.0;
    const std::string which = cfg.bare.empty() ? "E" : cfg.bare;
    if (which == "H") {
      result = power_method(hyperlink_matrix(g), start, opts);
    } else if (which == "E") {
      result = power_method(patch_dangling(hyperlink_matrix(g)), start, opts);
    } else {
      throw InvalidParameters("--bare takes E or H");
    }
    method = "bare-" + which;
  } else {
    result = solve_pagerank(google_matrix(g, cfg.alpha), opts);
    method = "google";
  }
  warn_power_method(result, err);
  if (cfg.format == "json") {
    Provenance p = provenance(cfg, input, "classical", false);
    if (cfg.bare_given) p.alpha = 1.0;
    nlohmann::json j{{"matrix", method},
                     {"iterations", result.iterations},
                     {"converged", result.converged},
                     {"degenerate", result.degenerate},
                     {"cycle_period", result.cycle_period},
                     {"ranks", rank_json(result.ranks, g)},
                     {"provenance", to_json(p)}};
    out << j.dump(2) << '\n';
  } else {
    write_rank_csv(out, result.ranks, g);
  }
}

void cmd_qrank(const Config& cfg, const Input& input, std::ostream& out) {
  require_format(cfg, {"csv", "json"});
  EvolveOptions opts;
  opts.steps = cfg.steps;
  opts.average_offset = cfg.offset;
  const SzegedyOperator op(google_matrix(input.graph, cfg.alpha));
  const QuantumRankSeries series = quantum_rank_series(op, opts, parse_backend(cfg.backend));
  if (cfg.format == "json") {
    nlohmann::json j = series_json(series);
    j["provenance"] = to_json(provenance(cfg, input, "quantum", true));
    out << j.dump(2) << '\n';
  } else {
    write_series_csv(out, series);
  }
}

void cmd_sweep(const Config& cfg, const Input& input, std::ostream& out) {
  require_format(cfg, {"csv", "json"});
  const RankerKind kind = selected_rankers(cfg, "quantum", false).front();
  const std::vector<double> grid = parse_grid(cfg.grid);
  const FidelitySweep sweep = damping_sweep(input.graph, grid, make_ranker(cfg, kind));
  if (cfg.format == "json") {
    Provenance p = provenance(cfg, input, ranker_name(kind), kind == RankerKind::Quantum);
    out << sweep_json(sweep, p).dump(2) << '\n';
  } else {
    write_sweep_csv(out, sweep);
  }
}

void cmd_attack(const Config& cfg, const Input& input, std::ostream& out) {
  require_format(cfg, {"csv", "json"});
  const auto kinds = selected_rankers(cfg, "both", true);
  std::vector<std::pair<RankerKind, AttackReport>> reports;
  for (RankerKind kind : kinds) reports.emplace_back(kind, attack_sensitivity(input.graph, cfg.k, make_ranker(cfg, kind)));
  if (cfg.format == "json") {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [kind, report] : reports) {
      const auto name = ranker_name(kind);
      j[std::string(name)] =
          attack_json(report, cfg.k, provenance(cfg, input, name, kind == RankerKind::Quantum));
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "ranker,k,rank_correlation,mean_displacement,max_displacement,removed\n";
  for (const auto& [kind, report] : reports) {
    std::string removed;
    for (NodeId v : report.removed) removed += (removed.empty() ? "" : " ") + std::to_string(v);
    out << ranker_name(kind) << ',' << cfg.k << ',' << format_number(report.rank_correlation) << ','
        << format_number(report.mean_displacement) << ',' << format_number(report.max_displacement) << ','
        << removed << '\n';
  }
}

void cmd_analyze(const Config& cfg, const Input& input, std::ostream& out) {
  require_format(cfg, {"csv", "json"});
  const auto kinds = selected_rankers(cfg, "both", true);
  struct Row {
    RankerKind kind;
    RankVector ranks;
    PowerLawFit fit;
    DegeneracyProfile degeneracy;
  };
  std::vector<Row> rows;
  for (RankerKind kind : kinds) {
    RankVector r = rank(input.graph, make_ranker(cfg, kind));
    PowerLawFit fit = power_law_fit(r);
    DegeneracyProfile d = degeneracy_profile(r);
    rows.push_back({kind, std::move(r), fit, std::move(d)});
  }
  if (cfg.format == "json") {
    nlohmann::json j = nlohmann::json::object();
    for (const Row& row : rows) {
      const auto name = ranker_name(row.kind);
      nlohmann::json entry = power_law_json(row.fit, provenance(cfg, input, name, row.kind == RankerKind::Quantum));
      entry["ipr"] = ipr(row.ranks);
      entry["degeneracy"] = {{"class_count", row.degeneracy.class_count},
                             {"tail_class_size", row.degeneracy.tail_class_size},
                             {"largest_class_size", row.degeneracy.largest_class_size}};
      j[std::string(name)] = std::move(entry);
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "ranker,exponent,intercept,r_squared,fit_first,fit_last,ipr,class_count,tail_class_size\n";
  for (const Row& row : rows) {
    out << ranker_name(row.kind) << ',' << format_number(row.fit.exponent) << ','
        << format_number(row.fit.intercept) << ',' << format_number(row.fit.r_squared) << ','
        << row.fit.range.first << ',' << row.fit.range.last << ',' << format_number(ipr(row.ranks)) << ','
        << row.degeneracy.class_count << ',' << row.degeneracy.tail_class_size << '\n';
  }
}

void cmd_compare(const Config& cfg, const Input& input, std::ostream& out) {
  require_format(cfg, {"csv", "json"});
  const DirectedGraph& g = input.graph;
  const RankVector classical = rank(g, make_ranker(cfg, RankerKind::Classical));
  const RankVector quantum = rank(g, make_ranker(cfg, RankerKind::Quantum));
  const auto c_order = classical.order();
  const auto q_order = quantum.order();
  std::vector<std::size_t> c_pos(g.node_count()), q_pos(g.node_count());
  for (std::size_t i = 0; i < c_order.size(); ++i) c_pos[c_order[i]] = i + 1;
  for (std::size_t i = 0; i < q_order.size(); ++i) q_pos[q_order[i]] = i + 1;
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (NodeId v : c_order) {
      rows.push_back({{"node", v},
                      {"label", g.label(v)},
                      {"classical", classical[v]},
                      {"quantum_avg", quantum[v]},
                      {"classical_rank", c_pos[v]},
                      {"quantum_rank", q_pos[v]}});
    }
    out << nlohmann::json{{"rows", std::move(rows)}, {"provenance", to_json(provenance(cfg, input, "both", true))}}
               .dump(2)
        << '\n';
    return;
  }
  out << "node,label,classical,quantum_avg,classical_rank,quantum_rank\n";
  for (NodeId v : c_order) {
    out << v << ',' << csv_field(g.label(v)) << ',' << format_number(classical[v]) << ','
        << format_number(quantum[v]) << ',' << c_pos[v] << ',' << q_pos[v] << '\n';
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return kFileNotFound;
    case ErrorKind::Parse:
    case ErrorKind::NoNodes:
    case ErrorKind::MissingHeader:
    case ErrorKind::UndeclaredVertex:
    case ErrorKind::DuplicateVertex: return kParseError;
    case ErrorKind::InvalidArgument:
    case ErrorKind::OutOfRange:
    case ErrorKind::DimensionMismatch: return kInvalidParameters;
    case ErrorKind::NotStochastic:
    case ErrorKind::Numerical: return kFailure;
  }
  return kFailure;
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

void add_common(CLI::App& sub, Config& cfg) {
  sub.add_option("--input", cfg.input, "Graph file (edge list or Pajek); '-' reads stdin");
  sub.add_option("--gen", cfg.gen, "Generator spec family:size (scalefree, hierarchical, tree)");
  sub.add_option("--benchmark", cfg.benchmark, "Benchmark graph: fig1a fig1b fig1c fig1d fig2b");
  sub.add_option("--seed", cfg.seed, "Generator seed");
  sub.add_option("--output", cfg.output, "Output path (default stdout)");
  sub.add_option("--format", cfg.format, "csv or json");
}

void add_walk(CLI::App& sub, Config& cfg) {
  sub.add_option("--steps", cfg.steps, "Recorded two-steps M")->check(CLI::PositiveNumber);
  sub.add_option("--offset", cfg.offset, "First step included in the time average");
  sub.add_option("--backend", cfg.backend, "auto, direct or spectral");
}

void add_ranking(CLI::App& sub, Config& cfg) {
  sub.add_option("--alpha", cfg.alpha, "Damping parameter");
  sub.add_option("--tol", cfg.tol, "Power-method L1 tolerance")->check(CLI::PositiveNumber);
  sub.add_option("--ranker", cfg.ranker, "classical, quantum or both");
  add_walk(sub, cfg);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Classical and quantum PageRank on directed networks", "qrank"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Write a generated or benchmark graph");
  add_common(*gen, cfg);

  auto* rank_cmd = app.add_subcommand("rank", "Classical PageRank");
  add_common(*rank_cmd, cfg);
  rank_cmd->add_option("--alpha", cfg.alpha, "Damping parameter");
  rank_cmd->add_option("--tol", cfg.tol, "Power-method L1 tolerance")->check(CLI::PositiveNumber);
  auto* bare = rank_cmd->add_option("--bare", cfg.bare, "Iterate E (default) or H without damping");
  bare->expected(0, 1);

  auto* qrank = app.add_subcommand("qrank", "Instantaneous and average quantum PageRank");
  add_common(*qrank, cfg);
  qrank->add_option("--alpha", cfg.alpha, "Damping parameter");
  add_walk(*qrank, cfg);

  auto* sweep = app.add_subcommand("sweep", "Pairwise fidelity over a damping grid");
  add_common(*sweep, cfg);
  add_ranking(*sweep, cfg);
  sweep->add_option("--grid", cfg.grid, "Damping grid lo:hi:count, inclusive");

  auto* attack = app.add_subcommand("attack", "Remove the top-k nodes and compare orders");
  add_common(*attack, cfg);
  add_ranking(*attack, cfg);
  attack->add_option("--k", cfg.k, "Number of removed hubs")->check(CLI::NonNegativeNumber);

  auto* analyze = app.add_subcommand("analyze", "Power-law fit, IPR and degeneracy of the ranks");
  add_common(*analyze, cfg);
  add_ranking(*analyze, cfg);

  auto* compare = app.add_subcommand("compare", "Classical and average quantum ranks side by side");
  add_common(*compare, cfg);
  compare->add_option("--alpha", cfg.alpha, "Damping parameter");
  compare->add_option("--tol", cfg.tol, "Power-method L1 tolerance")->check(CLI::PositiveNumber);
  add_walk(*compare, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help lands here as CallForHelp of the sub-app in some paths.
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << one_line(e.what()) << '\n';
    return kInvalidParameters;
  }

  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
  cfg.bare_given = bare->count() > 0;

  try {
    check_alpha(cfg.alpha);
    if (cfg.command != "gen" && cfg.command != "rank" && cfg.offset >= cfg.steps) {
      throw InvalidParameters("--offset must be smaller than --steps");
    }
    parse_backend(cfg.backend);

    const Input input = load_input(cfg, in);
    std::ostringstream buffer;
    if (cfg.command == "gen") cmd_gen(cfg, input, buffer);
    else if (cfg.command == "rank") cmd_rank(cfg, input, buffer, err);
    else if (cfg.command == "qrank") cmd_qrank(cfg, input, buffer);
    else if (cfg.command == "sweep") cmd_sweep(cfg, input, buffer);
    else if (cfg.command == "attack") cmd_attack(cfg, input, buffer);
    else if (cfg.command == "analyze") cmd_analyze(cfg, input, buffer);
    else if (cfg.command == "compare") cmd_compare(cfg, input, buffer);

    if (cfg.output.empty() || cfg.output == "-") {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) {
        err << "error: cannot open output file '" << cfg.output << "'\n";
        return kFileNotFound;
      }
      file << buffer.str();
      if (!file) {
        err << "error: failed writing '" << cfg.output << "'\n";
        return kFailure;
      }
    }
    return kOk;
  } catch (const InvalidParameters& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kInvalidParameters;
  } catch (const ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return exit_code_for(e.kind());
  } catch (const Error& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kFailure;
  }
}

}  // namespace qpr::cli
