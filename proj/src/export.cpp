#include "qpagerank/export.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "qpagerank/error.hpp"

namespace qpr {
namespace {

double parse_number(const std::string& text, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(ErrorKind::Parse, line, "bad number '" + text + "'");
  }
  return value;
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error(ErrorKind::Numerical, "cannot format number");
  return std::string(buf, ptr);
}

nlohmann::json to_json(const Provenance& p) {
  nlohmann::json j;
  j["graph_hash"] = p.graph_hash;
  j["seed"] = p.seed ? nlohmann::json(*p.seed) : nlohmann::json(nullptr);
  j["alpha"] = p.alpha;
  j["steps"] = p.steps;
  j["ranker"] = p.ranker;
  return j;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

CsvTable read_csv_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw ParseError(ErrorKind::MissingHeader, 1, "missing header row");
  CsvTable table;
  table.header = split_csv_record(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_record(line);
    if (fields.size() != table.header.size()) throw ParseError(ErrorKind::Parse, line_no, "wrong field count");
    table.rows.push_back(std::move(fields));
  }
  return table;
}

void write_rank_csv(std::ostream& out, const RankVector& ranks, const DirectedGraph& g) {
  if (ranks.size() != g.node_count()) throw Error(ErrorKind::DimensionMismatch, "ranks do not match graph");
  out << "node_index,label,score\n";
  for (NodeId v : ranks.order()) {
    out << v << ',' << csv_field(g.label(v)) << ',' << format_number(ranks[v]) << '\n';
  }
}

std::vector<RankRow> read_rank_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || split_csv_record(line) != std::vector<std::string>{"node_index", "label", "score"}) {
    throw ParseError(ErrorKind::MissingHeader, 1, "expected header 'node_index,label,score'");
  }
  std::vector<RankRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_record(line);
    if (fields.size() != 3) throw ParseError(ErrorKind::Parse, line_no, "expected 3 fields");
    const double node = parse_number(fields[0], line_no);
    if (node < 0 || node != std::floor(node)) throw ParseError(ErrorKind::Parse, line_no, "bad node index");
    rows.push_back({static_cast<NodeId>(node), fields[1], parse_number(fields[2], line_no)});
  }
  return rows;
}

RankVector rank_vector_from_rows(const std::vector<RankRow>& rows) {
  std::vector<double> values(rows.size(), -1.0);
  for (const RankRow& r : rows) {
    if (r.node >= rows.size() || values[r.node] >= 0.0) {
      throw Error(ErrorKind::InvalidArgument, "rank rows do not cover 0..N-1 exactly once");
    }
    values[r.node] = r.score;
  }
  return RankVector(std::move(values));
}

nlohmann::json rank_json(const RankVector& ranks, const DirectedGraph& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (NodeId v : ranks.order()) {
    rows.push_back({{"node_index", v}, {"label", g.label(v)}, {"score", ranks[v]}});
  }
  return rows;
}

void write_series_csv(std::ostream& out, const QuantumRankSeries& series) {
  out << 'm';
  for (std::size_t i = 0; i < series.nodes(); ++i) out << ",node_" << i;
  out << '\n';
  for (std::size_t m = 0; m < series.steps(); ++m) {
    out << m;
    for (double v : series.row(m)) out << ',' << format_number(v);
    out << '\n';
  }
  out << "avg";
  for (double v : series.average().values()) out << ',' << format_number(v);
  out << '\n';
}

SeriesTable read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(ErrorKind::MissingHeader, 1, "empty series file");
  const auto header = split_csv_record(line);
  if (header.empty() || header[0] != "m") throw ParseError(ErrorKind::MissingHeader, 1, "expected header 'm,node_0,...'");
  const std::size_t n = header.size() - 1;
  SeriesTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_record(line);
    if (fields.size() != n + 1) throw ParseError(ErrorKind::Parse, line_no, "wrong field count");
    std::vector<double> values;
    for (std::size_t i = 1; i <= n; ++i) values.push_back(parse_number(fields[i], line_no));
    if (fields[0] == "avg") {
      table.average = std::move(values);
    } else {
      if (parse_number(fields[0], line_no) != static_cast<double>(table.rows.size())) {
        throw ParseError(ErrorKind::Parse, line_no, "rows out of order");
      }
      table.rows.push_back(std::move(values));
    }
  }
  if (table.average.empty()) throw ParseError(ErrorKind::Parse, line_no, "missing avg row");
  return table;
}

nlohmann::json series_json(const QuantumRankSeries& series) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t m = 0; m < series.steps(); ++m) rows.push_back(to_vector(series.row(m)));
  return {{"nodes", series.nodes()},
          {"steps", series.steps()},
          {"average_offset", series.average_offset()},
          {"instantaneous", std::move(rows)},
          {"average", to_vector(series.average().values())}};
}

void write_sweep_csv(std::ostream& out, const FidelitySweep& sweep) {
  out << "alpha";
  for (double a : sweep.alpha_grid) out << ',' << format_number(a);
  out << '\n';
  for (std::size_t i = 0; i < sweep.alpha_grid.size(); ++i) {
    out << format_number(sweep.alpha_grid[i]);
    for (std::size_t j = 0; j < sweep.alpha_grid.size(); ++j) out << ',' << format_number(sweep.at(i, j));
    out << '\n';
  }
}

std::pair<std::vector<double>, std::vector<double>> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(ErrorKind::MissingHeader, 1, "empty sweep file");
  const auto header = split_csv_record(line);
  if (header.empty() || header[0] != "alpha") throw ParseError(ErrorKind::MissingHeader, 1, "expected header 'alpha,...'");
  std::vector<double> grid;
  for (std::size_t i = 1; i < header.size(); ++i) grid.push_back(parse_number(header[i], 1));
  std::vector<double> matrix;
  std::size_t line_no = 1;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_record(line);
    if (fields.size() != grid.size() + 1) throw ParseError(ErrorKind::Parse, line_no, "wrong field count");
    if (row >= grid.size() || parse_number(fields[0], line_no) != grid[row]) {
      throw ParseError(ErrorKind::Parse, line_no, "row alpha does not match the header");
    }
    for (std::size_t j = 1; j < fields.size(); ++j) matrix.push_back(parse_number(fields[j], line_no));
    ++row;
  }
  if (row != grid.size()) throw ParseError(ErrorKind::Parse, line_no, "sweep matrix is not square");
  return {std::move(grid), std::move(matrix)};
}

nlohmann::json sweep_json(const FidelitySweep& sweep, const Provenance& provenance) {
  const std::size_t n = sweep.alpha_grid.size();
  nlohmann::json matrix = nlohmann::json::array();
  nlohmann::json ranks = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    matrix.push_back(std::vector<double>(sweep.pairwise.begin() + static_cast<std::ptrdiff_t>(i * n),
                                         sweep.pairwise.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
    ranks.push_back(to_vector(sweep.ranks[i].values()));
  }
  return {{"alpha_grid", sweep.alpha_grid},
          {"fidelity", std::move(matrix)},
          {"min_fidelity", sweep.min_fidelity},
          {"ranks", std::move(ranks)},
          {"provenance", to_json(provenance)}};
}

nlohmann::json power_law_json(const PowerLawFit& fit, const Provenance& provenance) {
  return {{"exponent", fit.exponent},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"fitted_range", {fit.range.first, fit.range.last}},
          {"provenance", to_json(provenance)}};
}

nlohmann::json attack_json(const AttackReport& report, std::size_t k, const Provenance& provenance) {
  return {{"k", k},
          {"removed", report.removed},
          {"survivors", report.survivors},
          {"pre_ranking", report.pre_scores},
          {"post_ranking", report.post_scores},
          {"rank_correlation", report.rank_correlation},
          {"mean_displacement", report.mean_displacement},
          {"max_displacement", report.max_displacement},
          {"provenance", to_json(provenance)}};
}

}  // namespace qpr
