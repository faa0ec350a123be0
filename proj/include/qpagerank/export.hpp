#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpagerank/analysis.hpp"
#include "qpagerank/classical.hpp"
#include "qpagerank/graph.hpp"
#include "qpagerank/quantum_walk.hpp"

namespace qpr {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// Where a result came from; attached to JSON reports.
struct Provenance {
  std::string graph_hash;
  std::optional<std::uint64_t> seed;
  double alpha = 0.85;
  std::size_t steps = 0;
  std::string ranker;
};

nlohmann::json to_json(const Provenance& p);

// ---- rank vectors: `node_index,label,score`, descending score ------------

struct RankRow {
  NodeId node = 0;
  std::string label;
  double score = 0.0;
};

void write_rank_csv(std::ostream& out, const RankVector& ranks, const DirectedGraph& g);
std::vector<RankRow> read_rank_csv(std::istream& in);
/// Scores re-indexed by node id.
RankVector rank_vector_from_rows(const std::vector<RankRow>& rows);

nlohmann::json rank_json(const RankVector& ranks, const DirectedGraph& g);

// ---- quantum series: `m,node_0,...` rows and a final `avg,...` row --------

struct SeriesTable {
  std::vector<std::vector<double>> rows;
  std::vector<double> average;
};

void write_series_csv(std::ostream& out, const QuantumRankSeries& series);
SeriesTable read_series_csv(std::istream& in);
nlohmann::json series_json(const QuantumRankSeries& series);

// ---- fidelity sweep: alpha grid as header row and first column ------------

void write_sweep_csv(std::ostream& out, const FidelitySweep& sweep);
/// Returns the grid and the row-major matrix.
std::pair<std::vector<double>, std::vector<double>> read_sweep_csv(std::istream& in);
nlohmann::json sweep_json(const FidelitySweep& sweep, const Provenance& provenance);

nlohmann::json power_law_json(const PowerLawFit& fit, const Provenance& provenance);
nlohmann::json attack_json(const AttackReport& report, std::size_t k, const Provenance& provenance);

/// Any CSV written by the tool: header plus rows of equal width.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv_table(std::istream& in);

/// Splits one CSV record; handles double-quoted fields.
std::vector<std::string> split_csv_record(const std::string& line);
std::string csv_field(const std::string& text);

}  // namespace qpr
