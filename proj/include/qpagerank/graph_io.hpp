#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "qpagerank/graph.hpp"

namespace qpr {

// Edge list: one `src dst` pair per line, `#` starts a comment. Tokens are
// either all non-negative integers (used as node ids) or arbitrary strings
// (mapped to ids in order of first appearance and kept as labels). A comment
// of the form `# nodes N` declares the node count, which lets isolated nodes
// survive a round trip; without it integer ids must cover 0..max.
DirectedGraph parse_edge_list(std::string_view text);
DirectedGraph parse_edge_list(std::istream& in);

// Pajek subset: `*Vertices N`, vertex lines `id "label"`, `*Arcs`, arc lines
// `src dst [weight]`. Ids are 1-based on disk. `%` lines are comments and a
// leading `*Network` line is accepted. Weights are ignored.
DirectedGraph parse_pajek(std::string_view text);
DirectedGraph parse_pajek(std::istream& in);

/// Canonical edge list: `# nodes N` header, arcs sorted by (src, dst).
std::string to_edge_list(const DirectedGraph& g);
std::string to_pajek(const DirectedGraph& g);

/// Reads a graph file; `.net` and `.paj` are Pajek, anything else an edge list.
DirectedGraph load_graph(const std::filesystem::path& path);

/// FNV-1a over the canonical edge list and labels.
std::uint64_t graph_hash(const DirectedGraph& g);
std::string graph_hash_hex(const DirectedGraph& g);

}  // namespace qpr
