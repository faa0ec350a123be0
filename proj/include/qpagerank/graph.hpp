#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qpr {

using NodeId = std::uint32_t;

struct Arc {
  NodeId src = 0;
  NodeId dst = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Simple directed graph on nodes 0..N-1. Arcs are kept sorted by (src, dst)
// with duplicates collapsed; self-loops are rejected. Immutable once built.
class DirectedGraph {
 public:
  DirectedGraph(std::size_t node_count, std::vector<Arc> arcs,
                std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::span<const Arc> arcs() const noexcept { return arcs_; }

  /// Arcs leaving `node`, sorted by destination.
  std::span<const Arc> out_arcs(NodeId node) const;
  std::size_t out_degree(NodeId node) const;
  bool has_arc(NodeId src, NodeId dst) const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// The node's label, or its decimal index when the graph is unlabeled.
  std::string label(NodeId node) const;

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  void check_node(NodeId node) const;

  std::size_t node_count_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> offsets_;
  std::vector<std::string> labels_;
};

std::size_t out_degree(const DirectedGraph& g, NodeId node);

/// Induced subgraph on the survivors of a node removal.
struct ReducedGraph {
  DirectedGraph graph;
  /// original_index[new_id] = id in the source graph.
  std::vector<NodeId> original_index;
};

ReducedGraph remove_nodes(const DirectedGraph& g, std::span<const NodeId> victims);

/// All N(N-1) arcs.
DirectedGraph complete_digraph(std::size_t nodes);

}  // namespace qpr
