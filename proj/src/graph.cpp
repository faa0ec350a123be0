#include "qpagerank/graph.hpp"

#include <algorithm>

#include "qpagerank/error.hpp"

namespace qpr {

DirectedGraph::DirectedGraph(std::size_t node_count, std::vector<Arc> arcs,
                             std::vector<std::string> labels)
    : node_count_(node_count), arcs_(std::move(arcs)), labels_(std::move(labels)) {
  if (node_count_ == 0) throw Error(ErrorKind::NoNodes, "graph has no nodes");
  if (node_count_ > UINT32_MAX) throw Error(ErrorKind::InvalidArgument, "too many nodes");
  if (!labels_.empty() && labels_.size() != node_count_) {
    throw Error(ErrorKind::DimensionMismatch, "label count does not match node count");
  }
  for (const Arc& a : arcs_) {
    if (a.src >= node_count_ || a.dst >= node_count_) {
      throw Error(ErrorKind::OutOfRange, "arc " + std::to_string(a.src) + "->" +
                                             std::to_string(a.dst) + " references a missing node");
    }
    if (a.src == a.dst) {
      throw Error(ErrorKind::InvalidArgument,
                  "self-loop on node " + std::to_string(a.src) + " is not allowed");
    }
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

  offsets_.assign(node_count_ + 1, 0);
  for (const Arc& a : arcs_) ++offsets_[a.src + 1];
  for (std::size_t i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];
}

void DirectedGraph::check_node(NodeId node) const {
  if (node >= node_count_) {
    throw Error(ErrorKind::OutOfRange, "node " + std::to_string(node) + " out of range (N=" +
                                           std::to_string(node_count_) + ")");
  }
}

std::span<const Arc> DirectedGraph::out_arcs(NodeId node) const {
  check_node(node);
  return std::span<const Arc>(arcs_).subspan(offsets_[node], offsets_[node + 1] - offsets_[node]);
}

std::size_t DirectedGraph::out_degree(NodeId node) const { return out_arcs(node).size(); }

bool DirectedGraph::has_arc(NodeId src, NodeId dst) const {
  check_node(dst);
  auto out = out_arcs(src);
  return std::binary_search(out.begin(), out.end(), Arc{src, dst});
}

std::string DirectedGraph::label(NodeId node) const {
  check_node(node);
  return labels_.empty() ? std::to_string(node) : labels_[node];
}

std::size_t out_degree(const DirectedGraph& g, NodeId node) { return g.out_degree(node); }

ReducedGraph remove_nodes(const DirectedGraph& g, std::span<const NodeId> victims) {
  const std::size_t n = g.node_count();
  std::vector<char> removed(n, 0);
  for (NodeId v : victims) {
    if (v >= n) {
      throw Error(ErrorKind::OutOfRange, "victim " + std::to_string(v) + " out of range");
    }
    removed[v] = 1;
  }

  constexpr NodeId kGone = UINT32_MAX;
  std::vector<NodeId> new_index(n, kGone);
  std::vector<NodeId> original;
  for (NodeId v = 0; v < n; ++v) {
    if (!removed[v]) {
      new_index[v] = static_cast<NodeId>(original.size());
      original.push_back(v);
    }
  }
  if (original.empty()) throw Error(ErrorKind::NoNodes, "every node was removed");

  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs()) {
    if (new_index[a.src] != kGone && new_index[a.dst] != kGone) {
      arcs.push_back({new_index[a.src], new_index[a.dst]});
    }
  }
  std::vector<std::string> labels;
  if (g.has_labels()) {
    for (NodeId v : original) labels.push_back(g.labels()[v]);
  }
  return {DirectedGraph(original.size(), std::move(arcs), std::move(labels)), std::move(original)};
}

DirectedGraph complete_digraph(std::size_t nodes) {
  std::vector<Arc> arcs;
  for (NodeId i = 0; i < nodes; ++i)
    for (NodeId j = 0; j < nodes; ++j)
      if (i != j) arcs.push_back({i, j});
  return DirectedGraph(nodes, std::move(arcs));
}

}  // namespace qpr
