#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "qpagerank/graph.hpp"

namespace qpr {

// Mixture of the directed preferential-attachment process. Each growth step
// picks one of three moves:
//   new_source       add a node v and an arc v->w, w chosen by in-degree
//   between_existing add an arc v->w between existing nodes
//   new_target       add a node w and an arc v->w, v chosen by out-degree
// Degrees are smoothed by delta_in / delta_out before sampling.
struct ScaleFreeMix {
  double new_source = 0.41;
  double between_existing = 0.54;
  double new_target = 0.05;
  double delta_in = 0.2;
  double delta_out = 0.0;

  /// Throws InvalidArgument unless the probabilities are >= 0 and sum to 1.
  void validate() const;
};

enum class RootOrientation { TowardRoot, AwayFromRoot };

enum class Benchmark { Fig1a, Fig1b, Fig1c, Fig1d, Fig2b };

enum class GraphModel { ScaleFreeDirected, Hierarchical, BinaryTree, Benchmark };

struct GeneratorParams {
  GraphModel model = GraphModel::ScaleFreeDirected;
  /// Node count (scale-free), generation (hierarchical) or levels (tree).
  std::size_t size = 0;
  std::uint64_t seed = 0;
  ScaleFreeMix mix{};
  RootOrientation orientation = RootOrientation::TowardRoot;
  Benchmark benchmark = Benchmark::Fig1a;
};

/// Growth starts from the directed 3-cycle 0->1->2->0 and stops at `nodes`
/// nodes. Multi-arcs are collapsed and self-loops dropped afterwards.
DirectedGraph generate_scale_free(std::size_t nodes, std::uint64_t seed,
                                  const ScaleFreeMix& mix = {});

/// 3^generation nodes. Generation 1 is the 3-cycle 0->1->2->0 with root 0;
/// generation k+1 is three copies of generation k where every bottom-layer
/// node of the two new copies is wired to the root.
DirectedGraph generate_hierarchical(unsigned generation,
                                    RootOrientation orientation = RootOrientation::TowardRoot);

/// Complete binary tree with 2^levels - 1 nodes, heap-indexed (root 0,
/// children 2i+1, 2i+2), arcs pointing child -> parent.
DirectedGraph generate_binary_tree(unsigned levels);

DirectedGraph benchmark_graph(Benchmark which);
Benchmark parse_benchmark(std::string_view name);
std::string_view benchmark_name(Benchmark which);

DirectedGraph generate(const GeneratorParams& params);

/// Parses `family:size`, family one of scalefree | hierarchical | tree.
GeneratorParams parse_generator_spec(std::string_view spec, std::uint64_t seed);

}  // namespace qpr
