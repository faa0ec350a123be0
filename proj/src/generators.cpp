#include "qpagerank/generators.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <vector>

#include "qpagerank/error.hpp"

namespace qpr {
namespace {

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
class UnitRandom {
 public:
  explicit UnitRandom(std::uint64_t seed) : engine_(seed) {}

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t below(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(next() * static_cast<double>(n)));
  }

 private:
  std::mt19937_64 engine_;
};

// Preferential pick: with probability n*delta / (n*delta + |endpoints|) a
// uniformly random node, otherwise a uniformly random arc endpoint.
NodeId choose_node(UnitRandom& rng, const std::vector<NodeId>& endpoints, std::size_t nodes,
                   double delta) {
  if (delta > 0.0) {
    const double bias = static_cast<double>(nodes) * delta;
    const double p_uniform = bias / (bias + static_cast<double>(endpoints.size()));
    if (rng.next() < p_uniform) return static_cast<NodeId>(rng.below(nodes));
  }
  return endpoints[rng.below(endpoints.size())];
}

}  // namespace

void ScaleFreeMix::validate() const {
  const double parts[] = {new_source, between_existing, new_target};
  for (double p : parts) {
    if (!(p >= 0.0)) throw Error(ErrorKind::InvalidArgument, "scale-free probabilities must be >= 0");
  }
  if (std::abs(new_source + between_existing + new_target - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "scale-free probabilities must sum to 1");
  }
  if (!(delta_in >= 0.0) || !(delta_out >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "degree offsets must be >= 0");
  }
}

DirectedGraph generate_scale_free(std::size_t nodes, std::uint64_t seed, const ScaleFreeMix& mix) {
  mix.validate();
  if (nodes < 3) throw Error(ErrorKind::InvalidArgument, "scale-free graphs need at least 3 nodes");

  UnitRandom rng(seed);
  std::vector<NodeId> sources{0, 1, 2};
  std::vector<NodeId> targets{1, 2, 0};
  std::size_t count = 3;

  while (count < nodes) {
    const double r = rng.next();
    NodeId v = 0;
    NodeId w = 0;
    if (r < mix.new_source) {
      v = static_cast<NodeId>(count++);
      w = choose_node(rng, targets, count - 1, mix.delta_in);
    } else if (r < mix.new_source + mix.between_existing) {
      v = choose_node(rng, sources, count, mix.delta_out);
      w = choose_node(rng, targets, count, mix.delta_in);
    } else {
      v = choose_node(rng, sources, count, mix.delta_out);
      w = static_cast<NodeId>(count++);
    }
    sources.push_back(v);
    targets.push_back(w);
  }

  std::vector<Arc> arcs;
  arcs.reserve(sources.size());
  for (std::size_t e = 0; e < sources.size(); ++e) {
    if (sources[e] != targets[e]) arcs.push_back({sources[e], targets[e]});
  }
  return DirectedGraph(nodes, std::move(arcs));
}

DirectedGraph generate_hierarchical(unsigned generation, RootOrientation orientation) {
  if (generation == 0) throw Error(ErrorKind::InvalidArgument, "hierarchical generation must be >= 1");
  if (generation > 12) throw Error(ErrorKind::InvalidArgument, "hierarchical generation too large");

  std::vector<Arc> arcs{{0, 1}, {1, 2}, {2, 0}};
  std::vector<NodeId> bottom{1, 2};
  std::size_t size = 3;

  for (unsigned k = 1; k < generation; ++k) {
    std::vector<Arc> next = arcs;
    std::vector<NodeId> next_bottom;
    for (NodeId copy = 1; copy <= 2; ++copy) {
      const auto offset = static_cast<NodeId>(copy * size);
      for (const Arc& a : arcs) next.push_back({a.src + offset, a.dst + offset});
      for (NodeId b : bottom) {
        const NodeId node = b + offset;
        next_bottom.push_back(node);
        if (orientation == RootOrientation::TowardRoot) {
          next.push_back({node, 0});
        } else {
          next.push_back({0, node});
        }
      }
    }
    arcs = std::move(next);
    bottom = std::move(next_bottom);
    size *= 3;
  }
  return DirectedGraph(size, std::move(arcs));
}

DirectedGraph generate_binary_tree(unsigned levels) {
  if (levels == 0) throw Error(ErrorKind::InvalidArgument, "binary tree needs at least one level");
  if (levels > 24) throw Error(ErrorKind::InvalidArgument, "binary tree too deep");
  const std::size_t n = (std::size_t{1} << levels) - 1;
  std::vector<Arc> arcs;
  for (NodeId child = 1; child < n; ++child) arcs.push_back({child, (child - 1) / 2});
  return DirectedGraph(n, std::move(arcs));
}

DirectedGraph benchmark_graph(Benchmark which) {
  switch (which) {
    case Benchmark::Fig1a:
    case Benchmark::Fig1b:
      return DirectedGraph(2, {{0, 1}});
    case Benchmark::Fig1c:
      return DirectedGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    case Benchmark::Fig1d:
      return DirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 3}, {2, 3}, {3, 2}});
    case Benchmark::Fig2b:
      return DirectedGraph(7, {{1, 2}, {1, 4}, {2, 0}, {2, 3}, {2, 4}, {3, 0}, {3, 2},
                               {5, 3}, {5, 6}, {6, 4}});
  }
  throw Error(ErrorKind::InvalidArgument, "unknown benchmark");
}

Benchmark parse_benchmark(std::string_view name) {
  if (name == "fig1a") return Benchmark::Fig1a;
  if (name == "fig1b") return Benchmark::Fig1b;
  if (name == "fig1c") return Benchmark::Fig1c;
  if (name == "fig1d") return Benchmark::Fig1d;
  if (name == "fig2b") return Benchmark::Fig2b;
  throw Error(ErrorKind::InvalidArgument, "unknown benchmark '" + std::string(name) + "'");
}

std::string_view benchmark_name(Benchmark which) {
  switch (which) {
    case Benchmark::Fig1a: return "fig1a";
    case Benchmark::Fig1b: return "fig1b";
    case Benchmark::Fig1c: return "fig1c";
    case Benchmark::Fig1d: return "fig1d";
    case Benchmark::Fig2b: return "fig2b";
  }
  return "unknown";
}

DirectedGraph generate(const GeneratorParams& params) {
  switch (params.model) {
    case GraphModel::ScaleFreeDirected:
      return generate_scale_free(params.size, params.seed, params.mix);
    case GraphModel::Hierarchical:
      return generate_hierarchical(static_cast<unsigned>(params.size), params.orientation);
    case GraphModel::BinaryTree:
      return generate_binary_tree(static_cast<unsigned>(params.size));
    case GraphModel::Benchmark:
      return benchmark_graph(params.benchmark);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown graph model");
}

GeneratorParams parse_generator_spec(std::string_view spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, "generator spec must be family:size");
  }
  const auto family = spec.substr(0, colon);
  const auto size_text = spec.substr(colon + 1);
  std::size_t size = 0;
  auto [ptr, ec] = std::from_chars(size_text.data(), size_text.data() + size_text.size(), size);
  if (ec != std::errc{} || ptr != size_text.data() + size_text.size()) {
    throw Error(ErrorKind::InvalidArgument, "bad generator size '" + std::string(size_text) + "'");
  }
  GeneratorParams params;
  params.size = size;
  params.seed = seed;
  if (family == "scalefree") {
    params.model = GraphModel::ScaleFreeDirected;
  } else if (family == "hierarchical") {
    params.model = GraphModel::Hierarchical;
  } else if (family == "tree") {
    params.model = GraphModel::BinaryTree;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown generator family '" + std::string(family) + "'");
  }
  return params;
}

}  // namespace qpr
